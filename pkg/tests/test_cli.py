import json

import cli

SMALL = ["--quiver", "A2", "--prime", "2", "--shifts=0", "--max-summands", "1", "--max-dim", "2"]


def test_catalog_json(capsys):
    assert cli.main(["catalog", "--quiver", "A2", "--prime", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["catalog"]) == 3


def test_catalog_to_file(tmp_path):
    out = tmp_path / "catalog.csv"
    assert cli.main(["catalog", "--quiver", "A2", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8").startswith("label,dimvec,aut")


def test_table(capsys):
    assert cli.main(["table", *SMALL, "--algebra", "hall"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["algebra"] == "hall"
    assert len(data["products"]) == len(data["basis"]) ** 2


def test_negative_shift_range_parses():
    args = cli.build_parser().parse_args(["check", "--shifts=-1,1"])
    assert args.shifts == [-1, 1]


def test_check_passes(capsys):
    assert cli.main(["check", *SMALL, "--suite", "rp"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(row["pass"] for row in data["checks"])


def test_check_failure_exit_code(capsys):
    assert cli.main(["check", *SMALL, "--suite", "rp", "--inverted-convention", "--format", "text"]) == 1
    assert "FAIL [rp]" in capsys.readouterr().out


def test_config_error_exit_code():
    assert cli.main(["catalog", "--prime", "4"]) == 2
    assert cli.main(["catalog", "--quiver", "B3"]) == 2


def test_cap_exceeded_exit_code(capsys):
    assert cli.main(["table", *SMALL, "--algebra", "hall", "--cap", "1"]) == 3
    data = json.loads(capsys.readouterr().out)
    assert any("error" in row for row in data["products"])
