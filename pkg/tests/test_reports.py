import json

from models import CheckRecord, RunConfig
from reports import catalog_report, check_report, format_element, format_key, render, table_report
from services.derived_cat import DObj


def test_format_key():
    X = DObj.parse("I[1,1][1]")
    assert format_key(X) == "I[1,1][1]"
    assert format_key(((1, -1), X)) == "K(1,-1)I[1,1][1]"


def test_format_element_of_zero():
    assert format_element({}) == "0"


def test_catalog_json(catalog):
    cfg = RunConfig.from_env(quiver="A2", prime=2)
    data = json.loads(render(catalog_report(cfg, catalog), "json"))
    assert data["p"] == 2
    assert [row["label"] for row in data["catalog"]] == ["I[1,1]", "I[1,2]", "I[2,2]"]
    assert "checks" not in data


def test_table_csv(hall, objs):
    cfg = RunConfig.from_env(quiver="A2", prime=2, algebra="dhall-dr")
    report = table_report(cfg, 2, hall.dual_products, [objs["S1"], objs["S2"]])
    lines = render(report, "csv").splitlines()
    assert lines[0] == "x,y,obj,coeff,error"
    assert "I[2,2],I[1,1],I[1,2],1," in lines


def test_text_lists_failures():
    cfg = RunConfig.from_env(quiver="A2", prime=2)
    records = [
        CheckRecord(suite="rp", instance="good", lhs="1", rhs="1", passed=True),
        CheckRecord(suite="rp", instance="bad", lhs="0", rhs="1", passed=False),
    ]
    text = render(check_report(cfg, 2, records), "text")
    assert "Checks: 1/2 passed" in text
    assert "FAIL [rp] bad: 0 != 1" in text
