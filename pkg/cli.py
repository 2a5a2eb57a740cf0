"""Command-line front end: catalog, table, check and serve.

Exit codes: 0 when everything passes, 1 on a failed check, 2 on a
configuration error and 3 when an enumeration cap is exceeded.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import config
from errors import DerhallError
from models import ALGEBRAS, FORMATS, SUITES, Report, RunConfig
from reports import catalog_report, check_report, render, table_report
from services.suites import Context, run_suites

logger = logging.getLogger("derhall")


def _int_list(raw: str) -> list[int]:
    return [int(part) for part in raw.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="derhall", description="Exact Hall algebras of type-A quivers")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="A<n> or A<n>:<orientation>")
    common.add_argument("--prime", type=int, help="field size p")
    common.add_argument("--primes", type=_int_list, help="comma-separated primes for the motivic layer")
    common.add_argument("--window", type=int, help="shift window w")
    common.add_argument("--cap", type=int, help="enumeration cap")
    common.add_argument("--shifts", type=_int_list, help="corpus shift range, e.g. -1,1")
    common.add_argument("--max-summands", type=int, dest="max_summands")
    common.add_argument("--max-dim", type=int, dest="max_dim")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--log-level", default=config.LOG_LEVEL, dest="log_level")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="indecomposables with Hom/Ext tables")
    table = sub.add_parser("table", parents=[common], help="multiplication table of one algebra")
    table.add_argument("--algebra", choices=ALGEBRAS, default="dhall")
    check = sub.add_parser("check", parents=[common], help="run an identity suite")
    check.add_argument("--suite", choices=SUITES, default="all")
    check.add_argument("--workers", type=int)
    check.add_argument(
        "--inverted-convention",
        action="store_true",
        dest="inverted_convention",
        default=None,
        help="read Ringel h with the sub and quotient swapped",
    )
    serve = sub.add_parser("serve", help="start the read-only HTTP surface")
    serve.add_argument("--host", default=config.HTTP_HOST)
    serve.add_argument("--port", type=int, default=config.HTTP_PORT)
    serve.add_argument("--log-level", default=config.LOG_LEVEL, dest="log_level")
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    fields = set(RunConfig.model_fields)
    return RunConfig.from_env(**{k: v for k, v in vars(args).items() if k in fields})


def cmd_catalog(cfg: RunConfig) -> tuple[Report, int]:
    """Indecomposables with Aut orders and the Hom/Ext table."""
    return catalog_report(cfg, Context(cfg).catalog), 0


def cmd_table(cfg: RunConfig) -> tuple[Report, int]:
    """Structure constants of the selected algebra over its basis."""
    ctx = Context(cfg)
    product, basis = ctx.algebra(cfg.algebra)
    report = table_report(cfg, cfg.prime, product, basis)
    return report, 3 if any(row.error for row in report.products) else 0


def cmd_check(cfg: RunConfig) -> tuple[Report, int]:
    """Run the selected suites; exit code 1 when any record fails."""
    records = run_suites(cfg)
    failed = [r for r in records if not r.passed]
    for r in failed:
        logger.info("FAIL [%s] %s", r.suite, r.instance)
    return check_report(cfg, cfg.prime, records), 1 if failed else 0


def cmd_serve(host: str, port: int) -> int:
    """Serve the read-only HTTP routes with uvicorn."""
    import uvicorn

    uvicorn.run("main:app", host=host, port=port)
    return 0


def emit(text: str, out: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.command == "serve":
        return cmd_serve(args.host, args.port)
    commands = {"catalog": cmd_catalog, "table": cmd_table, "check": cmd_check}
    try:
        cfg = run_config(args)
        report, status = commands[args.command](cfg)
    except DerhallError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    emit(render(report, cfg.format), cfg.out)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
