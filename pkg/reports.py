"""Report builders and renderers.

Builders turn computation results into the pydantic report models; the
renderers emit the JSON schema, CSV rows or the jinja2 text template.
Coefficients are serialized with the exact string forms of each ring.
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping

from jinja2 import Environment, FileSystemLoader

from errors import CapExceeded
from models import CatalogRow, CheckRecord, ProductRow, Report, RunConfig, Term
from services.derived_cat import DObj
from services.exact_coeff import format_coeff
from services.quiver_rep import Catalog, ModClass, interval_str

logger = logging.getLogger(__name__)

TEMPLATES = Path(__file__).parent / "templates"


def format_key(key: Any) -> str:
    """Basis keys: objects print as themselves, (alpha, X) as K(alpha)X."""
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], (DObj, ModClass)):
        alpha, X = key
        return f"K({','.join(str(a) for a in alpha)}){X}"
    return str(key)


def format_element(elt: Mapping) -> str:
    """c1*k1 + c2*k2 with terms sorted by key text; the empty element is 0."""
    pieces = sorted((format_key(k), format_coeff(c)) for k, c in elt.items())
    return " + ".join(f"({c})*{k}" for k, c in pieces) or "0"


def terms(products: Mapping) -> list[Term]:
    return [Term(obj=format_key(k), coeff=format_coeff(c)) for k, c in sorted(products.items(), key=lambda kv: format_key(kv[0]))]


def catalog_report(cfg: RunConfig, catalog: Catalog) -> Report:
    """One row per indecomposable with its Hom and Ext^1 tables."""
    n = catalog.quiver.n
    rows = []
    for label in catalog.labels:
        cls = ModClass.of([label])
        rows.append(
            CatalogRow(
                label=interval_str(label),
                dimvec=list(cls.dimvec(n)),
                aut=catalog.aut_order(cls),
                hom={interval_str(other): catalog.hom[(label, other)] for other in catalog.labels},
                ext={interval_str(other): catalog.ext[(label, other)] for other in catalog.labels},
            )
        )
    logger.info("catalog of %s over F_%d: %d indecomposables", cfg.quiver, catalog.p, len(rows))
    return Report(quiver=cfg.quiver, p=catalog.p, catalog=rows)


def table_report(cfg: RunConfig, p: int, product, basis: Iterable) -> Report:
    """Full multiplication table of ``product`` over ``basis``.

    A product that hits the enumeration cap becomes a row with ``error`` set.
    """
    basis = list(basis)
    rows = []
    for x in basis:
        for y in basis:
            try:
                rows.append(ProductRow(x=format_key(x), y=format_key(y), terms=terms(product(x, y))))
            except CapExceeded as exc:
                logger.warning("product %s * %s skipped: %s", format_key(x), format_key(y), exc)
                rows.append(ProductRow(x=format_key(x), y=format_key(y), error=str(exc)))
    return Report(quiver=cfg.quiver, p=p, algebra=cfg.algebra, basis=[format_key(b) for b in basis], products=rows)


def check_report(cfg: RunConfig, p: int, records: Iterable[CheckRecord]) -> Report:
    ordered = sorted(records, key=lambda r: (r.suite, r.instance))
    return Report(quiver=cfg.quiver, p=p, checks=ordered)


def as_dict(report: Report) -> dict:
    """The JSON schema: checks use the key "pass"; empty sections are dropped."""
    out: dict[str, Any] = {"quiver": report.quiver, "p": report.p}
    if report.algebra is not None:
        out["algebra"] = report.algebra
    if report.basis:
        out["basis"] = report.basis
    if report.catalog:
        out["catalog"] = [row.model_dump() for row in report.catalog]
    if report.products:
        out["products"] = [row.model_dump(exclude_none=True) for row in report.products]
    if report.checks:
        out["checks"] = [record.as_row() for record in report.checks]
    return out


def to_json(report: Report) -> str:
    return json.dumps(as_dict(report), indent=2, ensure_ascii=False)


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if report.catalog:
        writer.writerow(["label", "dimvec", "aut"])
        for row in report.catalog:
            writer.writerow([row.label, " ".join(map(str, row.dimvec)), row.aut])
    if report.products:
        writer.writerow(["x", "y", "obj", "coeff", "error"])
        for prod in report.products:
            if prod.error:
                writer.writerow([prod.x, prod.y, "", "", prod.error])
            for term in prod.terms:
                writer.writerow([prod.x, prod.y, term.obj, term.coeff, ""])
    if report.checks:
        writer.writerow(["suite", "instance", "lhs", "rhs", "pass"])
        for rec in report.checks:
            writer.writerow([rec.suite, rec.instance, rec.lhs, rec.rhs, rec.passed])
    return buf.getvalue()


def to_text(report: Report) -> str:
    env = Environment(loader=FileSystemLoader(str(TEMPLATES)), trim_blocks=True, lstrip_blocks=True)
    failed = [r for r in report.checks if not r.passed]
    return env.get_template("report.txt.j2").render(report=report, failed=failed)


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    return to_json(report)
