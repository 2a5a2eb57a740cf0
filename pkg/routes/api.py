"""Read-only HTTP routes mirroring the CLI commands.

The endpoints answer only when DERHALL_HTTP_ENABLED is set. Query
parameters mirror the CLI flags; computations run in the threadpool.
"""
from typing import Optional

from fastapi import APIRouter, HTTPException
from starlette.concurrency import run_in_threadpool

import config
from errors import DerhallError
from models import RunConfig
from reports import as_dict, catalog_report, check_report, table_report
from services.suites import Context, run_suites

router = APIRouter(tags=["derhall"])


def check_enabled() -> None:
    """Guard endpoint access when the HTTP surface is disabled.

    Raises:
        HTTPException: 404 to mimic absence of the endpoints entirely.
    """
    if not config.HTTP_ENABLED:
        raise HTTPException(status_code=404)


def _split(raw: Optional[str]) -> Optional[list[int]]:
    if raw is None:
        return None
    return [int(part) for part in raw.split(",") if part.strip()]


def _config(**params) -> RunConfig:
    """RunConfig from query parameters, with library errors mapped to status codes."""
    try:
        return RunConfig.from_env(**params)
    except DerhallError as exc:
        raise HTTPException(status_code=exc.http_status, detail=str(exc))


async def _run(fn, *args):
    try:
        return await run_in_threadpool(fn, *args)
    except DerhallError as exc:
        raise HTTPException(status_code=exc.http_status, detail=str(exc))


@router.get("/catalog")
async def catalog(quiver: Optional[str] = None, prime: Optional[int] = None) -> dict:
    """Indecomposables of the quiver over F_p with Hom/Ext tables and |Aut|."""
    check_enabled()
    cfg = _config(quiver=quiver, prime=prime)
    report = await _run(lambda: catalog_report(cfg, Context(cfg).catalog))
    return as_dict(report)


@router.get("/table")
async def table(
    quiver: Optional[str] = None,
    prime: Optional[int] = None,
    algebra: str = "dhall",
    primes: Optional[str] = None,
    shifts: Optional[str] = None,
    max_summands: Optional[int] = None,
    max_dim: Optional[int] = None,
    cap: Optional[int] = None,
) -> dict:
    """Multiplication table of one algebra over the filtered basis."""
    check_enabled()
    cfg = _config(
        quiver=quiver,
        prime=prime,
        algebra=algebra,
        primes=_split(primes),
        shifts=_split(shifts),
        max_summands=max_summands,
        max_dim=max_dim,
        cap=cap,
    )

    def build():
        product, basis = Context(cfg).algebra(cfg.algebra)
        return table_report(cfg, cfg.prime, product, basis)

    return as_dict(await _run(build))


@router.get("/check")
async def check(
    suite: str = "all",
    quiver: Optional[str] = None,
    prime: Optional[int] = None,
    primes: Optional[str] = None,
    shifts: Optional[str] = None,
    max_summands: Optional[int] = None,
    max_dim: Optional[int] = None,
    cap: Optional[int] = None,
) -> dict:
    """Run one identity suite; "passed" is true when every instance passes."""
    check_enabled()
    cfg = _config(
        suite=suite,
        quiver=quiver,
        prime=prime,
        primes=_split(primes),
        shifts=_split(shifts),
        max_summands=max_summands,
        max_dim=max_dim,
        cap=cap,
        workers=1,
    )
    records = await _run(run_suites, cfg)
    out = as_dict(check_report(cfg, cfg.prime, records))
    out["passed"] = all(r.passed for r in records)
    return out
