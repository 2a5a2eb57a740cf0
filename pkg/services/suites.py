"""Identity suites: every check the library knows, run over a corpus.

Each suite lists its work items and checks them one at a time against a
shared Context. The Context builds the catalog, the derived category and
every algebra lazily, so a suite only pays for what it touches. With more
than one worker every suite is cut into chunks that a process pool works
through.
"""
from __future__ import annotations

import itertools
import json
import logging
import multiprocessing
from dataclasses import dataclass
from functools import cached_property, partial
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator

import config
from errors import IdentityMismatch
from models import CheckRecord, InstanceRegistry, RunConfig
from reports import format_element
from services.derived_cat import DerivedCategory, DObj
from services.derived_hall import DerivedHall
from services.exact_coeff import format_coeff
from services.motivic import Motivic
from services.octahedron import Instance, Octahedron, generate_instances
from services.quiver_rep import (
    ModClass,
    aut_order_bruteforce,
    build_catalog,
    parse_quiver_spec,
)
from services.ringel_hall import RingelHall
from services.twisted_ext import Sweep, TwistedExt

logger = logging.getLogger(__name__)

OCTAHEDRON_LIMIT = 10
# Pool tasks per worker and suite
CHUNKS_PER_WORKER = 4


def load_registry(path: str = config.INSTANCES_FILE) -> InstanceRegistry:
    """Load the named worked instances; a missing file means an empty registry."""
    file = Path(path)
    if not file.exists():
        logger.info("no instance registry at %s", path)
        return InstanceRegistry()
    with open(file, "r", encoding="utf-8") as f:
        return InstanceRegistry.model_validate(json.load(f))


def record(suite: str, instance: str, lhs, rhs, passed: bool | None = None) -> CheckRecord:
    """A CheckRecord with both sides serialized; passes when they are equal unless told otherwise."""
    text = [format_element(s) if isinstance(s, dict) or hasattr(s, "items") else format_coeff(s) for s in (lhs, rhs)]
    ok = (lhs == rhs) if passed is None else passed
    if not ok:
        logger.debug("[%s] %s failed: %s != %s", suite, instance, *text)
    return CheckRecord(suite=suite, instance=instance, lhs=text[0], rhs=text[1], passed=bool(ok))


class Context:
    """Lazily built mathematical objects for one RunConfig."""

    def __init__(self, cfg: RunConfig) -> None:
        self.cfg = cfg
        self.quiver = parse_quiver_spec(cfg.quiver)

    @cached_property
    def catalog(self):
        return build_catalog(self.quiver, self.cfg.prime)

    @cached_property
    def derived(self) -> DerivedCategory:
        return DerivedCategory(self.catalog, self.cfg.window, self.cfg.cap)

    @cached_property
    def ringel(self) -> RingelHall:
        return RingelHall(self.catalog, self.cfg.cap, self.cfg.inverted_convention)

    @cached_property
    def hall(self) -> DerivedHall:
        return DerivedHall(self.derived)

    @cached_property
    def twisted(self) -> TwistedExt:
        return TwistedExt(self.hall)

    @cached_property
    def motivic(self) -> Motivic:
        return Motivic(self.quiver, self.cfg.primes, self.cfg.window, self.cfg.cap)

    @cached_property
    def registry(self) -> InstanceRegistry:
        return load_registry(self.cfg.instances_file)

    @cached_property
    def modules(self) -> list[ModClass]:
        return self.catalog.classes(self.cfg.max_dim, self.cfg.max_summands)

    @cached_property
    def objects(self) -> list[DObj]:
        """The corpus filter: shifts in range, bounded summands and total dimension."""
        return self.derived.corpus(self.cfg.shifts, self.cfg.max_summands, self.cfg.max_dim)

    @cached_property
    def indecomposable_objects(self) -> list[DObj]:
        """Zero and the single-summand objects of the corpus; octahedra and the motivic suites draw from these."""
        return [X for X in self.objects if X.count <= 1]

    def algebra(self, name: str):
        """(product, basis) for a table selector."""
        if name in ("hall", "hall-dr"):
            alg = self.ringel.algebra
            return (partial(alg.basis_product, dual=name == "hall-dr"), self.modules)
        if name in ("dhall", "dhall-dr"):
            alg = self.hall.algebra
            return (partial(alg.basis_product, dual=name == "dhall-dr"), self.objects)
        if name in ("et", "et-minus", "et-dr"):
            keys = self.twisted.keys(self.indecomposable_objects, radius=1)
            if name == "et-dr":
                return (partial(self.twisted.plus.basis_product, dual=True), keys)
            alg = self.twisted.plus if name == "et" else self.twisted.minus
            return (partial(alg.basis_product, dual=False), keys)
        alg = self.motivic.algebra
        return (partial(alg.basis_product, dual=name == "motivic"), self.indecomposable_objects)


# --- suites ---
#
# A suite lists its work items cheaply and checks one item at a time, so a
# run can be cut into chunks items[part::parts] that workers take in turn.


@dataclass(frozen=True)
class Suite:
    items: Callable[[Context], list]
    check: Callable[[Context, Any], Iterator[CheckRecord]]


def _associativity_items(ctx: Context) -> list:
    return [("hall", t) for t in itertools.product(ctx.modules, repeat=3)] + [
        ("dhall", t) for t in itertools.product(ctx.objects, repeat=3)
    ]


def _associativity_check(ctx: Context, item) -> Iterator[CheckRecord]:
    kind, (a, b, c) = item
    alg = ctx.ringel.algebra if kind == "hall" else ctx.hall.algebra
    x, y, z = alg.u(a), alg.u(b), alg.u(c)
    for dual in (False, True):
        lhs, rhs = alg.assoc_sides(x, y, z, dual)
        yield record("associativity", f"{alg.name}{'-dr' if dual else ''} ({a}, {b}, {c})", lhs, rhs)


def _rp_check(ctx: Context, item) -> Iterator[CheckRecord]:
    ringel = ctx.ringel
    a, b = item
    for lam in ringel.strata(a, b):
        lhs, rhs = ringel.rp_sides(a, b, lam)
        yield record("rp", f"({a}, {b}, {lam})", lhs, rhs)
    total, size = ringel.ext_partition_sides(a, b)
    yield record("rp", f"ext partition ({a}, {b})", total, size)


def _derived_rp_check(ctx: Context, item) -> Iterator[CheckRecord]:
    hall = ctx.hall
    X, Y = item
    for L in hall.middle_terms(X, Y):
        triple = f"({X}, {Y}, {L})"
        try:
            lhs, rhs = hall.derived_rp_sides(X, Y, L)
        except IdentityMismatch as exc:
            yield CheckRecord(suite="derived-rp", instance=f"F sides {triple}", lhs=str(exc), rhs="", passed=False)
            continue
        yield record("derived-rp", triple, lhs, rhs)
        with hall.derived.internal():
            sides = {
                "first form": hall.corollary_first_sides(X, Y, L),
                "second form": hall.corollary_second_sides(X, Y, L),
            }
            if X.is_module and Y.is_module and L.is_module:
                sides["abelian"] = hall.abelian_degeneration_sides(X, Y, L)
        for label, (lhs, rhs) in sides.items():
            yield record("derived-rp", f"{label} {triple}", lhs, rhs)
    with hall.derived.internal():
        total, size = hall.h_partition_sides(X, Y)
    yield record("derived-rp", f"h partition ({X}, {Y})", total, size)


def _fits(ctx: Context, objs: Iterable[DObj]) -> bool:
    """Registry objects only apply to quivers that have their intervals."""
    return all(j <= ctx.quiver.n for X in objs for (_, j), _, _ in X.parts)


def _triples(ctx: Context, names: Iterable[list[str]]) -> list[tuple[DObj, DObj, DObj]]:
    triples = [tuple(DObj.parse(o) for o in objs) for objs in names]
    return list(dict.fromkeys(t for t in triples if _fits(ctx, t)))


def _pairs(ctx: Context) -> list[tuple[DObj, DObj]]:
    return list(itertools.product(ctx.objects, repeat=2))


def _prop25_items(ctx: Context) -> list:
    registry = _triples(ctx, (t.objects for t in ctx.registry.prop25))
    return [("triple", t) for t in registry] + [("pair", p) for p in _pairs(ctx)]


def _prop25_check(ctx: Context, item) -> Iterator[CheckRecord]:
    kind, value = item
    if kind == "triple":
        triples = [value]
    else:
        Z, M = value
        registry = set(_triples(ctx, (t.objects for t in ctx.registry.prop25)))
        with ctx.derived.internal():
            strata = ctx.derived.cone_strata(Z, M)
        triples = [(Z, L, M) for L in strata if (Z, L, M) not in registry]
    for Z, L, M in triples:
        first, second, orbit_sum = ctx.hall.prop25_sides(Z, L, M)
        yield record("prop25", f"first ({Z}, {L}, {M})", first, orbit_sum)
        yield record("prop25", f"second ({Z}, {L}, {M})", second, orbit_sum)


def _octahedra(ctx: Context) -> list[Instance]:
    include = [
        Instance(*(DObj.parse(getattr(o, k)) for k in ("X", "Y", "Z", "M", "L", "Lp")))
        for o in ctx.registry.octahedra
    ]
    include = [inst for inst in include if _fits(ctx, (inst.X, inst.Y, inst.Z, inst.M, inst.L, inst.Lp))]
    return generate_instances(ctx.derived, ctx.indecomposable_objects, OCTAHEDRON_LIMIT + len(include), include)


def _symmetry1_check(ctx: Context, inst: Instance) -> Iterator[CheckRecord]:
    lhs, rhs = Octahedron(ctx.derived, inst).symmetry1_sides()
    yield record("symmetry1", str(inst), lhs, rhs)


def _symmetry2_check(ctx: Context, inst: Instance) -> Iterator[CheckRecord]:
    octa = Octahedron(ctx.derived, inst)
    report = octa.symmetry2()
    lhs, rhs = report.third_sides
    yield record("symmetry2", f"identity {inst}", lhs, rhs)
    yield record(
        "symmetry2",
        f"surjectivity {inst}",
        f"f:{report.f_surjective} m:{report.m_surjective}",
        "f:True m:True",
        passed=report.f_surjective and report.m_surjective,
    )
    yield record(
        "symmetry2",
        f"kernels {inst}",
        f"f:{sorted(set(report.f_kernels))} m:{sorted(set(report.m_kernels))}",
        f"f:{report.f_expected} m:{report.m_expected} (stratified fibers f:{sorted(set(report.f_fibers))}"
        f" m:{sorted(set(report.m_fibers))})",
        passed=all(k == report.f_expected for k in report.f_kernels)
        and all(k == report.m_expected for k in report.m_kernels),
    )
    # both symmetries are statements about the same instance
    s1 = octa.symmetry1_check()
    yield record("symmetry2", f"agrees with symmetry1 {inst}", s1, report.passed)


def _sweep_record(suite: str, instance: str, sweep: Sweep) -> CheckRecord:
    rhs = f"{sweep.total}" if sweep.passed else f"{sweep.total}, first failure {sweep.first_failure}"
    return CheckRecord(suite=suite, instance=instance, lhs=str(sweep.agreeing), rhs=rhs, passed=sweep.passed)


def _pairing_check(ctx: Context, item) -> Iterator[CheckRecord]:
    Y, W = item
    yield _sweep_record("pairing", f"({Y}, {W}) over all classes", ctx.twisted.pairing_sweep(Y, W))


def _phi_items(ctx: Context) -> list:
    keys = ctx.twisted.keys(ctx.objects, radius=1)
    return (
        [("hall", p) for p in itertools.product(ctx.modules, repeat=2)]
        + [("dhall", p) for p in _pairs(ctx)]
        + [("et", p) for p in itertools.product(keys, repeat=2)]
    )


def _phi_check(ctx: Context, item) -> Iterator[CheckRecord]:
    kind, (a, b) = item
    alg = {"hall": ctx.ringel.algebra, "dhall": ctx.hall.algebra, "et": ctx.twisted.minus}[kind]
    lhs, rhs = alg.phi_sides(alg.u(a), alg.u(b))
    yield record("phi", f"{kind} ({a}, {b})", lhs, rhs)


def _et_check(ctx: Context, item) -> Iterator[CheckRecord]:
    """Both twisted associativities for every (K_a u_X, K_b u_Y, K_c u_Z), then the K-class facts of (X, Y)."""
    et = ctx.twisted
    X, Y = item
    for variant in ("plus", "minus"):
        sweep = Sweep()
        for Z in ctx.objects:
            sweep.merge(et.assoc_sweep(X, Y, Z, variant))
        name = et.plus.name if variant == "plus" else et.minus.name
        yield _sweep_record("et", f"{name} ({X}, {Y}, *) over all classes", sweep)
    yield record("et", f"K-classes of middle terms ({X}, {Y})", et.kclass_triangle_check(X, Y), True)
    total, by_classes = et.euler_sides(X, Y)
    yield record("et", f"Euler form ({X}, {Y})", total, by_classes)


def _motivic_objects(ctx: Context) -> list[DObj]:
    return ctx.indecomposable_objects


def _motivic_rp_items(ctx: Context) -> list:
    objects = _motivic_objects(ctx)
    registry = _triples(ctx, (t.objects for t in ctx.registry.motivic_rp))
    return (
        [("triple", t) for t in registry]
        + [("pair", p) for p in itertools.product(objects, repeat=2)]
        + [("object", X) for X in objects]
    )


def _motivic_rp_check(ctx: Context, item) -> Iterator[CheckRecord]:
    mot = ctx.motivic
    kind, value = item
    if kind == "object":
        yield record("motivic-rp", f"upsilon {value}", mot.upsilon_oracle_check(value), True)
        return
    if kind == "triple":
        triples = [value]
    else:
        Z, M = value
        registry = set(_triples(ctx, (t.objects for t in ctx.registry.motivic_rp)))
        triples = [(Z, L, M) for L in mot.strata(Z, M) if (Z, L, M) not in registry]
    for Z, L, M in triples:
        lhs, rhs = mot.mot_rp_sides(Z, L, M)
        yield record("motivic-rp", f"({Z}, {L}, {M})", lhs, rhs)
    if kind == "pair":
        X, Y = value
        held_out = 7 if 7 in mot.primes else mot.primes[-1]
        yield record("motivic-rp", f"partition ({X}, {Y})", mot.partition_check(X, Y), True)
        yield record("motivic-rp", f"specialization at {held_out} ({X}, {Y})", mot.specialization_check(X, Y, held_out), True)


def _lemma_space_check(ctx: Context, item) -> Iterator[CheckRecord]:
    mot = ctx.motivic
    dc = mot.base
    Z, M = item
    with dc.internal():
        strata = dc.cone_strata(Z, M)
    for L, ls in strata.items():
        first, second = mot.lemma_space_sides(ls[0])
        yield record("lemma-space", f"n Hom(Z[1], L) ({Z}, {M}, {L})", *first)
        yield record("lemma-space", f"Hom(Z[1], L) n ({Z}, {M}, {L})", *second)


def _mot_phi_items(ctx: Context) -> list:
    objects = _motivic_objects(ctx)
    modules = [X for X in objects if X.is_module]
    return [("phi", p) for p in itertools.product(objects, repeat=2)] + [
        ("assoc", t) for t in itertools.product(modules, repeat=3)
    ]


def _mot_phi_check(ctx: Context, item) -> Iterator[CheckRecord]:
    alg = ctx.motivic.algebra
    kind, value = item
    if kind == "phi":
        X, Y = value
        lhs, rhs = alg.phi_sides(alg.u(X), alg.u(Y))
        yield record("mot-phi", f"({X}, {Y})", lhs, rhs)
        return
    X, Y, Z = value
    for dual in (False, True):
        lhs, rhs = alg.assoc_sides(alg.u(X), alg.u(Y), alg.u(Z), dual)
        yield record("mot-phi", f"associativity{' KS' if dual else ' T'} ({X}, {Y}, {Z})", lhs, rhs)


def _oracle_items(ctx: Context) -> list:
    return (
        [("module", a) for a in ctx.modules]
        + [("object", X) for X in ctx.objects]
        + [("hom", p) for p in itertools.product(ctx.indecomposable_objects, repeat=2)]
    )


def _oracle_check(ctx: Context, item) -> Iterator[CheckRecord]:
    cat, dc = ctx.catalog, ctx.derived
    kind, value = item
    if kind == "module":
        yield record("oracle", f"|Aut {value}|", cat.aut_order(value), aut_order_bruteforce(cat.rep_of(value), ctx.cfg.cap))
    elif kind == "object":
        with dc.internal():
            formula, counted = dc.daut_order(value), dc.daut_order_bruteforce(value)
        yield record("oracle", f"|Aut {value}| derived", formula, counted)
    else:
        X, Y = value
        try:
            with dc.internal():
                dim = dc.graded_hom_dim(X, Y, 0, verify=True)
        except IdentityMismatch as exc:
            yield CheckRecord(suite="oracle", instance=f"dim Hom({X}, {Y})", lhs=str(exc), rhs="", passed=False)
            return
        yield record("oracle", f"dim Hom({X}, {Y})", dim, dim)


SUITES: dict[str, Suite] = {
    "associativity": Suite(_associativity_items, _associativity_check),
    "rp": Suite(lambda ctx: list(itertools.product(ctx.modules, repeat=2)), _rp_check),
    "derived-rp": Suite(_pairs, _derived_rp_check),
    "prop25": Suite(_prop25_items, _prop25_check),
    "symmetry1": Suite(_octahedra, _symmetry1_check),
    "symmetry2": Suite(_octahedra, _symmetry2_check),
    "pairing": Suite(_pairs, _pairing_check),
    "phi": Suite(_phi_items, _phi_check),
    "et": Suite(_pairs, _et_check),
    "motivic-rp": Suite(_motivic_rp_items, _motivic_rp_check),
    "lemma-space": Suite(lambda ctx: list(itertools.product(_motivic_objects(ctx), repeat=2)), _lemma_space_check),
    "mot-phi": Suite(_mot_phi_items, _mot_phi_check),
    "oracle": Suite(_oracle_items, _oracle_check),
}


def suite_names(selector: str) -> list[str]:
    return list(SUITES) if selector == "all" else [selector]


def run_suite(
    cfg: RunConfig, name: str, ctx: Context | None = None, part: int = 0, parts: int = 1
) -> list[CheckRecord]:
    """Check the items of one suite, or the chunk items[part::parts] of them."""
    ctx = ctx or Context(cfg)
    suite = SUITES[name]
    items = suite.items(ctx)[part::parts]
    logger.info(
        "suite %s chunk %d/%d: %d items on %s over F_%d", name, part + 1, parts, len(items), cfg.quiver, cfg.prime
    )
    records = [r for item in items for r in suite.check(ctx, item)]
    passed = sum(r.passed for r in records)
    logger.debug("suite %s chunk %d/%d: %d/%d passed", name, part + 1, parts, passed, len(records))
    return records


_worker_ctx: Context | None = None


def _init_worker(cfg_data: dict) -> None:
    global _worker_ctx
    _worker_ctx = Context(RunConfig(**cfg_data))


def _run_chunk(name: str, part: int, parts: int) -> list[dict]:
    return [r.model_dump() for r in run_suite(_worker_ctx.cfg, name, _worker_ctx, part, parts)]


def run_suites(cfg: RunConfig) -> list[CheckRecord]:
    """Run the selected suites; with workers > 1 every suite is cut into chunks for a spawn-context pool."""
    names = suite_names(cfg.suite)
    if cfg.workers > 1:
        parts = cfg.workers * CHUNKS_PER_WORKER
        tasks = [(name, part, parts) for name in names for part in range(parts)]
        mp_context = multiprocessing.get_context("spawn")
        with mp_context.Pool(processes=cfg.workers, initializer=_init_worker, initargs=(cfg.model_dump(),)) as pool:
            results = pool.starmap(_run_chunk, tasks)
        records = [CheckRecord(**r) for batch in results for r in batch]
    else:
        ctx = Context(cfg)
        records = [r for name in names for r in run_suite(cfg, name, ctx)]
    for name in names:
        mine = [r for r in records if r.suite == name]
        logger.info("suite %s: %d/%d passed", name, sum(r.passed for r in mine), len(mine))
    return sorted(records, key=lambda r: (r.suite, r.instance))
