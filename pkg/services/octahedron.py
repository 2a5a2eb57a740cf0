"""Octahedral configurations and the two symmetries of the derived Hall product.

An instance fixes objects X, Y, Z, M, L, L' around a homotopy-cartesian
square

    L' --f'--> M
    |m'        |m
    X  --f-->  L

with cone(f) = cone(f') = Y and cone(m) = cone(m') = Z[1]. The two sides are
enumerated independently: side one from Hom(M + X, L), side two from
Hom(L', M + X), each with its triangle completions.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from services.derived_cat import DerivedCategory, DMorphism, DObj

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    X: DObj
    Y: DObj
    Z: DObj
    M: DObj
    L: DObj
    Lp: DObj

    def __str__(self) -> str:
        return f"X={self.X} Y={self.Y} Z={self.Z} M={self.M} L={self.L} L'={self.Lp}"


@dataclass
class SideEntry:
    """One double-cone morphism with its two components and their completions."""

    whole: DMorphism
    first: DMorphism
    second: DMorphism
    first_completions: dict[tuple[int, ...], DMorphism]
    second_completions: dict[tuple[int, ...], DMorphism]


@dataclass
class OctahedronCounts:
    """The stratified counts of an instance.

    Attributes:
        h_stratum: |Hom(Y, X[1])^{L'}_{L[1]}|.
        n_fibers: per h, |Hom(L, Z[1])^{h,L'}_{M[1]}|.
        n_prime_stratum: |Hom(X, Z[1])^{L}_{L'[1]}|.
        h_prime_fibers: per n', |Hom(Y, L'[1])^{n',L}_{M[1]}|.
        double_cone_one: |Hom(M + X, L)^{Y,Z[1]}_{L'[1]}|.
        double_cone_two: |Hom(L', M + X)^{Y,Z[1]}_{L}|.
        pairs_one: size of the image of D_{L,L'} in Hom(Y, X[1]) x Hom(L, Z[1]).
        pairs_two: size of the image of D_{L',L} in Hom(Y, L'[1]) x Hom(X, Z[1]).
    """

    h_stratum: int
    n_fibers: dict[tuple[int, ...], int]
    n_prime_stratum: int
    h_prime_fibers: dict[tuple[int, ...], int]
    double_cone_one: int
    double_cone_two: int
    pairs_one: int
    pairs_two: int

    def as_dict(self) -> dict[str, int]:
        return {
            "h_stratum": self.h_stratum,
            "n_fiber_total": sum(self.n_fibers.values()),
            "n_prime_stratum": self.n_prime_stratum,
            "h_prime_fiber_total": sum(self.h_prime_fibers.values()),
            "double_cone_one": self.double_cone_one,
            "double_cone_two": self.double_cone_two,
            "pairs_one": self.pairs_one,
            "pairs_two": self.pairs_two,
        }


@dataclass
class SymmetryTwoReport:
    """Outcome of the three symmetry-II statements with the measured values.

    f_* is taken for one fixed f at a time and (m')_* for one fixed m' at a
    time. The closed forms f_expected and m_expected are the sizes of the
    kernels of the unstratified maps Hom(L, Z[1]) -> Hom(X, Z[1]) and
    Hom(Y, L'[1]) -> Hom(Y, X[1]); every fiber over the stratum is the part of
    a kernel coset whose cone is M[1], so it can be smaller when the coset
    meets several strata. The balancing identity uses the average stratified
    fiber of each side.

    Attributes:
        f_fibers: |f_*^{-1}(n')| for every fixed f and every n' in its image.
        f_kernels: |ker f^*| on Hom(L, Z[1]), one entry per fixed f.
        m_fibers: |(m')_*^{-1}(h)| for every fixed m' and every h in its image.
        m_kernels: |ker m'[1]_*| on Hom(Y, L'[1]), one entry per fixed m'.
        third_sides: (|f_*^{-1}| {Y, X[1]} {L, Z[1]}, |(m')_*^{-1}| {X, Z[1]} {Y, L'[1]}).
    """

    f_surjective: bool
    f_fibers: list[int]
    f_kernels: list[int]
    f_expected: Fraction
    m_surjective: bool
    m_fibers: list[int]
    m_kernels: list[int]
    m_expected: Fraction
    third_sides: tuple[Fraction, Fraction]
    notes: list[str] = field(default_factory=list)

    @property
    def closed_form_fibers(self) -> bool:
        """True when every stratified fiber already has the closed-form size."""
        return all(k == self.f_expected for k in self.f_fibers) and all(k == self.m_expected for k in self.m_fibers)

    @property
    def passed(self) -> bool:
        return (
            self.f_surjective
            and self.m_surjective
            and all(k == self.f_expected for k in self.f_kernels)
            and all(k == self.m_expected for k in self.m_kernels)
            and self.third_sides[0] == self.third_sides[1]
        )


class Octahedron:
    """Enumerates both sides of one instance over a derived category."""

    def __init__(self, derived: DerivedCategory, instance: Instance) -> None:
        self.derived = derived
        self.inst = instance
        derived.validate(instance.X, instance.Y, instance.Z, instance.M, instance.L, instance.Lp)
        with derived.internal():
            self.S, self.iota_m, self.iota_x, self.pi_m, self.pi_x = derived.sum_structure(instance.M, instance.X)
        self._side_one: list[SideEntry] | None = None
        self._side_two: list[SideEntry] | None = None

    def _h_set(self, f: DMorphism, T: DObj) -> dict[tuple[int, ...], DMorphism]:
        return {h.coords: h for _, h in self.derived.completions(f, T)}

    def _g_set(self, f: DMorphism, T: DObj) -> dict[tuple[int, ...], DMorphism]:
        return {g.coords: g for g, _ in self.derived.completions(f, T)}

    def side_one(self) -> list[SideEntry]:
        """phi = (m; f) in Hom(M + X, L) with cone(f) = Y, cone(m) = Z[1], cone(phi) = L'[1]."""
        if self._side_one is None:
            dc, inst = self.derived, self.inst
            Z1, Lp1 = inst.Z.shift(1), inst.Lp.shift(1)
            entries = []
            with dc.internal():
                for phi in dc.hom(self.S, inst.L).morphisms(dc.cap):
                    f = dc.compose(phi, self.iota_x)
                    m = dc.compose(phi, self.iota_m)
                    if dc.cone(f) != inst.Y or dc.cone(m) != Z1 or dc.cone(phi) != Lp1:
                        continue
                    entries.append(SideEntry(phi, f, m, self._h_set(f, inst.Y), self._g_set(m, Z1)))
            self._side_one = entries
        return self._side_one

    def side_two(self) -> list[SideEntry]:
        """psi = (f', -m') in Hom(L', M + X) with cone(f') = Y, cone(m') = Z[1], cone(psi) = L."""
        if self._side_two is None:
            dc, inst = self.derived, self.inst
            Z1 = inst.Z.shift(1)
            entries = []
            with dc.internal():
                for psi in dc.hom(inst.Lp, self.S).morphisms(dc.cap):
                    fp = dc.compose(self.pi_m, psi)
                    mp = -dc.compose(self.pi_x, psi)
                    if dc.cone(fp) != inst.Y or dc.cone(mp) != Z1 or dc.cone(psi) != inst.L:
                        continue
                    entries.append(SideEntry(psi, fp, mp, self._h_set(fp, inst.Y), self._g_set(mp, Z1)))
            self._side_two = entries
        return self._side_two

    @staticmethod
    def _fibers(entries: list[SideEntry]) -> dict[tuple[int, ...], set[tuple[int, ...]]]:
        """Map each first-component completion to the union of second-component completions."""
        out: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for e in entries:
            for h in e.first_completions:
                out.setdefault(h, set()).update(e.second_completions)
        return out

    def counts(self) -> OctahedronCounts:
        one, two = self.side_one(), self.side_two()
        n_fibers = self._fibers(one)
        # side two is keyed by n' (the completion of m'), so swap roles
        h_prime: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for e in two:
            for n in e.second_completions:
                h_prime.setdefault(n, set()).update(e.first_completions)
        return OctahedronCounts(
            h_stratum=len(n_fibers),
            n_fibers={h: len(ns) for h, ns in n_fibers.items()},
            n_prime_stratum=len(h_prime),
            h_prime_fibers={n: len(hs) for n, hs in h_prime.items()},
            double_cone_one=len(one),
            double_cone_two=len(two),
            pairs_one=len({(h, n) for e in one for h in e.first_completions for n in e.second_completions}),
            pairs_two=len({(h, n) for e in two for h in e.first_completions for n in e.second_completions}),
        )

    def symmetry1_sides(self) -> tuple[Fraction, Fraction]:
        """Orbit counts of the two double-cone sets, weighted by braces."""
        dc, inst = self.derived, self.inst
        S, L, Lp = self.S, inst.L, inst.Lp
        with dc.internal():
            lp_l = dc.braces(Lp, L)
            lhs = Fraction(len(self.side_one()), dc.daut_order(L)) * dc.braces(S, L) / (lp_l * dc.braces(L, L))
            rhs = Fraction(len(self.side_two()), dc.daut_order(Lp)) * dc.braces(Lp, S) / (lp_l * dc.braces(Lp, Lp))
        return lhs, rhs

    def symmetry1_check(self) -> bool:
        lhs, rhs = self.symmetry1_sides()
        return lhs == rhs

    def symmetry2(self) -> SymmetryTwoReport:
        """Surjectivity and fiber sizes of f_* and (m')_*, then the balancing identity.

        f_* is n -> n f on the completions n of m over every side-one entry
        sharing f; (m')_* is h' -> m'[1] h' on the completions h' of f' over
        every side-two entry sharing m'. The kernels are counted on the full
        Hom spaces and compared with the closed forms.
        """
        dc, inst = self.derived, self.inst
        X, Y, Z, L, Lp = inst.X, inst.Y, inst.Z, inst.L, inst.Lp
        one, two = self.side_one(), self.side_two()
        notes: list[str] = []
        with dc.internal():
            Z1, X1, Lp1 = Z.shift(1), X.shift(1), Lp.shift(1)
            hom_yz = Fraction(self.derived.p ** dc.graded_hom_dim(Y, Z1, 0))
            f_expected = hom_yz * dc.braces(X + Y, Z1) / dc.braces(L, Z1)
            m_expected = hom_yz * dc.braces(Y, X1 + Z1) / dc.braces(Y, Lp1)

            n_prime_set = {n for e in two for n in e.second_completions}
            h_set = {h for e in one for h in e.first_completions}

            by_f: dict[tuple[int, ...], tuple[DMorphism, dict[tuple[int, ...], DMorphism]]] = {}
            for e in one:
                by_f.setdefault(e.first.coords, (e.first, {}))[1].update(e.second_completions)
            f_image: set[tuple[int, ...]] = set()
            f_fibers: list[int] = []
            f_kernels: list[int] = []
            hom_lz = list(dc.hom(L, Z1).morphisms(dc.cap))
            for f, ns in by_f.values():
                images = Counter(dc.compose(n, f).coords for n in ns.values())
                if not set(images) <= n_prime_set:
                    notes.append(f"f_* for f={f.coords} leaves Hom(X, Z[1])^L")
                f_image |= set(images)
                f_fibers.extend(images.values())
                f_kernels.append(sum(1 for n in hom_lz if dc.compose(n, f).is_zero()))
            f_surjective = f_image == n_prime_set
            if not f_surjective:
                notes.append("f_* images do not cover Hom(X, Z[1])^L")

            by_m: dict[tuple[int, ...], tuple[DMorphism, dict[tuple[int, ...], DMorphism]]] = {}
            for e in two:
                by_m.setdefault(e.second.coords, (e.second, {}))[1].update(e.first_completions)
            m_image: set[tuple[int, ...]] = set()
            m_fibers: list[int] = []
            m_kernels: list[int] = []
            hom_ylp = list(dc.hom(Y, Lp1).morphisms(dc.cap))
            for mp, hps in by_m.values():
                m_shift = dc.shift_morphism(mp, 1)
                images = Counter(dc.compose(m_shift, hp).coords for hp in hps.values())
                if not set(images) <= h_set:
                    notes.append(f"(m')_* for m'={mp.coords} leaves Hom(Y, X[1])^L'")
                m_image |= set(images)
                m_fibers.extend(images.values())
                m_kernels.append(sum(1 for hp in hom_ylp if dc.compose(m_shift, hp).is_zero()))
            m_surjective = m_image == h_set
            if not m_surjective:
                notes.append("(m')_* images do not cover Hom(Y, X[1])^L'")

            f_size = self._average_fiber(by_f, len(n_prime_set))
            m_size = self._average_fiber(by_m, len(h_set))
            third = (
                f_size * dc.braces(Y, X1) * dc.braces(L, Z1),
                m_size * dc.braces(X, Z1) * dc.braces(Y, Lp1),
            )
        report = SymmetryTwoReport(
            f_surjective, f_fibers, f_kernels, f_expected, m_surjective, m_fibers, m_kernels, m_expected, third, notes
        )
        if not report.closed_form_fibers:
            logger.debug("%s: stratified fibers %s / %s below closed forms", inst, f_fibers, m_fibers)
        return report

    @staticmethod
    def _average_fiber(groups: dict, image_size: int) -> Fraction:
        """Mean stratified fiber over the fixed first components; 0 when nothing is counted."""
        if not groups or not image_size:
            return Fraction(0)
        return Fraction(sum(len(fiber) for _, fiber in groups.values()), len(groups) * image_size)

    def symmetry2_check(self) -> bool:
        return self.symmetry2().passed


def generate_instances(
    derived: DerivedCategory,
    objects: Iterable[DObj],
    limit: int,
    include: Iterable[Instance] = (),
) -> list[Instance]:
    """Instances built from pairs f: X -> L, m: M -> L over the given objects.

    Y = cone(f), Z = cone(m)[-1] and L' = cone((m; f))[-1]. The included
    instances come first; generation stops at ``limit``.
    """
    found: list[Instance] = []
    seen: set[Instance] = set()
    for inst in include:
        if inst not in seen and len(found) < limit:
            seen.add(inst)
            found.append(inst)
    objects = list(objects)
    with derived.internal():
        for L in objects:
            if not L:
                continue
            for X in objects:
                for M in objects:
                    if len(found) >= limit:
                        return found
                    S, _, _, pi_m, pi_x = derived.sum_structure(M, X)
                    for f in derived.hom(X, L).morphisms(derived.cap):
                        for m in derived.hom(M, L).morphisms(derived.cap):
                            phi = derived.compose(m, pi_m) + derived.compose(f, pi_x)
                            inst = Instance(
                                X=X,
                                Y=derived.cone(f),
                                Z=derived.cone(m).shift(-1),
                                M=M,
                                L=L,
                                Lp=derived.cone(phi).shift(-1),
                            )
                            if inst in seen:
                                continue
                            seen.add(inst)
                            found.append(inst)
                            logger.debug("octahedron instance %s", inst)
                            if len(found) >= limit:
                                return found
    return found
