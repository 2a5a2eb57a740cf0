"""Point-supported motivic Hall algebras over Lambda = Q(L).

Over a representation-finite hereditary category every constructible family
meets finitely many iso classes, so stack functions reduce to Lambda-linear
combinations of points v_E = [pt -> Obj(C)]. The motivic class of a Hom
stratum is recovered as the polynomial in q interpolating its point counts
over several prime fields, with at least one prime held out as a check.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np
from sympy import Poly

import config
from errors import ConfigError, InterpolationFailure
from services import fq_linalg as fq
from services.derived_cat import DerivedCategory, DMorphism, DObj
from services.derived_hall import DerivedHall
from services.exact_coeff import RatFuncL, interpolate_poly, poly_l
from services.hall_core import AlgElt, BasedAlgebra
from services.quiver_rep import Quiver, build_catalog

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AutMotive:
    """L^t prod_i prod_{j=1..s_i} (L^{j d_i} - 1).

    Attributes:
        t: exponent of the leading Lefschetz power.
        blocks: pairs (d, s), one per distinct indecomposable summand.
    """

    t: int
    blocks: tuple[tuple[int, int], ...]

    def value(self) -> RatFuncL:
        return upsilon_aut_value(self)

    def evaluate(self, q: int) -> Fraction:
        out = Fraction(q) ** self.t
        for d, s in self.blocks:
            for j in range(1, s + 1):
                out *= q ** (j * d) - 1
        return out

    def __str__(self) -> str:
        pieces = [f"L^{self.t}"] if self.t else []
        for d, s in self.blocks:
            pieces.extend(f"(L^{j * d}-1)" for j in range(1, s + 1))
        return "*".join(pieces) or "1"


def upsilon_aut_value(motive: AutMotive) -> RatFuncL:
    """Expand an AutMotive into Lambda."""
    out = RatFuncL.lefschetz_power(motive.t)
    for d, s in motive.blocks:
        for j in range(1, s + 1):
            out = out * (RatFuncL.lefschetz_power(j * d) - 1)
    return out


@dataclass(frozen=True)
class CountingPolynomial:
    """A polynomial in L whose value at every sampled prime is an exact point count."""

    poly: Poly
    degree_bound: int
    primes: tuple[int, ...]
    held_out: tuple[int, ...]

    @property
    def value(self) -> RatFuncL:
        return RatFuncL.of(self.poly)

    def __str__(self) -> str:
        return str(self.value)


def count_poly(counter: Callable[[int], int], primes: Sequence[int], degree_bound: int) -> CountingPolynomial:
    """Interpolate counter(p) over the first degree_bound + 2 primes.

    The first degree_bound + 1 primes fit the polynomial, the last one is
    held out and must agree with it.

    Raises:
        ConfigError: too few primes for the degree bound.
        InterpolationFailure: the held-out count is off the fitted polynomial.
    """
    need = degree_bound + 2
    if len(primes) < need:
        raise ConfigError(f"degree bound {degree_bound} needs {need} primes, got {len(primes)}")
    used = tuple(primes[:need])
    samples = [(p, counter(p)) for p in used]
    poly = interpolate_poly(samples, degree_bound)
    return CountingPolynomial(poly, degree_bound, used[:-1], used[-1:])


class Motivic:
    """The KS motivic Hall algebra (basis v_E) and MH_T (basis u_E) on point classes.

    ``algebra.dual_mul`` is the KS product, ``algebra.mul`` the MH_T product
    and ``algebra.phi`` the isomorphism v_X -> Upsilon(Aut X) {X, X} u_X.

    Args:
        quiver: a type-A quiver.
        primes: the primes counts are sampled at, in order.
        window: shift window for user-supplied objects.
        cap: enumeration cap per prime.
    """

    def __init__(
        self,
        quiver: Quiver,
        primes: Sequence[int] = tuple(config.PRIMES),
        window: int = config.WINDOW,
        cap: int = config.CAP,
    ) -> None:
        if len(primes) < 2:
            raise ConfigError("the motivic layer needs at least two primes")
        self.quiver = quiver
        self.primes = tuple(primes)
        self.window = window
        self.cap = cap
        self._derived: dict[int, DerivedCategory] = {}
        self._strata: dict[tuple[DObj, DObj], dict[DObj, CountingPolynomial]] = {}
        self.algebra = BasedAlgebra(
            name="motivic",
            product=self.t_products,
            dual_product=self.hall_products,
            weight=self.weight,
            unit=DObj.zero(),
            one=RatFuncL.of(1),
        )

    def derived(self, p: int) -> DerivedCategory:
        if p not in self._derived:
            self._derived[p] = DerivedCategory(build_catalog(self.quiver, p), self.window, self.cap)
        return self._derived[p]

    @property
    def base(self) -> DerivedCategory:
        """The category over the first prime; it answers every p-independent question."""
        return self.derived(self.primes[0])

    # --- invariants ---

    def upsilon_aut(self, X: DObj) -> AutMotive:
        """Upsilon([Aut X]) for a Dynkin catalog, where d(U) = 1 for every indecomposable U."""
        dc = self.base
        dc.validate(X)
        with dc.internal():
            end = dc.graded_hom_dim(X, X, 0)
        mults = X.multiplicities()
        t = end - sum(m * m for m in mults) + sum(m * (m - 1) // 2 for m in mults)
        return AutMotive(t, tuple((1, m) for m in mults))

    def upsilon(self, X: DObj) -> RatFuncL:
        return self.upsilon_aut(X).value()

    def braces(self, X: DObj, Y: DObj) -> RatFuncL:
        """{X, Y} as an exact power of L."""
        dc = self.base
        with dc.internal():
            return RatFuncL.lefschetz_power(dc.braces_exponent(X, Y))

    def strata(self, A: DObj, B: DObj) -> dict[DObj, CountingPolynomial]:
        """[Hom(A, B)_E] for every cone E that occurs, as counting polynomials."""
        key = (A, B)
        if key in self._strata:
            return self._strata[key]
        with self.base.internal():
            degree = self.base.graded_hom_dim(A, B, 0)
        need = degree + 2
        if len(self.primes) < need:
            raise ConfigError(f"Hom({A}, {B}) has dimension {degree}; {need} primes needed, got {len(self.primes)}")
        counts: dict[int, dict[DObj, int]] = {}
        for p in self.primes[:need]:
            dc = self.derived(p)
            with dc.internal():
                counts[p] = {E: len(hs) for E, hs in dc.cone_strata(A, B).items()}
        cones = sorted({E for per_prime in counts.values() for E in per_prime}, key=str)
        out = {}
        for E in cones:
            try:
                out[E] = count_poly(lambda p, E=E: counts[p].get(E, 0), self.primes, degree)
            except InterpolationFailure:
                logger.error("Hom(%s, %s)_%s is not polynomial in q", A, B, E)
                raise
            logger.debug("[Hom(%s, %s)_%s] = %s", A, B, E, out[E])
        self._strata[key] = out
        return out

    def stratum(self, A: DObj, B: DObj, E: DObj) -> RatFuncL:
        found = self.strata(A, B).get(E)
        return found.value if found is not None else RatFuncL.of(0)

    # --- products ---

    def hall_products(self, X: DObj, Y: DObj) -> dict[DObj, RatFuncL]:
        """v_X * v_Y = {Y, X[1]} sum_E [Hom(Y, X[1])_E] v_{E[-1]}."""
        self.base.validate(X, Y)
        X1 = X.shift(1)
        braces = self.braces(Y, X1)
        return {E.shift(-1): braces * poly.value for E, poly in self.strata(Y, X1).items()}

    def t_products(self, X: DObj, Y: DObj) -> dict[DObj, RatFuncL]:
        """u_X u_Y = sum_L Upsilon(Aut X)^{-1} {X,X}^{-1} {X,L} [Hom(X, L)_Y] u_L."""
        self.base.validate(X, Y)
        scale = 1 / (self.upsilon(X) * self.braces(X, X))
        out = {}
        for E in self.strata(Y, X.shift(1)):
            L = E.shift(-1)
            out[L] = scale * self.braces(X, L) * self.stratum(X, L, Y)
        return out

    def weight(self, X: DObj) -> RatFuncL:
        """t_X = 1 / (Upsilon(Aut X) {X, X})."""
        return 1 / (self.upsilon(X) * self.braces(X, X))

    def mot_hall_mul(self, x: Mapping, y: Mapping) -> AlgElt:
        return self.algebra.dual_mul(x, y)

    def mot_T_mul(self, x: Mapping, y: Mapping) -> AlgElt:
        return self.algebra.mul(x, y)

    def v(self, X: DObj) -> AlgElt:
        return self.algebra.u(X)

    # --- identities ---

    def mot_rp_sides(self, Z: DObj, L: DObj, M: DObj) -> tuple[RatFuncL, RatFuncL]:
        """[Hom(Z,M)_L] {Z,M}/(Y(Aut Z){Z,L}{Z,Z}) and [Hom(M,L)_{Z[1]}] {M,L}/(Y(Aut L){Z,L}{L,L})."""
        self.base.validate(Z, L, M)
        zl = self.braces(Z, L)
        lhs = self.stratum(Z, M, L) * self.braces(Z, M) / (self.upsilon(Z) * zl * self.braces(Z, Z))
        rhs = self.stratum(M, L, Z.shift(1)) * self.braces(M, L) / (self.upsilon(L) * zl * self.braces(L, L))
        return lhs, rhs

    def mot_rp_check(self, Z: DObj, L: DObj, M: DObj) -> bool:
        lhs, rhs = self.mot_rp_sides(Z, L, M)
        if lhs != rhs:
            logger.debug("motivic RP fails on (%s, %s, %s): %s != %s", Z, L, M, lhs, rhs)
        return lhs == rhs

    def composition_ranks(self, l: DMorphism) -> tuple[int, int]:
        """(dim n Hom(Z[1], L), dim Hom(Z[1], L) n) for the standard triangle on l.

        n Hom(Z[1], L) = {t o n} lies in End L, Hom(Z[1], L) n = {n o t} in End Z[1].
        """
        dc = self.derived(l.space.source.p)
        Z = l.source
        with dc.internal():
            cone, _, n = dc.standard_triangle(l)
            ts = dc.hom_complexes(dc.carrier(Z.shift(1)), cone)
            basis = [ts.morphism(row) for row in np.eye(ts.dim, dtype=np.int64)]
            post = [dc.compose(t, n).coords for t in basis]
            pre = [dc.compose(n, t).coords for t in basis]
        return _span_dim(post, dc.p), _span_dim(pre, dc.p)

    def lemma_space_sides(self, l: DMorphism) -> tuple[tuple[RatFuncL, RatFuncL], tuple[RatFuncL, RatFuncL]]:
        """Both composition spaces against their brace expressions, as elements of Lambda.

        The ranks are recomputed on a morphism of the same stratum over each of
        the first three primes and must not depend on the prime.

        Raises:
            InterpolationFailure: the ranks vary with the prime.
        """
        Z, M = l.source, l.target
        dc = self.derived(l.space.source.p)
        with dc.internal():
            L = dc.cone(l)
        ranks = {}
        for p in self.primes[:3]:
            dp = self.derived(p)
            with dp.internal():
                rep = l if dp is dc else dp.cone_strata(Z, M)[L][0]
            ranks[p] = self.composition_ranks(rep)
        if len(set(ranks.values())) != 1:
            raise InterpolationFailure(f"composition space ranks vary with p for {Z} -> {M}: {ranks}")
        post, pre = next(iter(ranks.values()))
        zl = self.braces(Z, L)
        first = (RatFuncL.lefschetz_power(post), self.braces(M, L) / (zl * self.braces(L, L)))
        second = (RatFuncL.lefschetz_power(pre), self.braces(Z, M) / (zl * self.braces(Z, Z)))
        return first, second

    def lemma_space_check(self, l: DMorphism) -> bool:
        first, second = self.lemma_space_sides(l)
        return first[0] == first[1] and second[0] == second[1]

    def mot_phi_check(self, x: Mapping, y: Mapping) -> bool:
        """Phi(v_x * v_y) = Phi(v_x) Phi(v_y) in MH_T."""
        return self.algebra.phi_check(x, y)

    def partition_check(self, X: DObj, Y: DObj) -> bool:
        """sum_E [Hom(Y, X[1])_E] = L^{dim Hom(Y, X[1])}."""
        X1 = X.shift(1)
        total = RatFuncL.of(0)
        for poly in self.strata(Y, X1).values():
            total = total + poly.value
        with self.base.internal():
            dim = self.base.graded_hom_dim(Y, X1, 0)
        return total == RatFuncL.lefschetz_power(dim)

    def upsilon_oracle_check(self, X: DObj, primes: Sequence[int] | None = None) -> bool:
        """Upsilon(Aut X) at L = p equals |Aut X| over F_p."""
        value = self.upsilon(X)
        for p in primes or self.primes[:3]:
            dc = self.derived(p)
            with dc.internal():
                if value.evaluate(p) != dc.daut_order(X):
                    logger.debug("Upsilon(Aut %s) at %d is %s, |Aut| is %d", X, p, value.evaluate(p), dc.daut_order(X))
                    return False
        return True

    def specialization_check(self, X: DObj, Y: DObj, prime: int = 7) -> bool:
        """Both motivic products at L = prime agree with the derived Hall products over F_prime."""
        hall = DerivedHall(self.derived(prime))
        with hall.derived.internal():
            pairs = (
                (self.hall_products(X, Y), hall.dual_products(X, Y)),
                (self.t_products(X, Y), hall.products(X, Y)),
            )
        for motivic, counted in pairs:
            special = {L: c.evaluate(prime) for L, c in motivic.items() if c.evaluate(prime)}
            counted = {L: c for L, c in counted.items() if c}
            if special != counted:
                logger.debug("specialization of %s * %s at %d: %s != %s", X, Y, prime, special, counted)
                return False
        return True


def _span_dim(rows: list[tuple[int, ...]], p: int) -> int:
    if not rows:
        return 0
    return fq.rank(np.array(rows, dtype=np.int64), p)


def motivic_element(terms: Mapping[DObj, object]) -> AlgElt:
    """A point-supported stack function with coefficients coerced into Lambda."""
    return AlgElt({X: RatFuncL.of(c) for X, c in terms.items()})


def lefschetz(coefficients: Sequence[int]) -> RatFuncL:
    """Polynomial in L from its coefficients, constant term first."""
    return RatFuncL.of(poly_l(coefficients))
