"""The Ringel-Hall algebra of mod kQ and its Drinfeld dual.

The product counts submodules (Hall numbers), the dual product counts
extension classes by middle term. Both are computed by enumeration, never
one from the other, so the Riedtmann-Peng identity is a genuine check.
"""
from __future__ import annotations

import logging
from fractions import Fraction

import config
from services.hall_core import BasedAlgebra
from services.quiver_rep import Catalog, ModClass, extension_strata, hall_number

logger = logging.getLogger(__name__)


class RingelHall:
    """Ringel-Hall algebra H(A) over Q with g = Hall numbers and t_a = 1/|Aut a|.

    Args:
        catalog: interval catalog of the quiver over F_p.
        cap: enumeration cap.
        inverted_convention: read h_l^{ab} as |Ext^1(a, b)_l| / |Hom(a, b)|
            (extensions with b as sub). Kept only to demonstrate that this
            reading breaks the Riedtmann-Peng identity.
    """

    def __init__(self, catalog: Catalog, cap: int = config.CAP, inverted_convention: bool = False) -> None:
        self.catalog = catalog
        self.cap = cap
        self.inverted_convention = inverted_convention
        self._strata: dict[tuple[ModClass, ModClass], dict[ModClass, int]] = {}
        self.algebra = BasedAlgebra(
            name="hall",
            product=self.g_products,
            dual_product=self.h_products,
            weight=self.weight,
            unit=ModClass.zero(),
            one=Fraction(1),
        )

    @property
    def p(self) -> int:
        return self.catalog.p

    def strata(self, sub: ModClass, quot: ModClass) -> dict[ModClass, int]:
        if (sub, quot) not in self._strata:
            self._strata[(sub, quot)] = extension_strata(self.catalog, sub, quot, self.cap)
        return self._strata[(sub, quot)]

    def g_products(self, a: ModClass, b: ModClass) -> dict[ModClass, Fraction]:
        """u_a u_b = sum_l g^l_{ab} u_l; l runs over middle terms of Ext^1(b, a)."""
        return {
            lam: Fraction(hall_number(self.catalog, lam, a, b, self.cap))
            for lam in self.strata(a, b)
        }

    def h_products(self, a: ModClass, b: ModClass) -> dict[ModClass, Fraction]:
        """v_a * v_b = sum_l h_l^{ab} v_l with h = |Ext^1(b, a)_l| / |Hom(b, a)|."""
        if self.inverted_convention:
            divisor = self.p ** self.catalog.hom_dim(a, b)
            return {lam: Fraction(n, divisor) for lam, n in self.strata(b, a).items()}
        divisor = self.p ** self.catalog.hom_dim(b, a)
        return {lam: Fraction(n, divisor) for lam, n in self.strata(a, b).items()}

    def weight(self, a: ModClass) -> Fraction:
        return Fraction(1, self.catalog.aut_order(a))

    def green_delta(self, lam: ModClass) -> dict[tuple[ModClass, ModClass], Fraction]:
        """delta(u_l) = sum h_l^{ab} u_a (x) u_b over all pairs with [a] + [b] = [l]."""
        n = self.catalog.quiver.n
        target = lam.dimvec(n)
        total = sum(target)
        classes = self.catalog.classes(total)
        out: dict[tuple[ModClass, ModClass], Fraction] = {}
        for a in classes:
            da = a.dimvec(n)
            if any(x > y for x, y in zip(da, target)):
                continue
            for b in classes:
                if tuple(x + y for x, y in zip(da, b.dimvec(n))) != target:
                    continue
                h = self.algebra.h(a, b, lam)
                if h:
                    out[(a, b)] = h
        return out

    def rp_sides(self, a: ModClass, b: ModClass, lam: ModClass) -> tuple[Fraction, Fraction]:
        """(h_l^{ab}, g^l_{ab} a_a a_b / a_l), each side computed independently."""
        cat = self.catalog
        lhs = self.algebra.h(a, b, lam)
        g = hall_number(cat, lam, a, b, self.cap)
        rhs = Fraction(g * cat.aut_order(a) * cat.aut_order(b), cat.aut_order(lam))
        return lhs, rhs

    def rp_check(self, a: ModClass, b: ModClass, lam: ModClass) -> bool:
        lhs, rhs = self.rp_sides(a, b, lam)
        if lhs != rhs:
            logger.debug("Riedtmann-Peng fails on (%s, %s, %s): %s != %s", a, b, lam, lhs, rhs)
        return lhs == rhs

    def ext_partition_sides(self, a: ModClass, b: ModClass) -> tuple[Fraction, int]:
        """(sum_l h_l^{ab} |Hom(b, a)|, p^{dim Ext^1(b, a)})."""
        hom = self.p ** self.catalog.hom_dim(b, a)
        total = sum((h * hom for h in self.algebra.basis_product(a, b, True).values()), Fraction(0))
        return total, self.p ** self.catalog.ext_dim(b, a)
