"""Extended twisted derived Hall algebras over Q(v), v^2 = q.

Basis keys are pairs (alpha, X) standing for K_alpha u_X, with alpha a class
in the Grothendieck group K(C) = Z^n. The plain products u_X u_Y come from
the derived Hall algebra; only the v-power twists live here.
"""
from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from errors import IdentityMismatch
from services import quiver_rep
from services.derived_cat import DObj
from services.derived_hall import DerivedHall
from services.exact_coeff import QuadExt
from services.hall_core import AlgElt, BasedAlgebra

logger = logging.getLogger(__name__)

KClass = tuple[int, ...]
EtKey = tuple[KClass, DObj]


def kclass_of(X: DObj, n: int) -> KClass:
    """[X] = sum over summands of (-1)^shift times the dimension vector."""
    out = [0] * n
    for (i, j), s, m in X.parts:
        for v in range(i - 1, j):
            out[v] += (-1) ** (s % 2) * m
    return tuple(out)


def kclass_add(a: Sequence[int], b: Sequence[int]) -> KClass:
    """Componentwise sum of two classes."""
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class Sweep:
    """How many instances of an identity agreed out of how many were covered."""

    agreeing: int = 0
    total: int = 0
    first_failure: str | None = None

    def add(self, n: int, ok: bool, where: str) -> None:
        self.total += n
        if ok:
            self.agreeing += n
        elif self.first_failure is None:
            self.first_failure = where

    def merge(self, other: "Sweep") -> None:
        self.total += other.total
        self.agreeing += other.agreeing
        if self.first_failure is None:
            self.first_failure = other.first_failure

    @property
    def passed(self) -> bool:
        return self.agreeing == self.total


class TwistedExt:
    """H_et, H_et^- and H_et^Dr over one derived Hall algebra.

    Args:
        hall: the derived Hall algebra supplying F and h constants.
    """

    def __init__(self, hall: DerivedHall) -> None:
        self.hall = hall
        self.quiver = hall.derived.catalog.quiver
        self.q = hall.p
        unit: EtKey = (self.zero_class(), DObj.zero())
        one = QuadExt.of(1, self.q)
        self.plus = BasedAlgebra("et", self.plus_products, self.dr_products, self.weight, unit, one)
        self.minus = BasedAlgebra("et-minus", self.minus_products, self.dr_products, self.weight, unit, one)

    def zero_class(self) -> KClass:
        """The class 0 in Z^n."""
        return (0,) * self.quiver.n

    def kclass(self, X: DObj) -> KClass:
        return kclass_of(X, self.quiver.n)

    def euler(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<a, b> from the Cartan data of the quiver."""
        return quiver_rep.euler_form(self.quiver, a, b)

    def sym(self, a: Sequence[int], b: Sequence[int]) -> int:
        """The symmetrized form (a, b) = <a, b> + <b, a>."""
        return self.euler(a, b) + self.euler(b, a)

    @cached_property
    def sym_matrix(self) -> np.ndarray:
        """Gram matrix of (-, -) on the simple classes."""
        basis = np.eye(self.quiver.n, dtype=np.int64)
        return np.array([[self.sym(ei, ej) for ej in basis] for ei in basis], dtype=np.int64)

    def class_grid(self, radius: int = 1) -> np.ndarray:
        """Every class with entries in [-radius, radius], one per row, in keys() order."""
        return np.array(list(itertools.product(range(-radius, radius + 1), repeat=self.quiver.n)), dtype=np.int64)

    def euler_sides(self, X: DObj, Y: DObj) -> tuple[int, int]:
        """(sum_i (-1)^i dim Hom(X, Y[i]), <[X], [Y]>)."""
        dc = self.hall.derived
        total = 0
        if X and Y:
            lo = min(X.shifts()) - max(Y.shifts()) - 1
            hi = max(X.shifts()) - min(Y.shifts()) + 1
            with dc.internal():
                for i in range(lo, hi + 1):
                    total += (-1) ** (i % 2) * dc.graded_hom_dim(X, Y, -i)
        return total, self.euler(self.kclass(X), self.kclass(Y))

    def euler_of_objects(self, X: DObj, Y: DObj) -> int:
        """sum_i (-1)^i dim Hom(X, Y[i]), cross-checked against the form on K-classes.

        Raises:
            IdentityMismatch: when the two values differ.
        """
        total, by_classes = self.euler_sides(X, Y)
        if total != by_classes:
            raise IdentityMismatch(f"<{X}, {Y}>: alternating Hom sum {total}, Euler form {by_classes}")
        return total

    def v(self, e: int) -> QuadExt:
        """v^e in Q(v)."""
        return QuadExt.v_power(e, self.q)

    # --- products ---

    def _twisted(self, a: EtKey, b: EtKey, sign: int) -> dict[EtKey, QuadExt]:
        (alpha, X), (beta, Y) = a, b
        cx, cy = self.kclass(X), self.kclass(Y)
        twist = self.v(self.euler(cx, cy) + sign * self.sym(beta, cx))
        gamma = kclass_add(alpha, beta)
        return {(gamma, L): twist * F for L, F in self.hall.algebra.basis_product(X, Y, False).items()}

    def plus_products(self, a: EtKey, b: EtKey) -> dict[EtKey, QuadExt]:
        """(K_a u_X)(K_b u_Y) = v^{<X,Y> - (b,[X])} K_{a+b} u_X u_Y."""
        return self._twisted(a, b, -1)

    def minus_products(self, a: EtKey, b: EtKey) -> dict[EtKey, QuadExt]:
        """(K_a u-_X)(K_b u-_Y) = v^{<X,Y> + (b,[X])} K_{a+b} u-_X u-_Y."""
        return self._twisted(a, b, 1)

    def dr_products(self, a: EtKey, b: EtKey) -> dict[EtKey, QuadExt]:
        """K_a theta_X * K_b theta_Y = v^{(b,[X]) - 2(a,b) + <X,Y>} sum_L h_L^{XY} K_{a+b} theta_L."""
        (alpha, X), (beta, Y) = a, b
        cx, cy = self.kclass(X), self.kclass(Y)
        twist = self.v(self.sym(beta, cx) - 2 * self.sym(alpha, beta) + self.euler(cx, cy))
        gamma = kclass_add(alpha, beta)
        return {(gamma, L): twist * h for L, h in self.hall.algebra.basis_product(X, Y, True).items()}

    def weight(self, key: EtKey) -> QuadExt:
        """v^{-(a,a)} t_X, so that Phi(K_a theta_X) = v^{(a,a)} t_X^{-1} K_a u-_X."""
        alpha, X = key
        return self.v(-self.sym(alpha, alpha)) * self.hall.t(X)

    # --- pairing and coproduct ---

    def pairing_basis(self, a: EtKey, b: EtKey) -> QuadExt:
        """(K_a u_X, K_b u-_Y) = v^{-(a,b) - (b,[X]) + (a,[Y])} delta_{XY} t_X."""
        (alpha, X), (beta, Y) = a, b
        if X != Y:
            return QuadExt.of(0, self.q)
        e = -self.sym(alpha, beta) - self.sym(beta, self.kclass(X)) + self.sym(alpha, self.kclass(Y))
        return self.v(e) * self.hall.t(X)

    def pairing(self, x: Mapping, y: Mapping) -> QuadExt:
        total = QuadExt.of(0, self.q)
        for a, ca in x.items():
            for b, cb in y.items():
                total = total + ca * cb * self.pairing_basis(a, b)
        return total

    def delta_component(self, a: EtKey, X: DObj, Y: DObj) -> tuple[QuadExt, EtKey, EtKey]:
        """The (X, Y) term of delta(K_g u_L), normalized to c K_{g+[Y]} u_X (x) K_g u_Y.

        Uses u_X K_b = v^{-(b,[X])} K_b u_X to move K_{[Y]} to the left.
        """
        gamma, L = a
        cx, cy = self.kclass(X), self.kclass(Y)
        h = self.hall.h_const(X, Y, L)
        c = self.v(self.euler(cx, cy) - self.sym(cy, cx)) * h
        return c, (kclass_add(gamma, cy), X), (gamma, Y)

    def pairing_identity_sides(self, a: Mapping, b: Mapping, c: Mapping) -> tuple[QuadExt, QuadExt]:
        """((a, bc), (delta(a), b (x) c)) with b, c in the minus algebra."""
        return self.pairing(a, self.minus.mul(b, c)), self._coproduct_side(a, b, c)

    def _coproduct_side(self, a: Mapping, b: Mapping, c: Mapping) -> QuadExt:
        rhs = QuadExt.of(0, self.q)
        for ka, ca in a.items():
            for kb, cb in b.items():
                for kc, cc in c.items():
                    coeff, left, right = self.delta_component(ka, kb[1], kc[1])
                    if not coeff:
                        continue
                    rhs = rhs + ca * cb * cc * coeff * self.pairing_basis(left, kb) * self.pairing_basis(right, kc)
        return rhs

    def pairing_identity_check(self, a: Mapping, b: Mapping, c: Mapping) -> bool:
        lhs, rhs = self.pairing_identity_sides(a, b, c)
        if lhs != rhs:
            logger.debug("pairing identity fails: %s != %s", lhs, rhs)
        return lhs == rhs

    # --- checks ---

    def assoc_check(self, a: EtKey, b: EtKey, c: EtKey, variant: str = "plus") -> bool:
        alg = self.plus if variant == "plus" else self.minus
        x, y, z = alg.u(a), alg.u(b), alg.u(c)
        return not alg.associator(x, y, z)

    def dr_phi_check(self, a: EtKey, b: EtKey) -> bool:
        """Phi(x * y) = Phi(x) Phi(y) from H_et^Dr to H_et^-."""
        alg = self.minus
        return alg.phi_check(alg.u(a), alg.u(b))

    def kclass_triangle_check(self, X: DObj, Y: DObj) -> bool:
        """[L] = [X] + [Y] for every middle term L of a product u_X u_Y."""
        target = kclass_add(self.kclass(X), self.kclass(Y))
        return all(self.kclass(L) == target for L in self.hall.middle_terms(X, Y))

    def keys(self, objects: Sequence[DObj], radius: int = 1) -> list[EtKey]:
        """Basis keys (alpha, X) with alpha in {-radius..radius}^n."""
        classes = itertools.product(range(-radius, radius + 1), repeat=self.quiver.n)
        return [(tuple(alpha), X) for alpha in classes for X in objects]

    # --- exhaustive sweeps over the classes of keys() ---

    def assoc_sweep(self, X: DObj, Y: DObj, Z: DObj, variant: str = "plus", radius: int = 1) -> Sweep:
        """Associativity of K_a u_X, K_b u_Y, K_c u_Z for every class triple (a, b, c) of keys().

        Both bracketings are multiplied out once with zero classes; the left
        one is kept split by the class of its intermediate middle term. The
        v-power a product picks up is linear in the classes, so each class
        pair (b, c) only rescales these pieces, and a relabels the output on
        both sides alike. Class pairs with the same exponents share one
        comparison.
        """
        alg = self.plus if variant == "plus" else self.minus
        sign = -1 if variant == "plus" else 1
        zero = self.zero_class()
        left: dict[KClass, AlgElt] = {}
        for (_, L), coeff in alg.basis_product((zero, X), (zero, Y), False).items():
            piece = alg.mul({(zero, L): coeff}, alg.u((zero, Z)))
            kc = self.kclass(L)
            left[kc] = left[kc] + piece if kc in left else piece
        right = alg.mul(alg.u((zero, X)), alg.mul(alg.u((zero, Y)), alg.u((zero, Z))))

        grid = self.class_grid(radius)
        gram = grid @ self.sym_matrix
        with_x = sign * (gram @ np.array(self.kclass(X), dtype=np.int64))
        with_y = sign * (gram @ np.array(self.kclass(Y), dtype=np.int64))
        with_l = {kc: sign * (gram @ np.array(kc, dtype=np.int64)) for kc in left}

        out = Sweep()
        verdicts: dict[tuple, bool] = {}
        for i, j in itertools.product(range(len(grid)), repeat=2):
            e_left = tuple(int(with_x[i] + with_l[kc][j]) for kc in left)
            e_right = int(with_y[j] + with_x[i] + with_x[j])
            if (e_left, e_right) not in verdicts:
                lhs = AlgElt()
                for e, piece in zip(e_left, left.values()):
                    lhs = lhs + piece.scale(self.v(e))
                verdicts[(e_left, e_right)] = lhs == right.scale(self.v(e_right))
            ok = verdicts[(e_left, e_right)]
            out.add(len(grid), ok, f"{alg.name} ({X}, {Y}, {Z}) b={tuple(grid[i])} c={tuple(grid[j])}")
        if not out.passed:
            logger.debug("%s associativity fails on %s", alg.name, out.first_failure)
        return out

    def pairing_sweep(self, Y: DObj, W: DObj, radius: int = 1) -> Sweep:
        """(a, bc) = (delta(a), b (x) c) for b = K_beta u-_Y, c = K_gamma u-_W and a = K_g u_L.

        Covers every beta, gamma, g of keys() and every middle term L of u_Y u_W.
        """
        classes = [tuple(int(x) for x in row) for row in self.class_grid(radius)]
        middle = list(self.hall.middle_terms(Y, W))
        one = self.minus.one
        out = Sweep()
        for beta, gamma in itertools.product(classes, repeat=2):
            b, c = {(beta, Y): one}, {(gamma, W): one}
            bc = self.minus.mul(b, c)
            for L, g in itertools.product(middle, classes):
                a = {(g, L): one}
                ok = self.pairing(a, bc) == self._coproduct_side(a, b, c)
                out.add(1, ok, f"a=({g}, {L}) b=({beta}, {Y}) c=({gamma}, {W})")
        return out


def et_basis(alpha: Sequence[int], X: DObj, q: int) -> AlgElt:
    """The basis element K_alpha u_X with coefficient 1 in Q(v)."""
    return AlgElt.basis((tuple(alpha), X), QuadExt.of(1, q))
