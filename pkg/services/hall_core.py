"""Based algebras given by structure constants, their Drinfeld duals and the map Phi.

An algebra here is a basis (any hashable keys), a product on basis pairs, a
dual product on basis pairs and a weight t per key. The same checkers run
over Fraction, QuadExt and RatFuncL coefficients.
"""
from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterator

logger = logging.getLogger(__name__)

Key = Hashable
Products = dict[Key, Any]


class AlgElt(Mapping):
    """A finitely supported linear combination of basis keys; zero coefficients are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None) -> None:
        self._terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, key: Key, coeff: Any = 1) -> "AlgElt":
        return cls({key: coeff})

    def __getitem__(self, key: Key) -> Any:
        return self._terms[key]

    def __iter__(self) -> Iterator[Key]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "AlgElt") -> "AlgElt":
        out = dict(self._terms)
        for k, c in other.items():
            out[k] = out[k] + c if k in out else c
        return AlgElt(out)

    def __sub__(self, other: "AlgElt") -> "AlgElt":
        return self + other.scale(-1)

    def scale(self, c: Any) -> "AlgElt":
        return AlgElt({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        keys = set(self) | set(other)
        return all(self.get(k, 0) == other.get(k, 0) for k in keys)

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgElt({', '.join(f'{k}: {c}' for k, c in self._terms.items())})"


@dataclass(eq=False)
class BasedAlgebra:
    """An algebra with basis u_a, a dual algebra with basis v_a and weights t_a.

    Attributes:
        name: selector used by the CLI.
        product: (a, b) -> {l: g^l_{ab}} for u_a u_b.
        dual_product: (a, b) -> {l: h_l^{ab}} for v_a * v_b.
        weight: a -> t_a, nonzero.
        unit: key of the unit element.
        one: the coefficient 1 of the coefficient ring.
    """

    name: str
    product: Callable[[Key, Key], Products]
    dual_product: Callable[[Key, Key], Products]
    weight: Callable[[Key], Any]
    unit: Key
    one: Any = 1
    _products: dict = field(default_factory=dict, repr=False)
    _dual_products: dict = field(default_factory=dict, repr=False)

    def basis_product(self, a: Key, b: Key, dual: bool) -> Products:
        cache, fn = (self._dual_products, self.dual_product) if dual else (self._products, self.product)
        if (a, b) not in cache:
            cache[(a, b)] = {k: c for k, c in fn(a, b).items() if c}
        return cache[(a, b)]

    def _bilinear(self, x: Mapping, y: Mapping, dual: bool) -> AlgElt:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for lam, c in self.basis_product(a, b, dual).items():
                    term = c * ca * cb
                    out[lam] = out[lam] + term if lam in out else term
        return AlgElt(out)

    def u(self, key: Key) -> AlgElt:
        return AlgElt.basis(key, self.one)

    def mul(self, x: Mapping, y: Mapping) -> AlgElt:
        """u_a u_b = sum_l g^l_{ab} u_l, extended bilinearly."""
        return self._bilinear(x, y, dual=False)

    def dual_mul(self, x: Mapping, y: Mapping) -> AlgElt:
        """v_a * v_b = sum_l h_l^{ab} v_l, extended bilinearly."""
        return self._bilinear(x, y, dual=True)

    def g(self, a: Key, b: Key, lam: Key) -> Any:
        return self.basis_product(a, b, False).get(lam, 0 * self.one)

    def h(self, a: Key, b: Key, lam: Key) -> Any:
        return self.basis_product(a, b, True).get(lam, 0 * self.one)

    def pairing(self, x: Mapping, y: Mapping) -> Any:
        """(u_a, u_b) = delta_{ab} t_a."""
        total = 0 * self.one
        for a, ca in x.items():
            if a in y:
                total = total + ca * y[a] * self.weight(a)
        return total

    def hopf_sides(self, a: Key, b: Key, lam: Key) -> tuple[Any, Any]:
        """(h_l^{ab} t_a t_b, g^l_{ab} t_l)."""
        lhs = self.h(a, b, lam) * self.weight(a) * self.weight(b)
        rhs = self.g(a, b, lam) * self.weight(lam)
        return lhs, rhs

    def check_hopf_pairing(self, a: Key, b: Key, lam: Key) -> bool:
        lhs, rhs = self.hopf_sides(a, b, lam)
        return lhs == rhs

    def phi(self, x: Mapping) -> AlgElt:
        """Phi(v_a) = t_a^{-1} u_a."""
        return AlgElt({a: c / self.weight(a) for a, c in x.items()})

    def phi_sides(self, x: Mapping, y: Mapping) -> tuple[AlgElt, AlgElt]:
        return self.phi(self.dual_mul(x, y)), self.mul(self.phi(x), self.phi(y))

    def phi_check(self, x: Mapping, y: Mapping) -> bool:
        lhs, rhs = self.phi_sides(x, y)
        return lhs == rhs

    def associator(self, x: Mapping, y: Mapping, z: Mapping, dual: bool = False) -> AlgElt:
        """(xy)z - x(yz); zero exactly when the triple associates."""
        m = self.dual_mul if dual else self.mul
        return m(m(x, y), z) - m(x, m(y, z))

    def assoc_sides(self, x: Mapping, y: Mapping, z: Mapping, dual: bool = False) -> tuple[AlgElt, AlgElt]:
        m = self.dual_mul if dual else self.mul
        return m(m(x, y), z), m(x, m(y, z))
