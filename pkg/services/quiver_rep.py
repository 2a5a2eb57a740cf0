"""Representations of acyclic quivers over F_p.

Covers the finitary abelian category mod kQ at desk scale: Hom spaces as
solution spaces of intertwining equations, minimal projective presentations,
Ext^1 coordinate spaces, middle terms of extensions, iso-class labelling
against the interval catalog of type A_n, automorphism counts and Hall
numbers by submodule enumeration.

Vertices are 0-based internally and 1-based in labels: the interval module
I[i,j] is supported on vertices i..j of the path 1 - 2 - ... - n.
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np
import sympy

import config
from errors import CapExceeded, ConfigError, IdentityMismatch, NotTypeA
from services import fq_linalg as fq

logger = logging.getLogger(__name__)

Label = tuple[int, int]

_QUIVER_SPEC = re.compile(r"^A(\d+)(?::([<>]*))?$")
_INTERVAL = re.compile(r"^I\[(\d+),(\d+)\]$")


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver on vertices 0..n-1 with arrows (source, target)."""

    n: int
    arrows: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self) -> None:
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n) or s == t:
                raise ConfigError(f"arrow {s}->{t} invalid for {self.n} vertices")
        if self._has_cycle():
            raise ConfigError("quiver must be acyclic")

    def _has_cycle(self) -> bool:
        indegree = [0] * self.n
        for _, t in self.arrows:
            indegree[t] += 1
        ready = [v for v in range(self.n) if indegree[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indegree[t] -= 1
                    if indegree[t] == 0:
                        ready.append(t)
        return seen != self.n

    @property
    def is_type_a(self) -> bool:
        """True when the underlying graph is the path 1 - 2 - ... - n."""
        edges = sorted(tuple(sorted(a)) for a in self.arrows)
        return edges == [(i, i + 1) for i in range(self.n - 1)]

    def incoming(self, v: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == v]

    def __str__(self) -> str:
        return self.name or f"Q{self.n}{list(self.arrows)}"


def parse_quiver_spec(text: str) -> Quiver:
    """Parse "A<n>" (linear 1->...->n) or "A<n>:<orientation>".

    The orientation string has n-1 characters, '>' for i->i+1 and '<' for
    i+1->i.

    Raises:
        ConfigError: on any other form.
    """
    match = _QUIVER_SPEC.match(text.strip())
    if not match:
        raise ConfigError(f"invalid quiver spec {text!r}; expected A<n> or A<n>:<orientation>")
    n = int(match.group(1))
    if n < 1:
        raise ConfigError("a quiver needs at least one vertex")
    orientation = match.group(2)
    if orientation is None:
        orientation = ">" * (n - 1)
    if len(orientation) != n - 1:
        raise ConfigError(f"orientation {orientation!r} must have {n - 1} characters")
    arrows = tuple((i, i + 1) if c == ">" else (i + 1, i) for i, c in enumerate(orientation))
    return Quiver(n=n, arrows=arrows, name=text.strip())


@dataclass(frozen=True, eq=False)
class Rep:
    """A representation: one vector space F_p^{dims[v]} per vertex and one matrix per arrow.

    The matrix of arrow a: s -> t has shape dims[t] x dims[s].
    """

    quiver: Quiver
    p: int
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.dims) != self.quiver.n:
            raise ValueError("dimension vector length differs from vertex count")
        if len(self.maps) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        fixed = []
        for (s, t), A in zip(self.quiver.arrows, self.maps):
            A = fq.mod_p(np.asarray(A, dtype=np.int64).reshape(self.dims[t], self.dims[s]), self.p)
            fixed.append(A)
        object.__setattr__(self, "maps", tuple(fixed))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def path_action(self, path: Sequence[int], v: int) -> np.ndarray:
        """Matrix of the composite arrow path starting at vertex v."""
        A = fq.identity(self.dims[v])
        for a in path:
            A = fq.matmul(self.maps[a], A, self.p)
        return A


def zero_rep(quiver: Quiver, p: int) -> Rep:
    return Rep(quiver, p, (0,) * quiver.n, tuple(fq.zeros(0, 0) for _ in quiver.arrows))


def direct_sum(reps: Sequence[Rep], quiver: Quiver | None = None, p: int | None = None) -> Rep:
    """Block-diagonal direct sum; an empty list needs quiver and p."""
    if not reps:
        return zero_rep(quiver, p)
    Q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(Q.n))
    maps = []
    for k, (s, t) in enumerate(Q.arrows):
        A = fq.zeros(dims[t], dims[s])
        r0 = c0 = 0
        for r in reps:
            A[r0:r0 + r.dims[t], c0:c0 + r.dims[s]] = r.maps[k]
            r0 += r.dims[t]
            c0 += r.dims[s]
        maps.append(A)
    return Rep(Q, p, dims, tuple(maps))


def interval_rep(quiver: Quiver, p: int, label: Label) -> Rep:
    """The thin module I[i,j] with identity maps inside its support."""
    i, j = label
    if not (1 <= i <= j <= quiver.n):
        raise ConfigError(f"interval I[{i},{j}] outside A_{quiver.n}")
    dims = tuple(1 if i - 1 <= v <= j - 1 else 0 for v in range(quiver.n))
    maps = tuple(np.ones((dims[t], dims[s]), dtype=np.int64) for s, t in quiver.arrows)
    return Rep(quiver, p, dims, maps)


def paths_from(quiver: Quiver, v: int) -> list[tuple[tuple[int, ...], int]]:
    """All paths starting at v as (arrow sequence, end vertex), trivial path first."""
    out = [((), v)]
    frontier = [((), v)]
    while frontier:
        nxt = []
        for path, end in frontier:
            for k, (s, t) in enumerate(quiver.arrows):
                if s == end:
                    nxt.append((path + (k,), t))
        out.extend(nxt)
        frontier = nxt
    return out


def projective(quiver: Quiver, p: int, v: int) -> Rep:
    """The indecomposable projective P_v; its basis at w is the set of paths v -> w."""
    paths = paths_from(quiver, v)
    index: dict[tuple[int, ...], tuple[int, int]] = {}
    counts = [0] * quiver.n
    for path, end in paths:
        index[path] = (end, counts[end])
        counts[end] += 1
    maps = [fq.zeros(counts[t], counts[s]) for s, t in quiver.arrows]
    for path, end in paths:
        for k, (s, t) in enumerate(quiver.arrows):
            if s == end:
                maps[k][index[path + (k,)][1], index[path][1]] = 1
    return Rep(quiver, p, tuple(counts), tuple(maps))


def cartan_matrix(quiver: Quiver) -> np.ndarray:
    """Row v is the dimension vector of P_v (number of paths v -> w)."""
    C = np.zeros((quiver.n, quiver.n), dtype=np.int64)
    for v in range(quiver.n):
        for _, end in paths_from(quiver, v):
            C[v, end] += 1
    return C


def euler_form(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j."""
    value = sum(int(d[i]) * int(e[i]) for i in range(quiver.n))
    value -= sum(int(d[s]) * int(e[t]) for s, t in quiver.arrows)
    return value


# --- Hom spaces ---


def block_layout(M: Rep, N: Rep, offset: int = 0) -> list[int]:
    """Offsets of the per-vertex blocks phi_v (N_v x M_v, row-major) in a variable vector."""
    offsets = []
    pos = offset
    for v in range(M.quiver.n):
        offsets.append(pos)
        pos += N.dims[v] * M.dims[v]
    offsets.append(pos)
    return offsets


def hom_constraints(M: Rep, N: Rep, offsets: Sequence[int], width: int) -> np.ndarray:
    """Rows encoding N_a phi_s - phi_t M_a = 0 for every arrow a: s -> t.

    Uses vec(A X B) = kron(A, B^T) vec(X) for row-major vec.
    """
    blocks = []
    for k, (s, t) in enumerate(M.quiver.arrows):
        rows = N.dims[t] * M.dims[s]
        if rows == 0:
            continue
        E = fq.zeros(rows, width)
        E[:, offsets[s]:offsets[s + 1]] += np.kron(N.maps[k], fq.identity(M.dims[s]))
        E[:, offsets[t]:offsets[t + 1]] -= np.kron(fq.identity(N.dims[t]), M.maps[k].T)
        blocks.append(fq.mod_p(E, M.p))
    if not blocks:
        return fq.zeros(0, width)
    return np.concatenate(blocks, axis=0)


@dataclass(frozen=True, eq=False)
class HomBasis:
    """A basis of Hom(source, target); columns of ``basis`` are flattened homomorphisms."""

    source: Rep
    target: Rep
    offsets: list[int]
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def width(self) -> int:
        return self.offsets[-1]

    def maps(self, vec: np.ndarray) -> tuple[np.ndarray, ...]:
        vec = np.asarray(vec, dtype=np.int64).reshape(-1)
        return tuple(
            vec[self.offsets[v]:self.offsets[v + 1]].reshape(self.target.dims[v], self.source.dims[v])
            for v in range(self.source.quiver.n)
        )

    def vectorize(self, maps: Sequence[np.ndarray]) -> np.ndarray:
        if not maps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([np.asarray(m, dtype=np.int64).reshape(-1) for m in maps])

    def coordinates(self, maps: Sequence[np.ndarray]) -> np.ndarray:
        return fq.coordinates(self.basis, self.vectorize(maps), self.source.p).reshape(-1)

    def element(self, coords: Sequence[int]) -> tuple[np.ndarray, ...]:
        c = np.asarray(coords, dtype=np.int64).reshape(-1)
        return self.maps(fq.mod_p(self.basis @ c, self.source.p) if self.dim else np.zeros(self.width, dtype=np.int64))

    def elements(self, cap: int) -> Iterator[tuple[np.ndarray, ...]]:
        for _, vec in fq.enumerate_span(self.basis, self.source.p, cap):
            yield self.maps(vec)


def hom_space(M: Rep, N: Rep) -> HomBasis:
    """Basis of the vertex-wise matrices commuting with all arrow maps."""
    if M.quiver != N.quiver or M.p != N.p:
        raise ValueError("representations live over different quivers or fields")
    offsets = block_layout(M, N)
    E = hom_constraints(M, N, offsets, offsets[-1])
    return HomBasis(M, N, offsets, fq.kernel_basis(E, M.p))


def compose(g: Sequence[np.ndarray], f: Sequence[np.ndarray], p: int) -> tuple[np.ndarray, ...]:
    """Vertex-wise g o f."""
    return tuple(fq.matmul(gv, fv, p) for gv, fv in zip(g, f))


def is_iso_map(f: Sequence[np.ndarray], p: int) -> bool:
    return all(fq.is_invertible(fv, p) for fv in f)


# --- sub- and quotient representations ---


def restrict(V: Rep, bases: Sequence[np.ndarray]) -> Rep:
    """Subrepresentation spanned vertex-wise by the given column bases."""
    maps = []
    for k, (s, t) in enumerate(V.quiver.arrows):
        image = fq.matmul(V.maps[k], bases[s], V.p)
        maps.append(fq.coordinates(bases[t], image, V.p))
    return Rep(V.quiver, V.p, tuple(b.shape[1] for b in bases), tuple(maps))


def quotient(V: Rep, bases: Sequence[np.ndarray]) -> Rep:
    """Quotient of V by the subrepresentation with the given column bases."""
    complements, inverses = [], []
    for v in range(V.quiver.n):
        U = np.asarray(bases[v], dtype=np.int64)
        C = fq.complement_columns(U, V.p, V.dims[v])
        complements.append(C)
        inverses.append(fq.inv_mat(np.concatenate([U, C], axis=1), V.p))
    maps = []
    for k, (s, t) in enumerate(V.quiver.arrows):
        kt = V.dims[t] - complements[t].shape[1]
        A = fq.matmul(inverses[t], fq.matmul(V.maps[k], complements[s], V.p), V.p)
        maps.append(A[kt:, :])
    return Rep(V.quiver, V.p, tuple(C.shape[1] for C in complements), tuple(maps))


def radical_columns(V: Rep, v: int) -> np.ndarray:
    """Columns spanning rad(V)_v, the sum of images of arrows into v."""
    parts = [V.maps[k] for k in V.quiver.incoming(v)]
    if not parts:
        return fq.zeros(V.dims[v], 0)
    return fq.column_space(np.concatenate(parts, axis=1), V.p)


def _projective_cover(V: Rep) -> tuple[Rep, tuple[np.ndarray, ...], list[int]]:
    """Projective cover P -> V built from a complement of rad V at each vertex."""
    Q, p = V.quiver, V.p
    summands: list[Rep] = []
    tops: list[int] = []
    columns: list[list[np.ndarray]] = [[] for _ in range(Q.n)]
    for w in range(Q.n):
        top = fq.complement_columns(radical_columns(V, w), p, V.dims[w])
        for k in range(top.shape[1]):
            e = top[:, k]
            tops.append(w)
            summands.append(projective(Q, p, w))
            for path, end in paths_from(Q, w):
                columns[end].append(fq.matmul(V.path_action(path, w), e.reshape(-1, 1), p))
    P = direct_sum(summands, Q, p)
    pi = tuple(
        np.concatenate(columns[u], axis=1) if columns[u] else fq.zeros(V.dims[u], 0)
        for u in range(Q.n)
    )
    for u in range(Q.n):
        if fq.rank(pi[u], p) != V.dims[u]:
            raise IdentityMismatch(f"projective cover is not surjective at vertex {u + 1}")
    return P, pi, tops


@dataclass(frozen=True, eq=False)
class Presentation:
    """Minimal projective presentation 0 -> P1 -d-> P0 -pi-> M -> 0."""

    module: Rep
    p1: Rep
    p0: Rep
    d: tuple[np.ndarray, ...]
    pi: tuple[np.ndarray, ...]
    p1_tops: list[int] = field(default_factory=list)
    p0_tops: list[int] = field(default_factory=list)


def projective_presentation(M: Rep) -> Presentation:
    """Minimal projective presentation of M; minimality is asserted."""
    Q, p = M.quiver, M.p
    P0, pi0, tops0 = _projective_cover(M)
    K_bases = [fq.kernel_basis(pi0[u], p) for u in range(Q.n)]
    K = restrict(P0, K_bases)
    P1, pi1, tops1 = _projective_cover(K)
    if P1.dims != K.dims:
        raise IdentityMismatch("kernel of a projective cover is not projective")
    d = tuple(fq.matmul(K_bases[u], pi1[u], p) for u in range(Q.n))
    for u in range(Q.n):
        rad = radical_columns(P0, u)
        if fq.rank(np.concatenate([rad, d[u]], axis=1), p) != rad.shape[1]:
            raise IdentityMismatch("presentation is not minimal: d leaves the radical")
    return Presentation(M, P1, P0, d, pi0, tops1, tops0)


# --- Ext^1 ---


def precompose_map(source: HomBasis, target: HomBasis, d: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of psi -> psi o d from Hom(P0, X) to Hom(P1, X) in basis coordinates."""
    p = source.source.p
    cols = []
    for k in range(source.dim):
        psi = source.element(np.eye(source.dim, dtype=np.int64)[k])
        cols.append(target.coordinates(compose(psi, d, p)).reshape(-1, 1))
    if not cols:
        return fq.zeros(target.dim, 0)
    return np.concatenate(cols, axis=1)


@dataclass(frozen=True, eq=False)
class ExtSpace:
    """Coordinates of Ext^1(quot, sub) = Hom(P1, sub) / (Hom(P0, sub) o d).

    Extensions 0 -> sub -> E -> quot -> 0; ``complement`` columns (in
    Hom(P1, sub) coordinates) give one representative per class.
    """

    sub: Rep
    quot: Rep
    presentation: Presentation
    hom_p1: HomBasis
    complement: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.complement.shape[1])

    def representative(self, coords: Sequence[int]) -> tuple[np.ndarray, ...]:
        c = np.asarray(coords, dtype=np.int64).reshape(-1)
        if c.shape[0] != self.dim:
            raise ValueError(f"Ext coordinate needs {self.dim} entries, got {c.shape[0]}")
        if self.dim == 0:
            return self.hom_p1.element(np.zeros(self.hom_p1.dim, dtype=np.int64))
        return self.hom_p1.element(fq.mod_p(self.complement @ c, self.sub.p))

    def middle(self, coords: Sequence[int]) -> Rep:
        """Pushout (sub + P0) / {(psi(x), -d(x))} along the class representative psi."""
        psi = self.representative(coords)
        pres, X, p = self.presentation, self.sub, self.sub.p
        total = direct_sum([X, pres.p0])
        bases = [
            fq.mod_p(np.concatenate([psi[u], -pres.d[u]], axis=0), p)
            for u in range(X.quiver.n)
        ]
        return quotient(total, bases)

    def classes(self, cap: int) -> Iterator[tuple[int, ...]]:
        fq.check_cap("Ext^1 classes", self.sub.p, self.dim, cap)
        return itertools.product(range(self.sub.p), repeat=self.dim)


def ext_space(sub: Rep, quot: Rep) -> ExtSpace:
    pres = projective_presentation(quot)
    hom_p0 = hom_space(pres.p0, sub)
    hom_p1 = hom_space(pres.p1, sub)
    image = precompose_map(hom_p0, hom_p1, pres.d)
    complement = fq.complement_columns(fq.column_space(image, sub.p), sub.p, hom_p1.dim)
    return ExtSpace(sub, quot, pres, hom_p1, complement)


def ext1_dim(M: Rep, N: Rep) -> int:
    """dim Ext^1(M, N) from the Euler form, cross-checked against the presentation cokernel."""
    by_euler = hom_space(M, N).dim - euler_form(M.quiver, M.dims, N.dims)
    by_presentation = ext_space(N, M).dim
    if by_euler != by_presentation:
        raise IdentityMismatch(
            f"Ext^1 dimension {by_euler} from the Euler form, {by_presentation} from the presentation"
        )
    return by_euler


# --- iso classes ---


def interval_str(label: Label) -> str:
    return f"I[{label[0]},{label[1]}]"


def parse_interval(text: str) -> Label:
    match = _INTERVAL.match(text.strip())
    if not match:
        raise ConfigError(f"invalid indecomposable label {text!r}")
    return int(match.group(1)), int(match.group(2))


def _format_sum(pieces: list[tuple[str, int]]) -> str:
    if not pieces:
        return "0"
    return "+".join(name if m == 1 else f"{m}*{name}" for name, m in pieces)


def _split_sum(text: str) -> list[tuple[str, int]]:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return []
    out = []
    for piece in text.split("+"):
        mult, _, name = piece.rpartition("*")
        out.append((name, int(mult) if mult else 1))
    return out


@dataclass(frozen=True)
class ModClass:
    """Iso class of a module: multiset of interval labels, sorted descending."""

    parts: tuple[tuple[Label, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[Label] | dict[Label, int]) -> "ModClass":
        counts: dict[Label, int] = {}
        pairs = items.items() if isinstance(items, dict) else ((label, 1) for label in items)
        for label, m in pairs:
            counts[tuple(label)] = counts.get(tuple(label), 0) + int(m)
        return cls(tuple(sorted(((k, m) for k, m in counts.items() if m > 0), reverse=True)))

    @classmethod
    def zero(cls) -> "ModClass":
        return cls(())

    @classmethod
    def parse(cls, text: str) -> "ModClass":
        return cls.of({parse_interval(name): m for name, m in _split_sum(text)})

    def __add__(self, other: "ModClass") -> "ModClass":
        counts = dict(self.parts)
        for label, m in other.parts:
            counts[label] = counts.get(label, 0) + m
        return ModClass.of(counts)

    def summands(self) -> list[Label]:
        return [label for label, m in self.parts for _ in range(m)]

    @property
    def count(self) -> int:
        return sum(m for _, m in self.parts)

    def dimvec(self, n: int) -> tuple[int, ...]:
        d = [0] * n
        for (i, j), m in self.parts:
            for v in range(i - 1, j):
                d[v] += m
        return tuple(d)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return _format_sum([(interval_str(label), m) for label, m in self.parts])


def gl_order(m: int, p: int) -> int:
    """|GL_m(F_p)| = prod_{k<m} (p^m - p^k)."""
    out = 1
    for k in range(m):
        out *= p**m - p**k
    return out


@dataclass(eq=False)
class Catalog:
    """The indecomposables of a type-A quiver over F_p with Hom and Ext tables.

    Built once per (quiver, p) by :func:`build_catalog`; every later call is
    a read or a memoized computation.
    """

    quiver: Quiver
    p: int
    labels: list[Label]
    reps: dict[Label, Rep]
    hom: dict[tuple[Label, Label], int]
    ext: dict[tuple[Label, Label], int]
    presentations: dict[Label, Presentation]
    _hom_inverse: sympy.Matrix = field(repr=False)
    _rep_cache: dict[ModClass, Rep] = field(default_factory=dict, repr=False)

    def rep_of(self, cls: ModClass) -> Rep:
        """Canonical representative: the direct sum of its interval summands."""
        if cls not in self._rep_cache:
            self._rep_cache[cls] = direct_sum([self.reps[label] for label in cls.summands()], self.quiver, self.p)
        return self._rep_cache[cls]

    def fingerprint(self, M: Rep) -> list[int]:
        return [hom_space(M, self.reps[label]).dim for label in self.labels]

    def iso_class(self, M: Rep) -> ModClass:
        """Krull-Schmidt decomposition from the fingerprint dim Hom(M, I)."""
        if M.total_dim == 0:
            return ModClass.zero()
        f = sympy.Matrix([self.fingerprint(M)])
        m = f * self._hom_inverse
        counts = {}
        for label, value in zip(self.labels, m):
            if not value.is_integer or value < 0:
                raise IdentityMismatch(f"fingerprint of a {M.dims} representation does not decompose")
            if value:
                counts[label] = int(value)
        cls = ModClass.of(counts)
        if cls.dimvec(self.quiver.n) != M.dims:
            raise IdentityMismatch(f"iso class {cls} has the wrong dimension vector for {M.dims}")
        return cls

    def hom_dim(self, X: ModClass, Y: ModClass) -> int:
        return sum(mx * my * self.hom[(a, b)] for a, mx in X.parts for b, my in Y.parts)

    def ext_dim(self, X: ModClass, Y: ModClass) -> int:
        return sum(mx * my * self.ext[(a, b)] for a, mx in X.parts for b, my in Y.parts)

    def aut_order(self, X: ModClass) -> int:
        """|Aut X| = p^{dim rad End X} * prod |GL_{m_i}(F_p)|."""
        rad = self.hom_dim(X, X) - sum(m * m for _, m in X.parts)
        out = self.p**rad
        for _, m in X.parts:
            out *= gl_order(m, self.p)
        return out

    def classes(self, max_dim: int, max_summands: int | None = None) -> list[ModClass]:
        """All module classes of total dimension <= max_dim, smallest first."""
        weights = {label: label[1] - label[0] + 1 for label in self.labels}
        out = [ModClass.zero()]

        def extend(start: int, current: dict[Label, int], dim: int, count: int) -> None:
            for k in range(start, len(self.labels)):
                label = self.labels[k]
                if dim + weights[label] > max_dim:
                    continue
                if max_summands is not None and count + 1 > max_summands:
                    continue
                current[label] = current.get(label, 0) + 1
                out.append(ModClass.of(current))
                extend(k, current, dim + weights[label], count + 1)
                current[label] -= 1

        extend(0, {}, 0, 0)
        return sorted(set(out), key=lambda c: (sum(c.dimvec(self.quiver.n)), str(c)))


@lru_cache(maxsize=None)
def build_catalog(quiver: Quiver, p: int) -> Catalog:
    """Indecomposables of a type-A quiver (the intervals) with their tables.

    Raises:
        NotTypeA: if the quiver's underlying graph is not a path.
    """
    if not quiver.is_type_a:
        raise NotTypeA(f"{quiver} is not of type A; only brute-force operations are available")
    labels = [(i, j) for i in range(1, quiver.n + 1) for j in range(i, quiver.n + 1)]
    reps = {label: interval_rep(quiver, p, label) for label in labels}
    hom = {(a, b): hom_space(reps[a], reps[b]).dim for a in labels for b in labels}
    ext = {(a, b): ext1_dim(reps[a], reps[b]) for a in labels for b in labels}
    presentations = {label: projective_presentation(reps[label]) for label in labels}
    H = sympy.Matrix([[hom[(a, b)] for b in labels] for a in labels])
    if H.det() == 0:
        raise IdentityMismatch("hom table of the indecomposables is singular")
    logger.info("catalog %s over F_%d: %d indecomposables", quiver, p, len(labels))
    return Catalog(quiver, p, labels, reps, hom, ext, presentations, H.inv())


def indecomposables(quiver: Quiver, p: int) -> list[tuple[str, Rep, dict[str, int], dict[str, int]]]:
    """Catalog rows (label, representative, dim Hom row, dim Ext^1 row)."""
    cat = build_catalog(quiver, p)
    rows = []
    for a in cat.labels:
        hom_row = {interval_str(b): cat.hom[(a, b)] for b in cat.labels}
        ext_row = {interval_str(b): cat.ext[(a, b)] for b in cat.labels}
        rows.append((interval_str(a), cat.reps[a], hom_row, ext_row))
    return rows


# --- counting ---


def iso_by_intertwiner(M: Rep, N: Rep, cap: int = config.CAP) -> bool:
    """Search Hom(M, N) for an invertible intertwiner."""
    if M.dims != N.dims:
        return False
    return any(is_iso_map(f, M.p) for f in hom_space(M, N).elements(cap))


def aut_order_bruteforce(M: Rep, cap: int = config.CAP) -> int:
    """Count invertible endomorphisms by enumerating End(M)."""
    return sum(1 for f in hom_space(M, M).elements(cap) if is_iso_map(f, M.p))


def _has_nontrivial_idempotent(M: Rep, cap: int) -> bool:
    p = M.p
    for e in hom_space(M, M).elements(cap):
        if all(not np.any(ev) for ev in e):
            continue
        if all(np.array_equal(ev, fq.identity(M.dims[v])) for v, ev in enumerate(e)):
            continue
        if all(np.array_equal(fq.matmul(ev, ev, p), ev) for ev in e):
            return True
    return False


def brute_force_indecomposables(
    quiver: Quiver, p: int, max_dims: Sequence[int], cap: int = config.CAP
) -> list[Rep]:
    """One representative per iso class of indecomposables with dims <= max_dims.

    Enumerates every representation, discards those with a nontrivial
    idempotent endomorphism and merges isomorphic ones by intertwiner search.
    """
    found: list[Rep] = []
    for dims in itertools.product(*(range(m + 1) for m in max_dims)):
        if sum(dims) == 0:
            continue
        entries = [dims[t] * dims[s] for s, t in quiver.arrows]
        fq.check_cap("representation enumeration", p, sum(entries), cap)
        for values in itertools.product(range(p), repeat=sum(entries)):
            maps, pos = [], 0
            for (s, t), size in zip(quiver.arrows, entries):
                maps.append(np.array(values[pos:pos + size], dtype=np.int64).reshape(dims[t], dims[s]))
                pos += size
            M = Rep(quiver, p, tuple(dims), tuple(maps))
            if _has_nontrivial_idempotent(M, cap):
                continue
            if not any(iso_by_intertwiner(M, N, cap) for N in found):
                found.append(M)
    return found


def _subspace_choices(dims: Sequence[int], sub_dims: Sequence[int], p: int) -> Iterator[list[np.ndarray]]:
    per_vertex = [list(fq.enumerate_subspaces(n, k, p)) for n, k in zip(dims, sub_dims)]
    for choice in itertools.product(*per_vertex):
        yield [U.T.copy() for U in choice]


def submodules(L: Rep, sub_dims: Sequence[int], cap: int = config.CAP) -> Iterator[list[np.ndarray]]:
    """Vertex-wise column bases of every subrepresentation of L with the given dimensions."""
    if L.total_dim > config.SUBMODULE_DIM_CAP:
        raise CapExceeded("submodule enumeration (total dimension)", L.total_dim, config.SUBMODULE_DIM_CAP)
    size = 1
    for n, k in zip(L.dims, sub_dims):
        size *= fq.gaussian_binomial(n, k, L.p)
    if size > cap:
        raise CapExceeded("submodule enumeration", size, cap)
    for bases in _subspace_choices(L.dims, sub_dims, L.p):
        closed = True
        for k, (s, t) in enumerate(L.quiver.arrows):
            image = fq.matmul(L.maps[k], bases[s], L.p)
            if fq.rank(np.concatenate([bases[t], image], axis=1), L.p) != bases[t].shape[1]:
                closed = False
                break
        if closed:
            yield bases


def mono_count(cat: Catalog, X: ModClass, L: ModClass, Y: ModClass, cap: int = config.CAP) -> int:
    """|{f: X -> L mono with cokernel iso to Y}|."""
    RX, RL = cat.rep_of(X), cat.rep_of(L)
    count = 0
    for f in hom_space(RX, RL).elements(cap):
        if all(fq.rank(fv, cat.p) == RX.dims[v] for v, fv in enumerate(f)):
            if cat.iso_class(quotient(RL, list(f))) == Y:
                count += 1
    return count


def epi_count(cat: Catalog, L: ModClass, Y: ModClass, X: ModClass, cap: int = config.CAP) -> int:
    """|{f: L -> Y epi with kernel iso to X}|."""
    RL, RY = cat.rep_of(L), cat.rep_of(Y)
    count = 0
    for f in hom_space(RL, RY).elements(cap):
        if all(fq.rank(fv, cat.p) == RY.dims[v] for v, fv in enumerate(f)):
            kernel = restrict(RL, [fq.kernel_basis(fv, cat.p) for fv in f])
            if cat.iso_class(kernel) == X:
                count += 1
    return count


def hall_number(cat: Catalog, L: ModClass, X: ModClass, Y: ModClass, cap: int = config.CAP) -> int:
    """g^L_{XY}: submodules of L iso to X with quotient iso to Y.

    The submodule count is cross-checked against |M(X, L)_Y| / |Aut X|.

    Raises:
        CapExceeded: when the enumeration is too large.
        IdentityMismatch: when the two counts disagree.
    """
    n = cat.quiver.n
    if tuple(a + b for a, b in zip(X.dimvec(n), Y.dimvec(n))) != L.dimvec(n):
        return 0
    RL = cat.rep_of(L)
    count = 0
    for bases in submodules(RL, X.dimvec(n), cap):
        if cat.iso_class(restrict(RL, bases)) == X and cat.iso_class(quotient(RL, bases)) == Y:
            count += 1
    monos = mono_count(cat, X, L, Y, cap)
    if monos != count * cat.aut_order(X):
        raise IdentityMismatch(f"g^{L}_{{{X},{Y}}}: {count} submodules but {monos} monomorphisms")
    return count


def middle_of_extension(cat: Catalog, X: ModClass, Y: ModClass, xi: Sequence[int]) -> ModClass:
    """Middle term of the extension 0 -> X -> E -> Y -> 0 with class xi in Ext^1(Y, X)."""
    return cat.iso_class(ext_space(cat.rep_of(X), cat.rep_of(Y)).middle(xi))


def extension_strata(cat: Catalog, X: ModClass, Y: ModClass, cap: int = config.CAP) -> dict[ModClass, int]:
    """Number of Ext^1(Y, X) classes per middle term; the counts sum to p^{dim Ext}."""
    space = ext_space(cat.rep_of(X), cat.rep_of(Y))
    strata: dict[ModClass, int] = {}
    for xi in space.classes(cap):
        E = cat.iso_class(space.middle(xi))
        strata[E] = strata.get(E, 0) + 1
    return strata
