"""The bounded derived category of a type-A path algebra at desk scale.

Objects are finite sums of shifted indecomposables (DObj). Morphisms are
homotopy classes of chain maps between minimal projective complexes: each
summand M[s] is carried by its minimal presentation P1 -> P0 placed in
degrees -s-1, -s (cohomological grading, differential of degree +1), so M[s]
has homology M in degree -s.

Cones are computed at chain level and identified by their homology, which is
a complete invariant over a hereditary algebra.
"""
from __future__ import annotations

import contextlib
import functools
import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

import config
from errors import ConfigError, IdentityMismatch, WindowExceeded
from services import fq_linalg as fq
from services.quiver_rep import (
    Catalog,
    Label,
    ModClass,
    Rep,
    _format_sum,
    _split_sum,
    direct_sum,
    gl_order,
    hom_constraints,
    hom_space,
    block_layout,
    interval_str,
    quotient,
    restrict,
)

logger = logging.getLogger(__name__)

_SHIFTED = re.compile(r"^I\[(\d+),(\d+)\](?:\[(-?\d+)\])?$")

Maps = dict[int, tuple[np.ndarray, ...]]


@dataclass(frozen=True)
class DObj:
    """Iso class in D^b: multiset of (interval label, shift), sorted descending by (shift, label)."""

    parts: tuple[tuple[Label, int, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[Label, int]] | dict[tuple[Label, int], int]) -> "DObj":
        counts: dict[tuple[Label, int], int] = {}
        pairs = items.items() if isinstance(items, dict) else ((item, 1) for item in items)
        for (label, shift), m in pairs:
            key = (tuple(label), int(shift))
            counts[key] = counts.get(key, 0) + int(m)
        ordered = sorted(((s, lab, m) for (lab, s), m in counts.items() if m > 0), reverse=True)
        return cls(tuple((lab, s, m) for s, lab, m in ordered))

    @classmethod
    def zero(cls) -> "DObj":
        return cls(())

    @classmethod
    def module(cls, M: ModClass, shift: int = 0) -> "DObj":
        return cls.of({(label, shift): m for label, m in M.parts})

    @classmethod
    def parse(cls, text: str) -> "DObj":
        items: dict[tuple[Label, int], int] = {}
        for name, m in _split_sum(text):
            match = _SHIFTED.match(name)
            if not match:
                raise ConfigError(f"invalid derived object label {name!r}")
            key = ((int(match.group(1)), int(match.group(2))), int(match.group(3) or 0))
            items[key] = items.get(key, 0) + m
        return cls.of(items)

    def __add__(self, other: "DObj") -> "DObj":
        counts = {(lab, s): m for lab, s, m in self.parts}
        for lab, s, m in other.parts:
            counts[(lab, s)] = counts.get((lab, s), 0) + m
        return DObj.of(counts)

    def shift(self, k: int) -> "DObj":
        return DObj(tuple((lab, s + k, m) for lab, s, m in self.parts))

    def summands(self) -> list[tuple[Label, int]]:
        return [(lab, s) for lab, s, m in self.parts for _ in range(m)]

    def multiplicities(self) -> list[int]:
        return [m for _, _, m in self.parts]

    @property
    def count(self) -> int:
        return sum(m for _, _, m in self.parts)

    @property
    def total_dim(self) -> int:
        return sum(m * (j - i + 1) for (i, j), _, m in self.parts)

    def shifts(self) -> set[int]:
        return {s for _, s, _ in self.parts}

    def homology(self, shift: int) -> ModClass:
        """The module summand sitting at the given shift."""
        return ModClass.of({lab: m for lab, s, m in self.parts if s == shift})

    @property
    def is_module(self) -> bool:
        return all(s == 0 for _, s, _ in self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return _format_sum(
            [(interval_str(lab) + (f"[{s}]" if s else ""), m) for lab, s, m in self.parts]
        )


@dataclass(frozen=True)
class Block:
    """Position of one summand instance inside a carrier: per degree, per vertex (start, stop)."""

    label: Label
    shift: int
    slices: dict[int, tuple[tuple[int, int], ...]]


@dataclass(eq=False)
class Complex:
    """A bounded complex of projective representations with differentials d^n: C^n -> C^{n+1}."""

    quiver: object
    p: int
    terms: dict[int, Rep]
    diffs: dict[int, tuple[np.ndarray, ...]]
    blocks: list[Block] = field(default_factory=list)
    obj: DObj | None = None

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def dim(self, n: int, v: int) -> int:
        return self.terms[n].dims[v] if n in self.terms else 0

    def d(self, n: int, v: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n][v]
        return fq.zeros(self.dim(n + 1, v), self.dim(n, v))


def _carrier(cat: Catalog, X: DObj) -> Complex:
    Q, p = cat.quiver, cat.p
    pieces: dict[int, list[tuple[int, Rep]]] = {}
    for k, (label, s) in enumerate(X.summands()):
        pres = cat.presentations[label]
        pieces.setdefault(-s - 1, []).append((k, pres.p1))
        pieces.setdefault(-s, []).append((k, pres.p0))
    terms: dict[int, Rep] = {}
    positions: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for n, items in pieces.items():
        reps = [r for _, r in items if r.total_dim > 0]
        if not reps:
            continue
        terms[n] = direct_sum(reps)
        offsets = [0] * Q.n
        for k, r in items:
            positions[(k, n)] = [(offsets[v], offsets[v] + r.dims[v]) for v in range(Q.n)]
            for v in range(Q.n):
                offsets[v] += r.dims[v]
    blocks = []
    for k, (label, s) in enumerate(X.summands()):
        slices = {n: tuple(positions[(k, n)]) for n in (-s - 1, -s) if n in terms and (k, n) in positions}
        blocks.append(Block(label, s, slices))
    diffs: dict[int, tuple[np.ndarray, ...]] = {}
    for n in terms:
        if n + 1 not in terms:
            continue
        mats = [fq.zeros(terms[n + 1].dims[v], terms[n].dims[v]) for v in range(Q.n)]
        for k, (label, s) in enumerate(X.summands()):
            if n != -s - 1 or (k, n) not in positions or (k, n + 1) not in positions:
                continue
            dmat = cat.presentations[label].d
            for v in range(Q.n):
                r0, r1 = positions[(k, n + 1)][v]
                c0, c1 = positions[(k, n)][v]
                mats[v][r0:r1, c0:c1] = dmat[v]
        diffs[n] = tuple(mats)
    return Complex(Q, p, terms, diffs, blocks, X)


class HomSpace:
    """Homotopy classes of chain maps C -> D.

    Chain maps form the kernel Z of the intertwining and chain equations;
    null-homotopic maps d s + s d span B inside Z. A fixed complement K of B
    in Z, chosen greedily from the ordered kernel basis, indexes the classes.
    """

    def __init__(self, source: Complex, target: Complex) -> None:
        self.source, self.target = source, target
        self.p = source.p
        Q = source.quiver
        self.nv = Q.n
        self.layout: dict[int, list[int]] = {}
        pos = 0
        for n in source.degrees:
            if n in target.terms:
                self.layout[n] = block_layout(source.terms[n], target.terms[n], pos)
                pos = self.layout[n][-1]
        self.width = pos
        Z = fq.kernel_basis(self._equations(), self.p)
        B = self._homotopy_image()
        Bc = fq.column_space(B, self.p) if B.shape[1] else fq.zeros(self.width, 0)
        chosen = Bc
        keep = []
        for k in range(Z.shape[1]):
            trial = np.concatenate([chosen, Z[:, k:k + 1]], axis=1)
            if fq.rank(trial, self.p) > chosen.shape[1]:
                chosen = trial
                keep.append(k)
        self.null_basis = Bc
        self.complement = Z[:, keep] if keep else fq.zeros(self.width, 0)
        self.cycles_dim = Z.shape[1]
        T = np.concatenate([Bc, self.complement], axis=1)
        S = np.concatenate([T, fq.complement_columns(T, self.p, self.width)], axis=1)
        self._inverse = fq.inv_mat(S, self.p)
        self._r = Bc.shape[1]

    @property
    def dim(self) -> int:
        return int(self.complement.shape[1])

    def _equations(self) -> np.ndarray:
        C, D, p = self.source, self.target, self.p
        rows = []
        for n, offsets in self.layout.items():
            rows.append(hom_constraints(C.terms[n], D.terms[n], offsets, self.width))
        for n in C.degrees:
            if n + 1 not in D.terms:
                continue
            for v in range(self.nv):
                r = D.dim(n + 1, v) * C.dim(n, v)
                if r == 0:
                    continue
                E = fq.zeros(r, self.width)
                if n in self.layout and D.dim(n, v):
                    o = self.layout[n]
                    E[:, o[v]:o[v + 1]] += np.kron(D.d(n, v), fq.identity(C.dim(n, v)))
                if n + 1 in self.layout:
                    o = self.layout[n + 1]
                    E[:, o[v]:o[v + 1]] -= np.kron(fq.identity(D.dim(n + 1, v)), C.d(n, v).T)
                rows.append(fq.mod_p(E, p))
        rows = [R for R in rows if R.shape[0]]
        return np.concatenate(rows, axis=0) if rows else fq.zeros(0, self.width)

    def _homotopy_image(self) -> np.ndarray:
        C, D, p = self.source, self.target, self.p
        cols = []
        for n in C.degrees:
            if n - 1 not in D.terms:
                continue
            H = hom_space(C.terms[n], D.terms[n - 1])
            for k in range(H.dim):
                s = H.element(np.eye(H.dim, dtype=np.int64)[k])
                maps: Maps = {}
                if n in self.layout:
                    maps[n] = tuple(fq.matmul(D.d(n - 1, v), s[v], p) for v in range(self.nv))
                if n - 1 in self.layout:
                    maps[n - 1] = tuple(fq.matmul(s[v], C.d(n - 1, v), p) for v in range(self.nv))
                cols.append(self.vector(maps).reshape(-1, 1))
        return np.concatenate(cols, axis=1) if cols else fq.zeros(self.width, 0)

    def vector(self, maps: Maps) -> np.ndarray:
        vec = np.zeros(self.width, dtype=np.int64)
        for n, offsets in self.layout.items():
            if n not in maps:
                continue
            for v in range(self.nv):
                vec[offsets[v]:offsets[v + 1]] = np.asarray(maps[n][v], dtype=np.int64).reshape(-1)
        return fq.mod_p(vec, self.p)

    def maps(self, vec: np.ndarray) -> Maps:
        C, D = self.source, self.target
        out: Maps = {}
        for n, offsets in self.layout.items():
            out[n] = tuple(
                vec[offsets[v]:offsets[v + 1]].reshape(D.dim(n, v), C.dim(n, v)) for v in range(self.nv)
            )
        return out

    def classify(self, maps: Maps) -> tuple[int, ...]:
        """Class coordinates of a chain map."""
        full = fq.matmul(self._inverse, self.vector(maps), self.p)
        if np.any(full[self._r + self.dim:]):
            raise IdentityMismatch("map is not a chain map")
        return tuple(int(c) for c in full[self._r:self._r + self.dim])

    def representative(self, coords: Sequence[int]) -> Maps:
        c = np.asarray(coords, dtype=np.int64).reshape(-1)
        vec = fq.mod_p(self.complement @ c, self.p) if self.dim else np.zeros(self.width, dtype=np.int64)
        return self.maps(vec)

    def morphism(self, coords: Sequence[int]) -> "DMorphism":
        return DMorphism(self, tuple(int(c) % self.p for c in coords))

    def zero(self) -> "DMorphism":
        return DMorphism(self, (0,) * self.dim)

    def morphisms(self, cap: int) -> Iterator["DMorphism"]:
        fq.check_cap("Hom enumeration", self.p, self.dim, cap)
        for coords in itertools.product(range(self.p), repeat=self.dim):
            yield DMorphism(self, coords)

    def null_homotopic(self, coords: Sequence[int]) -> Maps:
        """The null-homotopic chain map with the given coordinates in B."""
        c = np.asarray(coords, dtype=np.int64).reshape(-1)
        if self._r == 0:
            return self.maps(np.zeros(self.width, dtype=np.int64))
        return self.maps(fq.mod_p(self.null_basis @ c, self.p))

    @property
    def null_dim(self) -> int:
        return self._r


@dataclass(frozen=True, eq=False)
class DMorphism:
    """A homotopy class, stored as coordinates in the complement of null-homotopic maps."""

    space: HomSpace
    coords: tuple[int, ...]

    @property
    def source(self) -> DObj | None:
        return self.space.source.obj

    @property
    def target(self) -> DObj | None:
        return self.space.target.obj

    @property
    def maps(self) -> Maps:
        return self.space.representative(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "DMorphism") -> "DMorphism":
        if other.space is not self.space:
            raise ValueError("adding morphisms between different objects")
        return DMorphism(self.space, tuple((a + b) % self.space.p for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DMorphism":
        return self.scale(-1)

    def __sub__(self, other: "DMorphism") -> "DMorphism":
        return self + (-other)

    def scale(self, c: int) -> "DMorphism":
        return DMorphism(self.space, tuple((a * c) % self.space.p for a in self.coords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DMorphism):
            return NotImplemented
        return self.space is other.space and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.space), self.coords))


@dataclass(frozen=True, eq=False)
class IsoPartDecomposition:
    """n: L -> Z[1] split as an isomorphism L1 -> Z1[1] plus a radical part L2 -> Z2[1].

    ``conjugated`` is d[1]^{-1} o n o b, block diagonal in the summand order.
    """

    n: DMorphism
    L1: DObj
    L2: DObj
    Z1: DObj
    Z2: DObj
    b: DMorphism
    d: DMorphism
    conjugated: DMorphism


@dataclass(frozen=True, eq=False)
class TriangleOrbit:
    """One orbit of Aut Z x Aut L on triangles Z -l-> M -m-> L -n-> Z[1]."""

    l: DMorphism
    m: DMorphism
    n: DMorphism
    size: int
    iso_part: IsoPartDecomposition


def _public(fn: Callable) -> Callable:
    """Validate DObj arguments against the window on outermost calls only."""

    @functools.wraps(fn)
    def wrapper(self: "DerivedCategory", *args, **kwargs):
        if self._depth == 0:
            self.validate(*(a for a in args if isinstance(a, DObj)))
        self._depth += 1
        try:
            return fn(self, *args, **kwargs)
        finally:
            self._depth -= 1

    return wrapper


class DerivedCategory:
    """Desk-scale D^b(mod kQ) over a type-A catalog.

    Args:
        catalog: the interval catalog over F_p.
        window: shifts of user-supplied objects must lie in [-window, window].
        cap: enumeration cap for Hom spaces.
    """

    def __init__(self, catalog: Catalog, window: int = config.WINDOW, cap: int = config.CAP) -> None:
        self.catalog = catalog
        self.p = catalog.p
        self.window = window
        self.cap = cap
        self._depth = 0
        self._carriers: dict[DObj, Complex] = {}
        self._homs: dict[tuple[DObj, DObj], HomSpace] = {}
        self._cones: dict[tuple[DObj, DObj, tuple[int, ...]], DObj] = {}
        self._strata: dict[tuple[DObj, DObj], dict[DObj, list[DMorphism]]] = {}
        self._raw_homs: dict[tuple[int, int], tuple[Complex, Complex, HomSpace]] = {}

    # --- objects ---

    @contextlib.contextmanager
    def internal(self) -> Iterator[None]:
        """Suspend window validation for objects derived from validated inputs."""
        self._depth += 1
        try:
            yield
        finally:
            self._depth -= 1

    def validate(self, *objs: DObj) -> None:
        for X in objs:
            for _, s, _ in X.parts:
                if abs(s) > self.window:
                    raise WindowExceeded(f"{X} has shift {s} outside [-{self.window}, {self.window}]")

    def carrier(self, X: DObj) -> Complex:
        if X not in self._carriers:
            self._carriers[X] = _carrier(self.catalog, X)
        return self._carriers[X]

    def corpus(self, shifts: Sequence[int], max_summands: int, max_dim: int) -> list[DObj]:
        """All objects with shifts in [lo, hi], at most max_summands summands and total dim <= max_dim."""
        lo, hi = min(shifts), max(shifts)
        atoms = [(lab, s) for s in range(lo, hi + 1) for lab in self.catalog.labels]
        out = {DObj.zero()}
        for k in range(1, max_summands + 1):
            for combo in itertools.combinations_with_replacement(atoms, k):
                X = DObj.of(combo)
                if X.total_dim <= max_dim:
                    out.add(X)
        return sorted(out, key=lambda X: (X.count, X.total_dim, str(X)))

    # --- Hom spaces ---

    def hom_complexes(self, C: Complex, D: Complex) -> HomSpace:
        if C.obj is not None and D.obj is not None and C is self._carriers.get(C.obj) and D is self._carriers.get(D.obj):
            return self.hom(C.obj, D.obj)
        key = (id(C), id(D))
        if key not in self._raw_homs:
            # the complexes ride along so their ids stay unique while cached
            self._raw_homs[key] = (C, D, HomSpace(C, D))
        return self._raw_homs[key][2]

    def hom(self, X: DObj, Y: DObj) -> HomSpace:
        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = HomSpace(self.carrier(X), self.carrier(Y))
        return self._homs[key]

    @_public
    def graded_hom_dim(self, X: DObj, Y: DObj, i: int, verify: bool = False) -> int:
        """dim Hom(X[i], Y) from the Hom and Ext^1 tables."""
        cat = self.catalog
        total = 0
        for lx, sx, mx in X.parts:
            for ly, sy, my in Y.parts:
                if sy == sx + i:
                    total += mx * my * cat.hom[(lx, ly)]
                elif sy == sx + i + 1:
                    total += mx * my * cat.ext[(lx, ly)]
        if verify:
            chain = self.hom(X.shift(i), Y).dim
            if chain != total:
                raise IdentityMismatch(f"dim Hom({X}[{i}], {Y}): tables give {total}, chain maps {chain}")
        return total

    def braces_exponent(self, X: DObj, Y: DObj) -> int:
        """e with {X, Y} = p^e, e = sum_{i>0} (-1)^i dim Hom(X[i], Y)."""
        if not X or not Y:
            return 0
        reach = max(Y.shifts()) - min(X.shifts()) + 1
        return sum((-1) ** i * self.graded_hom_dim(X, Y, i) for i in range(1, reach + 1))

    @_public
    def braces(self, X: DObj, Y: DObj) -> Fraction:
        return Fraction(self.p) ** self.braces_exponent(X, Y)

    @_public
    def dhom_classes(self, X: DObj, L: DObj) -> list[DMorphism]:
        """One representative per homotopy class in Hom(X, L)."""
        space = self.hom(X, L)
        expected = self.graded_hom_dim(X, L, 0)
        if space.dim != expected:
            raise IdentityMismatch(f"Hom({X}, {L}) has dimension {space.dim}, tables give {expected}")
        return list(space.morphisms(self.cap))

    # --- composition and shifts ---

    def identity(self, X: DObj) -> DMorphism:
        C = self.carrier(X)
        maps = {n: tuple(fq.identity(C.dim(n, v)) for v in range(C.quiver.n)) for n in C.degrees}
        space = self.hom(X, X)
        return space.morphism(space.classify(maps))

    def compose(self, g: DMorphism, f: DMorphism) -> DMorphism:
        """g o f for f: C -> D and g: D -> E."""
        C, E = f.space.source, g.space.target
        if f.space.target is not g.space.source:
            raise ValueError("composing morphisms whose middle objects differ")
        space = self.hom_complexes(C, E)
        fm, gm = f.maps, g.maps
        maps: Maps = {}
        for n in space.layout:
            if n in fm and n in gm:
                maps[n] = tuple(fq.matmul(gm[n][v], fm[n][v], self.p) for v in range(C.quiver.n))
        return space.morphism(space.classify(maps))

    def shift_morphism(self, f: DMorphism, k: int) -> DMorphism:
        """f[k]: X[k] -> Y[k] by reindexing the chain maps."""
        X, Y = f.source, f.target
        space = self.hom(X.shift(k), Y.shift(k))
        fm = f.maps
        maps = {n: fm[n + k] for n in space.layout if n + k in fm}
        return space.morphism(space.classify(maps))

    # --- cones ---

    def cone_complex(self, f: DMorphism) -> tuple[Complex, Maps, Maps]:
        """Cone^n = C^{n+1} + D^n with d = [[-d_C, 0], [f, d_D]], plus the maps iota and pi.

        iota: D -> Cone is the inclusion; pi^n = (-1)^n [I, 0] lands in the
        carrier of source[1].
        """
        C, D, p = f.space.source, f.space.target, self.p
        nv = C.quiver.n
        fm = f.maps
        degrees = sorted({n - 1 for n in C.degrees} | set(D.degrees))
        terms: dict[int, Rep] = {}
        for n in degrees:
            reps = [r for r in (C.terms.get(n + 1), D.terms.get(n)) if r is not None]
            terms[n] = direct_sum(reps)
        diffs: dict[int, tuple[np.ndarray, ...]] = {}
        for n in degrees:
            if n + 1 not in terms:
                continue
            mats = []
            for v in range(nv):
                c1, c2 = C.dim(n + 1, v), C.dim(n + 2, v)
                d0, d1 = D.dim(n, v), D.dim(n + 1, v)
                A = fq.zeros(c2 + d1, c1 + d0)
                A[:c2, :c1] = -C.d(n + 1, v)
                if n + 1 in fm:
                    A[c2:, :c1] = fm[n + 1][v]
                A[c2:, c1:] = D.d(n, v)
                mats.append(fq.mod_p(A, p))
            diffs[n] = tuple(mats)
        cone = Complex(C.quiver, p, terms, diffs)
        iota: Maps = {}
        pi: Maps = {}
        for n in degrees:
            if n in D.terms:
                iota[n] = tuple(
                    np.concatenate([fq.zeros(C.dim(n + 1, v), D.dim(n, v)), fq.identity(D.dim(n, v))], axis=0)
                    for v in range(nv)
                )
            if n + 1 in C.terms:
                sign = -1 if n % 2 else 1
                pi[n] = tuple(
                    fq.mod_p(sign * np.concatenate([fq.identity(C.dim(n + 1, v)), fq.zeros(C.dim(n + 1, v), D.dim(n, v))], axis=1), p)
                    for v in range(nv)
                )
        return cone, iota, pi

    def homology(self, K: Complex) -> DObj:
        """The object sum_n H^n[-n] of a complex, classified vertex-wise."""
        items: dict[tuple[Label, int], int] = {}
        nv = K.quiver.n
        for n in K.degrees:
            Zb = [fq.kernel_basis(K.d(n, v), self.p) for v in range(nv)]
            Bb = [fq.column_space(K.d(n - 1, v), self.p) for v in range(nv)]
            cycles = restrict(K.terms[n], Zb)
            H = quotient(cycles, [fq.coordinates(Zb[v], Bb[v], self.p) for v in range(nv)])
            for label, m in self.catalog.iso_class(H).parts:
                items[(label, -n)] = items.get((label, -n), 0) + m
        return DObj.of(items)

    def cone(self, f: DMorphism) -> DObj:
        key = None
        if f.source is not None and f.target is not None and f.space is self._homs.get((f.source, f.target)):
            key = (f.source, f.target, f.coords)
            if key in self._cones:
                return self._cones[key]
        obj = self.homology(self.cone_complex(f)[0])
        if key is not None:
            self._cones[key] = obj
        return obj

    def cone_of_maps(self, space: HomSpace, maps: Maps) -> DObj:
        """Cone of an arbitrary chain-map representative (used for homotopy-invariance checks)."""
        f = _RawMorphism(space, maps)
        return self.homology(self.cone_complex(f)[0])

    def cocone(self, f: DMorphism) -> DObj:
        return self.cone(f).shift(-1)

    def cone_strata(self, X: DObj, L: DObj) -> dict[DObj, list[DMorphism]]:
        """Hom(X, L) partitioned by cone."""
        key = (X, L)
        if key not in self._strata:
            strata: dict[DObj, list[DMorphism]] = {}
            for f in self.hom(X, L).morphisms(self.cap):
                strata.setdefault(self.cone(f), []).append(f)
            self._strata[key] = strata
        return self._strata[key]

    @_public
    def hom_with_cone_count(self, X: DObj, L: DObj, Y: DObj) -> int:
        """|Hom(X, L)_Y|: classes whose cone is Y."""
        return len(self.cone_strata(X, L).get(Y, []))

    def is_iso(self, f: DMorphism) -> bool:
        if f.source is not None and f.target is not None and f.source != f.target:
            return False
        return not self.homology(self.cone_complex(f)[0])

    def isos(self, C: Complex, D: Complex) -> list[DMorphism]:
        """All isomorphisms C -> D up to homotopy."""
        return [f for f in self.hom_complexes(C, D).morphisms(self.cap) if self.is_iso(f)]

    def inverse(self, f: DMorphism) -> DMorphism:
        """Inverse of an isomorphism by a linear solve in class coordinates."""
        C, D = f.space.source, f.space.target
        back = self.hom_complexes(D, C)
        ends = self.hom_complexes(C, C)
        ident = {n: tuple(fq.identity(C.dim(n, v)) for v in range(C.quiver.n)) for n in C.degrees}
        target = np.array(ends.classify(ident), dtype=np.int64)
        cols = []
        for k in range(back.dim):
            e = back.morphism(np.eye(back.dim, dtype=np.int64)[k])
            cols.append(np.array(self.compose(e, f).coords, dtype=np.int64).reshape(-1, 1))
        A = np.concatenate(cols, axis=1) if cols else fq.zeros(ends.dim, 0)
        sol = fq.solve(A, target, self.p)
        if sol is None:
            raise IdentityMismatch("morphism is not invertible")
        return back.morphism(sol.offset)

    # --- automorphisms ---

    @_public
    def daut_order(self, X: DObj) -> int:
        """|Aut X| = p^{dim rad End X} * prod |GL_m(F_p)| over distinct (label, shift)."""
        rad = self.graded_hom_dim(X, X, 0) - sum(m * m for m in X.multiplicities())
        out = self.p**rad
        for m in X.multiplicities():
            out *= gl_order(m, self.p)
        return out

    def daut_order_bruteforce(self, X: DObj) -> int:
        return sum(1 for f in self.hom(X, X).morphisms(self.cap) if self.is_iso(f))

    def automorphisms(self, X: DObj) -> list[DMorphism]:
        return [f for f in self.hom(X, X).morphisms(self.cap) if self.is_iso(f)]

    # --- summand structure ---

    def _block_map(self, small: DObj, big: DObj, slots: list[int], inject: bool) -> DMorphism:
        S, B = self.carrier(small), self.carrier(big)
        nv = S.quiver.n
        maps: Maps = {}
        degrees = set(S.degrees) & set(B.degrees)
        for n in degrees:
            mats = []
            for v in range(nv):
                M = fq.zeros(B.dim(n, v), S.dim(n, v)) if inject else fq.zeros(S.dim(n, v), B.dim(n, v))
                for sb, bb in zip(S.blocks, (B.blocks[k] for k in slots)):
                    if n not in sb.slices or n not in bb.slices:
                        continue
                    s0, s1 = sb.slices[n][v]
                    b0, b1 = bb.slices[n][v]
                    if inject:
                        M[b0:b1, s0:s1] = fq.identity(s1 - s0)
                    else:
                        M[s0:s1, b0:b1] = fq.identity(s1 - s0)
                mats.append(M)
            maps[n] = tuple(mats)
        space = self.hom(small, big) if inject else self.hom(big, small)
        return space.morphism(space.classify(maps))

    def match_slots(self, parts: Sequence[DObj], total: DObj) -> list[list[int]]:
        """Assign each summand instance of each part to a block of total, first free match first."""
        used: set[int] = set()
        blocks = self.carrier(total).blocks
        out = []
        for part in parts:
            slots = []
            for label, s in part.summands():
                k = next(k for k, b in enumerate(blocks) if k not in used and (b.label, b.shift) == (label, s))
                used.add(k)
                slots.append(k)
            out.append(slots)
        return out

    def sum_structure(self, A: DObj, B: DObj) -> tuple[DObj, DMorphism, DMorphism, DMorphism, DMorphism]:
        """(A+B, iota_A, iota_B, pi_A, pi_B) for the direct sum A + B."""
        S = A + B
        slots_a, slots_b = self.match_slots([A, B], S)
        return (
            S,
            self._block_map(A, S, slots_a, True),
            self._block_map(B, S, slots_b, True),
            self._block_map(A, S, slots_a, False),
            self._block_map(B, S, slots_b, False),
        )

    def summand_maps(self, X: DObj) -> list[tuple[DObj, DMorphism, DMorphism]]:
        """For each summand instance U of X: (U, iota_U, pi_U)."""
        out = []
        for k, (label, s) in enumerate(X.summands()):
            U = DObj.of([(label, s)])
            out.append((U, self._block_map(U, X, [k], True), self._block_map(U, X, [k], False)))
        return out

    # --- iso part ---

    def _scalar(self, f: DMorphism) -> int:
        """The scalar c with f = c * id for an endomorphism of an indecomposable."""
        ident = self.identity(f.source)
        if len(ident.coords) != 1:
            raise IdentityMismatch(f"End({f.source}) is not one-dimensional")
        return (f.coords[0] * fq.inv_scalar(ident.coords[0], self.p)) % self.p

    def iso_part(self, n: DMorphism) -> IsoPartDecomposition:
        """Split n: L -> Z[1] into an isomorphism part and a radical part.

        Gaussian elimination over the additive category: an invertible
        component between isomorphic indecomposables is a pivot, and row and
        column automorphisms clear its row and column.
        """
        L, ZS = n.source, n.target
        rows = self.summand_maps(ZS)
        cols = self.summand_maps(L)
        B = self.identity(L)
        D1 = self.identity(ZS)
        cur = n
        marked_rows: list[int] = []
        marked_cols: list[int] = []

        def component(m: DMorphism, j: int, i: int) -> DMorphism:
            return self.compose(rows[j][2], self.compose(m, cols[i][1]))

        while True:
            pivot = None
            for i, (Ui, _, _) in enumerate(cols):
                if i in marked_cols:
                    continue
                for j, (Tj, _, _) in enumerate(rows):
                    if j in marked_rows or Tj != Ui:
                        continue
                    if not component(cur, j, i).is_zero():
                        pivot = (j, i)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            j, i = pivot
            Ui = cols[i][0]
            c_inv = fq.inv_scalar(self._scalar(component(cur, j, i)), self.p)
            inv_ji = self.identity(Ui).scale(c_inv)
            R = self.identity(ZS)
            for jj, (_, iota_jj, _) in enumerate(rows):
                if jj == j:
                    continue
                term = self.compose(iota_jj, self.compose(component(cur, jj, i), self.compose(inv_ji, rows[j][2])))
                R = R - term
            cur = self.compose(R, cur)
            D1 = self.compose(R, D1)
            Cop = self.identity(L)
            for ii, (_, _, pi_ii) in enumerate(cols):
                if ii == i:
                    continue
                term = self.compose(cols[i][1], self.compose(inv_ji, self.compose(component(cur, j, ii), pi_ii)))
                Cop = Cop - term
            cur = self.compose(cur, Cop)
            B = self.compose(B, Cop)
            marked_rows.append(j)
            marked_cols.append(i)

        L1 = DObj.of([L.summands()[i] for i in marked_cols])
        L2 = DObj.of([s for i, s in enumerate(L.summands()) if i not in marked_cols])
        Z1 = DObj.of([ZS.summands()[j] for j in marked_rows]).shift(-1)
        Z2 = DObj.of([s for j, s in enumerate(ZS.summands()) if j not in marked_rows]).shift(-1)
        pivots = set(zip(marked_rows, marked_cols))
        for i in range(len(cols)):
            for j in range(len(rows)):
                comp = component(cur, j, i)
                paired = (j, i) in pivots
                if i in marked_cols or j in marked_rows:
                    if paired == comp.is_zero():
                        raise IdentityMismatch("iso part elimination left a nonzero off-pivot component")
                elif rows[j][0] == cols[i][0] and not comp.is_zero():
                    raise IdentityMismatch("radical part has an invertible component")
        d = self.shift_morphism(self.inverse(D1), -1)
        return IsoPartDecomposition(n, L1, L2, Z1, Z2, B, d, cur)

    # --- triangles ---

    def standard_triangle(self, f: DMorphism) -> tuple[Complex, DMorphism, DMorphism]:
        """The triangle A -f-> B -iota-> cone(f) -pi-> A[1] with the cone kept as a complex."""
        A, B = f.source, f.target
        cone, iota, pi = self.cone_complex(f)
        iota_c = _RawMorphism(self.hom_complexes(self.carrier(B), cone), iota).as_class()
        pi_c = _RawMorphism(self.hom_complexes(cone, self.carrier(A.shift(1))), pi).as_class()
        return cone, iota_c, pi_c

    def completions(self, f: DMorphism, T: DObj) -> list[tuple[DMorphism, DMorphism]]:
        """All (g, h) completing f: A -> B to a triangle A -f-> B -g-> T -h-> A[1].

        Each isomorphism phi: cone(f) -> T gives g = phi o iota and
        h = pi o phi^{-1}; distinct pairs are returned in first-seen order.
        """
        cone, iota_c, pi_c = self.standard_triangle(f)
        pairs: dict[tuple, tuple[DMorphism, DMorphism]] = {}
        for phi in self.isos(cone, self.carrier(T)):
            g = self.compose(phi, iota_c)
            h = self.compose(pi_c, self.inverse(phi))
            pairs.setdefault((g.coords, h.coords), (g, h))
        return list(pairs.values())

    @_public
    def triangle_orbits(self, Z: DObj, L: DObj, M: DObj) -> list[TriangleOrbit]:
        """Orbits of Aut Z x Aut L on triangles Z -l-> M -m-> L -n-> Z[1]."""
        triangles: dict[tuple, tuple[DMorphism, DMorphism, DMorphism]] = {}
        for l in self.cone_strata(Z, M).get(L, []):
            for m, nn in self.completions(l, L):
                triangles[(l.coords, m.coords, nn.coords)] = (l, m, nn)
        aut_z = [(a, self.shift_morphism(self.inverse(a), 1)) for a in self.automorphisms(Z)]
        aut_l = [(c, self.inverse(c)) for c in self.automorphisms(L)]
        seen: set[tuple] = set()
        orbits: list[TriangleOrbit] = []
        for key in sorted(triangles):
            if key in seen:
                continue
            l, m, nn = triangles[key]
            orbit = set()
            for a, a1_inv in aut_z:
                la = self.compose(l, a)
                for c, c_inv in aut_l:
                    image = (la.coords, self.compose(c_inv, m).coords, self.compose(a1_inv, self.compose(nn, c)).coords)
                    orbit.add(image)
            seen |= orbit
            orbits.append(TriangleOrbit(l, m, nn, len(orbit), self.iso_part(nn)))
        logger.debug("triangles %s -> %s -> %s: %d in %d orbits", Z, M, L, len(triangles), len(orbits))
        return orbits


class _RawMorphism:
    """A chain map given by explicit maps, before reduction to a class."""

    def __init__(self, space: HomSpace, maps: Maps) -> None:
        self.space = space
        self._maps = maps

    @property
    def maps(self) -> Maps:
        return self._maps

    def as_class(self) -> DMorphism:
        return self.space.morphism(self.space.classify(self._maps))
