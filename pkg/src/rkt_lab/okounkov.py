"""Okounkov bodies of nef toric divisors for torus-invariant flags.

A smooth torus-invariant flag is recorded as a lattice vertex ``v`` of the
divisor polytope together with an ordered basis ``b_1, ..., b_n`` of
primitive edge directions at ``v``.  The i-th flag element is the face
``v + cone(b_{i+1}, ..., b_n) ∩ P``.  For such flags the Okounkov body is the
image of ``P`` under the unimodular affine map ``x -> B^{-1}(x - v)``.

:func:`valuation` computes the same vectors monomial by monomial through
the inductive vanishing-order recipe, which gives a cross-check on the
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, FlagError, ShapeError
from .exact import (
    IntMatrix,
    Number,
    _xgcd,
    integer_kernel,
    normalize,
    solve_rational,
)
from .polytope import (
    Polytope,
    convex_hull,
    lattice_basis_of_span,
    lattice_points,
    project,
    volume,
)

__all__ = [
    "ToricFlag",
    "AffineMap",
    "okounkov_transform",
    "valuation",
    "valuation_table",
    "empirical_okounkov",
    "ProjectionReport",
    "projection_inclusion_check",
    "fubini_holds",
    "MultipointFlagModel",
    "multipoint_bodies",
    "multipoint_dim1_exact",
    "multipoint_dim1_enumerated",
]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    if g == 0:
        raise FlagError("zero edge direction")
    return tuple(int(x) // g for x in v)


def _as_int_point(v: Sequence[Number]) -> tuple[int, ...]:
    out = []
    for x in v:
        x = normalize(x)
        if not isinstance(x, int):
            raise FlagError(f"flag vertex {tuple(v)} is not a lattice point")
        out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ (x - origin)`` with an integer matrix."""

    matrix: IntMatrix
    origin: tuple[int, ...]

    def __call__(self, x: Sequence[Number]) -> tuple[Number, ...]:
        return self.matrix.apply([a - b for a, b in zip(x, self.origin)])


@dataclass(frozen=True)
class ToricFlag:
    vertex: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    _inverse: IntMatrix = field(init=False, repr=False, compare=False)
    _functionals: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertex = _as_int_point(self.vertex)
        basis = tuple(tuple(int(x) for x in b) for b in self.basis)
        n = len(vertex)
        if len(basis) != n or any(len(b) != n for b in basis):
            raise ShapeError("a flag needs n basis vectors of length n")
        for b in basis:
            if _primitive(b) != b:
                raise FlagError(f"edge direction {b} is not primitive")
        cols = IntMatrix.from_rows([[b[i] for b in basis] for i in range(n)])
        if not cols.is_unimodular():
            raise FlagError("edge basis is not unimodular (vertex is not smooth)")
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "basis", basis)
        inv = [solve_rational(cols, [int(i == j) for i in range(n)]) for j in range(n)]
        object.__setattr__(
            self,
            "_inverse",
            IntMatrix.from_rows([[int(inv[j][i]) for j in range(n)] for i in range(n)]),
        )
        object.__setattr__(self, "_functionals", tuple(_functionals(basis)))

    @property
    def dim(self) -> int:
        return len(self.vertex)

    @property
    def basis_matrix(self) -> IntMatrix:
        """Matrix whose columns are the edge directions."""
        n = self.dim
        return IntMatrix.from_rows([[b[i] for b in self.basis] for i in range(n)])

    @classmethod
    def at_vertex(
        cls,
        p: Polytope,
        vertex: Sequence[Number],
        basis: Sequence[Sequence[int]] | None = None,
    ) -> "ToricFlag":
        """Flag at a vertex of ``p``; the basis defaults to the sorted edge directions."""
        v = tuple(normalize(x) for x in vertex)
        if basis is None:
            if v not in p.vertices:
                raise FlagError(f"{v} is not a vertex of the polytope")
            idx = p.vertices.index(v)
            dirs = []
            for j in p.edges_at(idx):
                w = p.vertices[j]
                d = [a - b for a, b in zip(w, v)]
                den = 1
                for x in d:
                    den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
                dirs.append(_primitive([int(x * den) for x in d]))
            if len(dirs) != p.dim:
                raise FlagError(f"vertex {v} has {len(dirs)} edges, not simple")
            basis = sorted(dirs)
        flag = cls(v, tuple(tuple(b) for b in basis))
        flag.check(p)
        return flag

    def check(self, p: Polytope) -> None:
        """Raise :class:`FlagError` unless the flag fits ``p``."""
        if p.dim != self.dim:
            raise FlagError("flag and polytope live in different dimensions")
        if not p.is_full_dimensional:
            raise FlagError("flags are defined on full-dimensional polytopes")
        if self.vertex not in p.vertices:
            raise FlagError(f"{self.vertex} is not a vertex of the polytope")
        # every vertex lies in v + cone(B), and each b_i spans an edge
        t = self.transform_map()
        for w in p.vertices:
            if any(c < 0 for c in t(w)):
                raise FlagError("polytope leaves the cone spanned by the edge basis")
        idx = p.vertices.index(self.vertex)
        edge_dirs = set()
        for j in p.edges_at(idx):
            d = [a - b for a, b in zip(p.vertices[j], self.vertex)]
            den = math.lcm(*(Fraction(x).denominator for x in d))
            edge_dirs.add(_primitive([int(x * den) for x in d]))
        missing = [b for b in self.basis if b not in edge_dirs]
        if missing:
            raise FlagError(f"basis vectors {missing} are not edge directions at the vertex")

    def transform_map(self) -> AffineMap:
        return AffineMap(self._inverse, self.vertex)

    def flag_face(self, p: Polytope, i: int) -> Polytope:
        """The i-th flag element: the face of ``p`` spanned at ``v`` by ``b_{i+1..n}``."""
        if not 0 <= i <= self.dim:
            raise ShapeError("flag index out of range")
        t = self.transform_map()
        return convex_hull(w for w in p.vertices if all(c == 0 for c in t(w)[:i]))

    def sub_flag(self, p: Polytope, k: int) -> tuple[ToricFlag, Polytope, list[tuple[int, ...]]]:
        """Induced flag on the k-th flag face, in lattice coordinates of the face.

        Returns ``(flag, face_polytope, lattice_basis)`` where the face polytope
        lives in ``R^{n-k}`` and ``lattice_basis`` (HNF-derived) identifies
        ``Z^{n-k}`` with the lattice of the face.
        """
        if not 1 <= k <= self.dim - 1:
            raise ShapeError("sub-flag index must be in 1..n-1")
        face_k = self.flag_face(p, k)
        basis = lattice_basis_of_span(face_k)
        n, r = self.dim, len(basis)
        # coordinates of x - v in the face lattice basis, through a pivot minor
        piv = _pivot_rows(basis, n)
        mat = IntMatrix.from_rows([[basis[j][i] for j in range(r)] for i in piv])

        def coords(x):
            return solve_rational(mat, [x[i] for i in piv])

        verts = [coords([a - b for a, b in zip(w, self.vertex)]) for w in face_k.vertices]
        sub_basis = []
        for b in self.basis[k:]:
            c = coords(b)
            if any(isinstance(x, Fraction) and x.denominator != 1 for x in c):
                raise FlagError("edge direction outside the face lattice")
            sub_basis.append(tuple(int(x) for x in c))
        body = convex_hull(verts)
        return ToricFlag(tuple(0 for _ in range(r)), tuple(sub_basis)), body, basis


def _pivot_rows(basis: Sequence[Sequence[int]], n: int) -> list[int]:
    rows: list[int] = []
    cur: list[list[int]] = []
    from .exact import rank

    for i in range(n):
        trial = cur + [[b[i] for b in basis]]
        if rank(trial) > len(cur):
            cur = trial
            rows.append(i)
        if len(rows) == len(basis):
            break
    return rows


def _functionals(basis: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """``l_i`` with ``l_i . b_i = 1`` and ``l_i . b_j = 0`` for ``j > i``."""
    n = len(basis)
    out = []
    for i in range(n):
        later = [list(b) for b in basis[i + 1:]]
        ker = integer_kernel(later, n) if later else [
            tuple(int(a == c) for c in range(n)) for a in range(n)
        ]
        # combine the kernel generators so the pairing with b_i becomes 1
        ell = [0] * n
        g = 0
        for vec in ker:
            c = sum(x * y for x, y in zip(vec, basis[i]))
            if c == 0:
                continue
            g2, s, t = _xgcd(g, c)
            ell = [s * a + t * b for a, b in zip(ell, vec)]
            g = g2
        if abs(g) != 1:
            raise FlagError("edge basis is not unimodular")
        out.append(tuple(g * x for x in ell))
    return out


def okounkov_transform(p: Polytope, flag: ToricFlag) -> tuple[AffineMap, Polytope]:
    """The unimodular map attached to ``flag`` and the Okounkov body ``map(p)``."""
    flag.check(p)
    t = flag.transform_map()
    return t, convex_hull(t(w) for w in p.vertices)


def valuation(
    u: Sequence[int], p: Polytope, flag: ToricFlag, m: int = 1
) -> tuple[int, ...]:
    """Valuation vector of the monomial section ``u`` of ``m P``.

    Step i takes the vanishing order along the i-th flag element (a lattice
    distance inside the previous element) and then restricts to it.
    """
    if len(u) != flag.dim:
        raise ShapeError("exponent vector has the wrong length")
    if not p.contains([Fraction(x, m) for x in u]):
        raise DomainError(f"{tuple(u)} is not a lattice point of {m}P")
    w = [int(a) - m * b for a, b in zip(u, flag.vertex)]
    nu = []
    for ell, b in zip(flag._functionals, flag.basis):
        c = sum(x * y for x, y in zip(ell, w))
        if c < 0:
            raise DomainError("negative vanishing order: the flag does not fit the polytope")
        nu.append(c)
        w = [x - c * y for x, y in zip(w, b)]
    if any(w):
        raise DomainError("exponent vector left the lattice of the flag")
    return tuple(nu)


def valuation_table(p: Polytope, flag: ToricFlag, m: int) -> np.ndarray:
    """Valuation vectors of all lattice points of ``m P``, row per point."""
    pts = np.array(lattice_points(p, m), dtype=np.int64).reshape(-1, p.dim)
    inv = np.array(flag._inverse.to_rows(), dtype=np.int64)
    return (pts - m * np.array(flag.vertex, dtype=np.int64)) @ inv.T


def _scaled_hull(rows, m: int, n: int) -> Polytope | None:
    if len(rows) == 0:
        return None
    pts = {tuple(int(x) for x in r) for r in rows}
    return convex_hull(tuple(Fraction(x, m) for x in r) for r in pts)


def empirical_okounkov(p: Polytope, flag: ToricFlag, m: int) -> Polytope:
    """``(1/m) conv`` of the valuation vectors of the sections of ``m P``."""
    flag.check(p)
    table = valuation_table(p, flag, m)
    body = _scaled_hull(table, m, p.dim)
    if body is None:
        raise DomainError(f"{m}P has no lattice points")
    return body


# --------------------------------------------------------------------------
# restriction to a flag face
# --------------------------------------------------------------------------

def fubini_holds(body: Polytope, k: int) -> tuple[bool, Number, Number, Number]:
    """``vol(K) <= vol(pr_{<=k} K) * vol(pr_{>k} K)`` with the three volumes."""
    n = body.dim
    if not 1 <= k <= n - 1:
        raise ShapeError("split index must be in 1..n-1")
    vk = volume(body)
    lo = volume(project(body, range(k)))
    hi = volume(project(body, range(k, n)))
    return vk <= lo * hi, vk, lo, hi


@dataclass(frozen=True)
class ProjectionReport:
    k: int
    inclusion: bool
    hypothesis_failure: bool
    fubini: bool
    body_volume: Number
    low_volume: Number
    high_volume: Number
    face_volume: Number
    notes: tuple[str, ...] = ()


def projection_inclusion_check(p: Polytope, flag: ToricFlag, k: int) -> ProjectionReport:
    """Compare ``pr_{>k}`` of the body with the body of the k-th flag face.

    A failed inclusion means the restriction hypotheses behind it do not hold
    for this polytope and flag; it is recorded as a hypothesis failure.
    """
    _, body = okounkov_transform(p, flag)
    ok, vk, lo, hi = fubini_holds(body, k)
    sub, face_poly, _ = flag.sub_flag(p, k)
    _, face_body = okounkov_transform(face_poly, sub)
    shadow = project(body, range(k, p.dim))
    inclusion = face_body.contains_polytope(shadow)
    notes = []
    if not inclusion:
        notes.append("projection leaves the face body")
    face_vol = volume(face_body)
    if face_vol == 0:
        notes.append("degenerate flag face")
    return ProjectionReport(
        k=k,
        inclusion=inclusion,
        hypothesis_failure=not inclusion,
        fubini=ok,
        body_volume=vk,
        low_volume=lo,
        high_volume=hi,
        face_volume=face_vol,
        notes=tuple(notes),
    )


# --------------------------------------------------------------------------
# multipoint bodies
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MultipointFlagModel:
    level: int
    flags: tuple[ToricFlag, ...]

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level <= 0:
            raise DomainError("level must be a positive integer")
        flags = tuple(self.flags)
        if not flags:
            raise DomainError("a multipoint model needs at least one point")
        if len({f.dim for f in flags}) != 1:
            raise ShapeError("flags live in different dimensions")
        if len({f.vertex for f in flags}) != len(flags):
            raise DomainError("flag points must be distinct")
        object.__setattr__(self, "flags", flags)

    @property
    def points(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.vertex for f in self.flags)

    def at_level(self, m: int) -> "MultipointFlagModel":
        return MultipointFlagModel(m, self.flags)

    def tables(self, p: Polytope) -> np.ndarray:
        """Valuations, shape ``(N, #points of mP, n)``."""
        return np.stack([valuation_table(p, f, self.level) for f in self.flags])


def _lex_winners(tables: np.ndarray) -> np.ndarray:
    """Index of the strict lexicographic minimum per column, or -1 on ties."""
    n_flags, n_pts, n = tables.shape
    alive = np.ones((n_flags, n_pts), dtype=bool)
    for c in range(n):
        col = np.where(alive, tables[:, :, c], np.iinfo(np.int64).max)
        best = col.min(axis=0)
        alive &= col == best
    winners = np.argmax(alive, axis=0)
    winners[alive.sum(axis=0) != 1] = -1
    return winners


def multipoint_bodies(model: MultipointFlagModel, p: Polytope) -> list[Polytope | None]:
    """Level-m multipoint bodies, one per point; ``None`` for an empty bucket."""
    for f in model.flags:
        f.check(p)
    tables = model.tables(p)
    winners = _lex_winners(tables)
    return [
        _scaled_hull(tables[j][winners == j], model.level, p.dim)
        for j in range(len(model.flags))
    ]


def multipoint_dim1_exact(d: Number, n_points: int) -> list[Polytope]:
    """Limit bodies on the line for ``O(d)`` and N points: each is ``[0, d/N]``."""
    if n_points < 1:
        raise DomainError("need at least one point")
    d = normalize(d)
    if d <= 0:
        raise DomainError("degree must be positive")
    seg = convex_hull([(0,), (Fraction(d) / n_points,)])
    return [seg for _ in range(n_points)]


def multipoint_dim1_enumerated(d: int, n_points: int, m: int) -> list[Polytope | None]:
    """Level-m bodies on the line by enumerating vanishing-order vectors.

    A section of ``O(md)`` vanishing to orders ``a_1, ..., a_N`` at the N
    points exists iff ``sum a_i <= md``; it belongs to bucket j when ``a_j``
    is strictly smallest.
    """
    if n_points < 1 or m < 1 or d < 1:
        raise DomainError("positive parameters required")
    top = m * d
    best = [None] * n_points
    for a in range(top + 1):
        # a_j = a, all others at least a + 1
        if a + (n_points - 1) * (a + 1) <= top:
            best = [a] * n_points
    if best[0] is None:
        return [None] * n_points
    return [convex_hull([(0,), (Fraction(b, m),)]) for b in best]
