"""Exact convex polytopes over the rationals.

A :class:`Polytope` keeps its minimal vertex set (sorted) and, when it is
full-dimensional, its irredundant facet inequalities ``normal . x <= offset``
with primitive integer outer normals.  Lower-dimensional polytopes carry
their affine span instead: integer equations, the pivot coordinates on which
the span projects injectively, and the full-dimensional image there.

Hulls are computed on integer points (rational input is scaled by a common
denominator first) with an incremental beneath-beyond scheme that keeps a
simplicial boundary and outside sets for unprocessed points.
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from functools import cached_property
from operator import mul
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, ShapeError
from .exact import (
    Number,
    as_rational,
    batch_det,
    common_denominator,
    det,
    hyperplane_normal,
    integer_kernel,
    independent_rows,
    normalize,
    row_echelon,
)

Point = tuple  # tuple of int | Fraction

LATTICE_CAPACITY = 10**7


def _dot(u, v):
    return sum(map(mul, u, v))


# --------------------------------------------------------------------------
# hull kernel (integer points, full-dimensional)
# --------------------------------------------------------------------------

def _independent_subset(pts: Sequence[tuple[int, ...]], n: int) -> list[int]:
    """Indices of up to n+1 affinely independent points, greedily."""
    p0 = min(range(len(pts)), key=lambda i: pts[i])
    origin = pts[p0]
    others = [i for i in range(len(pts)) if i != p0]
    dirs = [[a - b for a, b in zip(pts[i], origin)] for i in others]
    return [p0] + [others[j] for j in independent_rows(dirs, n)]


def _hull_int(pts: list[tuple[int, ...]], n: int):
    """Convex hull of distinct integer points spanning R^n.

    Returns ``(vertex_indices, facets)`` where facets are
    ``(primitive_outer_normal, offset)`` with integer offset.
    """
    if n == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i][0])
        hi = max(range(len(pts)), key=lambda i: pts[i][0])
        return sorted({lo, hi}), [((1,), pts[hi][0]), ((-1,), -pts[lo][0])]

    base = _independent_subset(pts, n)
    if len(base) != n + 1:
        raise DomainError("points do not span the ambient space")
    interior = [sum(pts[i][j] for i in base) for j in range(n)]
    scale = n + 1

    normals: list[tuple[int, ...]] = []
    offsets: list[int] = []
    fverts: list[tuple[int, ...]] = []
    alive: list[bool] = []
    outside: list[list[int]] = []
    ridge_map: dict[tuple[int, ...], list[int]] = {}

    def ridges(vs):
        return [vs[:i] + vs[i + 1:] for i in range(len(vs))]

    def register(vs, u, b):
        side = _dot(u, interior) - scale * b
        if side > 0:
            u = tuple(-x for x in u)
            b = -b
        elif side == 0:
            raise AssertionError("degenerate facet in hull construction")
        fid = len(normals)
        normals.append(u)
        offsets.append(b)
        fverts.append(vs)
        alive.append(True)
        outside.append([])
        for r in ridges(vs):
            ridge_map.setdefault(r, []).append(fid)
        return fid

    def make_facet(vs):
        vs = tuple(sorted(vs))
        u = hyperplane_normal([pts[i] for i in vs])
        return register(vs, u, _dot(u, pts[vs[0]]))

    def pencil_facet(r, g, h, p, P):
        # the new hyperplane through ridge r and P lies in the pencil of the
        # hyperplanes of g (visible) and h (hidden) that share r
        ug, uh = normals[g], normals[h]
        alpha = offsets[h] - _dot(uh, P)
        beta = _dot(ug, P) - offsets[g]
        u = [alpha * x + beta * y for x, y in zip(ug, uh)]
        b = alpha * offsets[g] + beta * offsets[h]
        gcd = math.gcd(*u)
        if gcd > 1:
            u = [x // gcd for x in u]
            b //= gcd
        vs = tuple(sorted(r + (p,)))
        return register(vs, tuple(u), b)

    for i in range(n + 1):
        make_facet(base[:i] + base[i + 1:])
    initial = list(range(n + 1))
    in_base = set(base)
    for q in range(len(pts)):
        if q in in_base:
            continue
        pq = pts[q]
        for f in initial:
            if _dot(normals[f], pq) > offsets[f]:
                outside[f].append(q)
                break

    pending = [f for f in initial if outside[f]]
    while pending:
        f = pending.pop()
        if not alive[f] or not outside[f]:
            continue
        uf = normals[f]
        p = max(outside[f], key=lambda i: _dot(uf, pts[i]))
        P = pts[p]
        visible = {f}
        hidden: set[int] = set()
        stack = [f]
        horizon = []
        while stack:
            g = stack.pop()
            for r in ridges(fverts[g]):
                for h in ridge_map[r]:
                    if h == g or h in visible:
                        continue
                    if h not in hidden:
                        if _dot(normals[h], P) > offsets[h]:
                            visible.add(h)
                            stack.append(h)
                            continue
                        hidden.add(h)
                    horizon.append((r, g, h))
        orphans = []
        for g in visible:
            alive[g] = False
            orphans.extend(q for q in outside[g] if q != p)
            outside[g] = []
            for r in ridges(fverts[g]):
                lst = ridge_map[r]
                lst.remove(g)
                if not lst:
                    del ridge_map[r]
        new = [pencil_facet(r, g, h, p, P) for r, g, h in horizon]
        for q in orphans:
            pq = pts[q]
            for nf in new:
                if _dot(normals[nf], pq) > offsets[nf]:
                    outside[nf].append(q)
                    break
        pending.extend(nf for nf in new if outside[nf])

    groups: dict[tuple, None] = {}
    cand: set[int] = set()
    for f in range(len(normals)):
        if alive[f]:
            groups[(normals[f], offsets[f])] = None
            cand.update(fverts[f])
    facets = list(groups)
    # a boundary point is a vertex iff no other boundary point lies on every
    # facet through it (its minimal face is then the point itself)
    cand_list = sorted(cand)
    on_masks = []
    for u, b in facets:
        m = 0
        for k, q in enumerate(cand_list):
            if _dot(u, pts[q]) == b:
                m |= 1 << k
        on_masks.append(m)
    vertex_idx = []
    for k, q in enumerate(cand_list):
        bit = 1 << k
        common = -1
        for m in on_masks:
            if m & bit:
                common &= m
        if common == bit:
            vertex_idx.append(q)
    return vertex_idx, facets


# --------------------------------------------------------------------------
# Polytope
# --------------------------------------------------------------------------

class Polytope:
    """Immutable convex polytope with rational vertices.

    Build with :func:`convex_hull` (or the small constructors below); the
    constructor itself trusts its arguments.
    """

    __slots__ = ("dim", "vertices", "facets", "aff_dim", "_span", "__dict__")

    def __init__(self, dim, vertices, facets, aff_dim, span=None):
        self.dim: int = dim
        self.vertices: tuple[Point, ...] = vertices
        self.facets = facets
        self.aff_dim: int = aff_dim
        self._span = span

    # -- basic protocol ----------------------------------------------------
    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices[:8])
        more = "" if len(self.vertices) <= 8 else f", ... {len(self.vertices)} vertices"
        return f"Polytope(dim={self.dim}, aff_dim={self.aff_dim}, vertices=[{vs}{more}])"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    @property
    def is_full_dimensional(self) -> bool:
        return self.aff_dim == self.dim

    @cached_property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @cached_property
    def denominator(self) -> int:
        return common_denominator(x for v in self.vertices for x in v)

    @cached_property
    def int_vertices(self) -> tuple[tuple[int, ...], ...]:
        """Vertices scaled by :attr:`denominator`."""
        d = self.denominator
        return tuple(tuple(int(x * d) for x in v) for v in self.vertices)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        """Bitmask of incident vertices for every facet (full-dimensional only)."""
        if self.facets is None:
            raise DomainError("facet incidences need a full-dimensional polytope")
        masks = []
        for u, b in self.facets:
            m = 0
            for i, v in enumerate(self.vertices):
                if _dot(u, v) == b:
                    m |= 1 << i
            masks.append(m)
        return tuple(masks)

    # -- span data for lower-dimensional polytopes -------------------------
    @property
    def span_equations(self) -> tuple[tuple[tuple[int, ...], Number], ...]:
        """Integer equations ``e . x == c`` cutting out the affine span."""
        if self._span is None:
            return ()
        return self._span["equations"]

    @property
    def pivots(self) -> tuple[int, ...]:
        if self._span is None:
            return tuple(range(self.dim))
        return self._span["pivots"]

    @property
    def projected(self) -> "Polytope":
        """Full-dimensional image on the pivot coordinates (same vertex order)."""
        if self._span is None:
            return self
        return self._span["projected"]

    # -- queries -------------------------------------------------------------
    def support(self, u: Sequence[Number]) -> Number:
        if len(u) != self.dim:
            raise ShapeError("direction has the wrong length")
        return normalize(max(_dot(u, v) for v in self.vertices))

    def contains(self, x: Sequence[Number]) -> bool:
        if len(x) != self.dim:
            raise ShapeError("point has the wrong length")
        if self._span is None:
            return all(_dot(u, x) <= b for u, b in self.facets)
        for e, c in self._span["equations"]:
            if _dot(e, x) != c:
                return False
        if self.aff_dim == 0:
            return True
        px = tuple(x[i] for i in self._span["pivots"])
        return self._span["projected"].contains(px)

    def contains_polytope(self, other: "Polytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def edges_at(self, index: int) -> list[int]:
        """Indices of the vertices joined to vertex ``index`` by an edge."""
        if self._span is not None:
            if self.aff_dim == 0:
                return []
            return self._span["projected"].edges_at(index)
        if self.dim == 1:
            return [j for j in range(len(self.vertices)) if j != index]
        masks = self.facet_masks
        bit = 1 << index
        out = []
        for j in range(len(self.vertices)):
            if j == index:
                continue
            both = bit | (1 << j)
            common = -1
            for m in masks:
                if m & both == both:
                    common &= m
            if common == both:
                out.append(j)
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [[x if isinstance(x, int) else str(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj) -> "Polytope":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            dim = int(obj["dim"])
            verts = [tuple(as_rational(x) for x in v) for v in obj["vertices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed polytope JSON: {exc}") from exc
        if any(len(v) != dim for v in verts):
            raise ShapeError("vertex length does not match 'dim'")
        return convex_hull(verts)


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Convex hull of a finite nonempty set of rational points."""
    pts = list(dict.fromkeys(tuple(as_rational(x) for x in p) for p in points))
    if not pts:
        raise DomainError("convex hull of an empty point set")
    n = len(pts[0])
    if n == 0 or any(len(p) != n for p in pts):
        raise ShapeError("points must share a positive dimension")
    d = common_denominator(x for p in pts for x in p)
    ipts = [tuple(int(x * d) for x in p) for p in pts] if d != 1 else pts

    if len(pts) == 1:
        return _point_polytope(pts[0])

    origin = ipts[0]
    dirs = [[a - b for a, b in zip(p, origin)] for p in ipts[1:]]
    if len(independent_rows(dirs, n)) == n:
        idx, facets = _hull_int(ipts, n)
        verts = sorted(pts[i] for i in idx)
        facets = tuple(sorted((u, normalize(Fraction(b, d))) for u, b in facets))
        return Polytope(n, tuple(verts), facets, n)

    # lower-dimensional: hull on the pivot coordinates
    ech, pivots = row_echelon(dirs)
    k = len(pivots)
    proj_pts = [tuple(p[i] for i in pivots) for p in ipts]
    if k == 0:
        return _point_polytope(pts[0])
    idx, _ = _hull_int(proj_pts, k)
    verts = sorted(pts[i] for i in idx)
    return _lower_dim(n, verts, ech, pivots)


def _point_polytope(p: Point) -> Polytope:
    n = len(p)
    eqs = tuple((tuple(int(i == j) for j in range(n)), p[i]) for i in range(n))
    span = {"equations": eqs, "pivots": (), "projected": None}
    return Polytope(n, (p,), None, 0, span)


def _lower_dim(n: int, verts: list[Point], ech, pivots) -> Polytope:
    """Assemble a lower-dimensional polytope from its (sorted) vertices."""
    normals = integer_kernel(ech, n)
    eqs = tuple((e, normalize(_dot(e, verts[0]))) for e in normals)
    pv = tuple(pivots)
    proj_verts = tuple(tuple(v[i] for i in pv) for v in verts)
    projected = convex_hull(proj_verts)
    # reorder projected vertices to follow ``verts``
    if projected.facets is not None:
        projected = Polytope(len(pv), proj_verts, projected.facets, len(pv))
    span = {"equations": eqs, "pivots": pv, "projected": projected}
    return Polytope(n, tuple(verts), None, len(pv), span)


def standard_simplex(n: int, scale: Number = 1) -> Polytope:
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(scale if j == i else 0 for j in range(n)) for i in range(n)]
    return convex_hull(pts)


def cube(n: int, side: Number = 1) -> Polytope:
    return box([side] * n)


def box(sides: Sequence[Number]) -> Polytope:
    """Axis-parallel box ``[0, s_1] x ... x [0, s_n]`` (zero sides allowed)."""
    return convex_hull(itertools.product(*[(0, s) if s else (0,) for s in sides]))


def segment(direction: Sequence[Number]) -> Polytope:
    return convex_hull([tuple(0 for _ in direction), tuple(direction)])


def product(p: Polytope, q: Polytope) -> Polytope:
    return convex_hull(a + b for a in p.vertices for b in q.vertices)


def embed_simplex_product(k: int, n: int) -> tuple[Polytope, Polytope, Polytope]:
    """Polytopes of the (1,1), (1,0), (0,1) classes on P^k x P^(n-k)."""
    a = product(standard_simplex(k), standard_simplex(n - k))
    b = product(standard_simplex(k), convex_hull([tuple(0 for _ in range(n - k))]))
    c = product(convex_hull([tuple(0 for _ in range(k))]), standard_simplex(n - k))
    return a, b, c


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def translate(p: Polytope, v: Sequence[Number]) -> Polytope:
    return convex_hull(tuple(a + b for a, b in zip(x, v)) for x in p.vertices)


def dilate(p: Polytope, factor: Number) -> Polytope:
    if factor < 0:
        raise DomainError("dilation factor must be nonnegative")
    return convex_hull(tuple(factor * a for a in x) for x in p.vertices)


def linear_image(p: Polytope, matrix) -> Polytope:
    """Image under ``x -> M x`` for an integer (or rational) square matrix."""
    rows = matrix.to_rows() if hasattr(matrix, "to_rows") else [list(r) for r in matrix]
    if len(rows[0]) != p.dim:
        raise ShapeError("matrix does not act on this dimension")
    return convex_hull(tuple(_dot(r, v) for r in rows) for v in p.vertices)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.dim != q.dim:
        raise ShapeError(f"Minkowski sum of dimensions {p.dim} and {q.dim}")
    return convex_hull(
        tuple(a + b for a, b in zip(v, w)) for v in p.vertices for w in q.vertices
    )


def project(p: Polytope, keep: Sequence[int]) -> Polytope:
    """Coordinate projection onto the (0-based, ordered) indices ``keep``."""
    keep = list(keep)
    if not keep:
        raise ShapeError("projection needs at least one coordinate")
    if any(not 0 <= i < p.dim for i in keep):
        raise ShapeError(f"coordinate index out of range for dimension {p.dim}")
    return convex_hull(tuple(v[i] for i in keep) for v in p.vertices)


def face(p: Polytope, direction: Sequence[Number]) -> Polytope:
    """Face of ``p`` on which ``direction . x`` is maximal."""
    if len(direction) != p.dim:
        raise ShapeError("direction has the wrong length")
    if all(x == 0 for x in direction):
        raise DomainError("face direction must be nonzero")
    vals = [_dot(direction, v) for v in p.vertices]
    top = max(vals)
    return convex_hull(v for v, h in zip(p.vertices, vals) if h == top)


# --------------------------------------------------------------------------
# triangulation and volume
# --------------------------------------------------------------------------

def pulling_triangulation(
    n_vertices: int, facet_masks: Sequence[int], dim: int, order: Sequence[int] | None = None
) -> list[tuple[int, ...]]:
    """Pulling triangulation from facet-vertex incidences alone.

    Each face is coned from its first vertex in ``order`` over the facets of
    the face that miss that vertex.  Facets of a face ``F`` are the
    inclusion-maximal proper sets among ``F & G`` for facets ``G``.  Only the
    face lattice enters, so the result is valid for every polytope with the
    same combinatorics and vertex labelling.
    """
    rank_of = list(range(n_vertices)) if order is None else [0] * n_vertices
    if order is not None:
        for pos, v in enumerate(order):
            rank_of[v] = pos
    memo: dict[int, list[tuple[int, ...]]] = {}

    def apex_of(mask: int) -> int:
        best, best_rank = -1, None
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if best_rank is None or rank_of[i] < best_rank:
                best, best_rank = i, rank_of[i]
            m ^= low
        return best

    def subfaces(mask: int, cuts: list[int]) -> list[int]:
        # cuts holds F & G for the facets G meeting F properly
        ordered = sorted(set(cuts), key=lambda c: -c.bit_count())
        maximal: list[int] = []
        for c in ordered:
            if not any(c & m == c for m in maximal):
                maximal.append(c)
        return maximal

    def tri(mask: int, d: int, cuts: list[int]) -> list[tuple[int, ...]]:
        got = memo.get(mask)
        if got is not None:
            return got
        if d == 0:
            out = [(mask.bit_length() - 1,)]
        else:
            a = apex_of(mask)
            abit = 1 << a
            out = []
            for g in subfaces(mask, cuts):
                if not g & abit:
                    sub = [x for x in (c & g for c in cuts) if x and x != g]
                    out.extend((a,) + s for s in tri(g, d - 1, sub))
        memo[mask] = out
        return out

    full = (1 << n_vertices) - 1
    return tri(full, dim, [m for m in facet_masks if m and m != full])


def triangulate(p: Polytope, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Pulling triangulation of a full-dimensional polytope (vertex index tuples)."""
    if not p.is_full_dimensional:
        raise DomainError("triangulate needs a full-dimensional polytope")
    if p.dim == 1:
        return [(0, 1)]
    return pulling_triangulation(len(p.vertices), p.facet_masks, p.dim, order)


def simplex_volumes(p: Polytope, simplices: Sequence[tuple[int, ...]]) -> list[Fraction]:
    iv = np.array(p.int_vertices, dtype=object if _too_big(p.int_vertices) else np.int64)
    simp = np.array(simplices, dtype=np.intp)
    mats = iv[simp[:, 1:]] - iv[simp[:, :1]]
    dets = batch_det(mats)
    scale = math.factorial(p.dim) * p.denominator ** p.dim
    return [Fraction(abs(x), scale) for x in dets]


def _too_big(int_points) -> bool:
    return any(abs(x) >= 1 << 40 for v in int_points for x in v)


def volume(p: Polytope, order: Sequence[int] | None = None) -> Number:
    """Euclidean volume in the ambient dimension (0 if not full-dimensional)."""
    if not p.is_full_dimensional:
        return 0
    key = "_vol" if order is None else None
    if key and key in p.__dict__:
        return p.__dict__[key]
    simplices = triangulate(p, order)
    iv = np.array(p.int_vertices, dtype=object if _too_big(p.int_vertices) else np.int64)
    simp = np.array(simplices, dtype=np.intp)
    mats = iv[simp[:, 1:]] - iv[simp[:, :1]]
    total = sum(abs(x) for x in batch_det(mats))
    v = normalize(Fraction(total, math.factorial(p.dim) * p.denominator ** p.dim))
    if key:
        p.__dict__[key] = v
    return v


def lattice_basis_of_span(p: Polytope) -> list[tuple[int, ...]]:
    """Z-basis of the lattice ``span(P - P) ∩ Z^n``."""
    if p.is_full_dimensional:
        return [tuple(int(i == j) for j in range(p.dim)) for i in range(p.dim)]
    normals = [e for e, _ in p.span_equations]
    return integer_kernel(normals, p.dim)


def relative_volume(p: Polytope) -> Number:
    """Volume inside the affine span, normalized by the induced lattice.

    A fundamental cell of ``span(P - P) ∩ Z^n`` has volume 1; a point has
    relative volume 1.
    """
    if p.aff_dim == 0:
        return 1
    if p.is_full_dimensional:
        return volume(p)
    basis = lattice_basis_of_span(p)
    piv = p.pivots
    index = abs(det([[b[i] for i in piv] for b in basis]))
    return normalize(Fraction(volume(p.projected)) / index)


# --------------------------------------------------------------------------
# lattice points
# --------------------------------------------------------------------------

def lattice_points(p: Polytope, scale: int = 1) -> list[tuple[int, ...]]:
    """All integer points of ``scale * p``, sorted lexicographically."""
    if not isinstance(scale, int) or scale <= 0:
        raise DomainError("scale must be a positive integer")
    n = p.dim
    lo = [math.ceil(min(v[i] for v in p.vertices) * scale) for i in range(n)]
    hi = [math.floor(max(v[i] for v in p.vertices) * scale) for i in range(n)]
    if any(h < l for l, h in zip(lo, hi)):
        return []
    count = 1
    for l, h in zip(lo, hi):
        count *= h - l + 1
    if count > LATTICE_CAPACITY:
        raise CapacityError(f"{count} bounding-box candidates exceed {LATTICE_CAPACITY}")
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    keep = np.ones(len(grid), dtype=bool)
    if p.is_full_dimensional:
        for u, b in p.facets:
            bound = math.floor(b * scale)
            keep &= grid @ np.array(u, dtype=np.int64) <= bound
    else:
        for e, c in p.span_equations:
            target = c * scale
            if isinstance(target, Fraction) and target.denominator != 1:
                return []
            keep &= grid @ np.array(e, dtype=np.int64) == int(target)
        if p.aff_dim > 0:
            sub = grid[:, list(p.pivots)]
            for u, b in p.projected.facets:
                keep &= sub @ np.array(u, dtype=np.int64) <= math.floor(b * scale)
    return [tuple(int(x) for x in row) for row in grid[keep]]


# --------------------------------------------------------------------------
# face chains
# --------------------------------------------------------------------------

class FaceChain:
    """Chain ``F_0 ⊋ F_1 ⊋ ... ⊋ F_n`` with ``dim F_i = n - i``."""

    __slots__ = ("faces",)

    def __init__(self, faces: Sequence[Polytope]):
        faces = tuple(faces)
        if not faces:
            raise ShapeError("empty face chain")
        n = faces[0].aff_dim
        if len(faces) != n + 1:
            raise ShapeError("a face chain needs one face per dimension")
        for i, f in enumerate(faces):
            if f.aff_dim != n - i:
                raise ShapeError(f"face {i} has dimension {f.aff_dim}, expected {n - i}")
            if i and not faces[i - 1].contains_polytope(f):
                raise ShapeError(f"face {i} is not contained in face {i - 1}")
            if i:
                vs = set(faces[i - 1].vertices)
                if not set(f.vertices) <= vs:
                    raise ShapeError(f"face {i} is not a face of face {i - 1}")
        self.faces = faces

    @property
    def point(self) -> Point:
        return self.faces[-1].vertices[0]

    def __len__(self) -> int:
        return len(self.faces)

    def __getitem__(self, i: int) -> Polytope:
        return self.faces[i]
