"""Intersection forms on surfaces and the equality case of the reverse inequality.

On a surface the reverse inequality reads ``2(B.A)(A.C) >= (A^2)(B.C)``.
Equality with a nonzero right side happens exactly when ``B^2 = C^2 = 0``,
``(B.C) != 0`` and ``A ≡ sB + tC`` with ``s, t > 0``.  This module checks
both directions on explicit Gram matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, LatticeError, ShapeError
from .exact import Number, normalize, rank, solve_rational
from .inequalities import InequalityReport, fingerprint
from .intersection import mixed_volume
from .polytope import Polytope

__all__ = [
    "SurfaceLattice",
    "NefTriple",
    "EqualityReport",
    "signature",
    "pairing",
    "equality_case_check",
    "rkt_surface_check",
    "toric_surface",
]

Vector = tuple[Number, ...]


def signature(gram: Sequence[Sequence[Number]]) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts by congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in gram]
    size = len(a)
    pos = neg = 0
    live = list(range(size))
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in live for j in live if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # x_i += x_j makes the diagonal entry 2 a_ij
            for r in range(size):
                a[r][i] += a[r][j]
            for c in range(size):
                a[i][c] += a[j][c]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(piv)
        for r in live:
            f = a[r][piv] / d
            if f:
                for c in range(size):
                    a[r][c] -= f * a[piv][c]
                for c in range(size):
                    a[c][r] = a[r][c]
        for r in range(size):
            if r != piv:
                a[r][piv] = a[piv][r] = Fraction(0)
    return pos, neg, size - pos - neg


@dataclass
class SurfaceLattice:
    gram: tuple[tuple[int | Fraction, ...], ...]
    classes: dict[str, Vector] = field(default_factory=dict)
    source: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        g = tuple(tuple(normalize(x) for x in row) for row in self.gram)
        rho = len(g)
        if rho == 0 or any(len(row) != rho for row in g):
            raise ShapeError("gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(rho) for j in range(i)):
            raise ShapeError("gram matrix must be symmetric")
        self.gram = g
        self.classes = {k: self._vec(v) for k, v in self.classes.items()}

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _vec(self, x: Sequence[Number]) -> Vector:
        if len(x) != self.rank:
            raise ShapeError(f"class vector has length {len(x)}, lattice rank is {self.rank}")
        return tuple(normalize(Fraction(v)) for v in x)

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def check_hodge(self) -> None:
        """Raise :class:`LatticeError` unless the signature is ``(1, rho - 1)``."""
        pos, neg, zero = self.signature()
        if pos != 1 or zero:
            raise LatticeError(f"signature ({pos}, {neg}, {zero}) is not (1, rho-1)")

    def pair(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        return pairing(self, x, y)

    def orthogonal_to_all(self, x: Sequence[Number]) -> bool:
        x = self._vec(x)
        return all(sum(xi * gij for xi, gij in zip(x, col)) == 0 for col in zip(*self.gram))

    def to_json(self) -> dict:
        enc = lambda v: v if isinstance(v, int) else str(v)  # noqa: E731
        out = {"gram": [[enc(x) for x in row] for row in self.gram]}
        for k, v in self.classes.items():
            out[k] = [enc(x) for x in v]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "SurfaceLattice":
        if "gram" not in obj:
            raise DomainError("surface JSON needs a 'gram' entry")
        gram = [[Fraction(x) for x in row] for row in obj["gram"]]
        classes = {k: [Fraction(x) for x in v] for k, v in obj.items() if k != "gram"}
        return cls(tuple(tuple(r) for r in gram), classes)


def pairing(lattice: SurfaceLattice, x: Sequence[Number], y: Sequence[Number]) -> Number:
    """``x^T G y``."""
    x, y = lattice._vec(x), lattice._vec(y)
    g = lattice.gram
    return normalize(sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y))))


@dataclass(frozen=True)
class NefTriple:
    a: Vector
    b: Vector
    c: Vector

    def validate(self, lattice: SurfaceLattice) -> dict[str, Number]:
        """Products of the triple; raises :class:`DomainError` if the nef proxy fails."""
        p = lattice.pair
        prods = {
            "AA": p(self.a, self.a), "BB": p(self.b, self.b), "CC": p(self.c, self.c),
            "AB": p(self.a, self.b), "AC": p(self.a, self.c), "BC": p(self.b, self.c),
        }
        bad = [k for k, v in prods.items() if v < 0]
        if bad:
            raise DomainError(f"nef proxy fails: negative products {bad}")
        return prods

    @classmethod
    def from_lattice(cls, lattice: SurfaceLattice, names: Sequence[str] = ("A", "B", "C")):
        return cls(*(lattice.classes[k] for k in names))


@dataclass(frozen=True)
class EqualityReport:
    equality: bool
    conditions: bool
    direction: str
    s: Number | None
    t: Number | None
    residual: Vector | None
    residual_trivial: bool | None
    gamma: Vector | None
    products: dict = field(compare=False, default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.equality == self.conditions


def _combo(x: Vector, s: Number, y: Vector, t: Number, z: Vector) -> Vector:
    return tuple(normalize(a - s * b - t * c) for a, b, c in zip(x, y, z))


def equality_case_check(lattice: SurfaceLattice, triple: NefTriple) -> EqualityReport:
    """Test both directions of the surface equality characterization."""
    lattice.check_hodge()
    pr = triple.validate(lattice)
    a, b, c = triple.a, triple.b, triple.c
    lhs = 2 * pr["AB"] * pr["AC"]
    rhs = pr["AA"] * pr["BC"]
    equality = lhs == rhs and rhs != 0
    gamma = None
    if pr["AB"]:
        sg = Fraction(pr["AA"], 1) / (2 * pr["AB"])
        gamma = tuple(normalize(x - sg * y) for x, y in zip(a, b))

    # backward side: isotropic B, C with (B.C) != 0 and A ≡ sB + tC, s, t > 0
    conditions = False
    s = t = None
    residual = None
    trivial = None
    if pr["BB"] == 0 and pr["CC"] == 0 and pr["BC"] != 0:
        s = normalize(Fraction(pr["AC"]) / pr["BC"])
        t = normalize(Fraction(pr["AB"]) / pr["BC"])
        residual = _combo(a, s, b, t, c)
        trivial = lattice.orthogonal_to_all(residual)
        conditions = trivial and s > 0 and t > 0

    if equality:
        direction = "forward"
        # witnesses from the equality itself
        s = normalize(Fraction(pr["AA"]) / (2 * pr["AB"]))
        t = normalize(Fraction(pr["AA"]) / (2 * pr["AC"]))
        residual = _combo(a, s, b, t, c)
        trivial = lattice.orthogonal_to_all(residual)
    elif conditions:
        direction = "backward"
    else:
        direction = "neither"
    return EqualityReport(equality, conditions, direction, s, t, residual, trivial, gamma, pr)


def rkt_surface_check(
    lattice: SurfaceLattice, triple: NefTriple, seed: int | None = None
) -> InequalityReport:
    """``(B.A)(A.C) >= 1/2 (A^2)(B.C)``, the reverse inequality at ``n = 2``."""
    pr = triple.validate(lattice)
    lhs = pr["AB"] * pr["AC"]
    rhs = normalize(Fraction(pr["AA"] * pr["BC"], 2))
    fp = fingerprint(*lattice.source) if lattice.source else ""
    return InequalityReport("rkt", 2, 1, lhs, rhs, ">=", fp, seed, {"source": "surface"})


def toric_surface(polygons: Mapping[str, Polytope]) -> SurfaceLattice:
    """Lattice spanned by polygon classes, modulo numerical equivalence.

    The Gram matrix of pairwise mixed volumes is restricted to a maximal
    independent set of classes; the rest are expressed in that basis.
    """
    names = list(polygons)
    polys = [polygons[k] for k in names]
    if any(p.dim != 2 for p in polys):
        raise ShapeError("toric surfaces need polygons in dimension 2")
    r = len(polys)
    full = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            full[i][j] = full[j][i] = mixed_volume(polys[i], polys[j])
    basis: list[int] = []
    for i in range(r):
        if rank([full[j] for j in basis + [i]]) > len(basis):
            basis.append(i)
    gram = tuple(tuple(full[i][j] for j in basis) for i in basis)
    sub = [[full[i][j] for j in basis] for i in basis]
    classes = {}
    for idx, k in enumerate(names):
        if idx in basis:
            classes[k] = tuple(int(i == idx) for i in basis)
        else:
            classes[k] = solve_rational(sub, [full[i][idx] for i in basis])
    return SurfaceLattice(gram, classes, tuple(polys))
