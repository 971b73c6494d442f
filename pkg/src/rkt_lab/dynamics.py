"""Degrees of monomial self-maps through mixed volumes.

A monomial map is stored by its exponent matrix ``M``: row ``j`` holds the
exponents of the j-th component, ``f(x)_j = prod_i x_i^{M[j][i]}``.  Then
``f^* chi^u = chi^{M^T u}``, composition is ``M_f @ M_g``, and

    deg_{i,H}(f) = MV(P_H^{n-i}, (M^T P_H)^i).

The transpose is not a free choice: a shear map with a non-symmetric ``H``
has a degree that can be counted by elimination by hand, and only ``M^T``
reproduces it (see the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import CapacityError, DomainError, ShapeError
from .exact import IntMatrix, Number, normalize
from .inequalities import InequalityReport, fingerprint
from .intersection import CombinationVolumes
from .polytope import Polytope, linear_image

__all__ = [
    "MATRIX_ACTION",
    "ENTRY_CAP",
    "MonomialMap",
    "DegreeProfile",
    "image_polytope",
    "degree",
    "degree_profile",
    "submult_check",
    "repolarization_check",
    "degree_sequence",
]

# H transforms by the transpose of the exponent matrix
MATRIX_ACTION = "transpose"

# iterate matrices with larger entries are refused
ENTRY_CAP = 1 << 40


@dataclass(frozen=True)
class MonomialMap:
    matrix: IntMatrix

    def __post_init__(self):
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix.from_rows(self.matrix))
        if not self.matrix.is_square:
            raise ShapeError("a monomial self-map needs a square matrix")
        if self.matrix.det() == 0:
            raise DomainError("singular exponent matrix: the map is not dominant")

    @classmethod
    def parse(cls, text: str) -> "MonomialMap":
        return cls(IntMatrix.parse(text))

    @classmethod
    def scalar(cls, n: int, q: int) -> "MonomialMap":
        return cls(IntMatrix.from_rows([[q * int(i == j) for j in range(n)] for i in range(n)]))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "MonomialMap":
        n = len(entries)
        return cls(IntMatrix.from_rows([[entries[i] if i == j else 0 for j in range(n)]
                                        for i in range(n)]))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __matmul__(self, other: "MonomialMap") -> "MonomialMap":
        """Composition ``self o other``."""
        return MonomialMap(self.matrix @ other.matrix)

    def __pow__(self, t: int) -> "MonomialMap":
        return MonomialMap(self.matrix ** t)

    def topological_degree(self) -> int:
        return abs(self.matrix.det())


def image_polytope(f: MonomialMap, h: Polytope) -> Polytope:
    """Polytope of ``f^* H`` under the adopted matrix action."""
    if f.dim != h.dim:
        raise ShapeError("map and polytope live in different dimensions")
    m = f.matrix.transpose() if MATRIX_ACTION == "transpose" else f.matrix
    return linear_image(h, m)


def _pair(f: MonomialMap, h: Polytope) -> CombinationVolumes:
    return CombinationVolumes([h, image_polytope(f, h)])


def degree(f: MonomialMap, h: Polytope, i: int) -> Number:
    """``deg_{i,H}(f) = (pi_1^* H^{n-i} . pi_2^* H^i)``."""
    n = h.dim
    if not 0 <= i <= n:
        raise ShapeError(f"degree index must lie in 0..{n}")
    if not h.is_full_dimensional:
        raise DomainError("H must be full-dimensional")
    return _pair(f, h).mixed([n - i, i])


@dataclass(frozen=True)
class DegreeProfile:
    polarization: Polytope
    degrees: tuple[Number, ...]


def degree_profile(f: MonomialMap, h: Polytope) -> DegreeProfile:
    if not h.is_full_dimensional:
        raise DomainError("H must be full-dimensional")
    n = h.dim
    vols = _pair(f, h)
    return DegreeProfile(h, tuple(vols.mixed([n - i, i]) for i in range(n + 1)))


def submult_check(
    f: MonomialMap, g: MonomialMap, h: Polytope, i: int, seed: int | None = None
) -> InequalityReport:
    """``deg_i(f o g) <= C(n,i)/(H^n) deg_i(f) deg_i(g)``."""
    n = h.dim
    fg = f @ g
    lhs = degree(fg, h, i)
    hn = CombinationVolumes([h]).mixed([n])
    d_f, d_g = degree(f, h, i), degree(g, h, i)
    rhs = normalize(Fraction(comb(n, i)) / hn * d_f * d_g)
    return InequalityReport(
        "submult", n, i, lhs, rhs, "<=", fingerprint(h), seed,
        {"f": str(f.matrix), "g": str(g.matrix), "deg_f": d_f, "deg_g": d_g, "Hn": hn},
    )


def repolarization_check(
    f: MonomialMap, h: Polytope, l: Polytope, i: int, seed: int | None = None
) -> InequalityReport:
    """``deg_{i,H}(f) <= C(n,i)^2 (H^{n-i} L^i)(L^{n-i} H^i)/(L^n)^2 deg_{i,L}(f)``."""
    n = h.dim
    if l.dim != n:
        raise ShapeError("H and L live in different dimensions")
    if not l.is_full_dimensional:
        raise DomainError("L must be full-dimensional")
    lhs = degree(f, h, i)
    hl = CombinationVolumes([h, l])
    ln = hl.mixed([0, n])
    const = Fraction(comb(n, i) ** 2 * hl.mixed([n - i, i]) * hl.mixed([i, n - i]), ln * ln)
    d_l = degree(f, l, i)
    rhs = normalize(const * d_l)
    return InequalityReport(
        "repolarize", n, i, lhs, rhs, "<=", fingerprint(h, l), seed,
        {"f": str(f.matrix), "constant": normalize(const), "deg_L": d_l},
    )


def degree_sequence(f: MonomialMap, h: Polytope, iterations: int) -> list[dict]:
    """Rows ``{t, i, degree, growth}`` for ``f^t``, ``t = 1..T``.

    ``growth`` is ``deg^(1/t)`` as a rounded float, for display only.
    """
    if iterations < 1:
        raise DomainError("need at least one iteration")
    n = h.dim
    rows = []
    power = f.matrix
    for t in range(1, iterations + 1):
        if t > 1:
            power = power @ f.matrix
        if power.max_abs() > ENTRY_CAP:
            raise CapacityError(f"iterate {t} has entries above {ENTRY_CAP}")
        prof = degree_profile(MonomialMap(power), h)
        for i, d in enumerate(prof.degrees):
            rows.append({"t": t, "i": i, "degree": d,
                         "growth": round(float(d) ** (1.0 / t), 6)})
    return rows
