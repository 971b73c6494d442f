"""Exact rational scalars and integer/rational linear algebra.

Rationals are :class:`fractions.Fraction`, which reduces by the gcd after
every operation.  Integer-valued data is kept as plain ``int`` wherever
possible because it is much faster than ``Fraction`` and mixes with it
transparently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ShapeError, SingularMatrixError

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "IntMatrix",
    "as_rational",
    "normalize",
    "det",
    "hermite_normal_form",
    "solve_rational",
    "rank",
    "integer_kernel",
    "hyperplane_normal",
    "batch_det",
    "common_denominator",
]


def as_rational(value) -> Number:
    """Parse an int, Fraction or ``"p/q"`` string into an exact number."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return normalize(value)
    if isinstance(value, str):
        return normalize(Fraction(value.strip()))
    if isinstance(value, _RationalABC):
        return normalize(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def normalize(x: Number) -> Number:
    """Collapse integral Fractions to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def common_denominator(values: Iterable[Number]) -> int:
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = d * v.denominator // math.gcd(d, v.denominator)
    return d


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ShapeError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"IntMatrix entries must be int, got {e!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        """Parse ``"a,b;c,d"`` (rows separated by semicolons)."""
        rows = [[int(x) for x in row.split(",")] for row in text.strip().split(";")]
        return cls.from_rows(rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)]
        )

    def apply(self, v: Sequence[Number]) -> tuple[Number, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ShapeError("vector length does not match matrix")
        return tuple(normalize(sum(a * x for a, x in zip(self.row(i), v))) for i in range(self.rows))

    def __pow__(self, t: int) -> "IntMatrix":
        if not self.is_square or t < 0:
            raise ShapeError("matrix power needs a square matrix and t >= 0")
        result, base = IntMatrix.identity(self.rows), self
        while t:
            if t & 1:
                result = result @ base
            base = base @ base
            t >>= 1
        return result

    def det(self) -> int:
        return det(self)

    def is_unimodular(self) -> bool:
        return self.is_square and abs(det(self)) == 1

    def max_abs(self) -> int:
        return max(abs(e) for e in self.entries)

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in self.row(i)) for i in range(self.rows))


def _rows_of(m) -> list[list[Number]]:
    if isinstance(m, IntMatrix):
        return m.to_rows()
    return [list(r) for r in m]


def det(m) -> Number:
    """Determinant by fraction-free Bareiss elimination.

    Accepts an :class:`IntMatrix` or a square sequence of rows with int or
    Fraction entries.  Integer input gives an ``int``.
    """
    a = _rows_of(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev: Number = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk - aik * row_k[j]
                row_i[j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
            row_i[k] = 0
        prev = akk
    return normalize(sign * a[n - 1][n - 1])


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  ``h`` is in
    row echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)`` and zero rows sit at the bottom.
    """
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).to_rows()
    r = 0
    for c in range(nc):
        if r == nr:
            break
        # gcd-combine everything below r into row r
        for i in range(r + 1, nr):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _xgcd(x, y)
            p, q = -y // g, x // g
            a[r], a[i] = (
                [s * e1 + t * e2 for e1, e2 in zip(a[r], a[i])],
                [p * e1 + q * e2 for e1, e2 in zip(a[r], a[i])],
            )
            u[r], u[i] = (
                [s * e1 + t * e2 for e1, e2 in zip(u[r], u[i])],
                [p * e1 + q * e2 for e1, e2 in zip(u[r], u[i])],
            )
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-e for e in a[r]]
            u[r] = [-e for e in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [e1 - f * e2 for e1, e2 in zip(a[i], a[r])]
                u[i] = [e1 - f * e2 for e1, e2 in zip(u[i], u[r])]
        r += 1
    return IntMatrix.from_rows(a), IntMatrix.from_rows(u)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) > 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_rational(a, b: Sequence[Number]) -> tuple[Number, ...]:
    """Solve ``a x = b`` exactly for square nonsingular ``a``."""
    rows = _rows_of(a)
    n = len(rows)
    if any(len(r) != n for r in rows) or len(b) != n:
        raise ShapeError("solve_rational needs a square matrix and a matching vector")
    aug = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(rows, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k]
        inv = 1 / pk[k]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k] * inv
                row = aug[i]
                for j in range(k, n + 1):
                    row[j] -= f * pk[j]
    return tuple(normalize(aug[i][n] / aug[i][i]) for i in range(n))


def row_echelon(rows: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.  Returns ``(nonzero rows, pivot columns)``."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    nc = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def independent_rows(rows: Sequence[Sequence[int]], limit: int | None = None) -> list[int]:
    """Indices of a greedy maximal linearly independent subset of integer rows.

    Fraction-free: rows are reduced against an integer echelon basis by
    cross-multiplication with gcd cleanup.  Stops after ``limit`` rows.
    """
    basis: list[tuple[int, list[int]]] = []  # (pivot column, row)
    chosen: list[int] = []
    for idx, r in enumerate(rows):
        if limit is not None and len(chosen) >= limit:
            break
        v = list(r)
        for c, b in basis:
            if v[c]:
                f, g = b[c], v[c]
                v = [f * x - g * y for x, y in zip(v, b)]
                m = 0
                for x in v:
                    m = math.gcd(m, x)
                if m > 1:
                    v = [x // m for x in v]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is None:
            continue
        basis.append((c, v))
        chosen.append(idx)
    return chosen


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(row_echelon(rows)[1])


def integer_kernel(rows: Sequence[Sequence[Number]], n: int) -> list[tuple[int, ...]]:
    """Z-basis of ``{x in Z^n : rows . x = 0}``.

    Uses the HNF of the transposed constraint matrix: the transformation rows
    that land on zero rows of the HNF span the integer kernel.
    """
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    int_rows = []
    for r in rows:
        d = common_denominator(r)
        int_rows.append([int(x * d) for x in r])
    mt = IntMatrix.from_rows([[int_rows[i][j] for i in range(len(int_rows))] for j in range(n)])
    h, u = hermite_normal_form(mt)
    basis = []
    for i in range(n):
        if all(x == 0 for x in h.row(i)):
            basis.append(u.row(i))
    return basis


def hyperplane_normal(points: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive integer normal of the hyperplane through ``n`` points in Z^n.

    Generalized cross product of the difference vectors; zero vector when the
    points are affinely dependent.
    """
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    n = len(p0)
    if n == 1:
        return (1,)
    if n == 2:
        (dx, dy), = diffs
        u = [dy, -dx]
    elif n == 3:
        (a1, a2, a3), (b1, b2, b3) = diffs
        u = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    else:
        # maximal minors of the (n-1) x n difference matrix, swept bottom-up
        last = diffs[-1]
        minors = {(j,): last[j] for j in range(n)}
        for size in range(2, n):
            row = diffs[n - 1 - size]
            nxt = {}
            for cols in combinations(range(n), size):
                acc = 0
                for idx, c in enumerate(cols):
                    t = row[c] * minors[cols[:idx] + cols[idx + 1:]]
                    acc = acc - t if idx % 2 else acc + t
                nxt[cols] = acc
            minors = nxt
        u = []
        for j in range(n):
            m = minors[tuple(c for c in range(n) if c != j)]
            u.append(m if j % 2 == 0 else -m)
    g = 0
    for x in u:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(u)
    return tuple(x // g for x in u)


# --- batched exact determinants -------------------------------------------

_INT64_SAFE = 1 << 62


def batch_det(mats: np.ndarray) -> list[int]:
    """Exact determinants of a stack of small integer matrices.

    ``mats`` has shape ``(B, n, n)``.  Laplace expansion over column subsets
    is vectorized in int64 when every partial sum provably fits (bound
    ``n! * E^n`` with ``E`` the largest entry); otherwise falls back to
    Python integers.
    """
    mats = np.asarray(mats)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ShapeError("batch_det expects an array of shape (B, n, n)")
    count, n, _ = mats.shape
    if count == 0:
        return []
    if mats.dtype == object:
        big = True
    else:
        e = int(np.abs(mats).max()) if mats.size else 0
        big = math.factorial(n) * e ** n >= _INT64_SAFE
    if big:
        return [int(det([[int(x) for x in row] for row in m])) for m in mats]
    m = mats.astype(np.int64, copy=False)
    minors = {(j,): m[:, n - 1, j] for j in range(n)}
    for size in range(2, n + 1):
        row = n - size
        nxt = {}
        for cols in combinations(range(n), size):
            acc = None
            for idx, c in enumerate(cols):
                term = m[:, row, c] * minors[cols[:idx] + cols[idx + 1:]]
                if acc is None:
                    acc = term
                elif idx % 2:
                    acc = acc - term
                else:
                    acc = acc + term
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))].tolist()
