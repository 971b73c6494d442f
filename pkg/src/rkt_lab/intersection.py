"""Lattice-normalized mixed volumes as toric intersection numbers.

Normalization: ``MV(P, ..., P) = n! vol(P)``, so for nef toric divisors the
intersection number ``(D_1 ... D_n)`` equals ``MV(P_1, ..., P_n)`` with no
extra factor.

Mixed volumes come from inclusion-exclusion over Minkowski combinations,

    MV(P_1^{m_1}, ..., P_r^{m_r})
        = sum_{0 <= s <= m, s != 0} (-1)^{n-|s|} prod_i C(m_i, s_i) vol(sum_i s_i P_i).

Each ``vol(sum s_i P_i)`` is evaluated by :class:`CombinationVolumes`: the
hull of ``P_1 + ... + P_r`` is computed once, together with the unique
decomposition of each of its vertices into summand vertices.  Every
combination with positive coefficients has the same normal fan, hence the
same face lattice, so one pulling triangulation of the full sum serves all of
them; with zero coefficients the signed determinant sum is the polynomial
continuation and stays exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .exact import Number, batch_det, normalize
from .polytope import (
    Polytope,
    convex_hull,
    minkowski_sum,
    pulling_triangulation,
    volume,
)

__all__ = [
    "CombinationVolumes",
    "DivisorSystem",
    "IntersectionQuery",
    "LogConcavityReport",
    "mixed_volume",
    "mixed_volume_by_hulls",
    "intersection_number",
    "kt_logconcavity_check",
]


class CombinationVolumes:
    """Exact ``vol(s_1 P_1 + ... + s_r P_r)`` for integer ``s >= 0``.

    Results are memoized per coefficient vector.
    """

    def __init__(self, polytopes: Sequence[Polytope]):
        if not polytopes:
            raise ShapeError("need at least one polytope")
        n = polytopes[0].dim
        if any(p.dim != n for p in polytopes):
            raise ShapeError("polytopes must share the ambient dimension")
        self.polytopes = tuple(polytopes)
        self.dim = n
        self._memo: dict[tuple[int, ...], Number] = {}
        den = 1
        for p in polytopes:
            den = den * p.denominator // math.gcd(den, p.denominator)
        self.denominator = den
        self._scaled = [
            [tuple(int(x * den) for x in v) for v in p.vertices] for p in polytopes
        ]
        self._build()

    def _build(self):
        n = self.dim
        # pairwise sums with hull pruning; each point remembers its summands
        cur: dict[tuple[int, ...], tuple[int, ...]] = {
            v: (i,) for i, v in enumerate(self._scaled[0])
        }
        poly = convex_hull(list(cur))
        for verts in self._scaled[1:]:
            nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
            for v in poly.vertices:
                dec = cur[v]
                for j, w in enumerate(verts):
                    nxt.setdefault(tuple(a + b for a, b in zip(v, w)), dec + (j,))
            poly = convex_hull(list(nxt))
            cur = nxt
        pts = list(poly.vertices)
        self._decomp = np.array([cur[p] for p in pts], dtype=np.intp)
        self.full_dimensional = poly.is_full_dimensional
        if not self.full_dimensional:
            self._simplices = None
            return
        if n == 1:
            simp = [(0, 1)]
        else:
            simp = pulling_triangulation(len(pts), poly.facet_masks, n)
        simp = np.array(simp, dtype=np.intp)
        # per-summand edge matrices of every simplex: shape (r, S, n, n)
        parts = []
        big = False
        for i, verts in enumerate(self._scaled):
            arr = np.array(verts, dtype=object)
            big = big or any(abs(x) >= 1 << 30 for v in verts for x in v)
            coords = arr[self._decomp[:, i]]
            parts.append(coords[simp[:, 1:]] - coords[simp[:, :1]])
        dtype = object if big else np.int64
        self._parts = [p.astype(dtype) for p in parts]
        ones = sum(self._parts)
        dets = batch_det(ones)
        self._signs = np.array([1 if d > 0 else -1 for d in dets], dtype=np.int64)
        if any(d == 0 for d in dets):
            raise AssertionError("degenerate simplex in the triangulation of the sum")
        self._simplices = simp

    @property
    def n_simplices(self) -> int:
        return 0 if self._simplices is None else len(self._simplices)

    def __call__(self, coeffs: Sequence[int]) -> Number:
        key = tuple(int(c) for c in coeffs)
        if len(key) != len(self.polytopes):
            raise ShapeError("one coefficient per polytope")
        if any(c < 0 for c in key):
            raise DomainError("coefficients must be nonnegative")
        got = self._memo.get(key)
        if got is not None:
            return got
        if self._simplices is None or not any(key):
            val: Number = 0
        else:
            mats = None
            for c, part in zip(key, self._parts):
                if c:
                    term = part * c if c != 1 else part
                    mats = term if mats is None else mats + term
            dets = batch_det(mats)
            total = sum(int(s) * int(d) for s, d in zip(self._signs, dets))
            if total < 0:
                raise AssertionError("negative combination volume")
            n = self.dim
            val = normalize(Fraction(total, math.factorial(n) * self.denominator ** n))
        self._memo[key] = val
        return val

    def mixed(self, multiplicities: Sequence[int]) -> Number:
        """``MV(P_1^{m_1}, ..., P_r^{m_r})`` with ``sum m_i == n``."""
        m = tuple(int(x) for x in multiplicities)
        if sum(m) != self.dim:
            raise ShapeError(f"multiplicities sum to {sum(m)}, expected {self.dim}")
        return _inclusion_exclusion(m, self.dim, self)


def _inclusion_exclusion(m: tuple[int, ...], n: int, vol) -> Number:
    total: Number = 0
    for s in iproduct(*[range(k + 1) for k in m]):
        size = sum(s)
        if size == 0:
            continue
        coef = 1
        for k, si in zip(m, s):
            coef *= math.comb(k, si)
        v = vol(s)
        if v:
            total += coef * v if (n - size) % 2 == 0 else -coef * v
    return normalize(total)


def _group(polytopes: Sequence[Polytope]) -> tuple[list[Polytope], list[int]]:
    distinct: list[Polytope] = []
    mult: list[int] = []
    for p in polytopes:
        for i, q in enumerate(distinct):
            if q == p:
                mult[i] += 1
                break
        else:
            distinct.append(p)
            mult.append(1)
    return distinct, mult


def mixed_volume(*polytopes: Polytope) -> Number:
    """Lattice-normalized mixed volume of exactly ``n`` polytopes in R^n.

    Accepts the polytopes as separate arguments or as a single sequence.
    """
    if len(polytopes) == 1 and not isinstance(polytopes[0], Polytope):
        polytopes = tuple(polytopes[0])
    if not polytopes:
        raise ShapeError("mixed volume of nothing")
    n = polytopes[0].dim
    if len(polytopes) != n:
        raise ShapeError(f"mixed volume in dimension {n} needs {n} polytopes, got {len(polytopes)}")
    distinct, mult = _group(polytopes)
    return CombinationVolumes(distinct).mixed(mult)


def mixed_volume_by_hulls(*polytopes: Polytope) -> Number:
    """Same quantity, one explicit Minkowski-sum hull per subset.

    Slow; kept as an independent route for cross-checking.
    """
    if len(polytopes) == 1 and not isinstance(polytopes[0], Polytope):
        polytopes = tuple(polytopes[0])
    n = polytopes[0].dim
    if len(polytopes) != n:
        raise ShapeError(f"mixed volume in dimension {n} needs {n} polytopes")
    distinct, mult = _group(polytopes)

    def vol(s):
        acc = None
        for c, p in zip(s, distinct):
            for _ in range(c):
                acc = p if acc is None else minkowski_sum(acc, p)
        return volume(acc)

    return _inclusion_exclusion(tuple(mult), n, vol)


# --------------------------------------------------------------------------
# divisor systems
# --------------------------------------------------------------------------

_TERM = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True)
class IntersectionQuery:
    """Multiset of divisor names with exponents, e.g. ``A^2*B*C``."""

    terms: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "IntersectionQuery":
        counts: dict[str, int] = {}
        for chunk in re.split(r"[*·.]", text):
            if not chunk.strip():
                raise DomainError(f"empty factor in query {text!r}")
            m = _TERM.match(chunk)
            if not m:
                raise DomainError(f"cannot parse factor {chunk!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            counts[name] = counts.get(name, 0) + exp
        return cls(tuple((k, v) for k, v in counts.items() if v))

    @classmethod
    def of(cls, **exponents: int) -> "IntersectionQuery":
        return cls(tuple((k, v) for k, v in exponents.items() if v))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.terms)

    def __str__(self) -> str:
        return "*".join(name if e == 1 else f"{name}^{e}" for name, e in self.terms)


@dataclass
class DivisorSystem:
    """Named nef toric divisors given by polytopes in a common dimension."""

    divisors: dict[str, Polytope]
    _volumes: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.divisors:
            raise ShapeError("a divisor system needs at least one divisor")
        dims = {p.dim for p in self.divisors.values()}
        if len(dims) != 1:
            raise ShapeError(f"divisors live in different dimensions {sorted(dims)}")
        self.divisors = dict(self.divisors)
        self._names = list(self.divisors)

    @property
    def dim(self) -> int:
        return next(iter(self.divisors.values())).dim

    @property
    def names(self) -> list[str]:
        return list(self._names)

    def volumes(self, names: Sequence[str] | None = None) -> CombinationVolumes:
        """Combination-volume evaluator over ``names`` (all divisors by default).

        One evaluator per name set, built on first use; queries only touch
        the divisors they mention, which keeps the summed hulls small.
        """
        key = tuple(self._names if names is None else [k for k in self._names if k in set(names)])
        got = self._volumes.get(key)
        if got is None:
            got = CombinationVolumes([self.divisors[k] for k in key])
            self._volumes[key] = got
        return got

    def to_json(self) -> dict:
        return {"dim": self.dim, "divisors": {k: p.to_json() for k, p in self.divisors.items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "DivisorSystem":
        try:
            divs = obj["divisors"]
        except (KeyError, TypeError) as exc:
            raise DomainError("divisor system JSON needs a 'divisors' object") from exc
        system = cls({k: Polytope.from_json(v) for k, v in divs.items()})
        if "dim" in obj and int(obj["dim"]) != system.dim:
            raise ShapeError("'dim' does not match the divisor polytopes")
        return system


def intersection_number(system: DivisorSystem, query: IntersectionQuery | str) -> Number:
    """Intersection number of nef toric divisors, as a mixed volume."""
    if isinstance(query, str):
        query = IntersectionQuery.parse(query)
    if query.degree != system.dim:
        raise ShapeError(f"exponents sum to {query.degree}, expected {system.dim}")
    exps = dict(query.terms)
    unknown = set(exps) - set(system.divisors)
    if unknown:
        raise DomainError(f"unknown divisors {sorted(unknown)}")
    used = [k for k in system.names if exps.get(k, 0)]
    return system.volumes(used).mixed([exps[k] for k in used])


# --------------------------------------------------------------------------
# Alexandrov-Fenchel sanity check
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LogConcavityReport:
    sequence: tuple[Number, ...]
    violations: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def equality(self) -> bool:
        s = self.sequence
        return all(s[i] ** 2 == s[i - 1] * s[i + 1] for i in range(1, len(s) - 1))


def kt_logconcavity_check(a: Polytope, b: Polytope) -> LogConcavityReport:
    """``s_i = (A^{n-i} . B^i)`` and the log-concavity verdict ``s_i^2 >= s_{i-1} s_{i+1}``."""
    if a.dim != b.dim:
        raise ShapeError("polytopes of different dimension")
    n = a.dim
    if a == b:
        vols = CombinationVolumes([a])
        seq = tuple(vols.mixed([n]) for _ in range(n + 1))
    else:
        vols = CombinationVolumes([a, b])
        seq = tuple(vols.mixed([n - i, i]) for i in range(n + 1))
    bad = tuple(i for i in range(1, n) if seq[i] ** 2 < seq[i - 1] * seq[i + 1])
    return LogConcavityReport(seq, bad)
