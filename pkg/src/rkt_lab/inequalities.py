"""Exact evaluation of the reverse Khovanskii-Teissier family of inequalities.

Every check returns an :class:`InequalityReport`.  ``lhs`` and ``rhs`` keep
the orientation of the written inequality (``direction`` is ``">="`` or
``"<="``); ``slack`` is the margin in the direction of the inequality, so
``holds`` is always ``slack >= 0``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Sequence

from .errors import DomainError, ShapeError
from .intersection import CombinationVolumes, mixed_volume
from .exact import Number, normalize
from .polytope import Polytope, minkowski_sum, standard_simplex

__all__ = [
    "InequalityReport",
    "BezoutResult",
    "fingerprint",
    "rkt_constant",
    "rkt_check",
    "rkt_general_check",
    "ample_proxy",
    "strictness_probe",
    "bezout_check",
    "NEAR_EQUALITY",
]

# normalized slack below this is recorded as a near-equality
NEAR_EQUALITY = Fraction(1, 1000)


def fingerprint(*polytopes: Polytope) -> str:
    """Stable hash of an ordered tuple of polytopes."""
    blob = json.dumps([p.to_json() for p in polytopes], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class InequalityReport:
    name: str
    n: int
    k: int | None
    lhs: Number
    rhs: Number
    direction: str = ">="
    fingerprint: str = ""
    seed: int | None = None
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def slack(self) -> Number:
        d = self.lhs - self.rhs if self.direction == ">=" else self.rhs - self.lhs
        return normalize(d)

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    @property
    def strict(self) -> bool:
        return self.slack > 0

    @property
    def normalized_slack(self) -> Number | None:
        """Slack divided by ``rhs``, when ``rhs`` is nonzero."""
        if self.rhs == 0:
            return None
        return normalize(Fraction(self.slack) / self.rhs)

    @property
    def near_equality(self) -> bool:
        ns = self.normalized_slack
        return ns is not None and 0 < ns < NEAR_EQUALITY

    def to_json(self) -> dict:
        def enc(x):
            return x if isinstance(x, int) else str(x)

        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "direction": self.direction,
            "slack": enc(self.slack),
            "holds": self.holds,
            "strict": self.strict,
            "fingerprint": self.fingerprint,
            "seed": self.seed,
        }


def rkt_constant(n: int, k: int) -> Fraction:
    """``k!(n-k)!/n!``."""
    return Fraction(factorial(k) * factorial(n - k), factorial(n))


def _check_dims(n: int, *ps: Polytope) -> None:
    if any(p.dim != n for p in ps):
        raise ShapeError("polytopes must share the ambient dimension")


def rkt_check(
    a: Polytope, b: Polytope, c: Polytope, k: int, seed: int | None = None
) -> InequalityReport:
    """``(B^k A^{n-k})(A^k C^{n-k}) >= k!(n-k)!/n! (A^n)(B^k C^{n-k})``."""
    n = a.dim
    _check_dims(n, b, c)
    if n < 2:
        raise ShapeError("dimension must be at least 2")
    if not 1 <= k <= n - 1:
        raise ShapeError(f"k must lie in 1..{n - 1}")
    ab = CombinationVolumes([a, b])
    ac = CombinationVolumes([a, c])
    bc = CombinationVolumes([b, c])
    ba_term = ab.mixed([n - k, k])
    ac_term = ac.mixed([k, n - k])
    an = ab.mixed([n, 0])
    bc_term = bc.mixed([k, n - k])
    lhs = ba_term * ac_term
    rhs = normalize(rkt_constant(n, k) * an * bc_term)
    return InequalityReport(
        "rkt", n, k, lhs, rhs, ">=", fingerprint(a, b, c), seed,
        {"BkA": ba_term, "AkC": ac_term, "An": an, "BkC": bc_term},
    )


def rkt_general_check(
    a: Polytope, bs: Sequence[Polytope], cs: Sequence[Polytope], seed: int | None = None
) -> InequalityReport:
    """``(B_1..B_k A^{n-k})(A^k C_1..C_{n-k}) >= k!(n-k)!/n! (A^n)(B_1..B_k C_1..C_{n-k})``."""
    n = a.dim
    bs, cs = list(bs), list(cs)
    _check_dims(n, *bs, *cs)
    k = len(bs)
    if not 1 <= k <= n - 1 or len(cs) != n - k:
        raise ShapeError(f"need k in 1..{n - 1} B's and n-k C's, got {len(bs)} and {len(cs)}")
    ba_term = mixed_volume(*bs, *[a] * (n - k))
    ac_term = mixed_volume(*[a] * k, *cs)
    an = mixed_volume(*[a] * n)
    bc_term = mixed_volume(*bs, *cs)
    lhs = ba_term * ac_term
    rhs = normalize(rkt_constant(n, k) * an * bc_term)
    return InequalityReport(
        "rkt-general", n, k, lhs, rhs, ">=", fingerprint(a, *bs, *cs), seed,
        {"BA": ba_term, "AC": ac_term, "An": an, "BC": bc_term},
    )


def ample_proxy(p: Polytope, summand: Polytope | None = None) -> Polytope:
    """``p`` plus a common full-dimensional summand (standard simplex by default)."""
    if summand is None:
        summand = standard_simplex(p.dim)
    if not summand.is_full_dimensional:
        raise DomainError("the common summand must be full-dimensional")
    return minkowski_sum(p, summand)


def strictness_probe(
    a: Polytope,
    b: Polytope,
    c: Polytope,
    k: int,
    summand: Polytope | None = None,
    seed: int | None = None,
) -> InequalityReport:
    """Reverse KT check on ``(A + S, B + S, C + S)``; strict slack is expected."""
    triple = [ample_proxy(p, summand) for p in (a, b, c)]
    rep = rkt_check(*triple, k, seed=seed)
    return InequalityReport("rkt-strict", rep.n, k, rep.lhs, rep.rhs, ">=",
                            rep.fingerprint, seed, rep.details)


@dataclass(frozen=True)
class BezoutResult:
    last: InequalityReport
    best: InequalityReport
    omitted: int

    @property
    def holds(self) -> bool:
        return self.last.holds and self.best.holds


def bezout_check(
    h: Polytope,
    a_list: Sequence[Polytope],
    exponents: Sequence[int],
    seed: int | None = None,
) -> BezoutResult:
    """Bezout-type bound for ``A_1^{a_1} ... A_r^{a_r} H^{n-|a|}``.

    ``last`` omits the binomial of the first factor; ``best`` omits the
    binomial that gives the smallest bound.
    """
    n = h.dim
    a_list, exponents = list(a_list), [int(e) for e in exponents]
    _check_dims(n, *a_list)
    r = len(a_list)
    if r < 1 or len(exponents) != r:
        raise ShapeError("need one exponent per divisor")
    if any(e < 1 for e in exponents):
        raise DomainError("exponents must be positive")
    total = sum(exponents)
    if total > n:
        raise DomainError(f"exponents sum to {total} > n = {n}")
    if not h.is_full_dimensional:
        raise DomainError("H must be full-dimensional")
    hn = mixed_volume(*[h] * n)
    mixed = mixed_volume(*[p for p, e in zip(a_list, exponents) for _ in range(e)],
                         *[h] * (n - total))
    factors = [mixed_volume(*[p] * e, *[h] * (n - e)) for p, e in zip(a_list, exponents)]
    prod_factors = 1
    for f in factors:
        prod_factors *= f
    lhs = normalize(Fraction(hn) ** (r - 1) * mixed)
    binoms = [comb(total, e) for e in exponents]

    def bound(omit: int) -> Number:
        c = 1
        for i, b in enumerate(binoms):
            if i != omit:
                c *= b
        return normalize(c * prod_factors)

    bounds = [bound(j) for j in range(r)]
    best_j = min(range(r), key=lambda j: (bounds[j], j))
    fp = fingerprint(h, *a_list)
    details = {"exponents": tuple(exponents), "Hn": hn, "mixed": mixed,
               "factors": tuple(factors), "trivial": r == 1}
    last = InequalityReport("bezout", n, r, lhs, bounds[0], "<=", fp, seed, details)
    best = InequalityReport("bezout-min", n, r, lhs, bounds[best_j], "<=", fp, seed, details)
    return BezoutResult(last, best, best_j)
