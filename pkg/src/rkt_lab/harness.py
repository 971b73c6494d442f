"""Seeded instance generation, fuzz campaigns and findings.

Random numbers come from SplitMix64 (Steele, Lea, Flood 2014)::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                        (all mod 2^64)

Integers in ``[lo, hi]`` are drawn by rejection: with ``span = hi - lo + 1``,
outputs ``>= 2^64 - (2^64 mod span)`` are discarded and the rest are taken
``mod span``.  Instance ``i`` of a campaign with seed ``s`` uses the seed
``splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15)``, i.e. the ``(i+1)``-th
output of a generator started at ``s``.

Every instance is first turned into a JSON payload and then evaluated from
that payload, so a stored finding re-evaluates to the same verdict.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Sequence

from .dynamics import MonomialMap, repolarization_check, submult_check
from .errors import CapacityError, DomainError, GenerationError, ShapeError
from .exact import IntMatrix, normalize
from .inequalities import (
    InequalityReport,
    bezout_check,
    rkt_check,
    rkt_general_check,
    strictness_probe,
)
from .intersection import mixed_volume
from .okounkov import (
    ToricFlag,
    empirical_okounkov,
    fubini_holds,
    okounkov_transform,
    projection_inclusion_check,
)
from .polytope import Polytope, convex_hull, volume
from .surface import NefTriple, SurfaceLattice, equality_case_check, rkt_surface_check

__all__ = [
    "SplitMix64",
    "instance_seed",
    "gen_polytope",
    "gen_smooth_instance",
    "gen_unimodular",
    "gen_matrix",
    "gen_hyperbolic_lattice",
    "STATEMENTS",
    "CampaignConfig",
    "Finding",
    "CampaignResult",
    "CSV_COLUMNS",
    "make_payload",
    "evaluate_payload",
    "run_campaign",
    "default_vertex_budget",
]

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

CSV_COLUMNS = ("name", "n", "k", "lhs", "rhs", "slack", "holds", "strict", "seed")

STATEMENTS = (
    "rkt",
    "rkt-general",
    "rkt-strict",
    "bezout",
    "submult",
    "repolarize",
    "surface-eq",
    "okounkov-conv",
    "fubini",
)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The SplitMix64 generator with a few sampling helpers."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        if hi < lo:
            raise DomainError("empty integer range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items


def instance_seed(seed: int, index: int) -> int:
    return _mix((seed + (index + 1) * GOLDEN) & MASK64)


def _rng(seed_or_rng) -> SplitMix64:
    return seed_or_rng if isinstance(seed_or_rng, SplitMix64) else SplitMix64(seed_or_rng)


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def default_vertex_budget(n: int) -> int:
    return n + 2 if n <= 3 else n + 1


def gen_polytope(seed, n: int, vertex_budget: int | None = None, bound: int = 3) -> Polytope:
    """Full-dimensional lattice polytope with vertices in ``[0, bound]^n``."""
    if vertex_budget is None:
        vertex_budget = default_vertex_budget(n)
    if bound < 1 or vertex_budget < n + 1:
        raise DomainError("need bound >= 1 and vertex_budget >= n + 1")
    rng = _rng(seed)
    for _ in range(100):
        pts = [tuple(rng.randint(0, bound) for _ in range(n)) for _ in range(vertex_budget)]
        p = convex_hull(pts)
        if p.is_full_dimensional:
            return p
    raise GenerationError(f"no full-dimensional sample in 100 attempts (n={n}, bound={bound})")


def gen_unimodular(seed, n: int, steps: int | None = None) -> IntMatrix:
    """Random unimodular matrix: signed permutation times elementary moves."""
    rng = _rng(seed)
    perm = rng.shuffle(list(range(n)))
    rows = [[(1 if rng.randint(0, 1) else -1) if j == perm[i] else 0 for j in range(n)]
            for i in range(n)]
    for _ in range(n if steps is None else steps):
        i = rng.randint(0, n - 1)
        j = rng.randint(0, n - 2)
        j += j >= i
        c = rng.choice((-1, 1))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix.from_rows(rows)


def gen_smooth_instance(
    seed, n: int, bound: int = 2, extra: int = 2
) -> tuple[Polytope, ToricFlag]:
    """Lattice polytope with a smooth vertex and a flag there.

    An orthant corner ``0, a_1 e_1, ..., a_n e_n`` plus ``extra`` points of
    the positive box is moved by a random unimodular map and translation.
    """
    rng = _rng(seed)
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(rng.randint(1, bound) if i == j else 0 for j in range(n)) for i in range(n)]
    pts += [tuple(rng.randint(0, bound) for _ in range(n)) for _ in range(extra)]
    u = gen_unimodular(rng, n)
    shift = [rng.randint(-bound, bound) for _ in range(n)]
    moved = [tuple(a + b for a, b in zip(u.apply(p), shift)) for p in pts]
    p = convex_hull(moved)
    basis = [u.column(j) for j in range(n)]
    rng.shuffle(basis)
    flag = ToricFlag(tuple(shift), tuple(basis))
    flag.check(p)
    return p, flag


def gen_matrix(seed, n: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    rng = _rng(seed)
    for _ in range(100):
        m = IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m
    raise GenerationError("no nonsingular matrix in 100 attempts")


def gen_hyperbolic_lattice(seed, rho: int) -> tuple[SurfaceLattice, IntMatrix]:
    """``U + <-d_1> + ...`` in a random unimodular basis, with the basis change."""
    rng = _rng(seed)
    base = [[0] * rho for _ in range(rho)]
    base[0][1] = base[1][0] = rng.randint(1, 3)
    for i in range(2, rho):
        base[i][i] = -rng.randint(1, 3)
    u = gen_unimodular(rng, rho)
    g = u.transpose() @ IntMatrix.from_rows(base) @ u
    return SurfaceLattice(tuple(tuple(r) for r in g.to_rows())), u


# --------------------------------------------------------------------------
# payloads
# --------------------------------------------------------------------------

def _pj(p: Polytope) -> dict:
    return p.to_json()


def _pp(obj) -> Polytope:
    return Polytope.from_json(obj)


def _flag_json(flag: ToricFlag) -> dict:
    return {"vertex": list(flag.vertex), "basis": [list(b) for b in flag.basis]}


def _enc(x) -> int | str:
    x = normalize(x)
    return x if isinstance(x, int) else str(x)


@dataclass(frozen=True)
class CampaignConfig:
    statement: str
    dim: int
    count: int = 100
    seed: int = 0
    k: int | None = None
    vertex_budget: int | None = None
    bound: int = 3
    r: int | None = None
    levels: tuple[int, ...] = (1, 2, 4, 8, 16)
    out: str | None = None

    def __post_init__(self):
        if self.statement not in STATEMENTS:
            raise DomainError(f"unknown statement {self.statement!r}; choose from {STATEMENTS}")
        if self.count < 1:
            raise DomainError("count must be at least 1")
        if self.dim < 1 or self.dim > 6:
            raise DomainError("dimension must lie in 1..6")
        if self.statement.startswith("rkt") and self.dim < 2:
            raise DomainError("the reverse inequality needs n >= 2")
        if self.k is not None and self.statement.startswith("rkt") and not 1 <= self.k < self.dim:
            raise DomainError(f"k must lie in 1..{self.dim - 1}")
        if not 0 <= self.seed <= MASK64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        budget = self.vertex_budget or default_vertex_budget(self.dim)
        if budget < self.dim + 1 or self.bound < 1:
            raise DomainError("need vertex_budget >= n + 1 and bound >= 1")
        if (self.bound + 1) ** self.dim > 10**7:
            raise DomainError("coordinate box exceeds the lattice capacity")

    @property
    def budget(self) -> int:
        return self.vertex_budget or default_vertex_budget(self.dim)


def make_payload(c: CampaignConfig, index: int) -> dict:
    """Instance ``index`` of a campaign as JSON."""
    s = instance_seed(c.seed, index)
    rng = SplitMix64(s)
    n = c.dim
    gen = lambda: gen_polytope(rng, n, c.budget, c.bound)  # noqa: E731
    st = c.statement
    out: dict[str, Any] = {"statement": st, "n": n, "seed": s, "index": index}
    if st in ("rkt", "rkt-strict"):
        k = c.k or 1 + index % (n - 1)
        out.update(k=k, A=_pj(gen()), B=_pj(gen()), C=_pj(gen()))
    elif st == "rkt-general":
        k = c.k or 1 + index % (n - 1)
        out.update(k=k, A=_pj(gen()), Bs=[_pj(gen()) for _ in range(k)],
                   Cs=[_pj(gen()) for _ in range(n - k)])
    elif st == "bezout":
        r = min(c.r or 2 + index % 2, n)
        # positive exponents with sum <= n
        total = rng.randint(r, n)
        cuts = sorted(rng.shuffle(list(range(1, total)))[: r - 1])
        exps = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        out.update(r=r, exponents=exps, H=_pj(gen()), As=[_pj(gen()) for _ in range(r)])
    elif st == "submult":
        i = c.k if c.k is not None else index % (n + 1)
        out.update(i=i, f=str(gen_matrix(rng, n)), g=str(gen_matrix(rng, n)), H=_pj(gen()))
    elif st == "repolarize":
        i = c.k if c.k is not None else index % (n + 1)
        out.update(i=i, f=str(gen_matrix(rng, n)), H=_pj(gen()), L=_pj(gen()))
    elif st == "surface-eq":
        out.update(_surface_payload(rng, index))
    elif st in ("okounkov-conv", "fubini"):
        p, flag = gen_smooth_instance(rng, n, min(c.bound, 2))
        out.update(P=_pj(p), flag=_flag_json(flag), levels=list(c.levels))
    return out


def _surface_payload(rng: SplitMix64, index: int) -> dict:
    rho = rng.randint(2, 4)
    lat, u = gen_hyperbolic_lattice(rng, rho)
    # isotropic pair of the hyperbolic plane, written in the new basis
    from .exact import solve_rational

    def new_coords(x):
        return tuple(solve_rational(u, x))

    e0 = new_coords([1] + [0] * (rho - 1))
    e1 = new_coords([0, 1] + [0] * (rho - 2))
    if index % 2 == 0:
        # constructed equality instance A = sB + tC
        s = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        t = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        b, c = e0, e1
        a = tuple(s * x + t * y for x, y in zip(b, c))
    else:
        # random combinations of the isotropic pair plus a small negative part
        def vec():
            base = [rng.randint(0, 4), rng.randint(0, 4)] + [rng.randint(-1, 1)
                                                            for _ in range(rho - 2)]
            return new_coords(base)

        for _ in range(100):
            a, b, c = vec(), vec(), vec()
            try:
                NefTriple(a, b, c).validate(lat)
                break
            except DomainError:
                continue
        else:
            raise GenerationError("no triple passing the nef proxy in 100 attempts")
    return {"gram": [list(r) for r in lat.gram], "A": [_enc(x) for x in a],
            "B": [_enc(x) for x in b], "C": [_enc(x) for x in c]}


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

@dataclass
class Evaluation:
    reports: list[InequalityReport] = field(default_factory=list)
    # (category, report or None, note)
    flags: list[tuple[str, InequalityReport | None, str]] = field(default_factory=list)


def _plain(name: str, n: int, k, lhs, rhs, seed, direction=">=") -> InequalityReport:
    return InequalityReport(name, n, k, normalize(lhs), normalize(rhs), direction, "", seed)


def evaluate_payload(payload: dict) -> Evaluation:
    """Evaluate one instance payload; pure in the payload."""
    st = payload["statement"]
    n = payload["n"]
    seed = payload.get("seed")
    ev = Evaluation()
    if st == "rkt":
        ev.reports.append(rkt_check(_pp(payload["A"]), _pp(payload["B"]), _pp(payload["C"]),
                                    payload["k"], seed))
    elif st == "rkt-strict":
        rep = strictness_probe(_pp(payload["A"]), _pp(payload["B"]), _pp(payload["C"]),
                               payload["k"], seed=seed)
        ev.reports.append(rep)
        if rep.holds and not rep.strict:
            ev.flags.append(("equality-witness", rep, "strictness expected under the proxy"))
    elif st == "rkt-general":
        ev.reports.append(rkt_general_check(_pp(payload["A"]), [_pp(x) for x in payload["Bs"]],
                                            [_pp(x) for x in payload["Cs"]], seed))
    elif st == "bezout":
        res = bezout_check(_pp(payload["H"]), [_pp(x) for x in payload["As"]],
                           payload["exponents"], seed)
        ev.reports += [res.last, res.best]
        if res.best.rhs > res.last.rhs:
            ev.flags.append(("violation", res.best, "min-over-k bound weaker than single bound"))
    elif st == "submult":
        ev.reports.append(submult_check(MonomialMap.parse(payload["f"]),
                                        MonomialMap.parse(payload["g"]),
                                        _pp(payload["H"]), payload["i"], seed))
    elif st == "repolarize":
        ev.reports.append(repolarization_check(MonomialMap.parse(payload["f"]),
                                               _pp(payload["H"]), _pp(payload["L"]),
                                               payload["i"], seed))
    elif st == "surface-eq":
        _evaluate_surface(payload, ev)
    elif st == "okounkov-conv":
        _evaluate_conv(payload, ev)
    elif st == "fubini":
        _evaluate_fubini(payload, ev)
    else:
        raise DomainError(f"unknown statement {st!r}")
    for rep in ev.reports:
        if not rep.holds and st != "surface-eq":
            ev.flags.append(("violation", rep, ""))
        elif rep.holds and not rep.strict and st in ("rkt", "rkt-general", "surface-eq"):
            ev.flags.append(("equality-witness", rep, ""))
        elif rep.near_equality:
            ev.flags.append(("near-equality", rep, ""))
    return ev


def _evaluate_surface(payload: dict, ev: Evaluation) -> None:
    lat = SurfaceLattice.from_json({"gram": payload["gram"]})
    triple = NefTriple(*(lat._vec([Fraction(x) for x in payload[k]]) for k in "ABC"))
    rep = rkt_surface_check(lat, triple, payload.get("seed"))
    ev.reports.append(rep)
    if not rep.holds:
        ev.flags.append(("hypothesis-failure", rep, "reverse inequality fails under the nef proxy"))
    eq = equality_case_check(lat, triple)
    if not eq.consistent:
        ev.flags.append(("hypothesis-failure", rep, f"equality {eq.equality} vs conditions "
                                                    f"{eq.conditions} under the nef proxy"))


def _flag_of(payload: dict) -> ToricFlag:
    f = payload["flag"]
    return ToricFlag(tuple(f["vertex"]), tuple(tuple(b) for b in f["basis"]))


def _evaluate_conv(payload: dict, ev: Evaluation) -> None:
    p = _pp(payload["P"])
    flag = _flag_of(payload)
    n = p.dim
    seed = payload.get("seed")
    _, body = okounkov_transform(p, flag)
    full = volume(body)
    mv = mixed_volume(*[p] * n)
    ident = _plain("okounkov-vol1", n, None, full, Fraction(mv, factorial(n)), seed)
    ev.reports.append(ident)
    if ident.strict:
        ev.flags.append(("violation", ident, "body volume differs from (P^n)/n!"))
    prev = 0
    prev_body = None
    for m in payload["levels"]:
        try:
            emp = empirical_okounkov(p, flag, m)
        except CapacityError:
            break
        v = volume(emp)
        ev.reports.append(_plain("okounkov-conv", n, m, v, prev, seed))
        ev.reports.append(_plain("okounkov-bound", n, m, full, v, seed))
        if not body.contains_polytope(emp) or (prev_body and not emp.contains_polytope(prev_body)):
            ev.flags.append(("violation", ev.reports[-1], f"containment fails at level {m}"))
        prev, prev_body = v, emp


def _evaluate_fubini(payload: dict, ev: Evaluation) -> None:
    p = _pp(payload["P"])
    flag = _flag_of(payload)
    n = p.dim
    seed = payload.get("seed")
    bodies = [okounkov_transform(p, flag)[1]]
    for m in payload["levels"][:2]:
        bodies.append(empirical_okounkov(p, flag, m))
    for body in bodies:
        if body.dim < 2:
            continue
        for k in range(1, n):
            _, vk, lo, hi = fubini_holds(body, k)
            ev.reports.append(_plain("fubini", n, k, lo * hi, vk, seed))
    for k in range(1, n):
        rep = projection_inclusion_check(p, flag, k)
        if rep.hypothesis_failure:
            ev.flags.append(("hypothesis-failure", None,
                             f"projection inclusion fails at k={k}: {', '.join(rep.notes)}"))


# --------------------------------------------------------------------------
# campaigns
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    campaign: str
    fingerprint: str
    category: str
    payload: dict
    report: dict | None
    note: str = ""

    @property
    def key(self) -> str:
        blob = json.dumps({"category": self.category, "payload": self.payload,
                           "note": self.note}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:20]

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "Finding":
        return cls(**obj)


@dataclass
class CampaignResult:
    config: CampaignConfig
    rows: list[dict]
    findings: list[Finding]
    skipped: list[int]
    runtime: float

    @property
    def violations(self) -> list[Finding]:
        return [f for f in self.findings if f.category == "violation"]

    @property
    def exit_code(self) -> int:
        return 2 if self.violations else 0

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r[c] for c in CSV_COLUMNS])
        return buf.getvalue()

    def summary(self) -> dict:
        slacks = [Fraction(r["slack"]) for r in self.rows]
        cats: dict[str, int] = {}
        for f in self.findings:
            cats[f.category] = cats.get(f.category, 0) + 1
        return {
            "campaign": campaign_id(self.config),
            "statement": self.config.statement,
            "n": self.config.dim,
            "instances": self.config.count,
            "rows": len(self.rows),
            "skipped": len(self.skipped),
            "violations": cats.get("violation", 0),
            "equality_witnesses": cats.get("equality-witness", 0),
            "near_equalities": cats.get("near-equality", 0),
            "hypothesis_failures": cats.get("hypothesis-failure", 0),
            "min_slack": _enc(min(slacks)) if slacks else None,
            "median_slack": _enc(statistics.median_low(slacks)) if slacks else None,
            "runtime_s": round(self.runtime, 3),
        }


def campaign_id(c: CampaignConfig) -> str:
    blob = json.dumps({k: v for k, v in asdict(c).items() if k != "out"}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _row(rep: InequalityReport, seed: int) -> dict:
    return {
        "name": rep.name,
        "n": rep.n,
        "k": "" if rep.k is None else rep.k,
        "lhs": _enc(rep.lhs),
        "rhs": _enc(rep.rhs),
        "slack": _enc(rep.slack),
        "holds": "true" if rep.holds else "false",
        "strict": "true" if rep.strict else "false",
        "seed": seed,
    }


def _work(args: tuple[CampaignConfig, int]):
    c, index = args
    payload = make_payload(c, index)
    try:
        ev = evaluate_payload(payload)
    except CapacityError:
        return index, payload, None
    return index, payload, ev


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("RKT_LAB_THREADS", "1")))
    except ValueError:
        return 1


def run_campaign(c: CampaignConfig, workers: int | None = None) -> CampaignResult:
    """Run a campaign; writes CSV, summary and findings when ``c.out`` is set."""
    start = time.perf_counter()
    workers = workers or _workers()
    jobs = [(c, i) for i in range(c.count)]
    if workers > 1 and c.count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_work, jobs, chunksize=max(1, c.count // (8 * workers))))
    else:
        results = [_work(j) for j in jobs]
    cid = campaign_id(c)
    rows: list[dict] = []
    findings: list[Finding] = []
    skipped: list[int] = []
    for index, payload, ev in results:
        if ev is None:
            skipped.append(index)
            continue
        rows.extend(_row(r, payload["seed"]) for r in ev.reports)
        for cat, rep, note in ev.flags:
            fp = rep.fingerprint if rep is not None else ""
            findings.append(Finding(cid, fp, cat, payload,
                                    rep.to_json() if rep is not None else None, note))
    result = CampaignResult(c, rows, findings, skipped, time.perf_counter() - start)
    if c.out:
        write_outputs(result, Path(c.out))
    return result


def write_outputs(result: CampaignResult, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    c = result.config
    stem = f"{c.statement}-n{c.dim}-s{c.seed}"
    (out / f"{stem}.csv").write_text(result.csv_text())
    (out / f"{stem}.summary.json").write_text(json.dumps(result.summary(), indent=2) + "\n")
    fdir = out / "findings"
    for f in result.findings:
        fdir.mkdir(exist_ok=True)
        path = fdir / f"{f.category}-{f.key}.json"
        if not path.exists():
            path.write_text(json.dumps(f.to_json(), indent=2, sort_keys=True) + "\n")


def reevaluate(finding: Finding | dict) -> Evaluation:
    """Re-run the instance stored in a finding."""
    if isinstance(finding, dict):
        finding = Finding.from_json(finding)
    return evaluate_payload(finding.payload)
