"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

Counts are the full ones.  Runtime is dominated by criterion 2 (several
minutes on one core; set RKT_LAB_THREADS to spread campaigns over workers).
"""

from fractions import Fraction
from itertools import permutations
from math import factorial, prod
import random
import time

from rkt_lab.dynamics import MonomialMap, degree_profile
from rkt_lab.exact import solve_rational
from rkt_lab.harness import (
    CampaignConfig,
    gen_hyperbolic_lattice,
    gen_polytope,
    gen_smooth_instance,
    instance_seed,
    run_campaign,
)
from rkt_lab.inequalities import bezout_check, rkt_check
from rkt_lab.intersection import kt_logconcavity_check, mixed_volume
from rkt_lab.okounkov import (
    MultipointFlagModel,
    ToricFlag,
    multipoint_bodies,
    multipoint_dim1_exact,
    okounkov_transform,
)
from rkt_lab.polytope import (
    box,
    convex_hull,
    cube,
    embed_simplex_product,
    minkowski_sum,
    segment,
    standard_simplex,
    translate,
    volume,
)
from rkt_lab.surface import NefTriple, equality_case_check, rkt_surface_check, toric_surface


def _campaigns(statement, plan, **kw):
    """Run one campaign per (dim, count); return (instances, rows, violations, results)."""
    results = [run_campaign(CampaignConfig(statement, n, count=c, seed=1000 + n, **kw))
               for n, c in plan]
    rows = [r for res in results for r in res.rows]
    bad = sum(len(res.violations) for res in results)
    inst = sum(res.config.count - len(res.skipped) for res in results)
    return inst, rows, bad, results


def test_criterion_01_equality_case(criterion):
    start = time.perf_counter()
    cases = []
    for n in range(2, 6):
        for k in range(1, n):
            rep = rkt_check(*embed_simplex_product(k, n), k)
            cases.append(rep.slack == 0 and rep.rhs == 1 and rep.lhs == 1)
    took = time.perf_counter() - start
    criterion(1, all(cases) and took < 5,
              f"{sum(cases)}/{len(cases)} (n,k) pairs with slack 0, rhs 1; {took:.2f}s")


def test_criterion_02_reverse_kt_zero_violations(criterion):
    start = time.perf_counter()
    inst, rows, bad, _ = _campaigns("rkt", [(2, 10_000), (3, 10_000), (4, 10_000), (5, 1_000)])
    neg = sum(1 for r in rows if r["holds"] != "true")
    ks = {(r["n"], r["k"]) for r in rows}
    took = time.perf_counter() - start
    full_k = all((n, k) in ks for n in range(2, 6) for k in range(1, n))
    criterion(2, inst == 31_000 and neg == 0 and bad == 0 and full_k,
              f"{inst} instances, {neg} with negative slack, all k covered={full_k}; "
              f"{took:.0f}s")


def test_criterion_03_strictness(criterion):
    inst, rows, bad, _ = _campaigns("rkt-strict", [(3, 1_000), (4, 1_000)])
    strict = sum(1 for r in rows if r["strict"] == "true")
    criterion(3, inst == 2_000 and strict == len(rows) == inst and bad == 0,
              f"{strict}/{inst} common-summand triples strictly positive")


def test_criterion_04_body_volume_identity(criterion):
    ok = total = 0
    for n in (2, 3):
        for i in range(100):
            p, flag = gen_smooth_instance(instance_seed(4, 100 * n + i), n)
            _, body = okounkov_transform(p, flag)
            total += 1
            ok += volume(body) == Fraction(mixed_volume(*[p] * n), factorial(n))
    criterion(4, ok == total == 200, f"{ok}/{total} smooth-vertex instances exact")


FIVE = [
    (cube(2), [(0, 0), (1, 1)]),
    (standard_simplex(2, 2), [(0, 0), (2, 0)]),
    (box([3, 2]), [(0, 0), (3, 2)]),
    (convex_hull([(0, 0), (3, 0), (2, 1), (0, 1)]), [(0, 0), (3, 0)]),
    (convex_hull([(0, 0), (2, 0), (3, 1), (3, 3), (1, 3), (0, 2)]), [(0, 0), (3, 3)]),
]


def test_criterion_05_multipoint_convergence(criterion):
    notes = []
    good = True
    for p, verts in FIVE:
        flags = tuple(ToricFlag.at_vertex(p, v) for v in verts)
        sums = []
        for m in (1, 2, 4, 8, 16):
            bodies = multipoint_bodies(MultipointFlagModel(m, flags), p)
            sums.append(sum(volume(b) for b in bodies if b is not None))
        vol = volume(p)
        mono = all(a <= b for a, b in zip(sums, sums[1:]))
        close = abs(sums[-1] - vol) <= Fraction(1, 4) * vol
        good &= mono and close
        notes.append(f"{float(sums[-1] / vol):.3f}")
    exact = all(sum(volume(b) for b in multipoint_dim1_exact(d, N)) == d
                for d in range(1, 8) for N in range(1, 6))
    criterion(5, good and exact,
              f"m=16 ratios {', '.join(notes)}; monotone and within 25%={good}; "
              f"dim-1 intervals sum to d={exact}")


def test_criterion_06_fubini(criterion):
    inst, rows, bad, results = _campaigns("fubini", [(2, 200), (3, 500)])
    fub = [r for r in rows if r["name"] == "fubini"]
    ok = sum(1 for r in fub if r["holds"] == "true")
    hyp = sum(res.summary()["hypothesis_failures"] for res in results)
    criterion(6, inst >= 500 and ok == len(fub) and bad == 0,
              f"{ok}/{len(fub)} product bounds over {inst} instances "
              f"({hyp} projection-inclusion hypothesis failures reported)")


def test_criterion_07_bezout(criterion):
    inst, rows, bad, _ = _campaigns("bezout", [(2, 200), (3, 500), (4, 1_000)])
    viol = sum(1 for r in rows if r["holds"] != "true")
    rs = {r["k"] for r in rows}
    rng = random.Random(7)
    trivial = True
    for _ in range(50):
        n = rng.randint(2, 4)
        h, a = gen_polytope(rng.getrandbits(64), n), gen_polytope(rng.getrandbits(64), n)
        res = bezout_check(h, [a], [rng.randint(1, n)])
        trivial &= res.last.details["trivial"] and res.last.slack == 0
    criterion(7, inst >= 1_000 and viol == 0 and bad == 0 and rs == {2, 3} and trivial,
              f"{inst} instances, r in {sorted(rs)}, {viol} violations; r=1 trivial={trivial}")


def _permanent(a):
    n = len(a)
    return sum(prod(a[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def test_criterion_08_dynamics(criterion):
    frob = all(
        degree_profile(MonomialMap.scalar(n, q), standard_simplex(n)).degrees
        == tuple(q ** i for i in range(n + 1))
        for q in (2, 3) for n in (1, 2, 3, 4)
    )
    rng = random.Random(8)
    diag = True
    for _ in range(40):
        n = rng.randint(1, 4)
        a = [rng.randint(1, 5) for _ in range(n)]
        degs = degree_profile(MonomialMap.diagonal(a), cube(n)).degrees
        diag &= all(degs[i] == _permanent([[1] * n] * (n - i) + [a] * i) for i in range(n + 1))
    s_inst, s_rows, s_bad, _ = _campaigns("submult", [(3, 1_000)])
    r_inst, r_rows, r_bad, _ = _campaigns("repolarize", [(2, 300), (3, 400), (4, 300)])
    viol = sum(1 for r in s_rows + r_rows if r["holds"] != "true") + s_bad + r_bad
    criterion(8, frob and diag and s_inst >= 1_000 and r_inst >= 1_000 and viol == 0,
              f"Frobenius={frob}, diagonal permanent={diag}, {s_inst} submult + "
              f"{r_inst} repolarize instances, {viol} violations")


def test_criterion_09_surface(criterion):
    rng = random.Random(9)
    backward = 0
    for i in range(1_000):
        rho = 2 + i % 3
        lat, u = gen_hyperbolic_lattice(rng.getrandbits(64), rho)
        b = tuple(solve_rational(u, [1] + [0] * (rho - 1)))
        c = tuple(solve_rational(u, [0, 1] + [0] * (rho - 2)))
        s = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        t = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        a = tuple(s * x + t * y for x, y in zip(b, c))
        rep = equality_case_check(lat, NefTriple(a, b, c))
        backward += rep.equality and rep.conditions and (rep.s, rep.t) == (s, t)

    forward_eq = forward_ok = 0
    agree = shared = 0
    for i in range(300):
        if i % 2 == 0:
            # parallelogram sB + tC with two lattice segments
            while True:
                d1 = (rng.randint(-3, 3), rng.randint(-3, 3))
                d2 = (rng.randint(-3, 3), rng.randint(-3, 3))
                if d1[0] * d2[1] - d1[1] * d2[0]:
                    break
            bp, cp = segment(d1), segment(d2)
            sa, ta = rng.randint(1, 4), rng.randint(1, 4)
            ap = minkowski_sum(segment(tuple(sa * x for x in d1)),
                               segment(tuple(ta * x for x in d2)))
        else:
            ap, bp, cp = (gen_polytope(rng.getrandbits(64), 2) for _ in range(3))
        lat = toric_surface({"A": ap, "B": bp, "C": cp})
        triple = NefTriple.from_lattice(lat)
        if lat.signature()[0] == 1 and lat.signature()[2] == 0:
            rep = equality_case_check(lat, triple)
            if rep.equality:
                forward_eq += 1
                forward_ok += rep.s > 0 and rep.t > 0 and bool(rep.residual_trivial)
        mine = rkt_surface_check(lat, triple)
        ref = rkt_check(ap, bp, cp, 1)
        shared += 1
        agree += (mine.lhs, mine.rhs, mine.slack, mine.holds, mine.fingerprint) == \
            (ref.lhs, ref.rhs, ref.slack, ref.holds, ref.fingerprint)
    ok = backward == 1_000 and forward_eq > 0 and forward_ok == forward_eq and agree == shared
    criterion(9, ok, f"backward {backward}/1000 exact; forward {forward_ok}/{forward_eq} "
                     f"toric equalities with s,t>0 and trivial residual; "
                     f"{agree}/{shared} reports identical to the polytope engine")


def test_criterion_10_engine_sanity(criterion):
    rng = random.Random(10)

    def poly(n):
        return gen_polytope(rng.getrandbits(64), n)

    counts = dict.fromkeys(("logconcave", "symmetry", "multilinear", "translation"), 0)
    passed = dict(counts)
    for i in range(1_000):
        n = 2 + i % 2
        rep = kt_logconcavity_check(poly(n), poly(n))
        counts["logconcave"] += 1
        passed["logconcave"] += rep.holds

        ps = [poly(n) for _ in range(n)]
        perm = ps[:]
        rng.shuffle(perm)
        counts["symmetry"] += 1
        passed["symmetry"] += mixed_volume(*ps) == mixed_volume(*perm)

        p, p2 = poly(n), poly(n)
        rest = [poly(n) for _ in range(n - 1)]
        counts["multilinear"] += 1
        passed["multilinear"] += (mixed_volume(minkowski_sum(p, p2), *rest)
                                  == mixed_volume(p, *rest) + mixed_volume(p2, *rest))

        v = tuple(rng.randint(-5, 5) for _ in range(n))
        counts["translation"] += 1
        passed["translation"] += mixed_volume(translate(ps[0], v), *ps[1:]) == mixed_volume(*ps)
    ok = all(passed[k] == counts[k] >= 1_000 for k in counts)
    criterion(10, ok, ", ".join(f"{k} {passed[k]}/{counts[k]}" for k in counts))
