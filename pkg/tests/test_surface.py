from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from rkt_lab.errors import DomainError, LatticeError, ShapeError
from rkt_lab.harness import gen_hyperbolic_lattice, gen_polytope
from rkt_lab.inequalities import rkt_check
from rkt_lab.polytope import box, cube, segment, standard_simplex
from rkt_lab.surface import (
    NefTriple,
    SurfaceLattice,
    equality_case_check,
    pairing,
    rkt_surface_check,
    signature,
    toric_surface,
)

U = SurfaceLattice(((0, 1), (1, 0)))
seeds = st.integers(0, 2 ** 40)


def test_hyperbolic_plane_pairing():
    assert pairing(U, (1, 0), (0, 1)) == 1
    assert pairing(U, (1, 1), (1, 1)) == 2


@pytest.mark.parametrize("gram,sig", [
    (((0, 1), (1, 0)), (1, 1, 0)),
    (((1, 0, 0), (0, -1, 0), (0, 0, -2)), (1, 2, 0)),
    (((0, 0), (0, 0)), (0, 0, 2)),
    (((2, 1), (1, 2)), (2, 0, 0)),
    (((1, 1), (1, 1)), (1, 0, 1)),
])
def test_signature(gram, sig):
    assert signature(gram) == sig


@given(seeds, st.integers(2, 4))
def test_random_lattices_are_hyperbolic_and_symmetric(seed, rho):
    lat, _ = gen_hyperbolic_lattice(seed, rho)
    lat.check_hodge()
    rng = random.Random(seed)
    x = [rng.randint(-3, 3) for _ in range(rho)]
    y = [rng.randint(-3, 3) for _ in range(rho)]
    z = [rng.randint(-3, 3) for _ in range(rho)]
    assert pairing(lat, x, y) == pairing(lat, y, x)
    xz = [a + 2 * b for a, b in zip(x, z)]
    assert pairing(lat, xz, y) == pairing(lat, x, y) + 2 * pairing(lat, z, y)


def test_lattice_validation():
    with pytest.raises(ShapeError):
        SurfaceLattice(((0, 1), (2, 0)))
    with pytest.raises(ShapeError):
        SurfaceLattice(((0, 1),))
    with pytest.raises(LatticeError):
        SurfaceLattice(((1, 0), (0, 1))).check_hodge()
    with pytest.raises(ShapeError):
        pairing(U, (1, 0, 0), (1, 0))


def test_equality_in_u():
    rep = equality_case_check(U, NefTriple((2, 3), (1, 0), (0, 1)))
    assert rep.equality and rep.conditions and rep.consistent
    assert rep.direction == "forward"
    assert (rep.s, rep.t) == (2, 3) and rep.residual == (0, 0) and rep.residual_trivial
    inner = rkt_surface_check(U, NefTriple((2, 3), (1, 0), (0, 1)))
    assert inner.lhs == 6 and inner.rhs == 6 and inner.slack == 0


def test_nef_proxy_rejects():
    lat = SurfaceLattice(((0, 1, 0), (1, 0, 0), (0, 0, -1)))
    with pytest.raises(DomainError):
        equality_case_check(lat, NefTriple((1, 1, 0), (1, 0, 0), (0, 1, 1)))


def test_all_equal_in_u():
    a = (1, 2)
    rep = rkt_surface_check(U, NefTriple(a, a, a))
    assert rep.lhs == 16 and rep.rhs == 8 and rep.holds
    assert not equality_case_check(U, NefTriple(a, a, a)).equality


@given(seeds, st.integers(2, 4), st.fractions(1, 8).filter(lambda x: x > 0),
       st.fractions(1, 8).filter(lambda x: x > 0))
def test_backward_construction_gives_equality(seed, rho, s, t):
    lat, u = gen_hyperbolic_lattice(seed, rho)
    from rkt_lab.exact import solve_rational
    b = tuple(solve_rational(u, [1] + [0] * (rho - 1)))
    c = tuple(solve_rational(u, [0, 1] + [0] * (rho - 2)))
    a = tuple(s * x + t * y for x, y in zip(b, c))
    rep = equality_case_check(lat, NefTriple(a, b, c))
    assert rep.equality and rep.conditions and rep.residual_trivial
    assert (rep.s, rep.t) == (s, t)


def test_non_isotropic_neither():
    lat = SurfaceLattice(((1, 0), (0, -1)))
    rep = equality_case_check(lat, NefTriple((2, 1), (1, 0), (1, 1)))
    assert not rep.equality and not rep.conditions and rep.direction == "neither"


def test_toric_forward_direction():
    # box(s,t) = s*e1seg + t*e2seg: A = sB + tC with B, C isotropic
    lat = toric_surface({"A": box([2, 3]), "B": segment((1, 0)), "C": segment((0, 1))})
    rep = equality_case_check(lat, NefTriple.from_lattice(lat))
    assert rep.equality and rep.consistent and rep.s > 0 and rep.t > 0


def test_toric_agrees_with_polytope_engine():
    rng = random.Random(2)
    for _ in range(25):
        a, b, c = (gen_polytope(rng.getrandbits(64), 2) for _ in range(3))
        lat = toric_surface({"A": a, "B": b, "C": c})
        rep = rkt_surface_check(lat, NefTriple.from_lattice(lat))
        ref = rkt_check(a, b, c, 1)
        assert (rep.lhs, rep.rhs, rep.slack, rep.holds, rep.fingerprint) == \
            (ref.lhs, ref.rhs, ref.slack, ref.holds, ref.fingerprint)


def test_toric_quotients_radical():
    lat = toric_surface({"A": standard_simplex(2), "B": standard_simplex(2, 2), "C": cube(2)})
    assert lat.rank == 2
    assert lat.classes["B"] == (2, 0)


def test_json_roundtrip():
    lat = SurfaceLattice(((0, 1), (1, 0)), {"A": (Fraction(1, 2), 1)})
    assert SurfaceLattice.from_json(lat.to_json()) == lat
    with pytest.raises(DomainError):
        SurfaceLattice.from_json({"A": [1]})
