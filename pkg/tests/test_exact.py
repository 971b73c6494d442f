from fractions import Fraction
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rkt_lab.errors import ShapeError, SingularMatrixError
from rkt_lab.exact import (
    IntMatrix,
    as_rational,
    batch_det,
    det,
    hermite_normal_form,
    independent_rows,
    integer_kernel,
    rank,
    solve_rational,
)


def cofactor_det(rows):
    """Laplace expansion along the first row; the independent oracle."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def is_row_hnf(h: IntMatrix) -> bool:
    rows = h.to_rows()
    last = -1
    for i, r in enumerate(rows):
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            if any(any(x for x in rr) for rr in rows[i:]):
                return False
            break
        p = nz[0]
        if p <= last or r[p] <= 0:
            return False
        for rr in rows[:i]:
            if not 0 <= rr[p] < r[p]:
                return False
        last = p
    return True


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_det_trivial():
    assert det(IntMatrix.identity(3)) == 1
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1


def test_det_matches_cofactor_on_random_4x4():
    rng = random.Random(11)
    for _ in range(50):
        rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        assert det(IntMatrix.from_rows(rows)) == cofactor_det(rows)


def test_det_rejects_non_square():
    with pytest.raises(ShapeError):
        det(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


@given(square, square)
def test_det_multiplicative(a, b):
    if len(a) != len(b):
        b = [r[: len(a)] + [0] * max(0, len(a) - len(r)) for r in b[: len(a)]]
        b += [[0] * len(a) for _ in range(len(a) - len(b))]
    ma, mb = IntMatrix.from_rows(a), IntMatrix.from_rows(b)
    assert det(ma @ mb) == det(ma) * det(mb)


def test_hnf_examples():
    for n in (1, 2, 4):
        h, u = hermite_normal_form(IntMatrix.identity(n))
        assert h == IntMatrix.identity(n) and u == IntMatrix.identity(n)
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    h, u = hermite_normal_form(m)
    assert h == m and u == IntMatrix.identity(2)


@given(st.integers(1, 4).flatmap(
    lambda r: st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=r, max_size=r)))
def test_hnf_multiply_back(rows):
    m = IntMatrix.from_rows(rows)
    h, u = hermite_normal_form(m)
    assert u @ m == h
    assert abs(det(u)) == 1
    assert is_row_hnf(h)


def test_solve_examples():
    assert solve_rational(IntMatrix.identity(3), [1, Fraction(2, 3), -4]) == (1, Fraction(2, 3), -4)
    a = IntMatrix.from_rows([[2, 0], [0, 4]])
    assert solve_rational(a, [1, 1]) == (Fraction(1, 2), Fraction(1, 4))


def test_solve_residual_random():
    rng = random.Random(5)
    done = 0
    while done < 30:
        rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        if cofactor_det(rows) == 0:
            continue
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
        x = solve_rational(rows, b)
        assert all(sum(r[j] * x[j] for j in range(4)) == b[i] for i, r in enumerate(rows))
        done += 1


def test_solve_singular():
    with pytest.raises(SingularMatrixError):
        solve_rational([[1, 2], [2, 4]], [1, 1])


def test_batch_det_agrees_and_falls_back():
    rng = np.random.default_rng(0)
    mats = rng.integers(-4, 5, size=(40, 4, 4))
    assert batch_det(mats) == [cofactor_det(m.tolist()) for m in mats]
    big = np.array([[[10**12, 1, 0], [0, 10**12, 1], [1, 0, 10**12]]], dtype=object)
    assert batch_det(big) == [cofactor_det(big[0].tolist())]


def test_integer_kernel_and_rank():
    rows = [[1, 2, 3], [2, 4, 6]]
    ker = integer_kernel(rows, 3)
    assert len(ker) == 2 and rank(rows) == 1
    assert all(sum(a * b for a, b in zip(k, rows[0])) == 0 for k in ker)
    # saturated: the 2x2 minors of the basis are coprime
    from math import gcd
    minors = [ker[0][i] * ker[1][j] - ker[0][j] * ker[1][i] for i, j in ((0, 1), (0, 2), (1, 2))]
    assert gcd(*minors) == 1


def test_independent_rows():
    assert independent_rows([[1, 0, 0], [2, 0, 0], [0, 1, 1], [1, 1, 1]]) == [0, 2]
    assert independent_rows([[0, 0], [3, 1], [1, 2]], limit=1) == [1]


def test_as_rational():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational("4/2") == 2 and isinstance(as_rational("4/2"), int)
    with pytest.raises((TypeError, ValueError)):
        as_rational(True)


def test_intmatrix_parse_and_power():
    m = IntMatrix.parse("0,-1;1,1")
    assert m ** 6 == IntMatrix.identity(2)
    assert str(m) == "0,-1;1,1"
