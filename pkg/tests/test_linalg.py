"""Exact linear algebra: rank/kernel, SNF certificates, saturation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitforge.rings import ZZ, QQ, GF, format_rational, parse_rational, is_two_power_denominator
from orbitforge.linalg import (
    SparseMatrix,
    rank_kernel,
    solve,
    smith_normal_form,
    r_saturated,
    integer_kernel_basis,
    complete_saturated_basis,
    span_intersection,
)


def test_identity_rank():
    m = SparseMatrix.identity(3, QQ)
    rank, kernel = rank_kernel(m)
    assert rank == 3 and kernel == []


def test_zero_matrix_kernel():
    m = SparseMatrix.zeros(2, 5, QQ)
    rank, kernel = rank_kernel(m)
    assert rank == 0 and len(kernel) == 5


def test_rank_kernel_rejects_integers():
    with pytest.raises(ValueError):
        rank_kernel(SparseMatrix.identity(2, ZZ))


def test_ad_e_kernel_dimension_sp4():
    # independent cross-check of the closed formula (1/2)(sum conj^2 + #odd)
    from orbitforge.partitions import Partition
    from orbitforge.orbits import build_nilpotent, ad_e_matrix

    rep = build_nilpotent(Partition((2, 1, 1)), -1)
    rank, kernel = rank_kernel(ad_e_matrix(rep))
    assert len(kernel) == (10 + 2) // 2 == 6


def test_snf_diag_2_3():
    m = SparseMatrix.from_dense([[2, 0], [0, 3]], ZZ)
    res = smith_normal_form(m)
    assert res.divisors == [1, 6]


def test_snf_zero():
    res = smith_normal_form(SparseMatrix.zeros(3, 2, ZZ))
    assert res.divisors == [0, 0]


def test_snf_chevalley_lattice_sp4_22():
    # saturation over Z[1/2]: nonzero divisors must be powers of 2
    from orbitforge.partitions import Partition
    from orbitforge.orbits import build_nilpotent
    from orbitforge.slices import ad_e_lattice_matrix

    rep = build_nilpotent(Partition((2, 2)), -1)
    res = smith_normal_form(ad_e_lattice_matrix(rep))
    nonzero = [d for d in res.divisors if d]
    assert all(d & (d - 1) == 0 for d in nonzero)
    assert res.divisors == [1, 1, 1, 1, 2, 2, 0, 0, 0, 0]


def test_r_saturated_examples():
    assert r_saturated(SparseMatrix.from_dense([[1, 0, 0], [0, 2, 0], [0, 0, 4]], ZZ))
    assert not r_saturated(SparseMatrix.from_dense([[1, 0], [0, 3]], ZZ))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=2, max_size=4))
def test_snf_certificates_recompose(rows):
    m = SparseMatrix.from_dense(rows, ZZ)
    res = smith_normal_form(m)  # recomposition is asserted inside
    for i in range(len(res.divisors) - 1):
        if res.divisors[i]:
            assert res.divisors[i + 1] % res.divisors[i] == 0
        else:
            assert res.divisors[i + 1] == 0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=3, max_size=3),
    st.lists(st.integers(-4, 4), min_size=4, max_size=4),
)
def test_solve_verifies_by_substitution(rows, x):
    m = SparseMatrix.from_dense([[Fraction(v) for v in row] for row in rows], QQ)
    b = m.apply(tuple(Fraction(v) for v in x))
    sol = solve(m, list(b))
    assert sol is not None
    assert m.apply(sol) == b


def test_integer_kernel_is_saturated():
    m = SparseMatrix.from_dense([[2, 4, 0], [1, 2, 0]], ZZ)
    ker = integer_kernel_basis(m)
    assert len(ker) == 2
    comp = complete_saturated_basis(ker, 3)
    assert len(comp) == 1


def test_span_intersection():
    a = [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))]
    b = [(Fraction(0), Fraction(1), Fraction(1)), (Fraction(1), Fraction(1), Fraction(0))]
    inter = span_intersection(a, b, QQ)
    assert len(inter) == 1


def test_rational_serialization():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("7/2") == Fraction(7, 2)
    assert parse_rational("-5") == Fraction(-5)


@settings(max_examples=100, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_roundtrip(num, den):
    x = Fraction(num, den)
    assert parse_rational(format_rational(x)) == x


def test_two_power_denominators():
    assert is_two_power_denominator(Fraction(3, 8))
    assert is_two_power_denominator(5)
    assert not is_two_power_denominator(Fraction(1, 6))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=3, max_size=4),
    st.sampled_from([3, 5, 7]),
)
def test_rank_never_grows_mod_p(rows, p):
    m = SparseMatrix.from_dense(rows, ZZ)
    rank_q, _ = rank_kernel(m.change_ring(QQ))
    rank_p, _ = rank_kernel(m.change_ring(GF(p)))
    assert rank_p <= rank_q


def test_gf_field_ops():
    f = GF(7)
    assert f.div(f.one(), 3) == 5  # 3 * 5 = 15 = 1 mod 7
    assert f.coerce(Fraction(1, 2)) == 4
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        GF(9)
