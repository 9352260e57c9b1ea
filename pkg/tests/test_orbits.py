"""Nilpotent representatives, gradings, sl2 completion and the induction
oracle."""

import pytest

from orbitforge.linalg import commutator, rank_kernel, matrix_power_rank_sequence
from orbitforge.partitions import Partition, admissible_partitions, is_rigid
from orbitforge.orbits import (
    InductionDatum,
    build_nilpotent,
    jordan_type,
    dynkin_grading,
    graded_dims,
    complete_sl2,
    orbit_dimension,
    orbit_dim_formula,
    centralizer_dim_formula,
    induce_orbit,
    generic_datum_sample,
    enumerate_levi_data,
    rigidity_oracle,
    find_induction_witness,
    ad_e_matrix,
)


def test_reference_representative_5221():
    rep = build_nilpotent(Partition((5, 2, 2, 1)), 1)
    g = rep.algebra
    expect = (g.unit(5, 4) - g.unit(-4, -5) + g.unit(3, 2) - g.unit(-2, -3)
              + g.unit(2, 1) - g.unit(-1, -2) + g.unit(1, -2) - g.unit(2, -1))
    assert rep.e == expect


def test_zero_orbit_representative():
    rep = build_nilpotent(Partition((1, 1, 1, 1)), -1)
    assert rep.e.is_zero()


def test_31_rank_sequence():
    rep = build_nilpotent(Partition((3, 1)), 1)
    assert matrix_power_rank_sequence(rep.e) == [2, 1]
    assert jordan_type(rep.e) == Partition((3, 1))


def test_grading_dims_sp4_211():
    rep = build_nilpotent(Partition((2, 1, 1)), -1)
    gr = dynkin_grading(rep)
    assert graded_dims(gr) == {-2: 1, -1: 2, 0: 4, 1: 2, 2: 1}


def test_e_is_degree_two():
    for parts, eps in [((5, 2, 2, 1), 1), ((4, 3, 3, 2), -1)]:
        rep = build_nilpotent(Partition(parts), eps)
        gr = dynkin_grading(rep)
        for k, c in enumerate(rep.e_coords):
            if c:
                assert gr.degree[k] == 2


def test_zero_orbit_trivial_grading():
    rep = build_nilpotent(Partition((1, 1, 1, 1)), -1)
    gr = dynkin_grading(rep)
    assert set(gr.layers) == {0}


def test_very_even_flag():
    rep = build_nilpotent(Partition((2, 2)), 1)
    assert rep.very_even


def test_sl2_h_is_cocharacter_differential():
    rep = build_nilpotent(Partition((2, 1, 1)), -1)
    t = complete_sl2(rep)
    gr = dynkin_grading(rep)
    for a in rep.pyramid.boxes():
        assert t.h[(rep.algebra.pos[a], rep.algebra.pos[a])] == gr.weight[a]
    assert commutator(t.h, t.e) == t.e.scale(2)
    assert commutator(t.h, t.f) == t.f.scale(-2)
    assert commutator(t.e, t.f) == t.h


def test_orbit_dimensions():
    assert orbit_dimension(Partition((2, 1, 1)), -1) == (4, 2)
    assert orbit_dimension(Partition((4,)), -1) == (8, 4)
    assert orbit_dimension(Partition((1, 1, 1, 1)), -1) == (0, 0)


def test_formula_agrees_with_kernel():
    for n in range(2, 9):
        for eps in (1, -1):
            if eps == -1 and n % 2:
                continue
            for lam in admissible_partitions(n, eps):
                rep = build_nilpotent(lam, eps)
                rank, kernel = rank_kernel(ad_e_matrix(rep))
                assert len(kernel) == centralizer_dim_formula(lam, eps), lam


def test_rank_nullity():
    for lam, eps in [(Partition((3, 3)), 1), (Partition((4, 2)), -1)]:
        rep = build_nilpotent(lam, eps)
        rank, kernel = rank_kernel(ad_e_matrix(rep))
        assert rank + len(kernel) == rep.algebra.dim


def test_induce_borel_and_siegel():
    borel = InductionDatum(4, -1, ((1, Partition((1,))), (1, Partition((1,)))), Partition(()))
    assert induce_orbit(borel) == Partition((4,))
    assert orbit_dim_formula(Partition((4,)), -1) == 0 + 2 * 4
    siegel = InductionDatum(4, -1, ((2, Partition((1, 1))),), Partition(()))
    assert induce_orbit(siegel) == Partition((2, 2))
    assert orbit_dim_formula(Partition((2, 2)), -1) == 0 + 2 * 3


def test_induction_dimension_identity_sweep():
    # dim Ind = dim levi orbit + 2 dim n, certified inside generic_datum_sample
    for datum in enumerate_levi_data(6, -1):
        try:
            generic_datum_sample(datum)
        except ValueError:
            continue  # zero nilradical


def test_rigidity_oracle_examples():
    assert rigidity_oracle(Partition((2, 1, 1)), -1)
    assert not rigidity_oracle(Partition((4,)), -1)
    witness = find_induction_witness(Partition((2, 2, 1, 1)), -1)
    assert witness is not None
    assert witness.gl_blocks == ((1, Partition((1,))),)
    assert witness.residual == Partition((1, 1, 1, 1))


def test_zero_orbit_rigid():
    assert rigidity_oracle(Partition((1,) * 6), -1)
    assert rigidity_oracle(Partition((1,) * 7), 1)


def test_oracle_guard():
    with pytest.raises(ValueError):
        rigidity_oracle(Partition((2, 2, 2, 2, 1, 1)), -1)


def test_criterion_matches_oracle_small():
    from orbitforge.algebra import build_algebra

    for n in range(2, 8):
        for eps in (1, -1):
            if eps == -1 and n % 2:
                continue
            if build_algebra(n, eps).type_a_like:
                continue
            for lam in admissible_partitions(n, eps):
                assert is_rigid(lam, eps) == rigidity_oracle(lam, eps), (lam, eps)
