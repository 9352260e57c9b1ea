"""Matrix realizations, Chevalley bases, root data and the Killing form."""

from fractions import Fraction

import pytest

from orbitforge.rings import QQ, GF
from orbitforge.linalg import SparseMatrix, commutator, rank_kernel
from orbitforge.algebra import build_algebra
from orbitforge.slices import gram_determinant, is_signed_two_power


def test_dimensions():
    assert build_algebra(4, -1).dim == 10
    assert build_algebra(5, 1).dim == 10
    assert build_algebra(8, 1).dim == 28
    assert build_algebra(6, -1).dim == 21
    with pytest.raises(ValueError):
        build_algebra(5, -1)


def test_so5_basis_contains_standard_element():
    g = build_algebra(5, 1)
    standard = g.unit(1, 0, 2) - g.unit(0, -1)  # 2e_{k,0} - e_{0,-k} for k = 1
    coords = g.coordinates(standard)
    assert sum(1 for c in coords if c != 0) == 1


def test_sigma_is_an_involution():
    for n, eps in [(4, -1), (5, 1), (6, 1)]:
        g = build_algebra(n, eps)
        x = g.unit(1, -2) + g.unit(2, 1, 3)
        assert g.sigma(g.sigma(x)) == x


def test_sigma_equivariance():
    g = build_algebra(4, -1)
    x, y = g.unit(1, -2), g.unit(2, 1)
    assert g.sigma(commutator(x, y)) == commutator(g.sigma(x), g.sigma(y))


def test_basis_matrices_are_sigma_fixed():
    for n, eps in [(4, -1), (5, 1), (7, 1), (6, -1)]:
        g = build_algebra(n, eps)
        for b in g.basis:
            assert g.sigma(b) == b


def test_form_invariance():
    for n, eps in [(4, -1), (5, 1)]:
        g = build_algebra(n, eps)
        for b in g.basis:
            # (Xu, v) + (u, Xv) = 0 as the matrix identity X^T J + J X = 0
            assert (b.transpose() @ g.J) + (g.J @ b) == SparseMatrix.zeros(n, n, QQ)


def test_root_data_sp4_so5():
    for n, eps in [(4, -1), (5, 1)]:
        g = build_algebra(n, eps)
        rd = g.root_data()
        assert len(rd["roots"]) == 8
        assert len(rd["simple_roots"]) == 2
        assert rd["d"] == 2
        assert len(rd["positive_roots"]) == (g.dim - g.h) // 2


def test_root_space_decomposition_by_bracketing():
    # every labeled root vector is a simultaneous eigenvector of the diagonal
    # torus with exactly its labeled weight
    for n, eps in [(4, -1), (5, 1), (8, 1), (6, -1)]:
        g = build_algebra(n, eps)
        diag = [g.unit(i, i) - g.unit(-i, -i) for i in range(1, g.h + 1)]
        for k, lab in enumerate(g.labels):
            if lab[0] != "e":
                continue
            w = lab[1]
            for i, h in enumerate(diag):
                assert commutator(h, g.basis[k]) == g.basis[k].scale(w[i]), (n, eps, w)


def test_positive_root_count_sweep():
    for n, eps in [(4, -1), (6, -1), (8, -1), (5, 1), (7, 1), (8, 1), (9, 1)]:
        g = build_algebra(n, eps)
        assert len(g.root_data()["positive_roots"]) == (g.dim - g.h) // 2


def test_bracket_closure_integer_constants():
    for n, eps in [(4, -1), (5, 1), (6, 1)]:
        g = build_algebra(n, eps)
        for a in g.basis:
            for b in g.basis:
                coords = g.coordinates(commutator(a, b))
                assert all(Fraction(c).denominator == 1 for c in coords)


def test_killing_short_root_value_sp4():
    g = build_algebra(4, -1)
    rd = g.root_data()
    kf = g.killing_form()
    short = [w for w in rd["positive_roots"] if rd["norms"][w] == 2][0]
    k_short = [i for i, lab in enumerate(g.labels) if lab == ("e", short)][0]
    k_neg = [i for i, lab in enumerate(g.labels) if lab == ("e", tuple(-x for x in short))][0]
    assert kf["gram"][(k_short, k_neg)] == 2  # 2 d / (alpha|alpha) = 2*2/2


def test_killing_cartan_orthogonal_to_root_vectors():
    g = build_algebra(4, -1)
    kf = g.killing_form()
    for i, lab in enumerate(g.labels):
        if lab[0] != "h":
            continue
        for j, lab2 in enumerate(g.labels):
            if lab2[0] == "e":
                assert kf["gram"][(i, j)] == 0


def test_killing_invariance_on_basis_triples():
    for n, eps in [(4, -1), (5, 1)]:
        g = build_algebra(n, eps)
        for x in g.basis:
            for y in g.basis:
                bxy = commutator(x, y)
                for z in g.basis:
                    assert g.kappa(bxy, z) == g.kappa(x, commutator(y, z))


def test_killing_gram_determinant_two_power():
    for n, eps in [(4, -1), (5, 1), (6, -1), (8, 1)]:
        g = build_algebra(n, eps)
        det = gram_determinant(g.killing_form()["gram"])
        assert is_signed_two_power(det), (n, eps, det)


def test_killing_nondegenerate_mod_p():
    for n, eps in [(4, -1), (5, 1)]:
        g = build_algebra(n, eps)
        gram = g.killing_form()["gram"]
        for p in (3, 5, 7):
            rank, _ = rank_kernel(gram.change_ring(GF(p)))
            assert rank == g.dim


def test_trace_constant_recorded():
    assert build_algebra(4, -1).killing_form()["trace_constant"] == 1
    assert build_algebra(5, 1).killing_form()["trace_constant"] == Fraction(1, 2)


def test_type_a_like_flags():
    assert build_algebra(2, 1).type_a_like
    assert build_algebra(4, 1).type_a_like
    assert build_algebra(6, 1).type_a_like
    assert build_algebra(2, -1).type_a_like
    assert not build_algebra(5, 1).type_a_like
    assert not build_algebra(4, -1).type_a_like
