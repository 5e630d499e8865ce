from __future__ import annotations

import numpy as np
import pytest

from vlab.arith import DEFAULT_PRIME, GF, QQ
from vlab.diagonal import (
    BigradedQuotient,
    NotCompleteIntersection,
    bigraded_polynomial_ring,
    build_complex_F,
    complex_F_shift,
    complex_homology,
    diagonal_generators,
    diagonal_module_presentation,
    lemma_checks,
    power_slice_dimension,
    random_complete_intersection,
    rees_module,
    rees_presentation,
    remark_H,
    segre_presentation,
)
from vlab.groebner import Ideal
from vlab.poly import Ring
from vlab.presentation import generator_profile, pinched_veronese_generators
from vlab.resolution import WindowExceeded, betti_table, regularity, residue_field, koszul_probe


def monomial_rees(field=QQ):
    R = Ring(["x1", "x2", "x3"], field=field)
    return rees_presentation(*R.parse_list("x1^2, x2^2, x3^2"))


@pytest.fixture(scope="module")
def P():
    return monomial_rees()


def test_rees_signs_and_syzygies(P):
    S = P.ring
    assert [str(f) for f in P.f] == [str(S(s)) for s in ("x2^2*t3 - x3^2*t2", "x3^2*t1 - x1^2*t3", "x1^2*t2 - x2^2*t1")]
    r1, r2 = P.syzygy_residuals()
    assert r1.is_zero() and r2.is_zero()
    assert all(f.multidegree() == (2, 1) for f in P.f)


def test_not_complete_intersection():
    R = Ring(["x1", "x2", "x3"])
    with pytest.raises(NotCompleteIntersection):
        rees_presentation(*R.parse_list("x1^2, x1*x2, x2^2"))
    with pytest.raises(ValueError):
        rees_presentation(*R.parse_list("x1^2, x2^2, x3"))


@pytest.mark.parametrize("field", [QQ, GF(DEFAULT_PRIME)], ids=["Q", "p"])
def test_lemma_identities_monomial(field):
    assert all(lemma_checks(monomial_rees(field)).values())


@pytest.mark.parametrize("n,seed", [(3, 1), (3, 7), (4, 2)])
def test_lemma_identities_random(n, seed):
    R = Ring([f"x{i}" for i in range(1, n + 1)], field=GF(DEFAULT_PRIME))
    gs = random_complete_intersection(R, np.random.default_rng(seed))
    assert all(lemma_checks(rees_presentation(*gs)).values())


def test_diagonal_generators():
    R = Ring(["x1", "x2", "x3"])
    gens = diagonal_generators(R.parse_list("x1^2, x2^2, x3^2"))
    assert sorted(map(str, gens)) == sorted(map(str, pinched_veronese_generators(R)))
    # (c, e) = (0, 1): the quadrics themselves
    assert len(diagonal_generators(R.parse_list("x1^2, x2^2, x3^2"), 0, 1)) == 3
    assert len(diagonal_generators(R.parse_list("x1^2, x2^2, x3^2"), 1, 2)) == 3 * 6


def test_segre():
    P22 = segre_presentation(2, 2)
    assert generator_profile(P22) == {2: 1}
    assert P22.metadata["minors_match"]
    P13 = segre_presentation(1, 3)
    assert len(P13.ideal) == 0
    assert segre_presentation(3, 3).metadata["minors_match"]
    with pytest.raises(ValueError):
        segre_presentation(0, 2)


def test_rees_diagonal_slices_match_powers(P):
    rees = P.rees()
    quads = P.quadrics
    for d in range(1, 5):
        assert rees.dimension(d, d) == power_slice_dimension(quads, d)


def test_diagonal_slice_hilbert(P):
    rees = P.rees()
    assert rees.diagonal(window=6).hilbert_function() == [1, 9, 28, 55, 91, 136, 190]
    assert remark_H().diagonal(window=6).hilbert_function() == [1, 9, 28, 55, 91, 136, 190]


def test_bigraded_basis_counts():
    S = bigraded_polynomial_ring(["x", "y"], ["t"])
    Q = BigradedQuotient(S, Ideal(S, [S("x*t")]))
    for p in range(4):
        for q in range(4):
            assert Q.dimension(p, q) == len(Q.basis(p, q))


def test_complex_F_structure(P):
    C = build_complex_F(P, 8)
    assert C.is_complex()
    assert C.degrees_consistent()
    assert [complex_F_shift(i) for i in range(4)] == [(0, 0), (2, 1), (2, 2), (4, 3)]


def test_complex_F_homology(P):
    H = complex_homology(build_complex_F(P, 8), (10, 6))
    assert H.diagonal(0, 6) == [1, 9, 28, 55, 91, 136, 190]
    for i in range(1, 8):
        assert H.diagonal(i, 6) == [0] * 7
    for i in (2, 4, 6):
        assert H.support(i) == {}
    assert H.support(1)[(4, 1)] == 1
    assert H.support(3)[(6, 3)] == 1
    with pytest.raises(WindowExceeded):
        H.at(0, 11, 0)


def test_complex_homology_random_ci():
    R = Ring(["x1", "x2", "x3"], field=GF(DEFAULT_PRIME))
    gs = random_complete_intersection(R, np.random.default_rng(3))
    H = complex_homology(build_complex_F(rees_presentation(*gs), 6), (8, 5))
    for i in range(1, 6):
        assert H.diagonal(i, 5) == [0] * 6


def test_module_over_polynomial_diagonal():
    # f = x1^2 t1 + x2^2 t2 with m = n = 2
    S = bigraded_polynomial_ring(["x1", "x2"], ["t1", "t2"], GF(DEFAULT_PRIME))
    host = BigradedQuotient(S, Ideal(S, [S("x1^2*t1 + x2^2*t2")]))
    A = host.diagonal().algebra()
    M0 = diagonal_module_presentation(host, (0, 0), 6, A)
    assert betti_table(A, M0, 3, 6).nonzero() == {(0, 0): 1}
    M01 = diagonal_module_presentation(host, (0, 1), 6, A)
    T = betti_table(A, M01, 3, 6)
    assert T[0, 1] == 2
    assert regularity(T).value == 1
    with pytest.raises(WindowExceeded):
        diagonal_module_presentation(host, (0, 9), 6, A)


def test_rees_module_betti():
    B, M = rees_module(monomial_rees(GF(DEFAULT_PRIME)))
    T = betti_table(B, M, 3, 7)
    assert T.nonzero() == {(0, 0): 1, (1, 2): 2, (2, 3): 9, (3, 4): 41}
    assert regularity(T).value == 1


def test_remark_H_not_koszul():
    A = remark_H(GF(DEFAULT_PRIME)).diagonal().algebra()
    assert str(koszul_probe(A, 4, 8)) == "NonlinearAt(3, 4)"
