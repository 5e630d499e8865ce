from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from vlab.arith import CHECK_PRIME, DEFAULT_PRIME, GF
from vlab.apolarity import orbit_representatives
from vlab.diagonal import BigradedQuotient, bigraded_polynomial_ring, diagonal_module_presentation
from vlab.groebner import Ideal, hilbert_series
from vlab.poly import Ring
from vlab.presentation import pinched_veronese_generators, projection_ring, subalgebra_presentation
from vlab.resolution import (
    GradedAlgebra,
    LinearUpTo,
    NonlinearAt,
    WindowExceeded,
    betti_over_polynomial_ring,
    betti_table,
    fine_grading,
    koszul_probe,
    regularity,
    residue_field,
    truncated_resolution,
)

Fp = GF(DEFAULT_PRIME)


def quotient(names, rels, p=DEFAULT_PRIME, fine=True):
    R = Ring(names, field=GF(p))
    return GradedAlgebra.quotient(Ideal(R, R.parse_list(rels) if rels else []), fine=fine)


def pinched_algebra(p=DEFAULT_PRIME, fine=True):
    X = Ring(["x0", "x1", "x2"], field=GF(p))
    P = subalgebra_presentation(pinched_veronese_generators(X))
    return GradedAlgebra.quotient(P.ideal, fine=fine)


def test_polynomial_ring_koszul_complex():
    A = quotient(["x", "y"], "")
    T = betti_table(A, residue_field(A), 3, 5)
    assert T.nonzero() == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    B = quotient(["a", "b", "c"], "")
    assert betti_table(B, residue_field(B), 4, 5).nonzero() == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}


def test_dual_numbers():
    A = quotient(["x"], "x^2")
    T = betti_table(A, residue_field(A), 5, 7)
    assert T.nonzero() == {(i, i): 1 for i in range(6)}
    assert regularity(T).value == 0
    assert str(koszul_probe(A, 4, 8)) == "LinearUpTo(4)"


def test_truncated_polynomial_x_cubed():
    A = quotient(["x"], "x^3")
    T = betti_table(A, residue_field(A), 4, 6)
    assert T.nonzero() == {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 4): 1, (4, 6): 1}
    assert not regularity(T).bounded
    assert koszul_probe(A, 4, 8) == NonlinearAt(2, 3)


def test_unknown_entries_are_none():
    A = quotient(["x"], "x^3")
    T = betti_table(A, residue_field(A), 3, 3)
    assert T[2, 3] == 1
    assert T[3, 4] is None and T[0, 9] is None
    assert T[1, 2] == 0
    # column 3 of row 1 sits in degree 4 > D
    assert "?" in T.to_text() and "window: s=3, D=3" in T.to_text()


def test_euler_defect_and_minimality():
    A = pinched_algebra()
    res = truncated_resolution(A, residue_field(A), 3, 4)
    assert res.is_minimal()
    for d in range(4):
        assert res.euler_defect(d) == 0
    with pytest.raises(WindowExceeded):
        res.euler_defect(5)


def test_probe_window_validation():
    A = quotient(["x"], "x^2")
    with pytest.raises(WindowExceeded):
        koszul_probe(A, 4, 4)


def test_fine_grading_monomial_and_binomial():
    A = pinched_algebra()
    assert A.fine_matrix.shape[1] == 3
    R = Ring(["a", "b"], field=Fp)
    F = fine_grading(R, [Ideal(R, [R("a^2 + b^2")]).groebner()])
    assert F.shape[1] == 1


def test_fine_and_coarse_agree():
    for fine in (True, False):
        A = pinched_algebra(fine=fine)
        assert betti_table(A, residue_field(A), 3, 4).nonzero() == {(0, 0): 1, (1, 1): 9, (2, 2): 53, (3, 3): 280}


@pytest.mark.parametrize("p", [DEFAULT_PRIME, CHECK_PRIME])
def test_pinched_is_linear(p):
    assert str(koszul_probe(pinched_algebra(p), 3, 5)) == "LinearUpTo(3)"


@pytest.mark.parametrize("p", [DEFAULT_PRIME, CHECK_PRIME])
def test_projection_F5_not_koszul(p):
    Y = Ring(["y0", "y1", "y2"], field=GF(p))
    P = projection_ring(orbit_representatives(Y)["F5"], present=True).presentation
    A = GradedAlgebra.quotient(P.ideal)
    assert koszul_probe(A, 3, 5) == NonlinearAt(2, 3)
    T = betti_over_polynomial_ring(P.ideal, 1, 3)
    assert T.nonzero() == {(0, 0): 1, (1, 2): 17, (1, 3): 1}


def test_betti_over_polynomial_ring_ci():
    R = Ring(["a", "b"], field=Fp)
    T = betti_over_polynomial_ring(Ideal(R, R.parse_list("a^2, b^2")), 3, 6)
    assert T.nonzero() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    S = Ring(["a", "b", "c"], field=Fp)
    T = betti_over_polynomial_ring(Ideal(S, S.parse_list("a^3 + b^3 + c^3, a*b*c")), 3, 7)
    assert T.nonzero() == {(0, 0): 1, (1, 3): 2, (2, 6): 1}


monomial_ideals = st.lists(
    st.tuples(*[st.integers(0, 2)] * 3).filter(lambda e: sum(e) > 0), min_size=1, max_size=4
)


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(monomial_ideals)
def test_betti_numbers_recover_hilbert_series(exps):
    # sum_i (-1)^i beta_{i,j} equals the coefficient of t^j in the K-polynomial
    R = Ring(["a", "b", "c"], field=Fp)
    I = Ideal(R, [R.monomial(e) for e in exps])
    D = 8
    T = betti_over_polynomial_ring(I, 3, D)
    assert all(i <= 3 for i, _ in T.nonzero())
    H = hilbert_series(I)
    for d in range(D + 1):
        # dim (P/I)_d = sum_{i,j} (-1)^i beta_{i,j} dim P_{d-j}
        lhs = sum((-1) ** i * b * ((d - j + 2) * (d - j + 1) // 2) for (i, j), b in T.nonzero().items() if j <= d)
        assert lhs == H.dimension(d)


def test_prop_suite_regularities():
    # f = x1^2 t1 + x2^2 t2: every R(-a,-b)_Delta has a linear-up-to-shift resolution
    S = bigraded_polynomial_ring(["x1", "x2"], ["t1", "t2"], Fp)
    host = BigradedQuotient(S, Ideal(S, [S("x1^2*t1 + x2^2*t2")]))
    A = host.diagonal().algebra()
    expected = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (2, 1): 2, (0, 2): 2}
    for shift, reg in expected.items():
        T = betti_table(A, diagonal_module_presentation(host, shift, 7, A), 3, 7)
        r = regularity(T)
        assert r.bounded and r.value == reg, shift
    assert koszul_probe(A, 3, 5) == LinearUpTo(3)
