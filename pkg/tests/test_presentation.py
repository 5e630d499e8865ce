from __future__ import annotations

from collections import Counter

import pytest

from vlab.apolarity import annihilator_slice, apolar_action, orbit_representatives
from vlab.arith import DEFAULT_PRIME, GF, QQ
from vlab.groebner import Ideal, ideal_slice_rank
from vlab.poly import Ring
from vlab.presentation import (
    generator_profile,
    hilbert_consistency,
    is_quadratic,
    pinched_veronese_generators,
    products_span_dimension,
    projection_ring,
    quadraticity_report,
    relations_by_linear_algebra,
    subalgebra_presentation,
)

# quadric and cubic counts of the defining ideals; F4 gives 17 here and the
# value is confirmed by brute-force product spans below
COUNTS = {"F1": (18, 1), "F2": (18, 1), "F3": (17, 1), "F4": (17, 1), "F5": (17, 1)}


@pytest.fixture(scope="module")
def pinched():
    X = Ring(["x0", "x1", "x2"], field=GF(DEFAULT_PRIME))
    return subalgebra_presentation(pinched_veronese_generators(X))


def test_pinched_generators():
    gens = pinched_veronese_generators()
    assert len(gens) == 9
    assert all(len(g) == 1 and g.total_degree() == 3 for g in gens)
    assert Ring(["x0", "x1", "x2"])("x0*x1*x2") not in gens


def test_pinched_presentation(pinched):
    assert pinched.substitution_check()
    assert generator_profile(pinched) == Counter({2: 17})
    assert is_quadratic(pinched)
    assert pinched.hilbert_series().series(6) == [1, 9, 28, 55, 91, 136, 190]


def test_pinched_over_rationals():
    P = subalgebra_presentation(pinched_veronese_generators())
    assert generator_profile(P) == Counter({2: 17})


def test_hilbert_consistency(pinched):
    for d, (a, b) in hilbert_consistency(pinched, 3).items():
        assert a == b


def test_relations_by_linear_algebra_match(pinched):
    rels = relations_by_linear_algebra(pinched.generators, 2, pinched.ring)
    assert len(rels) == 17
    I = pinched.ideal
    assert all(r in I for r in rels)


def test_truncated_presentation():
    X = Ring(["x0", "x1", "x2"], field=GF(DEFAULT_PRIME))
    P = subalgebra_presentation(pinched_veronese_generators(X), degree_cap=2)
    assert P.metadata["truncated"]
    with pytest.raises(ValueError):
        generator_profile(P, 4)


def test_projection_basis_is_apolar():
    Y = Ring(["y0", "y1", "y2"])
    F = Y("y0*y1*y2")
    pr = projection_ring(F)
    assert len(pr.basis) == 9
    assert all(apolar_action(g, F).is_zero() for g in pr.basis)
    # monomial F gives a monomial basis: the pinched Veronese
    assert {str(g) for g in pr.basis} == {str(g.to_ring(pr.basis[0].ring)) for g in pinched_veronese_generators()}


@pytest.mark.parametrize("p", [DEFAULT_PRIME, 31991])
@pytest.mark.parametrize("name", sorted(COUNTS))
def test_orbit_generator_counts(name, p):
    Y = Ring(["y0", "y1", "y2"], field=GF(p))
    pr = projection_ring(orbit_representatives(Y)[name], present=True)
    prof = generator_profile(pr.presentation)
    q, c = COUNTS[name]
    assert prof == Counter({2: q, 3: c})


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_quadric_count_by_brute_force(name):
    # independent of Groebner bases: dim A_2 = 45 - #quadrics
    Y = Ring(["y0", "y1", "y2"], field=GF(DEFAULT_PRIME))
    basis = annihilator_slice(orbit_representatives(Y)[name], 3)
    assert 45 - products_span_dimension(basis, 2) == COUNTS[name][0]


def test_cubic_relation_by_linear_algebra():
    # relations of degree 3 modulo those generated by the quadrics
    Y = Ring(["y0", "y1", "y2"], field=GF(DEFAULT_PRIME))
    basis = annihilator_slice(orbit_representatives(Y)["F5"], 3)
    Z = Ring([f"z{i}" for i in range(1, 10)], field=Y.field)
    quad = relations_by_linear_algebra(basis, 2, Z)
    cub = relations_by_linear_algebra(basis, 3, Z)
    assert len(cub) - ideal_slice_rank(Ideal(Z, quad), 3) == 1


def test_veronese_point_and_generic_form():
    Y = Ring(["y0", "y1", "y2"], field=GF(DEFAULT_PRIME))
    P = projection_ring(Y("y2^3"), present=True).presentation
    assert generator_profile(P) == Counter({2: 20})
    G = projection_ring(Y("y0^3 + 2*y1^3 - y2^3 + 5*y0*y1*y2 + y0^2*y1"), present=True).presentation
    assert quadraticity_report(G)["quadratic"]
    assert generator_profile(G) == Counter({2: 17})
