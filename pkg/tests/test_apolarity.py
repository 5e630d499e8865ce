from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlab.apolarity import (
    AronholdQuartic,
    CharacteristicTooSmall,
    Stratum,
    ZeroForm,
    _substitute_linear,
    annihilator_slice,
    apolar_action,
    apolar_ideal,
    catalecticant,
    catalecticant_rank,
    classify_stratum,
    cubic_coefficients,
    dual_pair,
    fermat_orbit_sample,
    orbit_representatives,
    random_invertible,
)
from vlab.arith import DEFAULT_PRIME, GF, QQ
from vlab.groebner import Ideal
from vlab.poly import Ring

EXPECTED = {
    "F1": Stratum.OnSec1NotV,
    "F2": Stratum.OnSec1NotV,
    "F3": Stratum.OnSec2NotSec1,
    "F4": Stratum.OnSec2NotSec1,
    "F5": Stratum.OnSec2NotSec1,
}


def test_apolar_action_is_differentiation(cubic_ring):
    X = Ring(["x0", "x1", "x2"], field=cubic_ring.field)
    F = cubic_ring("y0^3 + y0*y1*y2")
    assert apolar_action(X("x0"), F) == cubic_ring("3*y0^2 + y1*y2")
    assert apolar_action(X("x0^3"), F) == cubic_ring("6")
    assert apolar_action(X("x0*x1*x2"), F) == cubic_ring("1")
    assert apolar_action(X("x1^2"), F).is_zero()


def test_catalecticant_shape_and_rank(cubic_ring):
    F = cubic_ring("y0*y1*y2")
    M = catalecticant(F, 1)
    assert len(M) == 3 and len(M[0]) == 6
    assert catalecticant_rank(F) == 3
    assert catalecticant_rank(cubic_ring("y2^3")) == 1


def test_characteristic_guard():
    with pytest.raises(CharacteristicTooSmall):
        dual_pair(GF(5), degree=5)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_orbit_representatives_classify(cubic_ring, name):
    F = orbit_representatives(cubic_ring)[name]
    assert classify_stratum(F).stratum is EXPECTED[name]


def test_extremes(cubic_ring):
    assert classify_stratum(cubic_ring("y2^3")).stratum is Stratum.OnVeronese
    v = classify_stratum(cubic_ring("y0*y1*y2"))
    assert v.stratum is Stratum.OutsideSec2 and v.complete_intersection
    assert v.stratum.koszul_prediction == "Koszul"
    with pytest.raises(ZeroForm):
        classify_stratum(cubic_ring.zero())


def test_annihilator_dimensions(cubic_ring):
    F = cubic_ring("y0^3 + y1^3 + y2^3")
    assert [len(annihilator_slice(F, d)) for d in range(5)] == [0, 0, 3, 9, 15]
    for g in annihilator_slice(F, 3):
        assert apolar_action(g, F).is_zero()


def test_apolar_ideal_examples():
    Y = Ring(["y0", "y1", "y2"])
    X = Ring(["x0", "x1", "x2"])
    I = apolar_ideal(Y("y0*y1*y2"))
    assert I.equals(Ideal(X, X.parse_list("x0^2, x1^2, x2^2")))
    I = apolar_ideal(Y("y0^3"))
    assert I.equals(Ideal(X, X.parse_list("x1, x2, x0^4")))


def test_linear_substitution_preserves_stratum():
    rng = random.Random(7)
    F = GF(DEFAULT_PRIME)
    ring = Ring(["y0", "y1", "y2"], field=F)
    for name, f in orbit_representatives(ring).items():
        g = random_invertible(rng, F)
        assert classify_stratum(_substitute_linear(f, g)).stratum is EXPECTED[name]


def _det3(g, F):
    (a, b, c), (d, e, f), (h, i, j) = g
    return F(a * (e * j - f * i) - b * (d * j - f * h) + c * (d * i - e * h))


class TestAronhold:
    def test_degree_and_normalization(self, aronhold):
        assert aronhold.degree() == 4
        first = next(c for c in aronhold.coefficients if c != 0)
        assert first == 1

    def test_vanishes_on_secant_strata(self, aronhold):
        ring = Ring(["y0", "y1", "y2"], field=aronhold.field)
        for f in orbit_representatives(ring).values():
            assert aronhold.evaluate(f) == 0
        assert aronhold.evaluate(ring("y2^3")) == 0
        assert aronhold.evaluate(ring("y0*y1*y2")) != 0

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_relative_invariance(self, aronhold, seed):
        # S(F o g) = det(g)^4 S(F)
        F = aronhold.field
        rng = random.Random(seed)
        ring = Ring(["y0", "y1", "y2"], field=F)
        f = ring.from_dict({m: rng.randrange(F.p) for m in ring.monomials_of_degree(3)})
        g = random_invertible(rng, F)
        lhs = aronhold.evaluate(_substitute_linear(f, g))
        rhs = F.mul(pow(_det3(g, F), 4, F.p), aronhold.evaluate(f))
        assert lhs == rhs

    def test_text_roundtrip(self, aronhold, tmp_path):
        path = tmp_path / "s.txt"
        aronhold.save(path)
        back = AronholdQuartic.load(path)
        assert back.coefficients == aronhold.coefficients
        assert back.seed == aronhold.seed

    def test_oracle_matches_ci_rule_on_samples(self, aronhold):
        rng = random.Random(3)
        ring = Ring(["y0", "y1", "y2"], field=aronhold.field)
        for _ in range(5):
            f = fermat_orbit_sample(rng, ring)
            v = classify_stratum(f, aronhold)
            assert v.stratum is Stratum.OnSec2NotSec1 and v.aronhold_agrees


def test_cubic_coefficients_order():
    ring = Ring(["y0", "y1", "y2"])
    assert cubic_coefficients(ring("y0^3"))[0] == 1
    assert len(cubic_coefficients(ring("y0*y1*y2"))) == 10
