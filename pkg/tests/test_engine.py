from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from futaki.characters import AmbientSpec, CharacterSample, HypersurfaceSpec, PolytopeSpec, character
from futaki.engine import futaki, futaki_from_samples, sample
from futaki.errors import DegreeOverflow, InvalidInput
from futaki.exact import ratio_expansion

# 3H - E on the blow-up of the plane at a point, acting by (1, 0)
CUT_TRIANGLE = PolytopeSpec(2, ((1, 0), (3, 0), (0, 3), (0, 1)), (1, 0))


def test_line_with_antisymmetric_weights():
    res = futaki_from_samples(sample(AmbientSpec(1, (1, -1)), range(1, 6)), 1)
    assert (res.F0, res.F1) == (0, 0)
    assert res.chi_poly.coefficients == (1, 1)
    assert res.weight_poly.is_zero


def test_polystable_cubic_vanishes():
    res = futaki(HypersurfaceSpec(AmbientSpec(4, (1, 1, -2, 0, 0)), 3, 0), 3)
    assert (res.F0, res.F1) == (0, 0)


def test_cut_triangle_regression_anchor():
    res = futaki(CUT_TRIANGLE, 2)
    assert res.F1 == Fraction(1, 24)
    assert res.F0 == Fraction(13, 12)
    # independent route: F1 = b/c - a d / c^2 from the leading coefficients
    a, b = res.weight_poly.coefficient(3), res.weight_poly.coefficient(2)
    c, d = res.chi_poly.coefficient(2), res.chi_poly.coefficient(1)
    assert b / c - a * d / c**2 == Fraction(1, 24)


def test_result_reproduces_samples_and_expansion():
    spec = HypersurfaceSpec(AmbientSpec(3, (1, 0, 0, 0)), 2, 0)
    res = futaki(spec)
    for k in range(*res.sample_range):
        s = character(spec, k)
        assert res.chi_poly(k) == s.chi and res.weight_poly(k) == s.weight
    e = ratio_expansion(res.weight_poly, res.chi_poly, depth=3, top=1)
    assert (e[1], e[0]) == (res.F0, res.F1) == (Fraction(1, 3), Fraction(-1, 6))
    assert len(res.deeper_terms) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_trace_free_projective_space(d, data):
    w = data.draw(st.lists(st.integers(-6, 6), min_size=d, max_size=d))
    res = futaki(AmbientSpec(d, tuple(w) + (-sum(w),)))
    assert (res.F0, res.F1) == (0, 0)


@pytest.mark.parametrize(
    "spec",
    [
        CUT_TRIANGLE,
        HypersurfaceSpec(AmbientSpec(2, (1, 0, 0)), 2, 1),
        PolytopeSpec(2, ((0, 0), (2, 0), (1, 1), (0, 1)), (1, 1)),
    ],
)
@pytest.mark.parametrize("lam", [-2, 1, 3])
def test_shift_moves_F0_only(spec, lam):
    base, moved = futaki(spec), futaki(spec.with_shift(lam))
    assert moved.F1 == base.F1
    assert moved.F0 == base.F0 + lam


@pytest.mark.parametrize("m", [2, 3])
def test_power_invariance(m):
    spec = HypersurfaceSpec(AmbientSpec(2, (1, 0, 0)), 2, 1)
    assert futaki(spec, power=m).F1 == futaki(spec).F1 == Fraction(1, 8)


def test_sample_validation():
    good = sample(AmbientSpec(2, (1, 0, 0)), range(1, 6))
    with pytest.raises(InvalidInput):
        futaki_from_samples(good[:3], 2)
    with pytest.raises(InvalidInput):
        futaki_from_samples(good[:-1] + [good[0]], 2)
    with pytest.raises(InvalidInput):
        futaki_from_samples(good, 3)  # chi has degree 2, not 3


def test_non_polynomial_samples_overflow():
    bad = [CharacterSample(k, 2**k, 0) for k in range(1, 7)]
    with pytest.raises(DegreeOverflow):
        futaki_from_samples(bad, 2)


def test_json_shape():
    out = futaki(CUT_TRIANGLE).to_json()
    assert out["F1"] == "1/24"
    assert set(out) == {"F0", "F1", "deeper_terms", "chi_poly", "weight_poly", "sample_range"}
