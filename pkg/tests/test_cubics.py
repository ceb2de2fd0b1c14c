from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from futaki.cubics import (
    INCONCLUSIVE,
    UNSTABLE,
    ResolutionNumbers,
    cubic_model,
    fs_potential,
    instability_report,
    make_action,
    trace_free_alphas,
    verify_polystable_futaki,
)
from futaki.errors import IncompleteInput, InvalidInput

Q = Fraction


def delta_numbers(bs, es):
    return ResolutionNumbers.of(**{f"p{j}": (bs[j], es[j]) for j in range(3)})


def test_catalog():
    delta = cubic_model("F_Delta")
    assert [p.singularity_type for p in delta.singular_points] == ["D4"] * 3
    fab = cubic_model("F_AB")
    assert [(p.label, p.singularity_type) for p in fab.singular_points] == [("p0", "A5"), ("p2", "A1"), ("p4", "A5")]
    assert [p.singularity_type for p in cubic_model("F_AB", "1/3").singular_points] == ["A5", "A5"]
    assert fab.u_bar == 0 and fab.L3 == 3
    with pytest.raises(InvalidInput):
        cubic_model("F_AB", 1)
    with pytest.raises(InvalidInput):
        cubic_model("Klein")


def test_actions():
    spec, u = make_action(cubic_model("F_Delta"), (1, 1, -2))
    assert spec.ambient.weights == (1, 1, -2, 0, 0)
    assert u == {"p0": 1, "p1": 1, "p2": -2}
    spec, u = make_action(cubic_model("F_AB"), (1,))
    assert spec.ambient.weights == (-2, -1, 0, 1, 2)
    assert u == {"p0": -2, "p2": 0, "p4": 2}
    with pytest.raises(InvalidInput):
        make_action(cubic_model("F_Delta"), (1, 1, 1))
    with pytest.raises(InvalidInput):
        make_action(cubic_model("F_AB"), (0,))


def test_fs_potential_at_general_point():
    assert fs_potential((-2, -1, 0, 1, 2), (1, 0, 0, 0, 1)) == 0
    assert fs_potential((3, 0), (1, 1)) == Q(3, 2)


@pytest.mark.parametrize("params", [(1, 1, -2), (5, -2, -3)])
def test_delta_polystable(params):
    res = verify_polystable_futaki(cubic_model("F_Delta"), params)
    assert (res.F0, res.F1) == (0, 0)


def test_fab_polystable():
    res = verify_polystable_futaki(cubic_model("F_AB"), (3,))
    assert (res.F0, res.F1) == (0, 0)


def test_delta_equal_values_inconclusive():
    rep = instability_report(cubic_model("F_Delta"), delta_numbers((1, 1, 1), (-2, -2, -2)))
    assert rep.verdict == INCONCLUSIVE and rep.coefficient == 0 and rep.witness_alpha is None


def test_delta_given_action():
    rep = instability_report(cubic_model("F_Delta"), delta_numbers((1, 1, 1), (-1, -2, -3)), (1, -1, 0))
    assert rep.verdict == UNSTABLE
    assert rep.coefficient == Q(-1, 2)


def test_delta_searched_witness():
    rep = instability_report(cubic_model("F_Delta"), delta_numbers((1, 1, 1), (-1, -2, -3)))
    a = rep.witness_alpha
    assert rep.verdict == UNSTABLE and sum(a) == 0
    assert rep.coefficient == -Q(1, 2) * (a[0] * -1 + a[1] * -2 + a[2] * -3)


def test_trace_free_alphas():
    alphas = trace_free_alphas()
    assert (1, -1, 0) in alphas and (0, 0, 0) not in alphas
    assert all(sum(a) == 0 and max(map(abs, a)) <= 2 for a in alphas)


@given(
    st.integers(1, 3), st.integers(-4, 1), st.integers(1, 3), st.integers(-4, 1),
    st.integers(1, 5), st.integers(-9, 9),
)
def test_fab_a1_entry_irrelevant(b0, e0, b4, e4, b2, e2):
    fab = cubic_model("F_AB")
    rep = instability_report(fab, ResolutionNumbers.of(p0=(b0, e0), p2=(b2, e2), p4=(b4, e4)))
    ref = instability_report(fab, ResolutionNumbers.of(p0=(b0, e0), p2=(1, 0), p4=(b4, e4)))
    assert (rep.verdict, rep.coefficient) == (ref.verdict, ref.coefficient)
    assert rep.coefficient == b0 * b0 * e0 - b4 * b4 * e4


def test_fab_equal_a5_entries_inconclusive():
    rep = instability_report(cubic_model("F_AB"), ResolutionNumbers.of(p0=(2, -1), p2=(1, -5), p4=(1, -4)))
    assert rep.verdict == INCONCLUSIVE


def test_fab_covering_scales_coefficient():
    fab = cubic_model("F_AB")
    nums = ResolutionNumbers.of(p0=(1, -1), p2=(1, -1), p4=(1, -3))
    assert instability_report(fab, nums, (3,)).coefficient == 3 * instability_report(fab, nums).coefficient == 6


def test_generic_beta_has_no_a1_point():
    fab = cubic_model("F_AB", 2)
    rep = instability_report(fab, ResolutionNumbers.of(p0=(1, -1), p4=(1, -2)))
    assert rep.verdict == UNSTABLE and rep.coefficient == 1
    with pytest.raises(InvalidInput):
        instability_report(fab, ResolutionNumbers.of(p0=(1, -1), p2=(1, 0), p4=(1, -2)))


def test_numbers_validation():
    with pytest.raises(IncompleteInput):
        instability_report(cubic_model("F_Delta"), ResolutionNumbers.of(p0=(1, -1), p1=(1, -1)))
    with pytest.raises(IncompleteInput):
        ResolutionNumbers.from_json({"p0": {"b": 1}})
    with pytest.raises(InvalidInput):
        ResolutionNumbers.of(p0=(0, -1))


def test_report_json():
    rep = instability_report(cubic_model("F_Delta"), delta_numbers((1, 1, 2), (-1, -1, -1)))
    out = rep.to_json()
    assert out["verdict"] == UNSTABLE and out["values"] == {"p0": "-1", "p1": "-1", "p2": "-4"}
    assert out["order"] == "r^-2"
