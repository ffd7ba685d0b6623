"""Retrodictive certainty: exact, first-order, averaged, and the duality bound."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jwmsim.errors import DomainError
from jwmsim.grids import Grid1D
from jwmsim.measurement import PointerConfig, pointer_densities
from jwmsim.predictability import (
    PredictabilityCurve,
    average_predictability,
    predictability_curve,
    predictability_exact,
    predictability_weak,
    visibility_bound,
)

CFG = PointerConfig(gamma=0.2, sigma=1.0)

pointer_cfgs = st.builds(
    PointerConfig, gamma=st.floats(0.0, 3.0), sigma=st.floats(0.5, 2.0)
)


def test_zero_reading_is_blind_guess():
    assert predictability_exact(CFG, 0.0) == 0.0
    assert predictability_weak(CFG, 0.0) == 0.0


def test_figure_point_exact_and_weak():
    assert predictability_weak(CFG, 2.0) == 0.4
    assert predictability_exact(CFG, 2.0) == pytest.approx(0.3799489622552249, abs=1e-10)


def test_strong_limit_certainty():
    strong = PointerConfig(gamma=5.0, sigma=1.0)
    assert predictability_exact(strong, 2.5) >= 0.999
    assert predictability_exact(strong, -2.5) <= -0.999


def test_far_tail_saturates_without_nan():
    assert predictability_exact(CFG, 400.0) == 1.0
    assert predictability_exact(CFG, -400.0) == -1.0


@given(
    st.floats(0.0, 3.0),
    st.floats(0.5, 2.0),
    st.floats(-10.0, 10.0),
)
def test_tanh_identity(gamma, sigma, q):
    cfg = PointerConfig(gamma=gamma, sigma=sigma)
    want = np.tanh(gamma * q / sigma**2)
    assert predictability_exact(cfg, q) == pytest.approx(want, abs=1e-10)


@given(st.floats(-1.0, 1.0))
def test_weak_error_within_taylor_remainder(arg):
    # arg is gamma q'/sigma^2 itself; fix sigma=1, gamma=0.2
    q = arg / 0.2
    diff = abs(predictability_weak(CFG, q) - predictability_exact(CFG, q))
    assert diff <= abs(arg) ** 3 / 3.0 + 1e-15


def test_bayes_chain_forms_agree():
    grid = Grid1D.centered(512, 16.0)
    hit, miss = pointer_densities(CFG, grid)
    prior = 0.5
    total = hit * prior + miss * prior
    conditional = hit * prior / total  # P(slot | reading)
    form_a = (conditional - prior) / prior
    form_b = hit / total - 1.0
    form_c = (hit - miss) / (hit + miss)
    assert np.abs(form_a - form_b).max() < 1e-12
    assert np.abs(form_b - form_c).max() < 1e-12
    assert np.abs(form_c - predictability_exact(CFG, grid.points)).max() < 1e-12


def test_curve_invariants():
    qs = np.linspace(-10.0, 10.0, 801)
    curve = predictability_curve(CFG, qs)
    assert isinstance(curve, PredictabilityCurve)
    assert curve.cfg is CFG
    assert np.abs(curve.p_values).max() <= 1.0
    assert np.abs(curve.p_values + curve.p_values[::-1]).max() < 1e-12  # odd
    assert np.diff(curve.p_values).min() >= -1e-12  # monotone
    # the first-order curve leaves [-1, 1] beyond |q| = 5, so stay inside
    small = np.linspace(-2.0, 2.0, 5)
    weak_curve = predictability_curve(CFG, small, weak=True)
    assert weak_curve.p_values == pytest.approx(0.2 * small)


def test_curve_rejects_out_of_range_values():
    with pytest.raises(DomainError):
        PredictabilityCurve(q_values=np.array([0.0]), p_values=np.array([1.5]), cfg=CFG)
    with pytest.raises(DomainError):
        PredictabilityCurve(q_values=np.zeros(3), p_values=np.zeros(2), cfg=CFG)


def test_reading_rescale_collapse():
    # the curve shape depends on gamma and sigma only through gamma q/sigma^2
    ref = PointerConfig(gamma=1.0, sigma=1.0)
    for q in (0.3, 2.0, -4.5):
        assert predictability_exact(CFG, q) == pytest.approx(
            predictability_exact(ref, 0.2 * q), abs=1e-12
        )


def test_average_weak_limit():
    val = average_predictability(PointerConfig(gamma=0.05, sigma=1.0))
    assert val == pytest.approx(0.028203603304328, abs=1e-9)
    assert abs(val - 0.05 / np.sqrt(np.pi)) / (0.05 / np.sqrt(np.pi)) < 5e-3


def test_average_strong_limit():
    val = average_predictability(PointerConfig(gamma=10.0, sigma=1.0))
    assert val >= 0.999
    assert val == pytest.approx(0.999999999998463, abs=1e-9)


def test_average_zero_coupling():
    assert average_predictability(PointerConfig(gamma=0.0, sigma=1.0)) == 0.0


def test_average_intermediate_values_and_monotonicity():
    v_02 = average_predictability(CFG)
    v_1 = average_predictability(PointerConfig(gamma=1.0, sigma=1.0))
    assert v_02 == pytest.approx(0.112462916018285, abs=1e-9)
    assert v_1 == pytest.approx(0.520499877813047, abs=1e-9)
    v_005 = average_predictability(PointerConfig(gamma=0.05, sigma=1.0))
    v_10 = average_predictability(PointerConfig(gamma=10.0, sigma=1.0))
    assert v_005 < v_02 < v_1 < v_10


def test_average_residual_scales_cubically():
    r1 = average_predictability(PointerConfig(gamma=0.1, sigma=1.0)) - 0.1 / np.sqrt(np.pi)
    r2 = average_predictability(PointerConfig(gamma=0.2, sigma=1.0)) - 0.2 / np.sqrt(np.pi)
    assert r2 / r1 >= 6.0


def test_visibility_bound_values():
    assert visibility_bound(0.0) == 1.0
    assert visibility_bound(1.0) == 0.0
    assert visibility_bound(-1.0) == 0.0
    assert visibility_bound(0.4) == pytest.approx(0.916515138991168, abs=1e-12)


def test_visibility_bound_domain():
    with pytest.raises(DomainError):
        visibility_bound(1.0001)
    with pytest.raises(DomainError):
        visibility_bound(-2.0)


@given(st.floats(-12.0, 12.0))
def test_duality_closure(q):
    p = predictability_exact(CFG, q)
    v = visibility_bound(p)
    assert p * p + v * v == pytest.approx(1.0, abs=1e-12)


@given(pointer_cfgs, st.floats(-20.0, 20.0))
def test_exact_certainty_bounded(cfg, q):
    assert abs(predictability_exact(cfg, q)) <= 1.0
