"""Pointer densities, exact joint evolution, and conditional-state checks."""

import numpy as np
import pytest

from jwmsim.errors import InvalidProbe, NotNormalized, NotWeak
from jwmsim.grids import GaussianSpec, Grid1D, gaussian_value, inner, sample_gaussian
from jwmsim.measurement import (
    JointAmplitude2D,
    PointerConfig,
    ProbeConfig,
    evolve_joint,
    hermite_series_factor,
    joint_probability,
    jwm_state_exact,
    jwm_state_weak,
    momentum_slot_position_rep,
    pointer_densities,
    pointer_weight,
    position_slot,
)

SYS = Grid1D.centered(1024, 16.0)
ANC = Grid1D.centered(512, 16.0)
CFG = PointerConfig(gamma=0.2, sigma=1.0)
PROBE = ProbeConfig(x_probe=0.0, p_probe=0.0, sigma_x=0.2, sigma_p=0.2)


def residual(a, b, grid):
    return float(np.sqrt(np.trapezoid(np.abs(a - b) ** 2, dx=grid.step)))


def test_pointer_density_centers():
    hit, miss = pointer_densities(CFG, ANC)
    qs = ANC.points
    assert qs[np.argmax(hit)] == pytest.approx(0.1, abs=ANC.step)
    assert qs[np.argmax(miss)] == pytest.approx(-0.1, abs=ANC.step)
    # each branch is a unit-mass density
    assert np.trapezoid(hit, dx=ANC.step) == pytest.approx(1.0, abs=1e-9)
    assert np.trapezoid(miss, dx=ANC.step) == pytest.approx(1.0, abs=1e-9)


def test_pointer_density_ratio():
    # density ratio hit/miss at reading q is exp(2 gamma q / sigma^2)
    hit, miss = pointer_densities(CFG, ANC)
    sel = np.abs(ANC.points) < 4.0
    got = hit[sel] / miss[sel]
    expect = np.exp(2.0 * CFG.gamma * ANC.points[sel] / CFG.sigma**2)
    assert np.max(np.abs(got / expect - 1.0)) < 1e-12


def test_pointer_weight_rarity():
    # uncentered pointer density at q'=2: e^{-4}/sqrt(pi), about one percent
    assert pointer_weight(CFG, 2.0) == pytest.approx(0.010333492677046028, abs=1e-15)
    assert 0.008 <= pointer_weight(CFG, 2.0) <= 0.012


def test_gamma_zero_pointer_symmetric():
    hit, miss = pointer_densities(PointerConfig(gamma=0.0), ANC)
    assert np.array_equal(hit, miss)


@pytest.mark.parametrize("gamma", [0.2, 1.0, 5.0])
def test_evolve_joint_unitary(gamma):
    cfg = PointerConfig(gamma=gamma)
    psi = sample_gaussian(GaussianSpec(center=0.3, width=0.8, momentum=0.5), SYS)
    joint = evolve_joint(psi, cfg, PROBE, ANC)
    assert abs(joint.norm() - 1.0) < 1e-9


def test_evolve_joint_rejects_unnormalized():
    from jwmsim.grids import WaveFunction1D

    bad = WaveFunction1D(grid=SYS, amp=2.0 * sample_gaussian(GaussianSpec(), SYS).amp)
    with pytest.raises(NotNormalized):
        evolve_joint(bad, CFG, PROBE, ANC)


def test_evolve_joint_weak_coupling_barely_disturbs():
    cfg = PointerConfig(gamma=0.01)
    psi = sample_gaussian(GaussianSpec(width=1.0), SYS)
    joint = evolve_joint(psi, cfg, PROBE, ANC)
    # fidelity of the reduced system state with the input
    v = np.trapezoid(np.conj(psi.amp)[:, None] * joint.amp, dx=SYS.step, axis=0)
    fidelity = float(np.trapezoid(np.abs(v) ** 2, dx=ANC.step))
    assert fidelity >= 1.0 - 1e-3


def test_joint_probability_factorizes_at_gamma_zero():
    cfg = PointerConfig(gamma=0.0)
    psi = sample_gaussian(GaussianSpec(center=0.4, width=1.1), SYS)
    joint = evolve_joint(psi, cfg, PROBE, ANC)
    q = ANC.points[300]
    got = joint_probability(joint, q, PROBE.p_probe, PROBE)
    gam = momentum_slot_position_rep(PROBE, SYS)
    expect = abs(inner(gam, psi)) ** 2 * pointer_weight(cfg, q)
    assert got == pytest.approx(expect, rel=1e-12)


def test_operator_identity_random_draws():
    # readout density from the full 2D simulation equals weight*|<state|psi>|^2
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(25):
        psi = sample_gaussian(
            GaussianSpec(rng.uniform(-1, 1), rng.uniform(0.5, 2.0), rng.uniform(-1, 1)), SYS
        )
        probe = ProbeConfig(
            rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.15, 0.3), rng.uniform(0.15, 0.3)
        )
        cfg = PointerConfig(gamma=rng.uniform(0.02, 0.6))
        q = ANC.points[int(rng.integers(160, 352))]  # readings within +-6 sigma
        joint = evolve_joint(psi, cfg, probe, ANC)
        lhs = joint_probability(joint, q, probe.p_probe, probe)
        st = jwm_state_exact(cfg, probe, q, SYS)
        rhs = st.weight * abs(inner(st.state, psi)) ** 2
        worst = max(worst, abs(lhs - rhs))
    assert worst < 1e-8


def test_momentum_bin_completeness():
    # a disjoint momentum-bin partition of the evolved joint state carries
    # total probability 1: summing bins over any reading window tiles the POVM
    psi = sample_gaussian(GaussianSpec(center=0.2, width=0.9, momentum=0.3), SYS)
    joint = evolve_joint(psi, CFG, PROBE, ANC)
    g, cg = SYS, SYS.conjugate()
    k = np.arange(g.n)
    pre = np.exp(-1j * cg.lo * k * g.step)
    post = np.exp(-1j * cg.points * g.lo)
    tilde = (g.step / np.sqrt(2 * np.pi)) * post[:, None] * np.fft.fft(
        joint.amp * pre[:, None], axis=0
    )
    dens_p = np.abs(tilde) ** 2
    masses = []
    for block in np.array_split(np.arange(g.n), 16):
        # Riemann sum inside each bin so that the bins tile exactly
        per_q = dens_p[block, :].sum(axis=0) * cg.step
        masses.append(float(np.trapezoid(per_q, dx=ANC.step)))
    assert all(m >= 0.0 for m in masses)
    assert sum(masses) == pytest.approx(1.0, abs=1e-3)


def test_exact_state_reduces_to_momentum_slot():
    # q'=0 keeps the pointer ratio at zero regardless of coupling strength
    st = jwm_state_exact(CFG, PROBE, 0.0, SYS)
    gam = momentum_slot_position_rep(PROBE, SYS)
    assert np.abs(st.state.amp - gam.amp).max() < 1e-14
    # gamma -> 0 also collapses onto the momentum slot
    st0 = jwm_state_exact(PointerConfig(gamma=1e-12), PROBE, 2.0, SYS)
    assert np.abs(st0.state.amp - gam.amp).max() < 1e-9


def test_weak_state_slot_coefficient():
    # reading q'=2 at gamma=0.2: coefficient on chi is 0.4*<chi|Gamma> ~ 0.113
    st = jwm_state_weak(CFG, PROBE, 2.0, SYS)
    gam = momentum_slot_position_rep(PROBE, SYS)
    chi = position_slot(PROBE, SYS)
    coeff = inner(chi, WaveFunction := st.state) - inner(chi, gam)
    coeff = complex(coeff) / abs(inner(chi, chi))
    assert coeff.real == pytest.approx(0.4 * 0.2826, abs=2e-3)
    assert abs(coeff.imag) < 1e-12


def test_weak_state_regime_guard():
    with pytest.raises(NotWeak):
        jwm_state_weak(PointerConfig(gamma=0.3), PROBE, 2.0, SYS)
    # 0.29 still allowed
    jwm_state_weak(PointerConfig(gamma=0.29), PROBE, 2.0, SYS)


def test_weak_state_second_order_convergence():
    q = 2.0
    res = []
    for g in (0.2, 0.1, 0.05):
        cfg = PointerConfig(gamma=g)
        exact = jwm_state_exact(cfg, PROBE, q, SYS)
        weak = jwm_state_weak(cfg, PROBE, q, SYS)
        res.append(residual(weak.state.amp, exact.state.amp, SYS) / exact.state.norm())
    assert res[0] / res[1] >= 3.5
    assert res[1] / res[2] >= 3.5


def test_weak_state_overlap_bound():
    for g in (0.1, 0.05):
        cfg = PointerConfig(gamma=g)
        exact = jwm_state_exact(cfg, PROBE, 2.0, SYS).state
        weak = jwm_state_weak(cfg, PROBE, 2.0, SYS).state
        ov = abs(inner(weak, exact)) / (weak.norm() * exact.norm())
        assert ov >= 1.0 - (g / cfg.sigma) ** 2


def test_hermite_series_matches_closed_form():
    grid_q = np.linspace(-4.0, 4.0, 33)
    for ratio in (0.1, 0.25, 0.5):
        cfg = PointerConfig(gamma=ratio, sigma=1.0)
        closed = np.exp(ratio * grid_q - 0.5 * ratio**2) - 1.0
        got = np.array([hermite_series_factor(cfg, q, 60) for q in grid_q])
        assert np.abs(got - closed).max() < 1e-10


def test_hermite_series_first_order():
    cfg = PointerConfig(gamma=0.2)
    assert hermite_series_factor(cfg, 2.0, 1) == pytest.approx(0.4, abs=1e-15)
    assert hermite_series_factor(cfg, -1.0, 1) == pytest.approx(-0.2, abs=1e-15)


def test_probe_validation():
    with pytest.raises(InvalidProbe):
        ProbeConfig(sigma_x=0.0)
    with pytest.raises(InvalidProbe):
        ProbeConfig(sigma_p=-0.1)
    with pytest.raises(InvalidProbe):
        PointerConfig(gamma=-0.2)
    with pytest.raises(InvalidProbe):
        PointerConfig(sigma=0.0)
    # probe narrower than two grid steps is a delta-limit request
    with pytest.raises(InvalidProbe):
        position_slot(ProbeConfig(sigma_x=0.01), Grid1D.centered(256, 12.0))
    with pytest.raises(InvalidProbe):
        momentum_slot_position_rep(ProbeConfig(p_probe=200.0), SYS)


def test_joint_shape_guard():
    with pytest.raises(ValueError):
        JointAmplitude2D(sys_grid=SYS, anc_grid=ANC, amp=np.zeros((3, 3)))
