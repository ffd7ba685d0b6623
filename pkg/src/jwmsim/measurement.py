"""Weak position coupling with a Gaussian ancilla and the conditional states it induces.

The interaction is U = exp(-i gamma Pi (x') (x) alpha) with Pi a rank-1
projector onto a narrow position slot chi(x') and alpha the ancilla momentum.
Because Pi^2 = Pi the exponential collapses exactly to

    U = 1 (x) 1 + Pi (x) (S_gamma - 1),

where S_gamma translates the ancilla by +gamma.  No series truncation or time
stepping is involved; the ancilla is a known Gaussian, so the shifted branch
is resampled analytically.

The ancilla starts centered at -gamma/2.  A "hit" (system found in the slot)
shifts it to +gamma/2, a "miss" leaves it at -gamma/2, so the two readout
densities are mirror images and their ratio at reading q is
exp(2 gamma q / sigma^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite_e

from .errors import InvalidProbe, NotNormalized, NotWeak
from .grids import (
    GaussianSpec,
    Grid1D,
    WaveFunction1D,
    gaussian_value,
    inner,
    sample_gaussian,
)

__all__ = [
    "PointerConfig",
    "ProbeConfig",
    "JointAmplitude2D",
    "JwmState",
    "WEAK_RATIO_LIMIT",
    "pointer_densities",
    "pointer_weight",
    "evolve_joint",
    "joint_probability",
    "momentum_slot_position_rep",
    "position_slot",
    "jwm_state_exact",
    "jwm_state_weak",
    "hermite_series_factor",
]

# gamma/sigma at and above which the first-order conditional state is refused.
WEAK_RATIO_LIMIT = 0.3


@dataclass(frozen=True)
class PointerConfig:
    """Ancilla pointer: coupling strength gamma and Gaussian width sigma.

    gamma = 0 is allowed and means no coupling at all (the free case several
    identities are anchored on).
    """

    gamma: float = 0.2
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not (np.isfinite(self.gamma) and self.gamma >= 0.0):
            raise InvalidProbe(f"gamma must be >= 0, got {self.gamma}")
        if not (np.isfinite(self.sigma) and self.sigma > 0.0):
            raise InvalidProbe(f"sigma must be > 0, got {self.sigma}")

    @property
    def initial_center(self) -> float:
        return -0.5 * self.gamma

    @property
    def is_weak(self) -> bool:
        return self.gamma / self.sigma < WEAK_RATIO_LIMIT


@dataclass(frozen=True)
class ProbeConfig:
    """Position slot at x_probe (width sigma_x) and momentum slot at p_probe (width sigma_p)."""

    x_probe: float = 0.0
    p_probe: float = 0.0
    sigma_x: float = 0.2
    sigma_p: float = 0.2

    def __post_init__(self) -> None:
        for name in ("sigma_x", "sigma_p"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0.0):
                raise InvalidProbe(f"{name} must be > 0, got {v}")

    @property
    def width_product(self) -> float:
        return self.sigma_x * self.sigma_p


@dataclass
class JointAmplitude2D:
    """System (x) ancilla amplitude array, indexed [system, ancilla]."""

    sys_grid: Grid1D
    anc_grid: Grid1D
    amp: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amp, dtype=np.complex128)
        if amp.shape != (self.sys_grid.n, self.anc_grid.n):
            raise ValueError(
                f"joint amplitude shape {amp.shape} does not match grids "
                f"({self.sys_grid.n}, {self.anc_grid.n})"
            )
        self.amp = amp

    def norm(self) -> float:
        dens = np.abs(self.amp) ** 2
        over_anc = np.trapezoid(dens, dx=self.anc_grid.step, axis=1)
        return float(np.sqrt(np.trapezoid(over_anc, dx=self.sys_grid.step)))


@dataclass
class JwmState:
    """Conditional system state after an ancilla reading, with its scalar weight.

    The (unnormalized) measurement operator is weight * |state><state|, so the
    readout density for input psi is weight * |<state|psi>|^2.
    """

    state: WaveFunction1D
    weight: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.weight) and self.weight >= 0.0):
            raise ValueError(f"weight must be >= 0, got {self.weight}")


def _pointer_spec(cfg: PointerConfig, shifted: bool) -> GaussianSpec:
    center = 0.5 * cfg.gamma if shifted else -0.5 * cfg.gamma
    return GaussianSpec(center=center, width=cfg.sigma)


def pointer_densities(cfg: PointerConfig, grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    """Readout densities (hit, miss) on the ancilla grid.

    hit:  |phi(q - gamma/2)|^2, the pointer translated to +gamma/2;
    miss: |phi(q + gamma/2)|^2, the pointer left at -gamma/2.
    Their ratio at reading q is exp(2 gamma q / sigma^2); the corresponding
    amplitude ratio is exp(gamma q / sigma^2).
    """
    hit = np.abs(gaussian_value(_pointer_spec(cfg, shifted=True), grid.points)) ** 2
    miss = np.abs(gaussian_value(_pointer_spec(cfg, shifted=False), grid.points)) ** 2
    return hit, miss


def pointer_weight(cfg: PointerConfig, q_reading: float) -> float:
    """|phi(q')|^2 for the uncentered pointer Gaussian: the trial weight of reading q'.

    This is the rarity factor that multiplies the first-order conditional
    state; at gamma -> 0 the centered hit/miss densities both collapse onto it.
    """
    amp = gaussian_value(GaussianSpec(center=0.0, width=cfg.sigma), q_reading)
    return float(np.abs(amp) ** 2)


def position_slot(probe: ProbeConfig, grid: Grid1D) -> WaveFunction1D:
    """Normalized slot state chi centered at x_probe with width sigma_x.

    Rejects slots narrower than 1.5 grid steps: Gaussian quadrature is still
    spectrally accurate there, but anything closer to the delta limit is not
    representable on the grid.
    """
    if probe.sigma_x < 1.5 * grid.step:
        raise InvalidProbe(
            f"sigma_x={probe.sigma_x} under grid resolution {grid.step:g}; "
            "delta-limit probes are not representable"
        )
    return sample_gaussian(GaussianSpec(center=probe.x_probe, width=probe.sigma_x), grid)


def momentum_slot_position_rep(probe: ProbeConfig, grid: Grid1D) -> WaveFunction1D:
    """Momentum slot Gamma(p_probe) written in position representation.

    A momentum-space Gaussian of width sigma_p centered at p_probe transforms
    to a width 1/sigma_p envelope at the origin carrying an exp(i p_probe x)
    phase.  The envelope is usually much wider than the grid; that is fine for
    overlap integrals against localized states, so the support check is waived.
    """
    if abs(probe.p_probe) > 0.5 * np.pi / grid.step:
        raise InvalidProbe(f"p_probe={probe.p_probe} beyond half the grid bandwidth")
    spec = GaussianSpec(center=0.0, width=1.0 / probe.sigma_p, momentum=probe.p_probe)
    return sample_gaussian(spec, grid, require_support=False)


def evolve_joint(
    psi: WaveFunction1D,
    cfg: PointerConfig,
    probe: ProbeConfig,
    anc_grid: Grid1D | None = None,
) -> JointAmplitude2D:
    """Apply U to psi (x) phi exactly via the rank-1 projector identity.

    Psi(x, q) = psi(x) phi(q) + <chi|psi> chi(x) [phi(q - gamma) - phi(q)],
    with phi the initial (-gamma/2 centered) pointer; the shifted branch is an
    analytically resampled Gaussian, so the evolution is unitary for any gamma.
    """
    if not psi.normalized:
        raise NotNormalized(f"input state norm {psi.norm():.3e} != 1")
    if anc_grid is None:
        anc_grid = Grid1D.centered(512, 0.5 * cfg.gamma + 8.0 * cfg.sigma)
    chi = position_slot(probe, psi.grid)
    phi = sample_gaussian(_pointer_spec(cfg, shifted=False), anc_grid)
    phi_shift = sample_gaussian(_pointer_spec(cfg, shifted=True), anc_grid)
    c = inner(chi, psi)
    amp = np.outer(psi.amp, phi.amp) + c * np.outer(chi.amp, phi_shift.amp - phi.amp)
    return JointAmplitude2D(sys_grid=psi.grid, anc_grid=anc_grid, amp=amp)


def joint_probability(
    joint: JointAmplitude2D,
    q_reading: float,
    p_probe: float,
    probe: ProbeConfig,
) -> float:
    """Density of (ancilla reading q', momentum slot p') from the evolved joint state.

    Projects the system register onto Gamma(p') column by column and reads the
    resulting ancilla density at the grid point nearest q_reading.
    """
    probe_p = ProbeConfig(
        x_probe=probe.x_probe, p_probe=p_probe, sigma_x=probe.sigma_x, sigma_p=probe.sigma_p
    )
    g = momentum_slot_position_rep(probe_p, joint.sys_grid)
    anc_amp = np.trapezoid(
        np.conj(g.amp)[:, None] * joint.amp, dx=joint.sys_grid.step, axis=0
    )
    k = joint.anc_grid.index_of(q_reading)
    return float(np.abs(anc_amp[k]) ** 2)


def _slot_pair(probe: ProbeConfig, grid: Grid1D) -> tuple[WaveFunction1D, WaveFunction1D, complex]:
    chi = position_slot(probe, grid)
    gam = momentum_slot_position_rep(probe, grid)
    return chi, gam, inner(chi, gam)


def jwm_state_exact(
    cfg: PointerConfig, probe: ProbeConfig, q_reading: float, grid: Grid1D
) -> JwmState:
    """Exact conditional state for reading q', any coupling strength.

    |state> = |Gamma(p')> + R(q') <chi|Gamma> |chi(x')>, where the pointer
    ratio R(q') = phi(q'-gamma/2)/phi(q'+gamma/2) - 1 = exp(gamma q'/sigma^2) - 1
    is exact for Gaussian pointers.  weight = |phi(q'+gamma/2)|^2 (the miss
    branch amplitude squared), chosen so that
    weight * |<state|psi>|^2 reproduces the full joint simulation identically.
    """
    chi, gam, c = _slot_pair(probe, grid)
    ratio = float(np.exp(cfg.gamma * q_reading / cfg.sigma**2))
    amp = gam.amp + (ratio - 1.0) * c * chi.amp
    weight = float(
        np.abs(gaussian_value(_pointer_spec(cfg, shifted=False), q_reading)) ** 2
    )
    return JwmState(state=WaveFunction1D(grid=grid, amp=amp), weight=weight)


def jwm_state_weak(
    cfg: PointerConfig, probe: ProbeConfig, q_reading: float, grid: Grid1D
) -> JwmState:
    """First-order conditional state, valid for gamma/sigma < WEAK_RATIO_LIMIT.

    |state> = |Gamma(p')> + P(q') <chi|Gamma> |chi(x')> with the weak
    predictability P(q') = gamma q'/sigma^2; weight is the uncentered pointer
    density |phi(q')|^2.  Raises NotWeak outside the regime.
    """
    if not cfg.is_weak:
        raise NotWeak(
            f"gamma/sigma = {cfg.gamma / cfg.sigma:g} >= {WEAK_RATIO_LIMIT}; "
            "use jwm_state_exact"
        )
    chi, gam, c = _slot_pair(probe, grid)
    p_weak = cfg.gamma * q_reading / cfg.sigma**2
    amp = gam.amp + p_weak * c * chi.amp
    return JwmState(state=WaveFunction1D(grid=grid, amp=amp), weight=pointer_weight(cfg, q_reading))


def hermite_series_factor(cfg: PointerConfig, q_reading: float, n_max: int) -> float:
    """Partial sum of the pointer shift series in probabilists' Hermite polynomials.

    sum_{n=1..n_max} (gamma/sigma)^n He_n(q'/sigma) / n!, which converges to
    exp(gamma q'/sigma^2 - gamma^2/(2 sigma^2)) - 1: the relative amplitude
    change an uncentered pointer picks up when translated by gamma.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    t = cfg.gamma / cfg.sigma
    n = np.arange(1, n_max + 1, dtype=float)
    coeffs = np.zeros(n_max + 1)
    # t^n/n! built incrementally to stay finite for large n_max
    coeffs[1:] = np.cumprod(t / n)
    return float(hermite_e.hermeval(q_reading / cfg.sigma, coeffs))
