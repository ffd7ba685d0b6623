"""Wigner fields, closed-form phase-space quantities, and pointer readouts.

Wigner convention:  W(x, p) = (1/pi) Integral dy psi(x+y) conj(psi)(x-y) exp(-2 i p y),
which normalizes a pure state to Integral W dx dp = 1 and gives the coherent
state exp(-x^2 - p^2)/pi.  With this scaling the trace rule carries a constant:
Tr[A B] = TRACE_OVERLAP_CONSTANT * Integral W_A W_B dx dp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, NotWeak, OutOfGrid, RegimeViolation
from .grids import (
    GaussianSpec,
    Grid1D,
    WaveFunction1D,
    fourier,
    gaussian_value,
)
from .measurement import (
    PointerConfig,
    ProbeConfig,
    evolve_joint,
    momentum_slot_position_rep,
    pointer_weight,
)

__all__ = [
    "PhaseSpaceField",
    "VariancePair",
    "TRACE_OVERLAP_CONSTANT",
    "DIRAC_NORM",
    "REGIME_WIDTH_PRODUCT",
    "weyl_transform",
    "field_overlap",
    "jwm_wigner_closed",
    "marginals_closed",
    "single_trial_variances",
    "averaged_variances",
    "dirac_distribution",
    "mean_pointer_shift",
]

# Constant in Tr[A B] = c * Integral W_A W_B; fixed by the 1/pi kernel above
# and confirmed empirically by the oracle suite against quadrature overlaps.
TRACE_OVERLAP_CONSTANT = 2.0 * np.pi

# Phase-point sum of psi(x') conj(psi~(p')) exp(-i p' x') over a full lattice
# equals this constant; it is sqrt(2 pi) because the transform kernel carries
# (2 pi)^(-1/2) while the phase-point projector product supplies the rest.
DIRAC_NORM = np.sqrt(2.0 * np.pi)

# sigma_x * sigma_p below which the first-order closed forms are trusted.
REGIME_WIDTH_PRODUCT = 0.25

# gamma/sigma ceiling for the mean-shift readout relation.
SHIFT_READOUT_WEAK_LIMIT = 0.1


@dataclass
class PhaseSpaceField:
    """Real field sampled on an (x, p) product grid, values indexed [x, p].

    imag_residue records the largest imaginary part discarded when the field
    was produced by a numerical transform (0 for analytic fields).
    """

    x_grid: Grid1D
    p_grid: Grid1D
    values: np.ndarray
    imag_residue: float = 0.0

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.x_grid.n, self.p_grid.n):
            raise ValueError(
                f"field shape {vals.shape} does not match grids "
                f"({self.x_grid.n}, {self.p_grid.n})"
            )
        self.values = vals

    def integral(self) -> float:
        over_p = np.trapezoid(self.values, dx=self.p_grid.step, axis=1)
        return float(np.trapezoid(over_p, dx=self.x_grid.step))

    def marginal_x(self) -> np.ndarray:
        return np.trapezoid(self.values, dx=self.p_grid.step, axis=1)

    def marginal_p(self) -> np.ndarray:
        return np.trapezoid(self.values, dx=self.x_grid.step, axis=0)


@dataclass(frozen=True)
class VariancePair:
    """Position and momentum variances of one conditional state."""

    var_x: float
    var_p: float

    @property
    def product(self) -> float:
        return self.var_x * self.var_p


def weyl_transform(
    state: WaveFunction1D, weight: float = 1.0, p_grid: Grid1D | None = None
) -> PhaseSpaceField:
    """Discrete Wigner transform of a sampled state, scaled by weight.

    The y integral runs over the lattice offsets j*dx, so psi(x +/- y) stays on
    grid points (zero outside), and the phase sum is evaluated as a direct
    Fourier matrix product against a target momentum grid.  The kernel
    exp(-2 i p y) sampled at dy = dx only represents |p| <= pi/(2 dx); the
    default p grid fills exactly that band, and grids reaching past it are
    rejected because the field would alias.  Cost is O(n^2 m); intended for
    n <= 1024.  The correlation product is Hermitian in y, so the imaginary
    part is pure roundoff; it is discarded and its maximum recorded in
    imag_residue.
    """
    g = state.grid
    band = 0.5 * np.pi / g.step
    if p_grid is None:
        p_grid = Grid1D.centered(g.n, band)
    elif p_grid.lo < -band * (1 + 1e-12) or p_grid.hi > band * (1 + 1e-12):
        raise OutOfGrid(
            f"momentum grid [{p_grid.lo:g}, {p_grid.hi:g}] exceeds the Wigner "
            f"bandwidth +/-{band:g} of step {g.step:g}"
        )
    n = g.n
    z = np.zeros(3 * n, dtype=np.complex128)
    z[n : 2 * n] = state.amp
    i = np.arange(n)[:, None]
    j = np.arange(-(n - 1), n)[None, :]
    corr = z[i + j + n] * np.conj(z[i - j + n])
    y = j[0] * g.step
    kernel = np.exp(-2j * np.outer(y, p_grid.points))
    vals = (weight * g.step / np.pi) * (corr @ kernel)
    residue = float(np.abs(vals.imag).max())
    return PhaseSpaceField(x_grid=g, p_grid=p_grid, values=vals.real, imag_residue=residue)


def field_overlap(a: PhaseSpaceField, b: PhaseSpaceField) -> float:
    """Integral a*b dx dp over a shared grid."""
    if a.x_grid != b.x_grid or a.p_grid != b.p_grid:
        raise GridMismatch("phase-space fields live on different grids")
    over_p = np.trapezoid(a.values * b.values, dx=a.p_grid.step, axis=1)
    return float(np.trapezoid(over_p, dx=a.x_grid.step))


def _require_regime(probe: ProbeConfig) -> None:
    if probe.width_product >= REGIME_WIDTH_PRODUCT:
        raise RegimeViolation(
            f"sigma_x*sigma_p = {probe.width_product:g} >= {REGIME_WIDTH_PRODUCT}; "
            "closed forms assume narrow slots"
        )


def _weak_predictability(cfg: PointerConfig, q_reading: float) -> float:
    if not cfg.is_weak:
        raise NotWeak(
            f"gamma/sigma = {cfg.gamma / cfg.sigma:g} too strong for the first-order field"
        )
    return cfg.gamma * q_reading / cfg.sigma**2


def jwm_wigner_closed(
    cfg: PointerConfig,
    probe: ProbeConfig,
    q_reading: float,
    x_grid: Grid1D,
    p_grid: Grid1D,
) -> PhaseSpaceField:
    """First-order closed form of the conditional Wigner field, weight included.

    Three pieces: the momentum-slot ridge, the position-slot ridge scaled by
    2 P^2 sx sp, and an interference term 4 P sx sp exp(...) cos(2 u v) that is
    the only source of negativity.  u, v are offsets from the probe point.
    """
    _require_regime(probe)
    p_weak = _weak_predictability(cfg, q_reading)
    sx, sp = probe.sigma_x, probe.sigma_p
    u = (x_grid.points - probe.x_probe)[:, None]
    v = (p_grid.points - probe.p_probe)[None, :]
    ridge_gamma = np.exp(-(u**2 * sp**2) - v**2 / sp**2)
    ridge_chi = np.exp(-(u**2) / sx**2 - v**2 * sx**2)
    fringe = np.exp(-2.0 * u**2 * sp**2 - 2.0 * v**2 * sx**2) * np.cos(2.0 * u * v)
    combo = ridge_gamma + 2.0 * p_weak**2 * sx * sp * ridge_chi + 4.0 * p_weak * sx * sp * fringe
    weight = pointer_weight(cfg, q_reading)
    return PhaseSpaceField(x_grid=x_grid, p_grid=p_grid, values=weight * combo / np.pi)


def marginals_closed(
    cfg: PointerConfig,
    probe: ProbeConfig,
    q_reading: float,
    x_grid: Grid1D,
    p_grid: Grid1D,
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form position and momentum densities of the conditional state.

    Normalized against the trial weight, i.e. these are the densities of the
    first-order conditional state itself.  Each is a slot background plus a
    cosine cross term whose frequency is set by the conjugate probe offset.
    """
    _require_regime(probe)
    p_weak = _weak_predictability(cfg, q_reading)
    sx, sp = probe.sigma_x, probe.sigma_p
    cross_scale = 2.0 * p_weak * np.sqrt(2.0 * sx * sp)

    x = x_grid.points
    gamma_env = np.abs(gaussian_value(GaussianSpec(width=1.0 / sp), x))
    chi_env = np.abs(gaussian_value(GaussianSpec(center=probe.x_probe, width=sx), x))
    px = (
        gamma_env**2
        + 2.0 * sx * sp * p_weak**2 * chi_env**2
        + cross_scale * chi_env * gamma_env * np.cos(probe.p_probe * (x - probe.x_probe))
    )

    p = p_grid.points
    gam_p = np.abs(gaussian_value(GaussianSpec(center=probe.p_probe, width=sp), p))
    chi_p = np.abs(gaussian_value(GaussianSpec(width=1.0 / sx), p))
    pp = (
        gam_p**2
        + 2.0 * sx * sp * p_weak**2 * chi_p**2
        + cross_scale * gam_p * chi_p * np.cos(probe.x_probe * (p - probe.p_probe))
    )
    return px, pp


def single_trial_variances(
    cfg: PointerConfig, probe: ProbeConfig, q_reading: float
) -> VariancePair:
    """Closed-form variances of the conditional state for one reading q'.

    var_x = 1/(2 sp^2) + P^2 sx^3 sp + 4 P sx^3 sp and the momentum partner
    sp^2/2 + P^2 sp/sx + 4 P sp^3 sx, P = gamma q'/sigma^2.  The product is
    >= 1/4 for P >= 0 and saturates it exactly at P = 0.
    """
    _require_regime(probe)
    p_weak = _weak_predictability(cfg, q_reading)
    sx, sp = probe.sigma_x, probe.sigma_p
    var_x = 0.5 / sp**2 + p_weak**2 * sx**3 * sp + 4.0 * p_weak * sx**3 * sp
    var_p = 0.5 * sp**2 + p_weak**2 * sp / sx + 4.0 * p_weak * sp**3 * sx
    return VariancePair(var_x=var_x, var_p=var_p)


def averaged_variances(cfg: PointerConfig, probe: ProbeConfig) -> VariancePair:
    """Reading-averaged excess variances: (2 sx^3 sp, 2 sp^3 sx).

    Averaging q' * var(q') over the uncentered pointer density and dividing by
    gamma kills the constant and P^2 pieces by parity, leaving only the linear
    term; the product 4 sx^4 sp^4 sits far below the single-trial floor of 1/4.
    """
    _require_regime(probe)
    sx, sp = probe.sigma_x, probe.sigma_p
    return VariancePair(var_x=2.0 * sx**3 * sp, var_p=2.0 * sp**3 * sx)


def dirac_distribution(
    psi: WaveFunction1D,
    x_probe: float,
    p_probe: float,
    psi_tilde: WaveFunction1D | None = None,
) -> complex:
    """Phase-point value psi(x') conj(psi~(p')) exp(-i p' x').

    Generally complex; summing over a full phase-space lattice with cell
    weights and dividing by DIRAC_NORM returns 1 for a normalized state.
    Evaluation uses the nearest grid points (OutOfGrid beyond the domain);
    pass a precomputed transform to amortize scans.
    """
    if psi_tilde is None:
        psi_tilde = fourier(psi)
    ix = psi.grid.index_of(x_probe)
    ip = psi_tilde.grid.index_of(p_probe)
    return complex(
        psi.amp[ix] * np.conj(psi_tilde.amp[ip]) * np.exp(-1j * p_probe * x_probe)
    )


def mean_pointer_shift(
    psi: WaveFunction1D,
    cfg: PointerConfig,
    probe: ProbeConfig,
    anc_grid: Grid1D | None = None,
) -> float:
    """Mean ancilla displacement conditioned on the momentum-slot outcome.

    Full-simulation route: evolve the joint state exactly, project the system
    register onto Gamma(p'), and take the unnormalized first moment of the
    ancilla density about the initial pointer center -gamma/2.  In the weak
    regime this equals gamma * Re[<psi|Gamma><Gamma|chi><chi|psi>] up to
    O(gamma^2), which is the phase-point readout the scheme is built around.
    """
    ratio = cfg.gamma / cfg.sigma
    if ratio > SHIFT_READOUT_WEAK_LIMIT:
        raise NotWeak(
            f"gamma/sigma = {ratio:g} > {SHIFT_READOUT_WEAK_LIMIT}; "
            "mean-shift readout is first order only"
        )
    joint = evolve_joint(psi, cfg, probe, anc_grid)
    g = momentum_slot_position_rep(probe, psi.grid)
    anc_amp = np.trapezoid(
        np.conj(g.amp)[:, None] * joint.amp, dx=joint.sys_grid.step, axis=0
    )
    density = np.abs(anc_amp) ** 2
    q = joint.anc_grid.points
    return float(np.trapezoid((q + 0.5 * cfg.gamma) * density, dx=joint.anc_grid.step))
