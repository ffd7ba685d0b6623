"""Retrodictive certainty of the pointer readout and its trial average.

A reading q' updates the 50/50 prior on whether the system occupied the
probed position slot.  The certainty of that retrodiction, relative to a
blind guess, is the ratio of the shifted and unshifted pointer densities at
q'; for Gaussian pointers it collapses to tanh(gamma q'/sigma^2), which the
tests use as an independent oracle.  Averaging |certainty| over readings
weighted by the outcome density gives the per-trial disturbance scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, QuadratureDivergence
from .grids import GaussianSpec, gaussian_value
from .measurement import PointerConfig

__all__ = [
    "PredictabilityCurve",
    "predictability_exact",
    "predictability_weak",
    "predictability_curve",
    "average_predictability",
    "visibility_bound",
]


@dataclass
class PredictabilityCurve:
    """Readings with their certainty values, tagged with the pointer setup."""

    q_values: np.ndarray
    p_values: np.ndarray
    cfg: PointerConfig

    def __post_init__(self):
        self.q_values = np.asarray(self.q_values, dtype=float)
        self.p_values = np.asarray(self.p_values, dtype=float)
        if self.q_values.shape != self.p_values.shape:
            raise DomainError("q_values and p_values must align")
        if np.any(np.abs(self.p_values) > 1.0 + 1e-12):
            raise DomainError("certainty values must stay in [-1, 1]")


def predictability_exact(cfg: PointerConfig, q_reading):
    """Certainty of the slot retrodiction from the two pointer densities.

    (hit - miss)/(hit + miss) with the common Gaussian scale factored out, so
    far-tail readings saturate at +/-1 instead of underflowing to 0/0.
    """
    q = np.asarray(q_reading, dtype=float)
    a = -((q - 0.5 * cfg.gamma) ** 2) / cfg.sigma**2
    b = -((q + 0.5 * cfg.gamma) ** 2) / cfg.sigma**2
    top = np.maximum(a, b)
    hit = np.exp(a - top)
    miss = np.exp(b - top)
    res = (hit - miss) / (hit + miss)
    return float(res) if np.ndim(res) == 0 else res


def predictability_weak(cfg: PointerConfig, q_reading):
    """First-order certainty gamma q'/sigma^2; caller checks the regime."""
    q = np.asarray(q_reading, dtype=float)
    res = cfg.gamma * q / cfg.sigma**2
    return float(res) if np.ndim(res) == 0 else res


def predictability_curve(
    cfg: PointerConfig, q_values, *, weak: bool = False
) -> PredictabilityCurve:
    """Evaluate the exact (or first-order) certainty on an array of readings."""
    fn = predictability_weak if weak else predictability_exact
    return PredictabilityCurve(
        q_values=np.asarray(q_values, dtype=float), p_values=fn(cfg, q_values), cfg=cfg
    )


def average_predictability(cfg: PointerConfig) -> float:
    """Mean |certainty| over readings, weighted by the total outcome density.

    The weight is the even mixture of the hit and miss densities, so the
    integrand is even; quadrature runs over +/-(gamma/2 + 8 sigma) with a
    breakpoint at the |.| kink.  Tends to gamma/(sigma sqrt(pi)) for weak
    coupling and to 1 for strong coupling.
    """
    if cfg.gamma == 0.0:
        return 0.0
    hit_spec = GaussianSpec(center=0.5 * cfg.gamma, width=cfg.sigma)
    miss_spec = GaussianSpec(center=-0.5 * cfg.gamma, width=cfg.sigma)

    def integrand(q):
        dh = np.abs(gaussian_value(hit_spec, q)) ** 2
        dm = np.abs(gaussian_value(miss_spec, q)) ** 2
        return abs(predictability_exact(cfg, q)) * 0.5 * (dh + dm)

    hi = 0.5 * cfg.gamma + 8.0 * cfg.sigma
    val, err = quad(integrand, -hi, hi, limit=400, points=[0.0])
    if not np.isfinite(val) or err > 1e-8 * max(abs(val), 1.0):
        raise QuadratureDivergence(f"average certainty quadrature error {err:g}")
    return float(val)


def visibility_bound(p: float) -> float:
    """Largest fringe contrast compatible with certainty p: sqrt(1 - p^2)."""
    if abs(p) > 1.0:
        raise DomainError(f"certainty {p} outside [-1, 1]")
    return float(np.sqrt(1.0 - p * p))
