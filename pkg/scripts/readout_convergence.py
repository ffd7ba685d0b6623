"""Convergence study for the phase-point readout.

Sweeps the coupling strength and slot width and prints the worst relative
error of the simulated mean pointer shift against the closed overlap product
on a 3x3 probe lattice.  Error should fall ~4x per coupling halving and ~4x
per width halving (both second order).

Usage:
    python scripts/readout_convergence.py
"""

import numpy as np

from jwmsim.grids import GaussianSpec, Grid1D, sample_gaussian
from jwmsim.measurement import PointerConfig, ProbeConfig
from jwmsim.oracle import gaussian_overlap
from jwmsim.phase_space import mean_pointer_shift


def lattice_worst(psi, spec, gamma, slot_width):
    cfg = PointerConfig(gamma=gamma, sigma=1.0)
    worst = 0.0
    for xp in (-1.0, 0.0, 1.0):
        for pp in (-1.0, 0.0, 1.0):
            probe = ProbeConfig(x_probe=xp, p_probe=pp, sigma_x=slot_width, sigma_p=slot_width)
            chi = GaussianSpec(center=xp, width=slot_width)
            gam = GaussianSpec(width=1.0 / slot_width, momentum=pp)
            pred = gamma * (
                gaussian_overlap(spec, gam) * gaussian_overlap(gam, chi) * gaussian_overlap(chi, spec)
            ).real
            obs = mean_pointer_shift(psi, cfg, probe)
            worst = max(worst, abs(obs - pred) / abs(pred))
    return worst


def main():
    grid = Grid1D.centered(4096, 64.0)
    spec = GaussianSpec()
    psi = sample_gaussian(spec, grid)

    print("coupling sweep (slot width 0.1):")
    prev = None
    for gamma in (0.1, 0.05, 0.025):
        w = lattice_worst(psi, spec, gamma, 0.1)
        ratio = "" if prev is None else f"  ratio {prev / w:.2f}"
        print(f"  gamma={gamma:<6g} worst rel err {w:.3e}{ratio}")
        prev = w

    print("slot width sweep (gamma 0.05), error vs the delta-limit phase point:")
    prev = None
    for sw in (0.2, 0.1, 0.05):
        cfg = PointerConfig(gamma=0.05, sigma=1.0)
        scale = 2.0 * np.sqrt(2.0 * np.pi) * sw * sw
        worst = 0.0
        for xp in (-1.0, 0.0, 1.0):
            for pp in (-1.0, 0.0, 1.0):
                probe = ProbeConfig(x_probe=xp, p_probe=pp, sigma_x=sw, sigma_p=sw)
                obs = mean_pointer_shift(psi, cfg, probe)
                point = np.exp(-0.5 * (xp**2 + pp**2)) * np.cos(xp * pp) / np.sqrt(np.pi)
                worst = max(worst, abs(obs - cfg.gamma * scale * point) / (cfg.gamma * scale))
        ratio = "" if prev is None else f"  ratio {prev / worst:.2f}"
        print(f"  width={sw:<5g} worst err {worst:.3e}{ratio}")
        prev = worst


if __name__ == "__main__":
    main()
