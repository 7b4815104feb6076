"""Fifth-order WENO reconstruction of split fluxes at cell interfaces.

Classical smoothness indicators and optimal weights (1/10, 6/10, 3/10), with
global Lax-Friedrichs flux splitting f+- = (f(u) +- alpha*u)/2 and
componentwise reconstruction for systems.

Alignment conventions for a padded row of length M (indices are cells of
the padded array):

* interface_flux_row returns hhat[t] for interface (t+2)+1/2, t = 0..M-6
* first_derivative_row returns values for cells i = 3..M-4

so the widest use needs three ghost cells beyond it on each side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL_WEIGHTS = (0.1, 0.6, 0.3)


@dataclass(frozen=True)
class WenoConfig:
    """Reconstruction order is fixed at 5; eps regularizes the smoothness
    indicators and power sharpens the nonlinear weights."""

    eps: float = 1e-6
    power: int = 2

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")


def _candidates_and_betas(fm2, fm1, f0, fp1, fp2):
    q0 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    q1 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    q2 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    b0 = (13.0 / 12.0) * (fm2 - 2.0 * fm1 + f0) ** 2 \
        + 0.25 * (fm2 - 4.0 * fm1 + 3.0 * f0) ** 2
    b1 = (13.0 / 12.0) * (fm1 - 2.0 * f0 + fp1) ** 2 \
        + 0.25 * (fm1 - fp1) ** 2
    b2 = (13.0 / 12.0) * (f0 - 2.0 * fp1 + fp2) ** 2 \
        + 0.25 * (3.0 * f0 - 4.0 * fp1 + fp2) ** 2
    return (q0, q1, q2), (b0, b1, b2)


def _combine(qs, betas, eps, power):
    d0, d1, d2 = OPTIMAL_WEIGHTS
    a0 = d0 / (eps + betas[0]) ** power
    a1 = d1 / (eps + betas[1]) ** power
    a2 = d2 / (eps + betas[2]) ** power
    asum = a0 + a1 + a2
    return (a0 * qs[0] + a1 * qs[1] + a2 * qs[2]) / asum


def _reconstruct_plus(f, eps, power):
    """Left-biased interface values of f; out[i] sits at interface (i+2)+1/2."""
    n = f.shape[0] - 4
    qs, betas = _candidates_and_betas(
        f[0:n], f[1:n + 1], f[2:n + 2], f[3:n + 3], f[4:n + 4]
    )
    return _combine(qs, betas, eps, power)


def nonlinear_weights(fm2, fm1, f0, fp1, fp2, eps=1e-6, power=2):
    """The three normalized stencil weights of the left-biased reconstruction."""
    _, betas = _candidates_and_betas(fm2, fm1, f0, fp1, fp2)
    d = OPTIMAL_WEIGHTS
    a = [d[s] / (eps + betas[s]) ** power for s in range(3)]
    asum = a[0] + a[1] + a[2]
    return np.stack([a[s] / asum for s in range(3)], axis=0)


def weno5_interface_flux(f_plus_window, f_minus_window, eps=1e-6, power=2):
    """Interface flux from five split-flux values on each side.

    f_plus_window holds f+ at cells i-2..i+2 and f_minus_window holds f- at
    cells i-1..i+3; the minus side is the mirror image of the plus side.
    """
    fp = np.asarray(f_plus_window, dtype=float)
    fm = np.asarray(f_minus_window, dtype=float)[::-1]
    hp = _combine(*_candidates_and_betas(fp[0], fp[1], fp[2], fp[3], fp[4]),
                  eps, power)
    hm = _combine(*_candidates_and_betas(fm[0], fm[1], fm[2], fm[3], fm[4]),
                  eps, power)
    return hp + hm


def split_fluxes(u, model, alpha):
    """Global Lax-Friedrichs splitting f+- = (f(u) +- alpha*u)/2."""
    f = model.flux(u)
    return 0.5 * (f + alpha * u), 0.5 * (f - alpha * u)


def interface_flux_row(u, model, alpha, config=WenoConfig()):
    """Reconstructed interface fluxes for a padded row u of shape (M, m).

    Returns hhat of shape (M-5, m); hhat[t] sits at interface (t+2)+1/2.
    """
    fp, fm = split_fluxes(u, model, alpha)
    hp = _reconstruct_plus(fp, config.eps, config.power)
    hm = _reconstruct_plus(fm[::-1], config.eps, config.power)[::-1]
    # hp[i] at s = i+2, hm[j] at s = j+1; overlap on s = 2..M-4
    return hp[:-1] + hm[1:]


def first_derivative_row(u, model, alpha, dx, config=WenoConfig()):
    """Per-cell -d/dx f(u) from differences of reconstructed interface fluxes.

    Returns shape (M-6, m) covering cells 3..M-4 of the padded row.
    """
    if u.shape[0] < 7:
        raise ValueError("row too short for the reconstruction window")
    hhat = interface_flux_row(u, model, alpha, config)
    return -(hhat[1:] - hhat[:-1]) / dx
