"""Modified-equation polynomials and the linear L2 stability test.

The leading dispersive and dissipative error terms of the order-2p
one-step scheme are governed by two polynomials in the Courant number c:

    h1(c) = q(c) - c**(2p+1),   q interpolating (j, j**(2p+1)), j = -p..p
    h2(c) = r(c) - c**(2p+2),   r interpolating (j, j**(2p+2))

The scheme is linearly stable when the dissipation carries the right
sign, i.e. (-1)**p * h2(c) <= 0, which holds on 0 <= c <= 1.
"""

from __future__ import annotations

import math

import numpy as np


def _interp_value(p, power, c):
    """Barycentric Lagrange evaluation of the degree-<=2p interpolant
    through (j, j**power), j = -p..p."""
    c = np.asarray(c, dtype=float)
    nodes = np.arange(-p, p + 1)
    vals = nodes.astype(float) ** power
    # w_j = (-1)**(p-j) / ((p+j)! (p-j)!), common factors dropped
    bary = np.array(
        [(-1.0) ** (p - j) / (math.factorial(p + j) * math.factorial(p - j))
         for j in nodes]
    )
    diff = c[..., None] - nodes
    exact = np.isclose(diff, 0.0, rtol=0.0, atol=1e-14)
    safe = np.where(exact, 1.0, diff)
    terms = bary / safe
    num = np.sum(terms * vals, axis=-1)
    den = np.sum(terms, axis=-1)
    out = num / den
    hit = exact.any(axis=-1)
    if np.any(hit):
        node_val = np.sum(np.where(exact, vals, 0.0), axis=-1)
        out = np.where(hit, node_val, out)
    return out if out.ndim else float(out)


def h1(p, c):
    """Leading dispersive-error polynomial at Courant number c."""
    if p < 1:
        raise ValueError("p must be >= 1")
    c = np.asarray(c, dtype=float)
    out = _interp_value(p, 2 * p + 1, c) - c ** (2 * p + 1)
    return out if np.ndim(out) else float(out)


def h2(p, c):
    """Leading dissipative-error polynomial at Courant number c."""
    if p < 1:
        raise ValueError("p must be >= 1")
    c = np.asarray(c, dtype=float)
    out = _interp_value(p, 2 * p + 2, c) - c ** (2 * p + 2)
    return out if np.ndim(out) else float(out)


def linearly_stable(p, c, tol=1e-9):
    """True where the dissipation sign condition (-1)**p * h2(c) <= tol holds.

    tol absorbs roundoff at the roots c = 0, 1, .., p.
    """
    val = (-1.0) ** p * np.asarray(h2(p, c))
    out = val <= tol
    return out if out.ndim else bool(out)


def h2_samples(p_values, c_values):
    """Sample h2 for several p at the given Courant numbers.

    Returns an array of shape (len(c_values), len(p_values)); used by the
    CLI to dump the stability curves as CSV.
    """
    c_values = np.asarray(c_values, dtype=float)
    return np.stack([np.asarray(h2(p, c_values)) for p in p_values], axis=-1)
