"""Numerical-differentiation weights on uniform grids.

Three families of weights, all dimensionless (the 1/dx**k scaling happens
at the point of use):

* centered weights: (2p+1)-point stencil j = -p..p for the k-th derivative
  at the center node, exact for polynomials of degree <= 2p.
* off-grid weights: 2p-point stencil j = -p+1..p for the k-th derivative at
  an arbitrary offset q (in grid units), exact for degree <= 2p-1.
* interface weights: the half-offset (q = 1/2) companions of the centered
  family, defined so that first differences across neighboring interfaces
  reproduce the centered (k+1)-derivative weights exactly.  Flux-form
  schemes need this telescoping property; the interpolatory q = 1/2
  weights do not have it, so requests for q = 1/2 return these instead.

Everything is generated once in exact rational arithmetic (the defining
linear systems are badly conditioned in floating point) and cached in a
CoefficientTable of float arrays for the kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

HALF = Fraction(1, 2)


def _build_centered_half(max_p):
    """Exact centered weights for j = 0..p, all k = 0..2p, all p <= max_p.

    Grown in increasing p from the single-node table: interior nodes via
    the quadratic-factor recursion on the Lagrange basis, the edge node
    via its own recursion, never by solving the Vandermonde system.
    """
    half = {0: [[Fraction(1)]]}  # half[p][k][j], j = 0..p
    for p in range(1, max_p + 1):
        prev = half[p - 1]

        def dprev(k, j):
            if k < 0 or k > 2 * (p - 1) or j > p - 1:
                return Fraction(0)
            return prev[k][j]

        cur = []
        for k in range(2 * p + 1):
            row = [
                (p * p * dprev(k, j) - k * (k - 1) * dprev(k - 2, j))
                / (p * p - j * j)
                for j in range(p)
            ]
            row.append(
                (
                    k * (k - 1) * dprev(k - 2, p - 1)
                    + k * dprev(k - 1, p - 1)
                    - p * (p - 1) * dprev(k, p - 1)
                )
                / (2 * p * (2 * p - 1))
            )
            cur.append(row)
        half[p] = cur
    return half


@lru_cache(maxsize=None)
def _centered_exact(p, k):
    """Exact centered weights for j = -p..p (negative j by reflection)."""
    half = _build_centered_half(p)[p][k]
    sign = -1 if k % 2 else 1
    return tuple(sign * half[-j] for j in range(-p, 0)) + tuple(half)


def _fornberg_exact(nodes, x0, max_k):
    """Exact weights for derivatives 0..max_k at x0 from arbitrary nodes.

    One-pass recursion over nodes; all quantities are Fractions.
    Returns w[k][i] for node i.
    """
    n = len(nodes)
    w = [[Fraction(0)] * n for _ in range(max_k + 1)]
    w[0][0] = Fraction(1)
    c1 = Fraction(1)
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, max_k)
        c2 = Fraction(1)
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k][i] = c1 * (k * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2
            for k in range(mn, 0, -1):
                w[k][j] = (c4 * w[k][j] - k * w[k - 1][j]) / c3
            w[0][j] = c4 * w[0][j] / c3
        c1 = c2
    return w


@lru_cache(maxsize=None)
def _offgrid_exact_all(p, q):
    """Exact interpolatory off-grid weights, all k = 0..2p-1, at offset q."""
    nodes = tuple(Fraction(j) for j in range(-p + 1, p + 1))
    w = _fornberg_exact(nodes, Fraction(q), 2 * p - 1)
    return tuple(tuple(row) for row in w)


@lru_cache(maxsize=None)
def _interface_exact(p, k):
    """Exact interface (q = 1/2) weights for the k-th derivative.

    Built by partial summation of the centered (k+1)-derivative weights:
    g[p] = d[p], g[j] = d[j] + g[j+1], which makes
    d[j] = g[j] - g[j+1] hold by construction.
    """
    d = _centered_exact(p, k + 1)  # indexed j = -p..p
    g = [Fraction(0)] * (2 * p)  # indexed j = -p+1..p
    g[-1] = d[-1]
    for idx in range(2 * p - 2, -1, -1):
        g[idx] = d[idx + 1] + g[idx + 1]
    assert d[0] == -g[0], "telescoping closure failed"
    return tuple(g)


@dataclass(frozen=True, eq=False)
class CenteredWeights:
    """Weights for the k-th derivative on the stencil j = -p..p."""

    p: int
    k: int
    exact: tuple
    values: np.ndarray = field(repr=False)

    @property
    def offsets(self):
        return np.arange(-self.p, self.p + 1)


@dataclass(frozen=True, eq=False)
class OffgridWeights:
    """Weights for the k-th derivative at offset q on the stencil j = -p+1..p."""

    p: int
    k: int
    q: Fraction
    exact: tuple
    values: np.ndarray = field(repr=False)

    @property
    def offsets(self):
        return np.arange(-self.p + 1, self.p + 1)


def centered_coeffs(p, k):
    """Centered (2p+1)-point weights for the k-th derivative, 0 <= k <= 2p."""
    if p < 1:
        raise ValueError(f"stencil half-width must be >= 1, got p={p}")
    if not 0 <= k <= 2 * p:
        raise ValueError(f"derivative order k={k} out of range 0..{2 * p} for p={p}")
    exact = _centered_exact(p, k)
    return CenteredWeights(p, k, exact, np.array([float(w) for w in exact]))


def offgrid_coeffs(p, k, q):
    """2p-point weights for the k-th derivative at offset q, 0 <= k <= 2p-1.

    Integer and generic rational offsets give the interpolatory weights;
    q = 1/2 gives the interface companions (see module docstring).
    """
    if p < 1:
        raise ValueError(f"stencil half-width must be >= 1, got p={p}")
    if not 0 <= k <= 2 * p - 1:
        raise ValueError(f"derivative order k={k} out of range 0..{2 * p - 1} for p={p}")
    q = Fraction(q)
    if q == HALF:
        exact = _interface_exact(p, k)
    else:
        exact = _offgrid_exact_all(p, q)[k]
    return OffgridWeights(p, k, q, exact, np.array([float(w) for w in exact]))


def interface_coeffs(p, k):
    """Interface (q = 1/2) weights for the k-th derivative."""
    return offgrid_coeffs(p, k, HALF)


def formula_order(p, k):
    """Order of accuracy of the centered k-th derivative formula, 1 <= k <= 2p."""
    if p < 1:
        raise ValueError(f"stencil half-width must be >= 1, got p={p}")
    if not 1 <= k <= 2 * p:
        raise ValueError(f"derivative order k={k} out of range 1..{2 * p} for p={p}")
    alpha = 2 * p + 1 if k % 2 else 2 * p + 2
    return alpha - k


class CoefficientTable:
    """Precomputed weight tables for all half-widths up to max_p.

    Immutable after construction; schemes read float arrays out of it and
    never recompute weights per cell.  deriv1_matrix(p) stacks the
    first-derivative weights at every integer offset of the 2p-point
    stencil into one (2p, 2p) matrix for the local recursion kernels.
    """

    def __init__(self, max_p=6):
        if max_p < 1:
            raise ValueError("max_p must be >= 1")
        self.max_p = max_p
        self.centered_weights = {}
        self.offgrid_weights = {}
        self._deriv1 = {}
        for p in range(1, max_p + 1):
            for k in range(2 * p + 1):
                self.centered_weights[(p, k)] = centered_coeffs(p, k)
            for k in range(2 * p):
                for q in [Fraction(j) for j in range(-p + 1, p + 1)] + [HALF]:
                    self.offgrid_weights[(p, k, q)] = offgrid_coeffs(p, k, q)
            self._deriv1[p] = np.stack(
                [self.offgrid_weights[(p, 1, Fraction(j))].values
                 for j in range(-p + 1, p + 1)]
            )

    def _check_p(self, p):
        if not 1 <= p <= self.max_p:
            raise ValueError(f"p={p} outside table range 1..{self.max_p}")

    def centered(self, p, k):
        self._check_p(p)
        return self.centered_weights[(p, k)].values

    def offgrid(self, p, k, q):
        self._check_p(p)
        q = Fraction(q)
        try:
            return self.offgrid_weights[(p, k, q)].values
        except KeyError:
            return offgrid_coeffs(p, k, q).values

    def interface(self, p, k):
        """gamma(k, 1/2) as a float array, j = -p+1..p."""
        return self.offgrid(p, k, HALF)

    def time_weights(self, p, k):
        """gamma(k, 0) as a float array; used for one-sided time stencils."""
        return self.offgrid(p, k, 0)

    def deriv1_matrix(self, p):
        """Matrix G with G[j, r] = first-derivative weight at offset j for node r."""
        self._check_p(p)
        return self._deriv1[p]


@lru_cache(maxsize=None)
def get_table(max_p=6):
    """Process-wide shared CoefficientTable (construction is cheap but not free)."""
    return CoefficientTable(max_p)
