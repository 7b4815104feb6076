"""Interface-flux builders and single-step updates.

All schemes are conservative: a step computes numerical fluxes F at the
n+1 interfaces of the interior cells and applies

    u_new[i] = u[i] - (dt/dx) * (F[i+1] - F[i]).

Rows handed to the flux kernels are ghost-padded arrays of shape (M, m);
interior cells occupy [g, g+n) where g is the ghost width.  Interface f
(f = 0..n) sits between padded cells g-1+f and g+f.

Scheme family:

* LW        order-2p one-step scheme for linear advection, flux form
* AT        approximate Taylor scheme with global derivative estimates
* CAT       compact approximate Taylor scheme, local per-interface
            Taylor recursion on a 2p-point window
* FL-CAT    CAT blended with a robust first-order flux by the van Albada
            limiter
* WENO-CAT  CAT with the first time derivative taken from WENO-
            reconstructed flux differences
* WENO-RK3  WENO5 semi-discretization advanced by three-stage TVD-RK
"""

from __future__ import annotations

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import weno as weno_mod
from .fd_coeffs import get_table
from .models import Advection, StateError, max_wave_speed
from .weno import WenoConfig

LIMITER_TINY = 1e-12


def _as_rows(u):
    """Normalize a state row to shape (M, m)."""
    u = np.asarray(u, dtype=float)
    return u[:, None] if u.ndim == 1 else u


def _resolve_table(table, p):
    if table is not None:
        return table
    return get_table(max(6, p))


def _windows(up, width):
    """All sliding windows of the padded row; shape (M-width+1, width, m)."""
    return sliding_window_view(up, width, axis=0).transpose(0, 2, 1)


def _flux_at_faces(model, states, face_base=0, extrapolated=False):
    """Model flux evaluation that tags state errors with the interface index."""
    try:
        if extrapolated:
            return model.flux_extrapolated(states)
        return model.flux(states)
    except StateError as err:
        face = None if err.where is None else face_base + err.where[0]
        raise StateError(f"{err} at interface {face}", err.where) from err


def van_albada_phi(r):
    """Second van Albada limiter max(0, 2r / (1 + r**2))."""
    r = np.asarray(r, dtype=float)
    out = np.maximum(0.0, 2.0 * r / (1.0 + r * r))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# linear Lax-Wendroff (order 2p)

def _lw_combined_weights(a, dt, dx, p, table):
    """Interface weights of all 2p Taylor terms folded into one dot product."""
    w = np.zeros(2 * p)
    for k in range(1, 2 * p + 1):
        coef = (-1.0) ** (k - 1) * a ** k * dt ** (k - 1) \
            / (math.factorial(k) * dx ** (k - 1))
        w += coef * table.interface(p, k - 1)
    return w


def lw_linear_flux(window, a, dt, dx, p, table=None):
    """Interface flux of the order-2p linear scheme from one 2p-point window."""
    table = _resolve_table(table, p)
    window = np.asarray(window, dtype=float)
    if window.shape[0] != 2 * p:
        raise ValueError(f"window must hold 2p={2 * p} values")
    return float(window @ _lw_combined_weights(a, dt, dx, p, table))


def lw_fluxes(up, n, a, dt, dx, p, table=None):
    """All n+1 interface fluxes of the linear scheme for a padded scalar row."""
    table = _resolve_table(table, p)
    up = _as_rows(up)
    g = (up.shape[0] - n) // 2
    if g < p:
        raise ValueError(f"ghost width {g} < stencil half-width {p}")
    win = _windows(up, 2 * p)[g - p:g - p + n + 1]
    w = _lw_combined_weights(a, dt, dx, p, table)
    return np.einsum("j,ijm->im", w, win)


# ---------------------------------------------------------------------------
# compact approximate Taylor

def _cat_core(W, model, dt, dx, p, table, ut1=None, flux0=None, face_base=0):
    """Local Taylor recursion shared by CAT and WENO-CAT.

    W holds the 2p-point state windows, one per interface, shape
    (n_faces, 2p, m).  Time derivatives of the flux are built level by
    level: differentiate the previous level in space on the window,
    advance local Taylor states to the 2p one-sided time offsets,
    evaluate the flux there and differentiate in time.  Each level adds
    its Taylor term to the interface flux.

    ut1 overrides the first-derivative stage (WENO-CAT); flux0 overrides
    the leading flux term (WENO-CAT starts from the reconstructed flux).
    """
    n_faces, width, m = W.shape
    ghalf = table.interface(p, 0)
    deriv1 = table.deriv1_matrix(p)
    rvals = np.arange(-p + 1, p + 1, dtype=float)

    ft = _flux_at_faces(model, W, face_base)
    if flux0 is None:
        flux = np.einsum("j,ijm->im", ghalf, ft)
    else:
        flux = flux0.copy()
    taylor = np.zeros((n_faces, width, width, m))
    for k in range(1, 2 * p):
        if k == 1 and ut1 is not None:
            ut = ut1
        else:
            ut = -np.einsum("jr,irm->ijm", deriv1, ft) / dx
        coef = (rvals * dt) ** k / math.factorial(k)
        taylor += ut[:, :, None, :] * coef[None, None, :, None]
        states = W[:, :, None, :] + taylor
        fst = _flux_at_faces(model, states, face_base, extrapolated=True)
        ft = np.einsum("r,ijrm->ijm", table.time_weights(p, k), fst) / dt ** k
        flux += dt ** k / math.factorial(k + 1) \
            * np.einsum("j,ijm->im", ghalf, ft)
    return flux


def cat_fluxes(up, n, model, dt, dx, p, table=None):
    """All n+1 CAT interface fluxes for a padded row."""
    table = _resolve_table(table, p)
    up = _as_rows(up)
    g = (up.shape[0] - n) // 2
    if g < p:
        raise ValueError(f"ghost width {g} < stencil half-width {p}")
    W = _windows(up, 2 * p)[g - p:g - p + n + 1]
    return _cat_core(W, model, dt, dx, p, table)


def cat_flux(window, model, dt, dx, p, table=None):
    """CAT interface flux from a single 2p-point window of states."""
    table = _resolve_table(table, p)
    win = np.asarray(window, dtype=float)
    scalar_in = win.ndim == 1
    win = _as_rows(win)
    if win.shape[0] != 2 * p:
        raise ValueError(f"window must hold 2p={2 * p} states")
    out = _cat_core(win[None], model, dt, dx, p, table)[0]
    return float(out[0]) if scalar_in else out


# ---------------------------------------------------------------------------
# approximate Taylor (global derivative estimates)

def at_half_widths(p):
    """Shrinking stencil half-widths p_k = ceil(p - k/2), k = 0..2p-1."""
    return [p - k // 2 for k in range(2 * p)]


def at_required_ghost(p):
    """Ghost width needed by the AT flux; grows beyond 2p for p >= 2."""
    widths = at_half_widths(p)
    need, reach = 0, 0
    for k in range(1, 2 * p + 1):
        need = max(need, widths[k - 1] + reach)
        if k < 2 * p:
            reach += widths[k - 1]
    return need


def _centered_apply(arr, w):
    """Correlate arr with a centered stencil w; output shrinks by len(w)-1."""
    half = (len(w) - 1) // 2
    n_out = arr.shape[0] - 2 * half
    out = w[0] * arr[0:n_out]
    for j in range(1, len(w)):
        out = out + w[j] * arr[j:j + n_out]
    return out


def at_fluxes(up, n, model, dt, dx, p, table=None):
    """All n+1 AT interface fluxes for a padded row.

    Unlike CAT, the time-derivative estimates are global arrays: first
    derivatives in space use centered stencils whose half-width shrinks
    with the level, and time differentiation uses the full centered
    stencil over offsets -p..p.
    """
    table = _resolve_table(table, p)
    up = _as_rows(up)
    M, m = up.shape
    g = (M - n) // 2
    need = at_required_ghost(p)
    if g < need:
        raise ValueError(f"ghost width {g} < required {need} for AT with p={p}")
    widths = at_half_widths(p)
    rvals = np.arange(-p, p + 1, dtype=float)

    ft = model.flux(up)
    valid = 0  # symmetric count of invalidated cells at each end
    taylor = np.zeros((M, 2 * p + 1, m))
    flux = np.zeros((n + 1, m))
    for k in range(1, 2 * p + 1):
        pk = widths[k - 1]
        w_half = table.interface(pk, 0)
        base = g - pk
        win = _windows(ft, 2 * pk)[base:base + n + 1]
        flux += dt ** (k - 1) / math.factorial(k) \
            * np.einsum("j,ijm->im", w_half, win)
        if k == 2 * p:
            break
        ut = np.zeros_like(ft)
        ut[valid + pk:M - valid - pk] = \
            -_centered_apply(ft[valid:M - valid], table.centered(pk, 1)) / dx
        valid += pk
        coef = (rvals * dt) ** k / math.factorial(k)
        taylor += ut[:, None, :] * coef[None, :, None]
        states = up[valid:M - valid, None, :] + taylor[valid:M - valid]
        fst = _flux_at_faces(model, states, face_base=valid - g,
                             extrapolated=True)
        ft = np.zeros_like(ft)
        ft[valid:M - valid] = \
            np.einsum("r,irm->im", table.centered(p, k), fst) / dt ** k
    return flux


# ---------------------------------------------------------------------------
# flux-limited CAT

def _limiter_phi(up, n, model, g):
    """Per-component van Albada blending factor at every interface.

    The smoothness ratio compares the upwind jump (chosen by the sign of
    an interface wave-speed estimate) with the local jump.  Degenerate
    jumps: flat data on both sides keeps the high-order flux (phi = 1),
    a vanishing local jump against a live upwind jump falls back to the
    robust flux (phi = 0).
    """
    left = np.arange(g - 1, g + n)
    ul = up[left]
    ur = up[left + 1]
    sign = model.upwind_speed(ul, ur)
    dloc = ur - ul
    dupw = np.where((sign >= 0.0)[:, None], ul - up[left - 1], up[left + 2] - ur)
    loc_tiny = np.abs(dloc) < LIMITER_TINY
    upw_tiny = np.abs(dupw) < LIMITER_TINY
    safe = np.where(loc_tiny, 1.0, dloc)
    phi = van_albada_phi(dupw / safe)
    phi = np.where(loc_tiny, 0.0, phi)
    phi = np.where(loc_tiny & upw_tiny, 1.0, phi)
    return phi


def fl_cat_fluxes(up, n, model, dt, dx, p, table=None, alpha=None):
    """Blended fluxes (1-phi)*F_low + phi*F_cat at all n+1 interfaces."""
    table = _resolve_table(table, p)
    up = _as_rows(up)
    g = (up.shape[0] - n) // 2
    if g < max(p, 2):
        raise ValueError(f"ghost width {g} < required {max(p, 2)}")
    if alpha is None:
        alpha = max_wave_speed(model, up)
    f_high = cat_fluxes(up, n, model, dt, dx, p, table)
    left = np.arange(g - 1, g + n)
    f_low = model.low_order_flux(up[left], up[left + 1], alpha)
    phi = _limiter_phi(up, n, model, g)
    return (1.0 - phi) * f_low + phi * f_high


def fl_cat_flux(window, model, dt, dx, p, alpha, table=None):
    """Blended flux from a single window of 2*max(p, 2) states around the
    interface."""
    win = _as_rows(np.asarray(window, dtype=float))
    w = max(p, 2)
    if win.shape[0] != 2 * w:
        raise ValueError(f"window must hold {2 * w} states")
    out = fl_cat_fluxes(win, 0, model, dt, dx, p, table, alpha)[0]
    return float(out[0]) if np.asarray(window).ndim == 1 else out


# ---------------------------------------------------------------------------
# WENO-CAT

def weno_cat_fluxes(up, n, model, dt, dx, p, table=None, config=WenoConfig(),
                    alpha=None):
    """CAT fluxes with the leading term replaced by the WENO interface flux.

    The first time derivative of the state is taken from differences of
    the reconstructed flux; levels k >= 2 run the unchanged local
    recursion on top of it.
    """
    table = _resolve_table(table, p)
    up = _as_rows(up)
    M = up.shape[0]
    g = (M - n) // 2
    if g < p + 3:
        raise ValueError(f"ghost width {g} < required {p + 3}")
    if alpha is None:
        alpha = max_wave_speed(model, up)
    d1 = weno_mod.first_derivative_row(up, model, alpha, dx, config)
    # d1[r] belongs to padded cell r+3; the windows need cells g-p..g+n+p-1
    ud1 = d1[g - p - 3:g + n + p - 3]
    ut1 = _windows(ud1, 2 * p)[0:n + 1]
    hhat = weno_mod.interface_flux_row(up, model, alpha, config)
    # hhat[t] sits at interface (t+2)+1/2; face f is interface (g-1+f)+1/2
    flux0 = hhat[g - 3:g - 3 + n + 1]
    W = _windows(up, 2 * p)[g - p:g - p + n + 1]
    return _cat_core(W, model, dt, dx, p, table, ut1=ut1, flux0=flux0)


# ---------------------------------------------------------------------------
# WENO5 + TVD-RK3 baseline

def weno_rhs(up, n, model, dx, config=WenoConfig(), alpha=None):
    """Semi-discrete right-hand side -(hhat_{i+1/2}-hhat_{i-1/2})/dx."""
    up = _as_rows(up)
    g = (up.shape[0] - n) // 2
    if g < 3:
        raise ValueError(f"ghost width {g} < required 3")
    if alpha is None:
        alpha = max_wave_speed(model, up)
    d1 = weno_mod.first_derivative_row(up, model, alpha, dx, config)
    return d1[g - 3:g - 3 + n]


def weno_rk3_step(u, pad, model, dt, dx, config=WenoConfig()):
    """Three-stage TVD Runge-Kutta step of the WENO5 semi-discretization.

    pad fills ghost cells; it runs before every stage.  The splitting
    speed is refreshed from each stage's own state.
    """
    u = _as_rows(u)
    n = u.shape[0]

    def rhs(v):
        return weno_rhs(pad(v), n, model, dx, config)

    u1 = u + dt * rhs(u)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs(u1))
    return u / 3.0 + (2.0 / 3.0) * (u2 + dt * rhs(u2))


# ---------------------------------------------------------------------------
# scheme objects

class Scheme:
    """Flux-form scheme: one flux evaluation and a conservative update."""

    name = "scheme"

    def __init__(self, p=1, table=None):
        if p < 1:
            raise ValueError("p must be >= 1")
        self.p = p
        self.table = _resolve_table(table, p)

    def required_ghost(self):
        raise NotImplementedError

    def fluxes(self, up, n, model, dt, dx):
        raise NotImplementedError

    def step(self, u, pad, model, dt, dx):
        up = pad(u)
        F = self.fluxes(up, u.shape[0], model, dt, dx)
        return u - (dt / dx) * (F[1:] - F[:-1])


class LWScheme(Scheme):
    """Order-2p one-step scheme for linear advection."""

    name = "LW"

    def required_ghost(self):
        return self.p

    def fluxes(self, up, n, model, dt, dx):
        if not isinstance(model, Advection):
            raise ValueError("the LW scheme only applies to linear advection")
        return lw_fluxes(up, n, model.a, dt, dx, self.p, self.table)


class ATScheme(Scheme):
    name = "AT"

    def required_ghost(self):
        return at_required_ghost(self.p)

    def fluxes(self, up, n, model, dt, dx):
        return at_fluxes(up, n, model, dt, dx, self.p, self.table)


class CATScheme(Scheme):
    name = "CAT"

    def required_ghost(self):
        return self.p

    def fluxes(self, up, n, model, dt, dx):
        return cat_fluxes(up, n, model, dt, dx, self.p, self.table)


class FLCATScheme(Scheme):
    name = "FL-CAT"

    def required_ghost(self):
        return max(self.p, 2)

    def fluxes(self, up, n, model, dt, dx):
        return fl_cat_fluxes(up, n, model, dt, dx, self.p, self.table)


class WENOCATScheme(Scheme):
    name = "WENO-CAT"

    def __init__(self, p=2, table=None, weno=WenoConfig()):
        super().__init__(p, table)
        self.weno = weno

    def required_ghost(self):
        return self.p + 3

    def fluxes(self, up, n, model, dt, dx):
        return weno_cat_fluxes(up, n, model, dt, dx, self.p, self.table,
                               self.weno)


class WENORK3Scheme(Scheme):
    """Method-of-lines baseline; not a single-flux scheme, so step is
    overridden with the three-stage update."""

    name = "WENO-RK3"

    def __init__(self, table=None, weno=WenoConfig()):
        super().__init__(1, table)
        self.weno = weno

    def required_ghost(self):
        return 3

    def step(self, u, pad, model, dt, dx):
        return weno_rk3_step(u, pad, model, dt, dx, self.weno)


SCHEMES = {
    "LW": LWScheme,
    "AT": ATScheme,
    "CAT": CATScheme,
    "FL-CAT": FLCATScheme,
    "WENO-CAT": WENOCATScheme,
    "WENO-RK3": WENORK3Scheme,
}


def make_scheme(name, p=1, weno=WenoConfig(), table=None):
    key = name.upper().replace("_", "-")
    if key not in SCHEMES:
        raise ValueError(f"unknown scheme '{name}' (choose from {sorted(SCHEMES)})")
    cls = SCHEMES[key]
    if cls is WENORK3Scheme:
        return cls(table=table, weno=weno)
    if cls is WENOCATScheme:
        return cls(p=p, table=table, weno=weno)
    return cls(p=p, table=table)
