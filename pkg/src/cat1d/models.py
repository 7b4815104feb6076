"""Conservation-law definitions: fluxes, wave-speed bounds, first-order
interface fluxes.

Three built-in models: linear advection, Burgers, and the 1D compressible
Euler equations for an ideal gas.  States are arrays whose last axis holds
the m components (m = 1 for the scalar models); every function broadcasts
over leading axes so kernels can evaluate whole rows, windows, or stacks
of local Taylor states in one call.

Positivity violations in Euler states raise StateError instead of being
clamped: a scheme that drives density or pressure negative should fail
loudly, not quietly.
"""

from __future__ import annotations

import numpy as np

GAMMA_DEFAULT = 1.4
_ROE_TINY = 1e-12


class StateError(RuntimeError):
    """Invalid physical state (nonpositive density or pressure).

    `where` is the index of the first offending entry in the array that
    was being evaluated; callers up the stack may add context (interface,
    step, time) by re-raising.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


def _first_bad(mask):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if idx.size else None


def advection_flux(u, a):
    """Flux a*u of the linear transport equation."""
    return a * np.asarray(u, dtype=float)


def burgers_flux(u):
    """Flux u**2/2 of the Burgers equation."""
    u = np.asarray(u, dtype=float)
    return 0.5 * u * u


def euler_pressure(w, gamma=GAMMA_DEFAULT, check_pressure=True):
    """Pressure (gamma-1)*rho*e from conservative variables (rho, rho*u, E).

    Density must always be positive.  check_pressure=False skips the
    pressure sign check; the flux of a fictitious Taylor extrapolation
    state is still well defined when its pressure dips below zero, and
    one-step Taylor schemes rely on that.
    """
    w = np.asarray(w, dtype=float)
    rho = w[..., 0]
    mom = w[..., 1]
    en = w[..., 2]
    if np.any(rho <= 0.0):
        raise StateError("nonpositive density", _first_bad(rho <= 0.0))
    p = (gamma - 1.0) * (en - 0.5 * mom * mom / rho)
    if check_pressure and np.any(p <= 0.0):
        raise StateError("nonpositive pressure", _first_bad(p <= 0.0))
    return p


def euler_sound_speed(w, gamma=GAMMA_DEFAULT):
    w = np.asarray(w, dtype=float)
    p = euler_pressure(w, gamma)
    return np.sqrt(gamma * p / w[..., 0])


def euler_flux(w, gamma=GAMMA_DEFAULT, check_pressure=True):
    """Euler flux (rho*u, p + rho*u**2, u*(E+p))."""
    w = np.asarray(w, dtype=float)
    p = euler_pressure(w, gamma, check_pressure)
    rho = w[..., 0]
    mom = w[..., 1]
    en = w[..., 2]
    v = mom / rho
    return np.stack([mom, p + mom * v, v * (en + p)], axis=-1)


def primitive_to_conservative(rho, u, p, gamma=GAMMA_DEFAULT):
    """(rho, u, p) -> (rho, rho*u, E) with E = p/(gamma-1) + rho*u**2/2."""
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0.0):
        raise StateError("nonpositive density", _first_bad(np.atleast_1d(rho) <= 0.0))
    if np.any(p <= 0.0):
        raise StateError("nonpositive pressure", _first_bad(np.atleast_1d(p) <= 0.0))
    en = p / (gamma - 1.0) + 0.5 * rho * u * u
    return np.stack(np.broadcast_arrays(rho, rho * u, en), axis=-1)


def conservative_to_primitive(w, gamma=GAMMA_DEFAULT):
    """(rho, rho*u, E) -> (rho, u, p); inverse of primitive_to_conservative."""
    w = np.asarray(w, dtype=float)
    p = euler_pressure(w, gamma)
    rho = w[..., 0]
    return rho, w[..., 1] / rho, p


def lax_friedrichs_flux(model, ul, ur, alpha):
    """Local/global Lax-Friedrichs flux (f(ul)+f(ur))/2 - alpha*(ur-ul)/2."""
    ul = np.asarray(ul, dtype=float)
    ur = np.asarray(ur, dtype=float)
    return 0.5 * (model.flux(ul) + model.flux(ur)) - 0.5 * alpha * (ur - ul)


def hll_flux(wl, wr, gamma=GAMMA_DEFAULT):
    """HLL flux for the Euler equations with Davis wave-speed estimates

        sl = min(ul - cl, ur - cr),  sr = max(ul + cl, ur + cr).
    """
    wl = np.asarray(wl, dtype=float)
    wr = np.asarray(wr, dtype=float)
    _, vl, pl = conservative_to_primitive(wl, gamma)
    _, vr, pr = conservative_to_primitive(wr, gamma)
    cl = np.sqrt(gamma * pl / wl[..., 0])
    cr = np.sqrt(gamma * pr / wr[..., 0])
    sl = np.minimum(vl - cl, vr - cr)
    sr = np.maximum(vl + cl, vr + cr)
    fl = euler_flux(wl, gamma)
    fr = euler_flux(wr, gamma)
    middle = (sr[..., None] * fl - sl[..., None] * fr
              + (sl * sr)[..., None] * (wr - wl)) / (sr - sl)[..., None]
    out = np.where((sl >= 0.0)[..., None], fl, middle)
    out = np.where((sr <= 0.0)[..., None], fr, out)
    return out


class FluxModel:
    """A conservation law: flux, wave-speed bound, component count, and the
    low-order interface flux used by the flux-limited scheme."""

    m = 1
    name = "model"

    def flux(self, u):
        raise NotImplementedError

    def flux_extrapolated(self, u):
        """Flux of fictitious extrapolation states.

        Taylor-type schemes evaluate the flux at polynomial extrapolations
        of the solution; those may leave the admissible set transiently
        without invalidating the step, so sign checks that the flux itself
        does not need are skipped here.
        """
        return self.flux(u)

    def max_wave_speed(self, u):
        """Pointwise bound on |characteristic speed|; shape = u.shape[:-1]."""
        raise NotImplementedError

    def dflux(self, u):
        """Characteristic speed f'(u); scalar models only."""
        raise NotImplementedError

    def low_order_flux(self, ul, ur, alpha):
        return lax_friedrichs_flux(self, ul, ur, alpha)

    def upwind_speed(self, ul, ur):
        """Signed wave-speed estimate at the interface between ul and ur.

        Scalar models use the secant (Roe) ratio with an f'(ul) fallback
        on vanishing jumps; shape = ul.shape[:-1].
        """
        ul = np.asarray(ul, dtype=float)
        ur = np.asarray(ur, dtype=float)
        du = ur[..., 0] - ul[..., 0]
        df = (self.flux(ur) - self.flux(ul))[..., 0]
        safe = np.where(np.abs(du) < _ROE_TINY, 1.0, du)
        return np.where(np.abs(du) < _ROE_TINY, self.dflux(ul[..., 0]), df / safe)


class Advection(FluxModel):
    """Linear transport u_t + a u_x = 0."""

    name = "advection"

    def __init__(self, a=1.0):
        self.a = float(a)

    def flux(self, u):
        return advection_flux(u, self.a)

    def max_wave_speed(self, u):
        u = np.asarray(u, dtype=float)
        return np.full(u.shape[:-1], abs(self.a))

    def dflux(self, u):
        return np.full(np.shape(u), self.a)


class Burgers(FluxModel):
    """Burgers equation u_t + (u**2/2)_x = 0."""

    name = "burgers"

    def flux(self, u):
        return burgers_flux(u)

    def max_wave_speed(self, u):
        u = np.asarray(u, dtype=float)
        return np.abs(u[..., 0])

    def dflux(self, u):
        return np.asarray(u, dtype=float)


class Euler(FluxModel):
    """1D compressible Euler equations for an ideal gas."""

    m = 3
    name = "euler"

    def __init__(self, gamma=GAMMA_DEFAULT):
        self.gamma = float(gamma)

    def flux(self, u):
        return euler_flux(u, self.gamma)

    def flux_extrapolated(self, u):
        return euler_flux(u, self.gamma, check_pressure=False)

    def max_wave_speed(self, u):
        u = np.asarray(u, dtype=float)
        _, v, p = conservative_to_primitive(u, self.gamma)
        return np.abs(v) + np.sqrt(self.gamma * p / u[..., 0])

    def low_order_flux(self, ul, ur, alpha):
        return hll_flux(ul, ur, self.gamma)

    def upwind_speed(self, ul, ur):
        """Midpoint of the Davis wave-speed estimates; only its sign is used."""
        ul = np.asarray(ul, dtype=float)
        ur = np.asarray(ur, dtype=float)
        _, vl, pl = conservative_to_primitive(ul, self.gamma)
        _, vr, pr = conservative_to_primitive(ur, self.gamma)
        cl = np.sqrt(self.gamma * pl / ul[..., 0])
        cr = np.sqrt(self.gamma * pr / ur[..., 0])
        sl = np.minimum(vl - cl, vr - cr)
        sr = np.maximum(vl + cl, vr + cr)
        return 0.5 * (sl + sr)


def max_wave_speed(model, u):
    """Largest wave-speed bound over all states in u."""
    u = np.asarray(u, dtype=float)
    if u.ndim == model.m == 1:
        u = u[:, None]
    return float(np.max(model.max_wave_speed(u)))


def make_model(name, **params):
    name = name.lower()
    if name == "advection":
        return Advection(params.pop("a", 1.0))
    if name == "burgers":
        return Burgers()
    if name == "euler":
        return Euler(params.pop("gamma", GAMMA_DEFAULT))
    raise ValueError(f"unknown model '{name}'")
