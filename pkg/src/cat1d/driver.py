"""Mesh and ghost-cell management, CFL time stepping, initial conditions,
error norms and convergence studies.

Grids are endpoint-uniform point grids: node i sits at x_lo + i*dx with
dx = (x_hi - x_lo)/n, so x_hi is the periodic image of x_lo.  Convergence
tables pick n to reproduce a requested dx.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline

from .models import GAMMA_DEFAULT, make_model, primitive_to_conservative
from .schemes import make_scheme
from .weno import WenoConfig

_T_EPS = 1e-12


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class Grid:
    n: int
    x_lo: float = 0.0
    x_hi: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("grid needs at least one cell")
        if not self.x_hi > self.x_lo:
            raise ConfigError("empty domain")

    @property
    def dx(self):
        return (self.x_hi - self.x_lo) / self.n

    def nodes(self):
        return self.x_lo + self.dx * np.arange(self.n)


BOUNDARIES = ("periodic", "outflow")


def apply_boundary(u, boundary, ghost):
    """Return a ghost-padded copy of the row.

    periodic wraps indices mod n; outflow copies the nearest interior cell.
    """
    u = np.asarray(u, dtype=float)
    squeeze = u.ndim == 1
    if squeeze:
        u = u[:, None]
    n = u.shape[0]
    if boundary == "periodic":
        if ghost > n:
            reps = -(-ghost // n) * 2 + 1
            wide = np.concatenate([u] * reps, axis=0)
            mid = (reps // 2) * n
            out = wide[mid - ghost:mid + n + ghost]
        else:
            out = np.concatenate([u[n - ghost:], u, u[:ghost]], axis=0)
    elif boundary == "outflow":
        out = np.concatenate(
            [np.repeat(u[:1], ghost, axis=0), u, np.repeat(u[-1:], ghost, axis=0)],
            axis=0,
        )
    else:
        raise ConfigError(f"unknown boundary '{boundary}'")
    return out[:, 0].copy() if squeeze else out.copy()


def compute_dt(u, model, cfl, dx):
    """dt = cfl * dx / max wave speed over the row."""
    u = np.asarray(u, dtype=float)
    if u.size == 0:
        raise ConfigError("empty state row")
    if u.ndim == 1:
        u = u[:, None]
    smax = float(np.max(model.max_wave_speed(u)))
    if smax <= 0.0:
        raise ConfigError("zero wave speed: time step undefined for this state")
    return cfl * dx / smax


# ---------------------------------------------------------------------------
# initial conditions

def _ic_square_step(x, params):
    lo = params.get("lo", 1.0)
    hi = params.get("hi", 2.0)
    split = params.get("split", 0.5)
    return np.where(x < split, lo, hi)[:, None]


def _ic_quarter_sine(x, params):
    amp = params.get("amplitude", 0.25)
    return (amp * np.sin(np.pi * x))[:, None]


def _ic_euler_sine(x, params):
    # (rho, u, E) profiles; the middle line is the velocity, which keeps
    # the flow smooth through the convergence-study window
    base = 0.75 + 0.5 * np.sin(np.pi * x)
    vel = 0.25 + 0.5 * np.sin(np.pi * x)
    return np.stack([base, base * vel, base], axis=-1)


def _ic_sod(x, params):
    gamma = params.get("gamma", GAMMA_DEFAULT)
    rho = np.where(x < 0.0, 1.0, 0.125)
    vel = np.zeros_like(x)
    p = np.where(x < 0.0, 1.0, 0.1)
    return primitive_to_conservative(rho, vel, p, gamma)


def _ic_shu_osher(x, params):
    gamma = params.get("gamma", GAMMA_DEFAULT)
    rho = np.where(x < -4.0, 3.8571, 1.0 + 0.2 * np.sin(5.0 * x))
    vel = np.where(x < -4.0, 2.6293, 0.0)
    p = np.where(x < -4.0, 10.3333, 1.0)
    return primitive_to_conservative(rho, vel, p, gamma)


INITIAL_CONDITIONS = {
    "square_step": (_ic_square_step, 1),
    "quarter_sine": (_ic_quarter_sine, 1),
    "euler_sine": (_ic_euler_sine, 3),
    "sod": (_ic_sod, 3),
    "shu_osher": (_ic_shu_osher, 3),
}


def initial_condition(name, grid, params=None):
    """State row (n, m) of the named initial condition on the grid nodes."""
    if name not in INITIAL_CONDITIONS:
        raise ConfigError(f"unknown initial condition '{name}'")
    fn, _ = INITIAL_CONDITIONS[name]
    return np.asarray(fn(grid.nodes(), params or {}), dtype=float)


# ---------------------------------------------------------------------------
# run configuration

@dataclass(frozen=True)
class RunConfig:
    grid: Grid
    model: str = "advection"
    model_params: dict = field(default_factory=dict)
    scheme: str = "CAT"
    p: int = 1
    cfl: float = 0.5
    limiter: str = "van_albada2"
    weno: WenoConfig = field(default_factory=WenoConfig)
    boundary: str = "periodic"
    ic: str = "square_step"
    ic_params: dict = field(default_factory=dict)
    t_end: float = 1.0
    output_times: tuple = ()
    label: str = ""

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"cfl must lie in (0, 1], got {self.cfl}")
        if self.t_end < 0.0:
            raise ConfigError("t_end must be nonnegative")
        if self.boundary not in BOUNDARIES:
            raise ConfigError(f"unknown boundary '{self.boundary}'")
        if self.ic not in INITIAL_CONDITIONS:
            raise ConfigError(f"unknown initial condition '{self.ic}'")
        if self.limiter != "van_albada2":
            raise ConfigError(f"unknown limiter '{self.limiter}'")
        model = self.build_model()
        _, m = INITIAL_CONDITIONS[self.ic]
        if m != model.m:
            raise ConfigError(
                f"initial condition '{self.ic}' has {m} components "
                f"but model '{self.model}' expects {model.m}")
        scheme_key = self.scheme.upper().replace("_", "-")
        if scheme_key == "LW" and self.model != "advection":
            raise ConfigError("the LW scheme only applies to linear advection")

    def build_model(self):
        try:
            return make_model(self.model, **dict(self.model_params))
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def build_scheme(self):
        return make_scheme(self.scheme, p=self.p, weno=self.weno)

    def name(self):
        if self.label:
            return self.label
        base = self.scheme.upper().replace("_", "-")
        if base in ("LW", "CAT", "AT"):
            return f"{base.lower()}{2 * self.p}"
        if base in ("FL-CAT", "WENO-CAT"):
            return f"{base.lower().replace('-', '_')}{2 * self.p}"
        return base.lower().replace("-", "_")


@dataclass
class RunResult:
    config: RunConfig
    times: list
    states: list
    steps: int
    wall_time: float
    per_step: float

    @property
    def final(self):
        return self.states[-1]

    @property
    def x(self):
        return self.config.grid.nodes()


def run(config):
    """Advance the configured problem to t_end.

    Each step fills ghosts, picks dt from the CFL bound (clipped to land
    exactly on output times and on t_end), builds fluxes and applies the
    conservative update.  Runs are deterministic: identical configs give
    bit-identical trajectories.
    """
    grid = config.grid
    model = config.build_model()
    scheme = config.build_scheme()
    ghost = scheme.required_ghost()
    if config.boundary == "periodic" and ghost > grid.n:
        raise ConfigError(
            f"scheme needs {ghost} ghost cells but the grid has {grid.n}")

    def pad(v):
        return apply_boundary(v, config.boundary, ghost)

    u = initial_condition(config.ic, grid, config.ic_params)
    stops = sorted({round(float(t), 15) for t in config.output_times
                    if 0.0 < t <= config.t_end})
    if config.t_end > 0.0 and config.t_end not in stops:
        stops.append(config.t_end)

    times = [0.0]
    states = [u.copy()]
    t = 0.0
    steps = 0
    tic = time.perf_counter()
    for stop in stops:
        while t < stop - _T_EPS * max(1.0, stop):
            dt = compute_dt(u, model, config.cfl, grid.dx)
            dt = min(dt, stop - t)
            u = scheme.step(u, pad, model, dt, grid.dx)
            t += dt
            steps += 1
        t = stop
        times.append(t)
        states.append(u.copy())
    wall = time.perf_counter() - tic
    return RunResult(config, times, states, steps, wall,
                     wall / steps if steps else 0.0)


# ---------------------------------------------------------------------------
# errors and convergence

def l1_error(u, ref, dx, x=None):
    """dx * sum |u - ref|, summed over components.

    ref may be a row of matching shape or a callable evaluated at x.
    """
    u = np.asarray(u, dtype=float)
    if callable(ref):
        if x is None:
            raise ValueError("callable reference needs node positions")
        ref = ref(x)
    ref = np.asarray(ref, dtype=float)
    if ref.shape != u.shape:
        raise ValueError(f"grid mismatch: {u.shape} vs {ref.shape}")
    return float(dx * np.sum(np.abs(u - ref)))


def exact_advection(config, t):
    """Exact transport solution: the initial profile shifted by a*t with
    periodic wrap."""
    grid = config.grid
    a = dict(config.model_params).get("a", 1.0)
    span = grid.x_hi - grid.x_lo
    x = grid.x_lo + np.mod(grid.nodes() - a * t - grid.x_lo, span)
    fn, _ = INITIAL_CONDITIONS[config.ic]
    return np.asarray(fn(x, dict(config.ic_params)), dtype=float)


def sample_periodic(grid, u, x_new, order=5):
    """Evaluate a periodic spline through (nodes, u) at new positions."""
    u = np.asarray(u, dtype=float)
    x = np.append(grid.nodes(), grid.x_hi)
    ue = np.concatenate([u, u[:1]], axis=0)
    out = np.empty((len(x_new), u.shape[1]))
    span = grid.x_hi - grid.x_lo
    xq = grid.x_lo + np.mod(np.asarray(x_new) - grid.x_lo, span)
    for c in range(u.shape[1]):
        spl = make_interp_spline(x, ue[:, c], k=order, bc_type="periodic")
        out[:, c] = spl(xq)
    return out


def sample_linear(grid, u, x_new):
    """Piecewise-linear sampling; adequate for shock-solution comparisons."""
    u = np.asarray(u, dtype=float)
    out = np.empty((len(x_new), u.shape[1]))
    for c in range(u.shape[1]):
        out[:, c] = np.interp(x_new, grid.nodes(), u[:, c])
    return out


@dataclass(frozen=True)
class ErrorRow:
    dx: float
    error: float
    order: float | None


@dataclass
class ErrorReport:
    label: str
    rows: list

    def orders(self):
        return [r.order for r in self.rows if r.order is not None]


def _reference_sampler(base, reference):
    """Build a callable nodes -> reference row at t_end."""
    if reference == "exact":
        if base.model != "advection":
            raise ConfigError("exact reference is only defined for advection")

        def sampler(cfg):
            return exact_advection(cfg, cfg.t_end)

        return sampler

    ref_cfg = replace_config(
        base,
        scheme=reference.get("scheme", base.scheme),
        p=reference.get("p", base.p),
        cfl=reference.get("cfl", base.cfl),
        grid=Grid(reference["n"], base.grid.x_lo, base.grid.x_hi),
        output_times=(),
        label="reference",
    )
    result = run(ref_cfg)

    def sampler(cfg):
        return sample_periodic(ref_cfg.grid, result.final, cfg.grid.nodes())

    return sampler


def replace_config(config, **changes):
    """dataclasses.replace with ConfigError propagation."""
    import dataclasses

    return dataclasses.replace(config, **changes)


def convergence_study(config, n_list, reference="exact"):
    """L1 errors and empirical orders over a refining mesh sequence.

    reference is "exact" (advection) or a dict {"scheme", "p", "n", "cfl"}
    describing a fine-grid run whose periodic spline is sampled at the
    coarse nodes.  Orders are log(e_prev/e_cur)/log(dx_prev/dx_cur).
    """
    if sorted(n_list) != list(n_list) or len(set(n_list)) != len(n_list):
        raise ConfigError("mesh list must be strictly refining")
    sampler = _reference_sampler(config, reference)
    rows = []
    prev = None
    for n in n_list:
        cfg = replace_config(config, grid=Grid(n, config.grid.x_lo,
                                               config.grid.x_hi))
        result = run(cfg)
        err = l1_error(result.final, sampler(cfg), cfg.grid.dx)
        order = None
        if prev is not None and err > 0.0 and prev[1] > 0.0:
            order = float(np.log(prev[1] / err) / np.log(prev[0] / cfg.grid.dx))
        rows.append(ErrorRow(cfg.grid.dx, err, order))
        prev = (cfg.grid.dx, err)
    return ErrorReport(config.name(), rows)
