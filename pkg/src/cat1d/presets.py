"""Named experiment presets: the transport, Burgers and Euler test cases
with their published mesh sequences, CFL numbers and end times."""

from __future__ import annotations

from dataclasses import dataclass

from .driver import Grid, RunConfig

# dx of 0.1053, 0.0526, ... on [0, 2] comes from n = 19 doubled five times
CONVERGENCE_MESHES = (19, 38, 76, 152, 304, 608)
REFERENCE_NODES = 1400


@dataclass(frozen=True)
class RunPreset:
    name: str
    configs: tuple


@dataclass(frozen=True)
class ConvergencePreset:
    name: str
    configs: tuple
    n_list: tuple
    reference: object  # "exact" or a dict understood by convergence_study


def _transport_square(scheme, p, cfl, label=""):
    return RunConfig(
        grid=Grid(80, 0.0, 1.0), model="advection", model_params={"a": 1.0},
        scheme=scheme, p=p, cfl=cfl, ic="square_step", boundary="periodic",
        t_end=1.0, label=label,
    )


def _burgers_square(scheme, p, cfl, t_end=2.0, label=""):
    return RunConfig(
        grid=Grid(80, 0.0, 1.0), model="burgers", scheme=scheme, p=p, cfl=cfl,
        ic="square_step", boundary="periodic", t_end=t_end, label=label,
    )


def _quarter_sine(model, scheme, p, cfl, t_end, label=""):
    return RunConfig(
        grid=Grid(CONVERGENCE_MESHES[0], 0.0, 2.0), model=model,
        model_params={"a": 1.0} if model == "advection" else {},
        scheme=scheme, p=p, cfl=cfl, ic="quarter_sine", boundary="periodic",
        t_end=t_end, label=label,
    )


def _euler_sine(scheme, p, cfl, t_end, label=""):
    return RunConfig(
        grid=Grid(CONVERGENCE_MESHES[0], 0.0, 2.0), model="euler",
        scheme=scheme, p=p, cfl=cfl, ic="euler_sine", boundary="periodic",
        t_end=t_end, label=label,
    )


def _shock_tube(ic, scheme, p, n, t_end, label=""):
    return RunConfig(
        grid=Grid(n, -5.0, 5.0), model="euler", scheme=scheme, p=p, cfl=0.5,
        ic=ic, boundary="outflow", t_end=t_end, label=label,
    )


def _build_presets():
    presets = {}

    presets["fig2_square_lw"] = RunPreset(
        "fig2_square_lw",
        tuple(_transport_square("CAT", p, 0.9, label=f"lw_cat{2 * p}")
              for p in range(1, 6)),
    )

    presets["fig3_square_methods"] = RunPreset(
        "fig3_square_methods",
        (
            _transport_square("CAT", 2, 0.5, label="lw_cat4"),
            _transport_square("FL-CAT", 2, 0.5, label="fl_cat4"),
            _transport_square("WENO-CAT", 2, 0.5, label="weno5_cat4"),
            _transport_square("WENO-RK3", 1, 0.5, label="weno5_rk3"),
        ),
    )

    presets["fig4_burgers_cat"] = RunPreset(
        "fig4_burgers_cat",
        tuple(_burgers_square("CAT", p, cfl, label=f"lw_cat{2 * p}")
              for p, cfl in zip((1, 2, 3, 4), (0.8, 0.4, 0.2, 0.1))),
    )

    presets["fig5_burgers_methods"] = RunPreset(
        "fig5_burgers_methods",
        (
            _burgers_square("CAT", 2, 0.5, label="lw_cat4"),
            _burgers_square("FL-CAT", 2, 0.5, label="fl_cat4"),
            _burgers_square("WENO-CAT", 2, 0.5, label="weno5_cat4"),
            _burgers_square("WENO-RK3", 1, 0.5, label="weno5_rk3"),
        ),
    )

    presets["fig6_burgers_cfl09"] = RunPreset(
        "fig6_burgers_cfl09",
        (
            _burgers_square("FL-CAT", 2, 0.9, label="fl_cat4"),
            _burgers_square("WENO-CAT", 2, 0.9, label="weno5_cat4"),
        ),
    )

    presets["table3_advection_convergence"] = ConvergencePreset(
        "table3_advection_convergence",
        tuple(_quarter_sine("advection", "CAT", p, 0.5, 1.0,
                            label=f"lw_cat{2 * p}") for p in (1, 2, 3)),
        CONVERGENCE_MESHES,
        "exact",
    )

    presets["table4_weno_convergence"] = ConvergencePreset(
        "table4_weno_convergence",
        (_quarter_sine("advection", "WENO-RK3", 1, 0.5, 1.0,
                       label="weno5_rk3"),),
        CONVERGENCE_MESHES,
        "exact",
    )

    # reference runs at a small CFL so its time error sits below the
    # finest table entries; the node count matches the published setup
    presets["table7_burgers_convergence"] = ConvergencePreset(
        "table7_burgers_convergence",
        tuple(_quarter_sine("burgers", "CAT", p, 0.5, 0.5,
                            label=f"lw_cat{2 * p}") for p in (1, 2, 3)),
        CONVERGENCE_MESHES,
        {"scheme": "WENO-RK3", "n": REFERENCE_NODES, "cfl": 0.1},
    )

    presets["table8_euler_convergence"] = ConvergencePreset(
        "table8_euler_convergence",
        tuple(_euler_sine("CAT", p, 0.5, 0.5, label=f"lw_cat{2 * p}")
              for p in (1, 2, 3)),
        CONVERGENCE_MESHES,
        {"scheme": "CAT", "p": 4, "n": REFERENCE_NODES, "cfl": 0.5},
    )

    presets["sod_450"] = RunPreset(
        "sod_450",
        (
            _shock_tube("sod", "FL-CAT", 2, 450, 1.0, label="fl_cat4"),
            _shock_tube("sod", "WENO-CAT", 2, 450, 1.0, label="weno5_cat4"),
            _shock_tube("sod", "WENO-RK3", 1, 450, 1.0, label="weno5_rk3"),
            _shock_tube("sod", "WENO-RK3", 1, REFERENCE_NODES, 1.0,
                        label="reference_weno5_rk3"),
        ),
    )

    presets["shu_osher_450"] = RunPreset(
        "shu_osher_450",
        (
            _shock_tube("shu_osher", "FL-CAT", 2, 450, 1.0, label="fl_cat4"),
            _shock_tube("shu_osher", "WENO-CAT", 2, 450, 1.0,
                        label="weno5_cat4"),
            _shock_tube("shu_osher", "WENO-RK3", 1, 450, 1.0,
                        label="weno5_rk3"),
            _shock_tube("shu_osher", "WENO-RK3", 1, REFERENCE_NODES, 1.0,
                        label="reference_weno5_rk3"),
        ),
    )

    return presets


PRESETS = _build_presets()


def get_preset(name):
    if name not in PRESETS:
        raise KeyError(f"unknown preset '{name}' (choose from {sorted(PRESETS)})")
    return PRESETS[name]
