"""Batch execution: single runs, parameter sweeps, and file outputs.

Every run directory receives a ``manifest.txt`` that echoes the effective
configuration in config syntax (feeding it back through ``load_config``
reproduces the run), plus ``timeseries.csv`` or ``sweep.csv`` with fixed
headers.  Grid points run independently, optionally across processes; rows
are always written in grid order, so the CSV bytes do not depend on the
parallelism degree.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__ as _version
from .config import ConfigError, RunConfig, SweepAxis
from .dynamics import IntegrationError, run_model
from .model import blockade_regime_report
from .observables import ObservableSeries, observable_series
from .params import SimulationParams
from .pulses import PulseSchedule

TIMESERIES_HEADER = "t_over_T,omega01,omega02,P1,P2,P3,P4,P5,P6,P7,P8,P9,fidelity,leakage,norm"
SWEEP_HEADER = "axis1,axis2,fidelity"

GAMMA_SCAN_AXIS = SweepAxis("gamma_e_over_omega0", 0.0, 0.01, 25)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_manifest(config: RunConfig, out: Path, extra_comments: tuple[str, ...] = ()) -> None:
    lines = [f"# trisinglet {_version}"]
    lines += [f"# {c}" for c in extra_comments]
    lines.append(config.to_text().rstrip("\n"))
    (out / "manifest.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _regime_comments(params: SimulationParams) -> tuple[str, ...]:
    report = blockade_regime_report(params)
    for message in report.messages:
        print(f"warning: {message}", file=sys.stderr)
    return report.messages


def run_single(config: RunConfig, out_dir: str | Path | None = None,
               full_dump: bool = False, write_svg: bool = True) -> ObservableSeries:
    """Integrate one configuration and emit timeseries.csv / manifest / SVG."""
    out = Path(out_dir if out_dir is not None else config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = config.params
    warnings = _regime_comments(params)

    traj = run_model(params, full_resolution=full_dump)
    series = observable_series(traj)

    schedule = PulseSchedule.from_params(params)
    rows = [TIMESERIES_HEADER]
    for k, t in enumerate(series.times):
        cells = [
            _fmt(t),
            _fmt(float(schedule.pump01(t))),
            _fmt(float(schedule.stokes02(t))),
            *(_fmt(p) for p in series.populations[k]),
            _fmt(series.fidelity[k]),
            _fmt(series.leakage[k]),
            _fmt(series.norm_or_trace[k]),
        ]
        rows.append(",".join(cells))
    (out / "timeseries.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    _write_manifest(config, out, warnings)

    if write_svg:
        from .plots import plot_timeseries

        plot_timeseries(series, schedule, out / "timeseries.svg")
    return series


@dataclass(frozen=True)
class SweepResult:
    axes: tuple[SweepAxis, ...]
    grid: np.ndarray  # final fidelity, shape (n1,) or (n1, n2)
    flags: tuple[str, ...]  # row-major, "ok" or the abort diagnostic

    @property
    def all_ok(self) -> bool:
        return all(f == "ok" for f in self.flags)


def _point_params(base: SimulationParams, axes, values) -> SimulationParams:
    changes = {axis.name: float(v) for axis, v in zip(axes, values)}
    return replace(base, **changes)


def _sweep_point(args) -> tuple[int, float, str]:
    index, params = args
    try:
        series = observable_series(run_model(params))
        return index, series.final_fidelity, "ok"
    except IntegrationError as exc:
        return index, math.nan, f"abort: {exc}"


def _grid_points(config: RunConfig):
    axes = config.axes
    if len(axes) == 1:
        for i, v1 in enumerate(axes[0].values()):
            yield i, (v1,)
    else:
        n2 = axes[1].points
        for i, v1 in enumerate(axes[0].values()):
            for j, v2 in enumerate(axes[1].values()):
                yield i * n2 + j, (v1, v2)


def sweep_grid(config: RunConfig, out_dir: str | Path | None = None,
               parallel: int | None = None, write_svg: bool = True) -> SweepResult:
    """Final-fidelity grid over 1 or 2 swept parameters; emits sweep.csv.

    Point failures are recorded in the per-point flag (fidelity becomes nan)
    and in the manifest; they do not abort the sweep.
    """
    if not 1 <= len(config.axes) <= 2:
        raise ConfigError("sweep_grid needs 1 or 2 sweep axes (sweep1 = <param> ...)")
    out = Path(out_dir if out_dir is not None else config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    degree = parallel if parallel is not None else config.parallel

    points = list(_grid_points(config))
    jobs = [(idx, _point_params(config.params, config.axes, values)) for idx, values in points]
    results: dict[int, tuple[float, str]] = {}
    if degree > 1:
        with ProcessPoolExecutor(max_workers=degree) as pool:
            for idx, fid, flag in pool.map(_sweep_point, jobs, chunksize=4):
                results[idx] = (fid, flag)
    else:
        for job in jobs:
            idx, fid, flag = _sweep_point(job)
            results[idx] = (fid, flag)

    shape = tuple(axis.points for axis in config.axes)
    grid = np.full(shape, math.nan)
    flags = []
    rows = [SWEEP_HEADER]
    for idx, values in points:
        fid, flag = results[idx]
        grid[np.unravel_index(idx, shape)] = fid
        flags.append(flag)
        axis2 = _fmt(float(values[1])) if len(values) == 2 else ""
        rows.append(f"{_fmt(float(values[0]))},{axis2},{_fmt(fid)}")
    (out / "sweep.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    bad = [f"point {idx}: {flag}" for (idx, _), flag in zip(points, flags) if flag != "ok"]
    _write_manifest(config, out, tuple(bad))

    result = SweepResult(axes=config.axes, grid=grid, flags=tuple(flags))
    if write_svg:
        from .plots import plot_sweep

        plot_sweep(result, out / "sweep.svg")
    return result


def gamma_scan(config: RunConfig, out_dir: str | Path | None = None,
               parallel: int | None = None, write_svg: bool = True) -> SweepResult:
    """1-D spontaneous-emission scan; requires the dissipative full-space model."""
    params = config.params
    if params.model != "full27" or params.dissipation != "lindblad":
        raise ConfigError("gamma_scan requires model = full27 and dissipation = lindblad")
    axes = config.axes
    if not axes:
        axes = (GAMMA_SCAN_AXIS,)
    if len(axes) != 1 or axes[0].name != "gamma_e_over_omega0":
        raise ConfigError("gamma_scan sweeps exactly gamma_e_over_omega0")
    return sweep_grid(replace(config, axes=axes), out_dir=out_dir,
                      parallel=parallel, write_svg=write_svg)
