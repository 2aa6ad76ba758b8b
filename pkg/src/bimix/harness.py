"""Replicated simulation sweeps over model parameter grids.

A sweep plan pins a base model, one grid axis (rho, a two-community alpha
grid, or a distribution parameter), a replicate count and a master seed.
Every replicate's randomness derives from (master seed, grid index,
replicate index), so results are identical under any degree of parallelism.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .disp import disp
from .metrics import error_rate
from .model import (
    InvalidModelError,
    ModelSpec,
    build_omega,
    make_planted_memberships,
    make_standard_two_block,
    validate_model,
)
from .sampler import EdgeDistribution, RandomSource, sample_adjacency

AXES = ("rho", "alpha_grid", "dist_param")
DIST_PARAMS = ("m", "sigma2", "beta")

# grid points are spaced this far apart in substream index space, so a point
# can host up to STREAM_STRIDE replicates without colliding with its neighbor
STREAM_STRIDE = 1 << 20

# two-community connectivity presets used by the catalogued scenarios
_P_POS = np.array([[1.0, 0.2], [0.3, 0.8]])
_P_MIXED = np.array([[1.0, -0.2], [0.3, -0.8]])
_P_POS_ALT = np.array([[1.0, 0.2], [0.1, 0.9]])
_P_MIXED_ALT = np.array([[1.0, -0.2], [0.1, -0.9]])


@dataclass(frozen=True)
class SweepPlan:
    """Base model, grid axis, grid points, replicate count and master seed."""

    base: ModelSpec
    axis: str
    grid: tuple
    replicates: int = 50
    master_seed: int = 0
    scenario: str = "custom"
    param: str | None = None  # dist_param axis only: one of m, sigma2, beta

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}; expected one of {AXES}")
        if len(self.grid) == 0:
            raise ValueError("grid must be nonempty")
        if not 1 <= int(self.replicates) < STREAM_STRIDE:
            raise ValueError(f"replicates must lie in [1, {STREAM_STRIDE})")
        object.__setattr__(self, "grid", tuple(self.grid))
        object.__setattr__(self, "replicates", int(self.replicates))
        object.__setattr__(self, "master_seed", int(self.master_seed))
        if self.axis == "dist_param":
            if self.param not in DIST_PARAMS:
                raise ValueError(f"dist_param axis needs param in {DIST_PARAMS}, got {self.param!r}")
            expected = {"m": "binomial", "sigma2": "normal", "beta": "logistic"}[self.param]
            if self.base.dist.kind != expected:
                raise ValueError(f"param {self.param!r} requires a {expected} base distribution")
        if self.axis == "alpha_grid":
            if self.base.n_r != self.base.n_c:
                raise ValueError("alpha_grid sweeps need n_r == n_c")
            if self.base.K != 2:
                raise ValueError("alpha_grid sweeps need K == 2")

    def axis_columns(self) -> tuple[str, ...]:
        if self.axis == "rho":
            return ("rho",)
        if self.axis == "alpha_grid":
            return ("alpha_in", "alpha_out")
        return (self.param,)


@dataclass(frozen=True)
class SweepPoint:
    """Outcome at one grid point; ``skipped`` holds the reason when not run."""

    values: dict
    mean_error: float | None
    std_error: float | None
    replicates: int
    stream_base: int
    skipped: str = ""


@dataclass(frozen=True)
class SweepResult:
    """One record per grid point, in grid order, plus sweep metadata."""

    scenario: str
    axis: str
    axis_columns: tuple[str, ...]
    master_seed: int
    dist_label: str
    n_r: int
    n_c: int
    K: int
    points: tuple[SweepPoint, ...] = field(default_factory=tuple)

    def to_csv_text(self) -> str:
        header = (
            ["scenario"]
            + list(self.axis_columns)
            + ["mean_error", "std_error", "replicates", "skipped", "seed"]
        )
        lines = [",".join(header)]
        for pt in self.points:
            row = [self.scenario]
            row += [repr(float(pt.values[c])) for c in self.axis_columns]
            if pt.skipped:
                row += ["", "", "0", pt.skipped.replace(",", ";"), str(self.master_seed)]
            else:
                row += [
                    repr(float(pt.mean_error)),
                    repr(float(pt.std_error)),
                    str(pt.replicates),
                    "",
                    str(self.master_seed),
                ]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_csv_text())


def run_replicates(
    spec: ModelSpec, replicates: int, master_seed: int, stream_base: int = 0
) -> tuple[float, float]:
    """Sample, fit and score ``replicates`` times; returns (mean, sample std).

    Replicate r draws from substream ``stream_base + r`` of the master seed,
    so reruns with the same seed reproduce the mean bit for bit.
    """
    omega = build_omega(spec)
    errors = np.empty(int(replicates))
    for r in range(int(replicates)):
        try:
            rng = RandomSource(master_seed, stream_base + r)
            A = sample_adjacency(omega, spec.dist, rng)
            fit = disp(A, spec.K)
            errors[r] = error_rate(fit.Pi_r_hat, spec.Pi_r, fit.Pi_c_hat, spec.Pi_c)
        except Exception as exc:
            raise RuntimeError(f"replicate {r} failed: {exc}") from exc
    mean = float(errors.mean())
    std = float(errors.std(ddof=1)) if len(errors) > 1 else 0.0
    return mean, std


def _point_values(plan: SweepPlan, value) -> dict:
    if plan.axis == "alpha_grid":
        a_in, a_out = value
        return {"alpha_in": float(a_in), "alpha_out": float(a_out)}
    return {plan.axis_columns()[0]: float(value)}


def _point_spec(plan: SweepPlan, value) -> ModelSpec:
    if plan.axis == "rho":
        return replace(plan.base, rho=float(value))
    if plan.axis == "dist_param":
        if plan.param == "m":
            dist = EdgeDistribution.binomial(int(value))
        elif plan.param == "sigma2":
            dist = EdgeDistribution.normal(float(value))
        else:
            dist = EdgeDistribution.logistic(float(value))
        return replace(plan.base, dist=dist)
    a_in, a_out = value
    P, rho = make_standard_two_block(plan.base.n_r, a_in, a_out)
    return replace(plan.base, P=P, rho=rho)


def _run_point(plan: SweepPlan, index: int) -> SweepPoint:
    value = plan.grid[index]
    values = _point_values(plan, value)
    stream_base = index * STREAM_STRIDE
    try:
        spec = _point_spec(plan, value)
    except (InvalidModelError, ValueError) as exc:
        return SweepPoint(values, None, None, 0, stream_base, skipped=str(exc))
    violations = validate_model(spec)
    if violations:
        return SweepPoint(values, None, None, 0, stream_base, skipped="; ".join(violations))
    mean, std = run_replicates(spec, plan.replicates, plan.master_seed, stream_base)
    return SweepPoint(values, mean, std, plan.replicates, stream_base)


def run_sweep(plan: SweepPlan, n_jobs: int = 1) -> SweepResult:
    """Run every grid point; invalid points are recorded as skipped.

    Results are a pure function of the plan: any ``n_jobs`` produces
    identical records in identical order.
    """
    indices = range(len(plan.grid))
    if n_jobs <= 1:
        points = [_run_point(plan, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            points = list(pool.map(lambda i: _run_point(plan, i), indices))
    if all(pt.skipped for pt in points):
        raise InvalidModelError("every grid point is invalid: " + points[0].skipped)
    return SweepResult(
        scenario=plan.scenario,
        axis=plan.axis,
        axis_columns=plan.axis_columns(),
        master_seed=plan.master_seed,
        dist_label=plan.base.dist.label(),
        n_r=plan.base.n_r,
        n_c=plan.base.n_c,
        K=plan.base.K,
        points=tuple(points),
    )


def alpha_grid_matrix(result: SweepResult) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Mean errors as a heatmap-ready matrix over an alpha grid.

    Rows are alpha_in ascending, columns alpha_out ascending; skipped points
    hold NaN.  Returns (matrix, alpha_in values, alpha_out values).
    """
    if result.axis != "alpha_grid":
        raise ValueError("alpha_grid_matrix needs an alpha_grid sweep result")
    a_in = np.array(sorted({pt.values["alpha_in"] for pt in result.points}))
    a_out = np.array(sorted({pt.values["alpha_out"] for pt in result.points}))
    grid = np.full((len(a_in), len(a_out)), np.nan)
    row = {v: i for i, v in enumerate(a_in)}
    col = {v: j for j, v in enumerate(a_out)}
    for pt in result.points:
        if not pt.skipped:
            grid[row[pt.values["alpha_in"]], col[pt.values["alpha_out"]]] = pt.mean_error
    return grid, a_in, a_out


def _float_grid(first: float, last: float, step: float) -> tuple[float, ...]:
    count = int(round((last - first) / step)) + 1
    return tuple(round(first + i * step, 10) for i in range(count))


def _alpha_pairs(values) -> tuple[tuple[float, float], ...]:
    # row-major: alpha_in ascending in the outer loop
    return tuple((a, b) for a in values for b in values)


def _planted_spec(n_r, n_c, K, n_pure_r, n_pure_c, P, rho, dist) -> ModelSpec:
    return ModelSpec(
        P=P,
        rho=rho,
        Pi_r=make_planted_memberships(n_r, K, n_pure_r),
        Pi_c=make_planted_memberships(n_c, K, n_pure_c),
        dist=dist,
    )


def _alpha_plan(name, dist, n, n_pure_r, n_pure_c, values, replicates, master_seed) -> SweepPlan:
    pairs = _alpha_pairs(values)
    first_valid = next(p for p in pairs if abs(p[0]) != abs(p[1]))
    P, rho = make_standard_two_block(n, *first_valid)
    base = _planted_spec(n, n, 2, n_pure_r, n_pure_c, P, rho, dist)
    return SweepPlan(base, "alpha_grid", pairs, replicates, master_seed, scenario=name)


def _rho_plan(name, dist, n_r, n_c, n_pure_r, n_pure_c, P, values, replicates, master_seed) -> SweepPlan:
    base = _planted_spec(n_r, n_c, 2, n_pure_r, n_pure_c, P, values[0], dist)
    return SweepPlan(base, "rho", tuple(values), replicates, master_seed, scenario=name)


def _param_plan(
    name, dist, param, n_r, n_c, n_pure_r, n_pure_c, P, rho, values, replicates, master_seed
) -> SweepPlan:
    base = _planted_spec(n_r, n_c, 2, n_pure_r, n_pure_c, P, rho, dist)
    return SweepPlan(
        base, "dist_param", tuple(values), replicates, master_seed, scenario=name, param=param
    )


def _setup_plan(name, dist, n_r, n_pure_r, n_c, n_pure_c, P, rho, replicates, master_seed) -> SweepPlan:
    base = _planted_spec(n_r, n_c, 2, n_pure_r, n_pure_c, P, rho, dist)
    return SweepPlan(base, "rho", (rho,), replicates, master_seed, scenario=name)


def _build_scenario(name: str, replicates: int, master_seed: int) -> SweepPlan:
    big = dict(n_r=200, n_c=300, n_pure_r=50, n_pure_c=100)
    small = dict(n_r=30, n_c=50, n_pure_r=10, n_pure_c=20)
    ber = EdgeDistribution.bernoulli()
    poi = EdgeDistribution.poisson()
    expn = EdgeDistribution.exponential()
    uni = EdgeDistribution.uniform()
    sgn = EdgeDistribution.signed()
    r, s = replicates, master_seed
    if name == "sim1a":
        return _rho_plan(name, ber, **big, P=_P_POS, values=_float_grid(0.1, 1.0, 0.1), replicates=r, master_seed=s)
    if name == "sim1b":
        return _alpha_plan(name, ber, 300, 50, 100, _float_grid(1, 30, 1), r, s)
    if name == "sim1c":
        return _alpha_plan(name, ber, 300, 50, 100, _float_grid(5, 50, 2.5), r, s)
    if name == "sim2a":
        return _rho_plan(name, poi, **big, P=_P_POS, values=_float_grid(0.2, 4.0, 0.2), replicates=r, master_seed=s)
    if name == "sim2b":
        return _alpha_plan(name, poi, 300, 50, 100, _float_grid(10, 100, 5), r, s)
    if name == "sim2c":
        return _alpha_plan(name, poi, 300, 50, 100, _float_grid(200, 2000, 100), r, s)
    if name == "sim3a":
        return _rho_plan(name, EdgeDistribution.binomial(7), **big, P=_P_POS, values=_float_grid(0.2, 2.0, 0.2), replicates=r, master_seed=s)
    if name == "sim3b":
        return _param_plan(name, EdgeDistribution.binomial(2), "m", **big, P=_P_POS, rho=2.0, values=_float_grid(2, 20, 2), replicates=r, master_seed=s)
    if name == "sim3c":
        return _alpha_plan(name, EdgeDistribution.binomial(7), 300, 50, 100, _float_grid(1, 20, 1), r, s)
    if name == "sim3d":
        return _alpha_plan(name, EdgeDistribution.binomial(7), 300, 50, 100, _float_grid(15, 300, 15), r, s)
    if name == "sim4a":
        return _rho_plan(name, EdgeDistribution.normal(1.0), **big, P=_P_MIXED, values=_float_grid(0.2, 2.0, 0.2), replicates=r, master_seed=s)
    if name == "sim4b":
        return _param_plan(name, EdgeDistribution.normal(0.5), "sigma2", **big, P=_P_MIXED, rho=2.0, values=_float_grid(0.5, 5.0, 0.5), replicates=r, master_seed=s)
    if name == "sim4c":
        return _alpha_plan(name, EdgeDistribution.normal(1.0), 300, 50, 100, _float_grid(-50, 50, 5), r, s)
    if name == "sim4d":
        return _alpha_plan(name, EdgeDistribution.normal(1.0), 300, 50, 100, _float_grid(-500, 500, 50), r, s)
    if name == "sim5a":
        return _rho_plan(name, expn, **big, P=_P_POS, values=_float_grid(1, 100, 1), replicates=r, master_seed=s)
    if name == "sim5b":
        return _alpha_plan(name, expn, 300, 50, 100, _float_grid(10, 100, 5), r, s)
    if name == "sim5c":
        return _alpha_plan(name, expn, 300, 50, 100, _float_grid(1000, 10000, 500), r, s)
    if name == "sim6a":
        return _rho_plan(name, uni, **small, P=_P_POS, values=_float_grid(1, 100, 1), replicates=r, master_seed=s)
    if name == "sim6b":
        return _alpha_plan(name, uni, 50, 10, 20, _float_grid(10, 100, 5), r, s)
    if name == "sim6c":
        return _alpha_plan(name, uni, 50, 10, 20, _float_grid(1000, 10000, 500), r, s)
    if name == "sim7a":
        return _rho_plan(name, EdgeDistribution.logistic(1.0), **small, P=_P_MIXED, values=_float_grid(0.2, 4.0, 0.2), replicates=r, master_seed=s)
    if name == "sim7b":
        return _param_plan(name, EdgeDistribution.logistic(0.1), "beta", **small, P=_P_MIXED, rho=0.5, values=_float_grid(0.1, 0.4, 0.05), replicates=r, master_seed=s)
    if name == "sim7c":
        return _alpha_plan(name, EdgeDistribution.logistic(1.0), 50, 10, 20, _float_grid(-50, 50, 5), r, s)
    if name == "sim7d":
        return _alpha_plan(name, EdgeDistribution.logistic(1.0), 50, 10, 20, _float_grid(-500, 500, 50), r, s)
    if name == "sim8a":
        return _rho_plan(name, sgn, n_r=100, n_c=150, n_pure_r=30, n_pure_c=60, P=_P_MIXED, values=_float_grid(0.1, 1.0, 0.1), replicates=r, master_seed=s)
    if name == "sim8b":
        return _alpha_plan(name, sgn, 300, 100, 120, _float_grid(-30, 30, 2), r, s)
    if name == "sim8c":
        return _alpha_plan(name, sgn, 300, 100, 120, _float_grid(-50, 50, 5), r, s)
    if name == "setup1":
        return _setup_plan(name, ber, 16, 7, 14, 6, _P_POS_ALT, 0.9, r, s)
    if name == "setup2":
        return _setup_plan(name, poi, 16, 7, 14, 6, _P_POS_ALT, 60.0, r, s)
    if name == "setup3":
        return _setup_plan(name, EdgeDistribution.binomial(7), 16, 7, 14, 6, _P_POS_ALT, 6.0, r, s)
    if name == "setup4":
        return _setup_plan(name, EdgeDistribution.normal(1.0), 10, 4, 8, 3, _P_MIXED_ALT, 40.0, r, s)
    if name == "setup5":
        return _setup_plan(name, expn, 10, 4, 8, 3, _P_POS_ALT, 10.0, r, s)
    if name == "setup6":
        return _setup_plan(name, uni, 10, 4, 8, 3, _P_POS_ALT, 10.0, r, s)
    if name == "setup7":
        return _setup_plan(name, EdgeDistribution.logistic(1.0), 10, 4, 8, 3, _P_MIXED_ALT, 40.0, r, s)
    if name == "setup8":
        return _setup_plan(name, sgn, 32, 14, 28, 12, _P_MIXED_ALT, 0.9, r, s)
    raise ValueError(f"unknown scenario {name!r}")


SCENARIO_NAMES = tuple(
    [f"sim1{c}" for c in "abc"]
    + [f"sim2{c}" for c in "abc"]
    + [f"sim3{c}" for c in "abcd"]
    + [f"sim4{c}" for c in "abcd"]
    + [f"sim5{c}" for c in "abc"]
    + [f"sim6{c}" for c in "abc"]
    + [f"sim7{c}" for c in "abcd"]
    + [f"sim8{c}" for c in "abc"]
    + [f"setup{i}" for i in range(1, 9)]
)


def scenario(name: str, replicates: int = 50, master_seed: int = 0) -> SweepPlan:
    """Catalogued sweep plan by name (sim1a..sim8c, setup1..setup8)."""
    return _build_scenario(name, replicates, master_seed)


def plan_from_json(data: dict) -> SweepPlan:
    """Build a plan from a JSON document: a scenario reference or a full plan."""
    from .io import spec_from_dict

    if "scenario" in data:
        return scenario(
            data["scenario"],
            replicates=data.get("replicates", 50),
            master_seed=data.get("master_seed", 0),
        )
    base = spec_from_dict(data["base"])
    axis = data["axis"]
    grid = data["grid"]
    if axis == "alpha_grid":
        grid = tuple((float(a), float(b)) for a, b in grid)
    else:
        grid = tuple(float(v) for v in grid)
    return SweepPlan(
        base=base,
        axis=axis,
        grid=grid,
        replicates=data.get("replicates", 50),
        master_seed=data.get("master_seed", 0),
        scenario=data.get("name", "custom"),
        param=data.get("param"),
    )


def load_plan(path) -> SweepPlan:
    with open(path) as fh:
        return plan_from_json(json.load(fh))
