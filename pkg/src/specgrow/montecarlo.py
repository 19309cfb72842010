"""Monte Carlo validation of the closed-form measures.

Simulates the noisy first-order dynamics x' = -L x + white noise with an
explicit Euler-Maruyama scheme (per-node Gaussian increments of variance
dt) and compares ensemble statistics of the centered output against the
spectral formulas.  All randomness flows from the configured seed through
a single generator in a fixed draw order, so a given (state, config, t)
always reproduces the same estimate bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, UnstableStepSize, UnsupportedMeasure
from .laplacian import LaplacianState
from .measures import MeasureSpec, evaluate

SCHEME = "euler-maruyama"

# Time at which exp(-2 lam_2 t) has decayed past any tolerance we test at.
STATIONARY_HORIZON = 20.0


@dataclass(frozen=True)
class SimConfig:
    """Step size, horizon, ensemble size and seed for one validation run."""

    dt: float
    t_final: float
    trials: int
    seed: int
    scheme: str = SCHEME

    def __post_init__(self):
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise InvalidParameter(f"step size must be positive, got {self.dt}")
        if not (self.t_final > 0.0):
            raise InvalidParameter(f"horizon must be positive, got {self.t_final}")
        if self.trials < 100:
            raise InvalidParameter(f"need at least 100 trials, got {self.trials}")
        if self.scheme != SCHEME:
            raise InvalidParameter(f"unknown scheme {self.scheme!r}")


@dataclass(frozen=True)
class ValidationReport:
    measure: str
    closed_form: float
    estimate: float
    std_error: float
    z_score: float
    effect_size: float
    passed: bool
    t: float
    seed: int
    dt: float
    trials: int

    def to_json_obj(self) -> dict:
        return {
            "measure": self.measure,
            "closed_form": self.closed_form,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "z_score": self.z_score,
            "effect_size": self.effect_size,
            "passed": self.passed,
            "t": self.t,
            "seed": self.seed,
            "dt": self.dt,
            "trials": self.trials,
        }


def stable_step_bound(state: LaplacianState) -> float:
    return 0.1 / float(state.eigvals[-1])


def simulate_output_covariance(state: LaplacianState, cfg: SimConfig, t: float,
                               noise_scale: float = 1.0) -> tuple[float, float]:
    """Ensemble estimate of the squared deviation from average at time t.

    Returns (estimate, standard error) over cfg.trials independent paths
    started at zero.  The step count is rounded so the grid hits t exactly
    with an effective step no larger than cfg.dt.
    """
    if t < 0.0:
        raise InvalidParameter(f"time must be nonnegative, got {t}")
    if t > cfg.t_final * (1.0 + 1e-12):
        raise InvalidParameter(f"time {t} beyond configured horizon {cfg.t_final}")
    if cfg.dt > stable_step_bound(state):
        raise UnstableStepSize(
            f"dt={cfg.dt} above stability bound {stable_step_bound(state):.3e}")
    if t == 0.0:
        return 0.0, 0.0

    steps = max(1, math.ceil(t / cfg.dt))
    h = t / steps
    root_h = noise_scale * math.sqrt(h)
    L = np.asarray(state.matrix)
    rng = np.random.default_rng(cfg.seed)

    X = np.zeros((cfg.trials, state.n))
    for _ in range(steps):
        X = X - h * (X @ L) + root_h * rng.standard_normal((cfg.trials, state.n))

    Y = X - X.mean(axis=1, keepdims=True)
    samples = np.einsum("ij,ij->i", Y, Y)
    estimate = float(samples.mean())
    std_error = float(samples.std(ddof=1) / math.sqrt(cfg.trials))
    return estimate, std_error


def stationary_time(state: LaplacianState) -> float:
    return STATIONARY_HORIZON / float(state.eigvals[1])


def validate_measure(state: LaplacianState, m: MeasureSpec,
                     cfg: SimConfig) -> ValidationReport:
    """Compare simulation against the closed form at 3 standard errors.

    Supported measures: tau:t=T (transient covariance at its own time) and
    zeta:q=1 (stationary covariance, which equals half the zeta value; the
    simulation runs to the stationarity proxy time).
    """
    if m.kind == "tau":
        t = float(m.param)
        closed = evaluate(m, state)
    elif m.kind == "zeta" and m.param == 1.0:
        t = stationary_time(state)
        closed = evaluate(m, state) / 2.0
    else:
        raise UnsupportedMeasure(f"no simulation target for {m.label}")
    if t > cfg.t_final * (1.0 + 1e-12):
        raise InvalidParameter(
            f"validation needs t={t:.3f} but the horizon is {cfg.t_final}")

    estimate, std_error = simulate_output_covariance(state, cfg, t)
    if std_error > 0.0:
        z = (estimate - closed) / std_error
    else:
        z = 0.0 if estimate == closed else math.inf
    return ValidationReport(
        measure=m.label,
        closed_form=closed,
        estimate=estimate,
        std_error=std_error,
        z_score=z,
        effect_size=(estimate - closed) / closed if closed else math.inf,
        passed=abs(z) <= 3.0,
        t=t,
        seed=cfg.seed,
        dt=cfg.dt,
        trials=cfg.trials,
    )
