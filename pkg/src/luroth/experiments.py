"""Monte Carlo for the run-length law and a tabulation of the dimension formula.

Digits of a Lebesgue-uniform point are i.i.d. with P(d = t) = 1/(t(t-1)), so
the sampler draws digits directly instead of iterating T on random rationals.
Every trial gets its own child of one `numpy.random.SeedSequence`, which makes
results independent of how trials are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError
from .moran import DEFAULT_TOL, DimParams, dim_case, dim_E
from .runlength import max_run_array


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    trials: int = 200
    n: int = 100_000
    quantiles: tuple[float, ...] = (0.05, 0.25, 0.5, 0.75, 0.95)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")


def sample_digit(draw: float) -> int:
    """Inverse CDF of the digit law: floor(1/(1-draw)) + 1 for draw in (0, 1)."""
    if not 0 < draw < 1:
        raise DomainError(f"draw must lie in the open interval (0, 1), got {draw}")
    return math.floor(1 / (1 - draw)) + 1


def sample_digits(rng: np.random.Generator, size: int) -> np.ndarray:
    """`size` i.i.d. digits.  Draws of exactly 0 are remapped, never 1 (numpy's range is [0, 1))."""
    draw = rng.random(size)
    draw[draw == 0.0] = np.nextafter(0.0, 1.0)
    # 1/(1-draw) is at most 2^53, so int64 is safe
    return np.floor(1.0 / (1.0 - draw)).astype(np.int64) + 1


def trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def run_ratios(config: ExperimentConfig) -> np.ndarray:
    """ell_n / log2(n) for each trial, in trial order."""
    denom = math.log2(config.n)
    return np.array([max_run_array(sample_digits(rng, config.n)) / denom
                     for rng in trial_rngs(config.seed, config.trials)])


def summarize(ratios: np.ndarray, quantiles=(0.05, 0.25, 0.5, 0.75, 0.95)) -> dict:
    q = np.quantile(ratios, quantiles)
    q25, q75 = np.quantile(ratios, [0.25, 0.75])
    return {
        "mean": float(ratios.mean()),
        "median": float(np.median(ratios)),
        "std": float(ratios.std(ddof=1)) if ratios.size > 1 else 0.0,
        "iqr": float(q75 - q25),
        "quantiles": {f"{p:g}": float(v) for p, v in zip(quantiles, q)},
        "trials": int(ratios.size),
    }


def lln_experiment(config: ExperimentConfig) -> dict:
    """Summary statistics of ell_n / log2(n) across trials, plus the config."""
    summary = summarize(run_ratios(config), config.quantiles)
    summary["config"] = asdict(config)
    summary["n"] = config.n
    return summary


SURFACE_COLUMNS = ("alpha", "beta", "case", "dim", "err")


def dim_surface(resolution: int, tol: float = DEFAULT_TOL, prec: Optional[int] = None) -> list[dict]:
    """dim E(alpha, beta) on the grid {i/resolution}^2 with the case label.

    Cells with alpha > beta are not sets of interest and come back with empty
    case, dim and err.  `err` is the certified bound for middle cells, 0 otherwise.
    """
    if resolution < 2:
        raise DomainError(f"grid resolution must be >= 2, got {resolution}")
    rows = []
    for j in range(resolution + 1):
        beta = Fraction(j, resolution)
        for i in range(resolution + 1):
            alpha = Fraction(i, resolution)
            row = {"alpha": alpha, "beta": beta, "case": "", "dim": None, "err": None}
            if alpha <= beta:
                params = DimParams(alpha, beta)
                value = dim_E(params, tol=tol, prec=prec)
                row["case"] = dim_case(params)
                row["dim"] = float(value.value)
                row["err"] = float(value.error_bound)
            rows.append(row)
    return rows
