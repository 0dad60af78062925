"""The maximal run-length function ell_n and finite-sample growth ratios."""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np

from .errors import DomainError


def max_run(word: Sequence[int]) -> int:
    """Length of the longest block of equal consecutive digits."""
    if len(word) == 0:
        raise DomainError("max_run of an empty digit string")
    best = cur = 1
    for prev, d in zip(word, word[1:]):
        cur = cur + 1 if d == prev else 1
        if cur > best:
            best = cur
    return best


def run_trajectory(word: Sequence[int]) -> list[int]:
    """Entry i is ell_{i+1}, the longest run within the first i+1 digits."""
    if len(word) == 0:
        raise DomainError("run_trajectory of an empty digit string")
    out = [1]
    best = cur = 1
    for prev, d in zip(word, word[1:]):
        cur = cur + 1 if d == prev else 1
        if cur > best:
            best = cur
        out.append(best)
    return out


def max_run_array(a) -> int:
    """Vectorised `max_run` for long numpy sequences."""
    a = np.asarray(a)
    if a.size == 0:
        raise DomainError("max_run of an empty digit string")
    # run boundaries are where the value changes
    change = np.flatnonzero(a[1:] != a[:-1]) + 1
    edges = np.concatenate(([0], change, [a.size]))
    return int(np.diff(edges).max())


def growth_ratios(traj: Sequence[int], scale: Literal["linear", "log2"] = "linear") -> list[float]:
    """ell_n / n for n = 1, 2, ... or ell_n / log2(n) for n = 2, 3, ...

    The log2 list starts at n = 2 since log2(1) = 0; see `ratio_indices`.
    """
    return [traj[n - 1] / _denominator(n, scale) for n in ratio_indices(len(traj), scale)]


def ratio_indices(length: int, scale: str = "linear") -> range:
    if scale == "linear":
        return range(1, length + 1)
    if scale == "log2":
        return range(2, length + 1)
    raise DomainError(f"unknown scale {scale!r}")


def _denominator(n: int, scale: str) -> float:
    return n if scale == "linear" else math.log2(n)


def inf_sup_estimate(ratios: Sequence[float], tail_fraction: float = 0.5) -> tuple[float, float]:
    """(min, max) of the last `tail_fraction` of `ratios`.

    A finite-window proxy for (liminf, limsup); not a limit.
    """
    if not 0 < tail_fraction <= 1:
        raise DomainError(f"tail_fraction must lie in (0, 1], got {tail_fraction}")
    size = math.floor(len(ratios) * tail_fraction)
    if size < 1:
        raise DomainError("tail window is empty")
    window = ratios[len(ratios) - size:]
    return min(window), max(window)
