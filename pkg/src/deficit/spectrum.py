"""Admissible action levels at fixed K from Walkup's existence theorem."""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .action import INV_MU_STAR, action_gap, normalized_action, tet_volume
from .errors import NotBracketable, TargetOutOfRange

WALKUP_BOUND = -10


@dataclass(frozen=True)
class WalkupParams:
    gamma_star: int = WALKUP_BOUND
    manifold: str = "S3"
    # the shipped default is an assumption, not a computed invariant
    assumed: bool = True

    def __post_init__(self):
        if int(self.gamma_star) != self.gamma_star:
            raise ValueError("gamma* must be an integer")
        if self.gamma_star < WALKUP_BOUND:
            raise ValueError(f"gamma* must be >= {WALKUP_BOUND}, got {self.gamma_star}")

    def describe(self):
        tag = "assumed default" if self.assumed else "user supplied"
        return f"gamma*={self.gamma_star} ({self.manifold}, {tag})"


@dataclass(frozen=True)
class SpectrumLevel:
    K: int
    n1: int
    mu: Fraction
    action_per_volume: float
    guaranteed: bool = True

    @property
    def n0(self):
        return self.n1 - self.K


@dataclass(frozen=True)
class Bracket:
    """Adjacent levels with ``lower.action_per_volume <= x <= upper.action_per_volume``.

    ``upper`` has one more edge than ``lower`` (smaller mean degree, larger action).
    """
    x: float
    lower: SpectrumLevel
    upper: SpectrumLevel


def _ceil_sqrt(n):
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _check_gamma(gamma_star):
    WalkupParams(gamma_star)


def n1_window(K, gamma_star=WALKUP_BOUND):
    """Integer edge counts guaranteed realizable with K tetrahedra.

    Returns ``(lo, hi)``; the window is empty when ``lo > hi``.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    _check_gamma(gamma_star)
    # smallest m with 2m - 3 >= sqrt(9 + 8K)
    m = -(-(3 + _ceil_sqrt(9 + 8 * K)) // 2)
    lo = K + m
    hi = (4 * K - gamma_star) // 3
    return lo, hi


def window_is_empty(window):
    return window[0] > window[1]


def level(K, n1, edge_length=1.0, guaranteed=True):
    mu = Fraction(6 * K, n1)
    return SpectrumLevel(K, n1, mu, normalized_action(mu, edge_length), guaranteed)


def spectrum_levels(K, edge_length=1.0, gamma_star=WALKUP_BOUND):
    """Levels for every n1 in the window, by ascending action (= ascending n1)."""
    lo, hi = n1_window(K, gamma_star)
    return [level(K, n1, edge_length) for n1 in range(lo, hi + 1)]


def action_range(edge_length=1.0):
    """Open interval of targets that can be bracketed for large K."""
    return normalized_action(6, edge_length), normalized_action(Fraction(9, 2), edge_length)


def check_target(x, edge_length=1.0):
    a6, a45 = action_range(edge_length)
    if not (a6 < x < a45):
        raise TargetOutOfRange(f"target {x} outside ({a6}, {a45})")


def _n1_float(x, K, edge_length):
    # normalized action is affine in n1: A(n1) = c * (n1 / 6K - 1/mu*)
    c = 0.75 * edge_length / tet_volume(edge_length)
    return 6.0 * K * (x / c + INV_MU_STAR)


def bracket(x, K, edge_length=1.0, gamma_star=WALKUP_BOUND):
    """Adjacent guaranteed levels around the target action ``x``.

    When ``x`` sits exactly on a level, that level is the upper one if its
    lower neighbour is in the window, else the lower one.
    """
    check_target(x, edge_length)
    lo, hi = n1_window(K, gamma_star)
    if hi - lo < 1:
        raise NotBracketable(f"window [{lo}, {hi}] at K={K} has fewer than two levels")
    guess = int(math.ceil(_n1_float(x, K, edge_length)))
    for n in range(max(lo + 1, guess - 2), min(hi, guess + 2) + 1):
        upper = level(K, n, edge_length)
        if upper.action_per_volume >= x:
            lower = level(K, n - 1, edge_length)
            if lower.action_per_volume <= x:
                return Bracket(x, lower, upper)
    raise NotBracketable(f"target {x} is outside the guaranteed levels at K={K}")


def min_bracketing_K(x, edge_length=1.0, gamma_star=WALKUP_BOUND, k_max=10 ** 9, chunk=1 << 16):
    """Smallest K at which :func:`bracket` succeeds (ascending scan)."""
    check_target(x, edge_length)
    _check_gamma(gamma_star)
    c = 0.75 * edge_length / tet_volume(edge_length)
    start = 1
    while start <= k_max:
        K = np.arange(start, min(start + chunk, k_max + 1), dtype=np.int64)
        d = 9 + 8 * K
        r = np.floor(np.sqrt(d.astype(np.float64))).astype(np.int64)
        r -= (r * r > d)
        r += ((r + 1) * (r + 1) <= d)
        csq = r + (r * r != d)
        lo = K + (3 + csq + 1) // 2
        hi = (4 * K - gamma_star) // 3
        a_lo = c * (lo / (6.0 * K) - INV_MU_STAR)
        a_hi = c * (hi / (6.0 * K) - INV_MU_STAR)
        ok = (hi > lo) & (a_lo <= x) & (x <= a_hi)
        for idx in np.flatnonzero(ok):
            k = int(K[idx])
            try:
                bracket(x, k, edge_length, gamma_star)
            except NotBracketable:
                continue
            return k
        start += chunk
    raise NotBracketable(f"no K <= {k_max} brackets {x}")


def gap_between(K, n1, edge_length=1.0):
    """Action difference between levels n1 + 1 and n1 (equals action_gap)."""
    return level(K, n1 + 1, edge_length).action_per_volume - level(K, n1, edge_length).action_per_volume


__all__ = [
    "WalkupParams", "SpectrumLevel", "Bracket", "n1_window", "window_is_empty", "level",
    "spectrum_levels", "action_range", "check_target", "bracket", "min_bracketing_K",
    "gap_between", "action_gap",
]
