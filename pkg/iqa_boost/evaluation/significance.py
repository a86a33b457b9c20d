"""
Significance of a difference between two correlation coefficients.

Both coefficients are Fisher z-transformed and their difference is compared
against a two-tailed standard-normal quantile with standard error
sqrt(2 / (n - 3)).
"""

import math
from typing import Tuple

from scipy.optimize import bisect
from scipy.stats import norm

from ..exceptions import DegenerateInputError

# Bisection resolution for the significance threshold
THRESHOLD_XTOL = 1e-12


def _check(r: float, n: int) -> None:
    if n <= 3:
        raise DegenerateInputError(f"Significance test needs n >= 4, got {n}")
    if not abs(r) < 1.0:
        raise DegenerateInputError(f"Correlation must satisfy |r| < 1, got {r}")


def critical_value(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    return float(norm.ppf(1.0 - alpha / 2.0))


def z_statistic(r1: float, r2: float, n: int) -> float:
    _check(r1, n)
    _check(r2, n)
    return (math.atanh(r1) - math.atanh(r2)) / math.sqrt(2.0 / (n - 3))


def significance_diff(r1: float, r2: float, n: int, alpha: float = 0.05) -> Tuple[bool, float]:
    """
    Returns:
        (significant, statistic) with significant meaning |statistic| exceeds
        the two-tailed critical value
    """
    statistic = z_statistic(r1, r2, n)
    return abs(statistic) > critical_value(alpha), statistic


def significance_threshold(r_base: float, n: int, alpha: float = 0.05) -> float:
    """
    Smallest correlation whose improvement over r_base is significant.

    Found by bisection on (r_base, 1); the decision flips at the returned value.
    """
    _check(r_base, n)
    crit = critical_value(alpha)
    upper = math.nextafter(1.0, 0.0)
    if z_statistic(upper, r_base, n) <= crit:
        raise DegenerateInputError(
            f"No correlation below 1 differs significantly from {r_base} at n={n}"
        )
    return float(
        bisect(lambda r: z_statistic(r, r_base, n) - crit, r_base, upper, xtol=THRESHOLD_XTOL)
    )
