"""Generalized Laguerre polynomials and mode normalization constants."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError


def laguerre(n: int, alpha: int, x):
    """Evaluate L_n^alpha(x) by the stable upward three-term recurrence.

    L_k = ((2k - 1 + alpha - x) L_{k-1} - (k - 1 + alpha) L_{k-2}) / k.
    Accepts scalar or ndarray x.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"degree n must be a non-negative integer, got {n!r}")
    if not isinstance(alpha, (int, np.integer)) or alpha < 0:
        raise DomainError(f"order alpha must be a non-negative integer, got {alpha!r}")
    if not np.all(np.isfinite(x)):
        raise DomainError("argument x must be finite")
    prev = x * 0.0 + 1.0
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k
    return cur


def mode_norm_constant(n: int, ell: int) -> float:
    """Normalization sqrt(2 n! / (pi (n+|ell|)!)), via log-gamma for overflow safety."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"radial index n must be a non-negative integer, got {n!r}")
    la = abs(int(ell))
    log_c2 = math.log(2.0) + math.lgamma(n + 1) - math.log(math.pi) - math.lgamma(n + la + 1)
    return math.exp(0.5 * log_c2)
