"""Chebyshev polynomials of the first kind and shell convolution coefficients.

The double series this package evaluates couples two Chebyshev families
through the total degree q = n + p; collapsing the double sum to a single
sum needs the per-shell convolution C_q = sum_{n=0}^{q} T_n(alpha)
T_{q-n}(beta).  Everything here accepts arbitrary complex argument: the
three-term recurrence is forward-stable for the growing branch, which is
exactly what arguments outside [-1, 1] need.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexfn import csqrt
from .errors import KernelDomainError

__all__ = ["ShellCoefficient", "cheb_t", "growth_radius", "shell_coeff"]


def _as_index(n, name: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise KernelDomainError(f"{name} must be a non-negative integer, got {n!r}")
    return n


def cheb_t(n: int, x) -> complex:
    """T_n(x) by the three-term recurrence T_{n+1} = 2x T_n - T_{n-1}."""
    n = _as_index(n, "n")
    x = complex(x)
    if n == 0:
        return 1.0 + 0.0j
    prev, cur = 1.0 + 0.0j, x
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def _cheb_row(n_max: int, x: complex) -> list:
    """[T_0(x), ..., T_{n_max}(x)] in one recurrence pass."""
    row = [1.0 + 0.0j]
    if n_max == 0:
        return row
    row.append(x)
    for _ in range(n_max - 1):
        row.append(2.0 * x * row[-1] - row[-2])
    return row


@dataclass(frozen=True)
class ShellCoefficient:
    """One shell q of the convolution, C_q = sum_n T_n(alpha) T_{q-n}(beta)."""

    q: int
    value: complex


def _shell_value(q: int, ta: list, tb: list) -> complex:
    # Pairs (n, q-n) and (q-n, n) are summed together so that swapping
    # alpha and beta permutes commutative operations only: the result is
    # bit-identical under the swap.
    total = 0.0 + 0.0j
    for n in range(q // 2 if q % 2 == 0 else (q + 1) // 2):
        total += ta[n] * tb[q - n] + ta[q - n] * tb[n]
    if q % 2 == 0:
        total += ta[q // 2] * tb[q // 2]
    return total


def shell_coeff(q: int, alpha, beta) -> ShellCoefficient:
    """Convolution coefficient for shell q at (alpha, beta)."""
    q = _as_index(q, "q")
    alpha = complex(alpha)
    beta = complex(beta)
    ta = _cheb_row(q, alpha)
    tb = _cheb_row(q, beta)
    return ShellCoefficient(q=q, value=_shell_value(q, ta, tb))


def shell_values(q_max: int, alpha, beta) -> list:
    """All shell coefficients C_0..C_{q_max} sharing one recurrence pass.

    O(q_max^2) total; this is the per-call cache the series engine uses
    (coefficients are never memoized across calls).
    """
    q_max = _as_index(q_max, "q_max")
    alpha = complex(alpha)
    beta = complex(beta)
    ta = _cheb_row(q_max, alpha)
    tb = _cheb_row(q_max, beta)
    return [_shell_value(q, ta, tb) for q in range(q_max + 1)]


def growth_radius(x) -> float:
    """rho(x) = modulus of the larger root of t^2 - 2xt + 1.

    |T_n(x)| grows like rho(x)^n; the series engine compares this against
    |a pi| to decide whether shells can decay at all.
    """
    x = complex(x)
    w = x + csqrt(x * x - 1.0)
    r = abs(w)
    if r == 0.0:  # x*x == 1 rounds the root to 0 only if x == 0; guard anyway
        return 1.0
    return max(r, 1.0 / r)
