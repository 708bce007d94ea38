"""Scalar special-function kernels on the complex plane.

Everything here works on plain ``complex`` values (finite components
required).  Branch convention throughout: principal branch, with the
negative real axis assigned arg z = +pi (upper side), so results are
reproducible for arguments that land exactly on the cut.

Regime map for the incomplete gamma function Gamma(s, z):

* ``|z| < 1.5 * (1 + |s|)``      lower-gamma power series, then Gamma - gamma
* large ``|z|`` hugging the negative real axis (``|z| + Re z`` small)
  reflected lower-gamma series (terms of one sign there, so no exponential
  cancellation), then subtract
* everywhere else   Legendre continued fraction (modified Lentz, budget
  10000, tolerance 1e-15 on successive convergents)

plus a dedicated path for s at a non-positive integer, where the
``Gamma(s) - gamma(s, z)`` split has a removable pole.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._flags import OVERFLOW_SATURATION, flag
from .errors import KernelDomainError, NonConvergenceError, PoleError

__all__ = [
    "GammaBranchSpec",
    "analytic_continuation_gamma",
    "erf_complex",
    "erfc_complex",
    "exp_integral_e",
    "gamma_fn",
    "log_gamma",
    "lower_gamma",
    "pochhammer_recip",
    "upper_gamma",
]

_EULER_GAMMA = 0.5772156649015328606065120900824024
_LN_SQRT_TWO_PI = 0.9189385332046727417803297364056176
_ITER_BUDGET = 10000
_CF_TOL = 1e-15
# The reflected lower-gamma series loses roughly (|z| + Re z)/ln 10 digits
# to cancellation, so it is used only within this budget of the negative
# real axis (where the continued fraction in turn degrades); the continued
# fraction covers the rest of the large-|z| plane.
_REFLECT_MAX_CANCEL = 4.0
_EXP_OVERFLOW = 709.0
_SNAP = 1e-12


def _as_complex(value, name: str) -> complex:
    try:
        z = complex(value)
    except (TypeError, ValueError):
        raise KernelDomainError(f"{name} must be a complex scalar, got {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise KernelDomainError(f"{name} must have finite components, got {z!r}")
    return z


def _upper_side(z: complex) -> complex:
    # Collapse -0.0 imaginary parts so the cut is approached from above.
    if z.imag == 0.0:
        return complex(z.real, 0.0)
    return z


def clog(z: complex) -> complex:
    """Principal log with arg z = +pi on the negative real axis."""
    return cmath.log(_upper_side(z))


def csqrt(z: complex) -> complex:
    """Principal square root with the same cut convention as :func:`clog`."""
    return cmath.sqrt(_upper_side(z))


def cpow(z: complex, s: complex) -> complex:
    """Principal power exp(s log z) under the :func:`clog` convention."""
    if z == 0:
        if s == 0:
            return 1.0 + 0.0j
        if (complex(s)).real > 0:
            return 0.0 + 0.0j
        raise KernelDomainError("0 raised to a power with non-positive real part")
    return cexp(s * clog(z))


def cexp(z: complex) -> complex:
    """exp that saturates (and flags) instead of raising on overflow."""
    if z.real > _EXP_OVERFLOW:
        flag(OVERFLOW_SATURATION)
        return cmath.rect(math.inf, z.imag)
    return cmath.exp(z)


# --- log gamma -------------------------------------------------------------

# B_{2m} / (2m (2m-1)) for the Stirling tail.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)


def _nearest_nonpos_int(z: complex, tol: float = _SNAP):
    """Return m >= 0 when z sits within tol of -m, else None."""
    n = round(z.real)
    if n <= 0 and abs(z - n) <= tol:
        return -n
    return None


def log_gamma(z) -> complex:
    """log of the gamma function, accurate enough that exp() round-trips.

    Stirling's series once Re(z) >= 10, reached by the upward recurrence
    log Gamma(z) = log Gamma(z + n) - sum log(z + j).  The branch is
    whatever the recurrence produces; only exp(log_gamma) is contractual.
    """
    z = _as_complex(z, "z")
    if _nearest_nonpos_int(z) is not None:
        raise PoleError(f"log_gamma pole at z = {z}")
    shift_re: list[float] = []
    shift_im: list[float] = []
    while z.real < 10.0:
        step = clog(z)
        shift_re.append(step.real)
        shift_im.append(step.imag)
        z = z + 1
    value = (z - 0.5) * clog(z) - z + _LN_SQRT_TWO_PI
    zinv2 = 1.0 / (z * z)
    term = 1.0 / z
    for coeff in _STIRLING:
        value += coeff * term
        term *= zinv2
    if shift_re:
        value -= complex(math.fsum(shift_re), math.fsum(shift_im))
    return value


def gamma_fn(z) -> complex:
    """Gamma(z) = exp(log_gamma(z))."""
    z = _as_complex(z, "z")
    w = cexp(log_gamma(z))
    if z.imag == 0.0:
        # Gamma is real on the real axis; discard the phase wobble that
        # exp(i * k*pi) leaves behind so conjugate symmetry stays exact.
        return complex(w.real, 0.0)
    return w


# --- pochhammer ------------------------------------------------------------


def pochhammer_recip(k, q: int) -> complex:
    """Reciprocal Pochhammer weight 1 / (k)_{1-q}.

    Equals 1/k at q = 0 and the finite product prod_{j=1}^{q-1} (k - j)
    for q >= 1 (empty product at q = 1).  The product form is the
    continuous continuation of Gamma(k) / Gamma(k + 1 - q), and it hits
    an exact zero precisely when k is an integer with 1 <= k <= q - 1,
    which is what makes the shell series terminate at integer k.
    """
    k = _as_complex(k, "k")
    if not isinstance(q, int) or q < 0:
        raise KernelDomainError(f"q must be a non-negative integer, got {q!r}")
    if q == 0:
        if k == 0:
            raise PoleError("pochhammer_recip(0, 0) is a pole (weight 1/k)")
        return 1.0 / k
    out = 1.0 + 0.0j
    for j in range(1, q):
        out *= k - j
    return out


# --- incomplete gamma ------------------------------------------------------


def _lower_series_direct(s: complex, z: complex) -> complex:
    # gamma(s,z) = z^s e^-z sum_n z^n / (s (s+1) ... (s+n)); good for Re z >= 0.
    term = 1.0 / s
    total = term
    for n in range(1, _ITER_BUDGET):
        term *= z / (s + n)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            prefac = cpow(z, s) * cexp(-z)
            return prefac * total
    raise NonConvergenceError(f"lower-gamma series stalled at s={s}, z={z}")


def _lower_series_reflected(s: complex, z: complex) -> complex:
    # gamma(s,z) = (z^s / s) sum_n [s/(s+n)] (-z)^n / n!;  for Re z < 0 the
    # powers of -z do not alternate, so the sum is cancellation-free near
    # the negative real axis at any |z| the exp can represent.
    w = -z
    p = 1.0 + 0.0j
    total = 1.0 + 0.0j
    budget = _ITER_BUDGET + int(2 * abs(w))
    for n in range(1, budget):
        p *= w / n
        if not (math.isfinite(p.real) and math.isfinite(p.imag)):
            flag(OVERFLOW_SATURATION)
            return p
        term = (s / (s + n)) * p
        total += term
        if n > abs(w) and abs(term) <= 1e-17 * abs(total):
            return (cpow(z, s) / s) * total
    raise NonConvergenceError(f"reflected lower-gamma series stalled at s={s}, z={z}")


def _lower_gamma_series(s: complex, z: complex) -> complex:
    if z.real < 0.0:
        return _lower_series_reflected(s, z)
    return _lower_series_direct(s, z)


def _upper_cf(s: complex, z: complex) -> complex:
    # Legendre continued fraction in the standard even form,
    # Gamma(s,z) = e^-z z^s / (z+1-s - 1(1-s)/(z+3-s - 2(2-s)/(...))),
    # evaluated by the modified Lentz method.
    tiny = 1e-300
    b = z + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, _ITER_BUDGET + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if d == 0:
            d = tiny
        c = b + an / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return cexp(s * clog(z) - z) * h
    raise NonConvergenceError(
        f"continued fraction for upper gamma did not converge at s={s}, z={z}"
    )


def _e1_series(z: complex) -> complex:
    # E_1(z) = -euler_gamma - log z - sum_{n>=1} (-z)^n / (n n!); convergent
    # everywhere, cancellation-bounded by exp(|z| - |Re z|) so it is the
    # right tool near the negative real axis.
    total = -_EULER_GAMMA - clog(z)
    p = 1.0 + 0.0j
    budget = _ITER_BUDGET + int(2 * abs(z))
    for n in range(1, budget):
        p *= -z / n
        term = -p / n
        total += term
        if n > abs(z) and abs(term) <= 1e-17 * (abs(total) + 1e-300):
            return total
    raise NonConvergenceError(f"E1 series stalled at z={z}")


def _upper_gamma_nonpos_int(m: int, z: complex) -> complex:
    # Gamma(-m, z) for integer m >= 0: start from Gamma(0, z) = E_1(z) and
    # recurse downward, Gamma(s-1, z) = (Gamma(s, z) - z^{s-1} e^-z)/(s - 1).
    if abs(z) >= 1.5 and abs(z) + z.real > _REFLECT_MAX_CANCEL:
        g = _upper_cf(0.0 + 0.0j, z)
    else:
        g = _e1_series(z)
    if m == 0:
        return g
    ez = cexp(-z)
    for j in range(1, m + 1):
        g = (g - cpow(z, complex(-j)) * ez) / (-j)
    return g


def upper_gamma(s, z) -> complex:
    """Upper incomplete gamma Gamma(s, z), principal branch.

    Entire in s; the cut in z runs along the negative real axis and is
    approached from above (arg z = +pi).  See the module docstring for
    the regime selection.
    """
    s = _as_complex(s, "s")
    z = _upper_side(_as_complex(z, "z"))
    if z == 0:
        if s.real > 0:
            return gamma_fn(s)
        raise KernelDomainError("upper_gamma(s, 0) requires Re(s) > 0")
    m = _nearest_nonpos_int(s)
    if m is not None:
        return _upper_gamma_nonpos_int(m, z)
    # For Re(s) < 0 the subtraction Gamma(s) - gamma(s, z) cancels as soon
    # as |z| is a little past 1, while the continued fraction stays sharp
    # all the way down, so the series pocket shrinks with Re(s) < 0.  Left
    # half-plane z inside the pocket still goes to the continued fraction
    # once past the reflection budget: the reflected series cancels like
    # e^(|z| + Re z) there while the fraction keeps full accuracy.
    series_radius = 1.5 * (1.0 + abs(s)) if s.real >= 0.0 else 1.5
    near_cut = abs(z) + z.real <= _REFLECT_MAX_CANCEL
    if near_cut or (abs(z) < series_radius and z.real >= 0.0):
        return gamma_fn(s) - _lower_gamma_series(s, z)
    return _upper_cf(s, z)


def lower_gamma(s, z) -> complex:
    """Lower incomplete gamma gamma(s, z) = Gamma(s) - Gamma(s, z)."""
    s = _as_complex(s, "s")
    z = _upper_side(_as_complex(z, "z"))
    if _nearest_nonpos_int(s) is not None:
        raise PoleError(f"lower_gamma has a pole in s at {s}")
    if z == 0:
        if s.real > 0:
            return 0.0 + 0.0j
        raise KernelDomainError("lower_gamma(s, 0) requires Re(s) > 0")
    if abs(z) < 1.5 * (1.0 + abs(s)):
        # Direct series: subtracting from Gamma(s) here would cancel badly
        # when gamma is small.
        return _lower_gamma_series(s, z)
    return gamma_fn(s) - upper_gamma(s, z)


@dataclass(frozen=True)
class GammaBranchSpec:
    """Which sheet of Gamma(s, z) to evaluate: z carried around 0 `winding` times."""

    winding: int = 0

    def __post_init__(self):
        if not isinstance(self.winding, int):
            raise KernelDomainError("winding must be an integer")


def analytic_continuation_gamma(s, z, branch: GammaBranchSpec | int = 0) -> complex:
    """Gamma(s, z e^{2 pi i m}) continued off the principal sheet.

    Uses Gamma(s, z e^{2 pi i m}) = e^{2 pi i m s} Gamma(s, z)
    + (1 - e^{2 pi i m s}) Gamma(s).  winding 0 returns upper_gamma
    exactly (same code path, no phase factor applied).
    """
    s = _as_complex(s, "s")
    z = _as_complex(z, "z")
    m = branch.winding if isinstance(branch, GammaBranchSpec) else branch
    if not isinstance(m, int):
        raise KernelDomainError("branch winding must be an integer")
    if m == 0:
        return upper_gamma(s, z)
    phase = cexp(2j * math.pi * m * s)
    return phase * upper_gamma(s, z) + (1.0 - phase) * gamma_fn(s)


# --- derived kernels -------------------------------------------------------


def exp_integral_e(nu, z) -> complex:
    """Generalized exponential integral E_nu(z) = z^{nu-1} Gamma(1-nu, z)."""
    nu = _as_complex(nu, "nu")
    z = _as_complex(z, "z")
    if z == 0:
        raise KernelDomainError("exp_integral_e requires z != 0")
    return cpow(z, nu - 1.0) * upper_gamma(1.0 - nu, z)


def erfc_complex(z) -> complex:
    """Complementary error function on the whole plane.

    erfc(z) = Gamma(1/2, z^2) / sqrt(pi) for Re(z) >= 0, reflected through
    erfc(z) = 2 - erfc(-z) on the left half-plane.  Saturated results
    (underflow to 0, saturation to 2) are flagged, not raised.
    """
    z = _as_complex(z, "z")
    if z == 0:
        return 1.0 + 0.0j
    if z.real < 0.0:
        out = 2.0 - erfc_complex(-z)
        if out == 2.0:
            flag(OVERFLOW_SATURATION)
        return out
    out = upper_gamma(0.5, z * z) / math.sqrt(math.pi)
    if out == 0.0:
        flag(OVERFLOW_SATURATION)
    return out


def erf_complex(z) -> complex:
    """erf(z) = 1 - erfc(z)."""
    return 1.0 - erfc_complex(z)
