"""Closed-form counterparts of the shell series, built from incomplete gammas.

Two independent routes to the same value are implemented on purpose:

* ``contour_term`` / the twelve-term table: each addend of the partial
  fraction decomposition, normalized so the twelve values sum directly
  to the series value;
* ``closed_form``: the assembled sixteen-addend bracket, written out
  literally with its own prefactor.

They share only the scalar kernels, so agreement between them is a real
cross-check on the transcription.  ``closed_form_cos`` is the same
identity in angle coordinates (alpha = cos theta), and the remaining
functions are fixed reference formulas: the all-ones limit, the
golden-ratio point, the error-function point, and the five odd-shell
difference identities at alpha = beta = c.

Branch convention: principal everywhere, negative real axis read with
arg = +pi (see complexfn).  The difference identities for c = 3 and
c = 5 multiply several non-principal-safe powers; they are evaluated
with principal powers and flagged branch-sensitive rather than silently
trusted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._flags import BRANCH_SENSITIVE, flag
from .complexfn import (
    cexp,
    cpow,
    csqrt,
    erfc_complex,
    exp_integral_e,
    log_gamma,
    upper_gamma,
)
from .errors import ConfigError, NonConvergenceError, PoleError, SingularParameterError
from .series import SeriesParams

__all__ = [
    "TWELVE_TERMS",
    "ContourTermSpec",
    "LimitSpec",
    "closed_form",
    "closed_form_cos",
    "contour_term",
    "diff_closed_form",
    "erfc_product_value",
    "golden_ratio_value",
    "limit_eval",
    "prop1_value",
]

# Within this distance of a removable singularity the formulas lose about
# six digits per decade of proximity; reject and point at limit_eval.
_MOAT = 1e-6


def _check_regular(params: SeriesParams, alpha_side: bool = True, beta_side: bool = True):
    k, alpha, beta = params.k, params.alpha, params.beta
    if abs(alpha - beta) <= _MOAT:
        raise SingularParameterError(
            "alpha and beta coincide (removable singularity); use limit_eval")
    if alpha_side and min(abs(alpha - 1.0), abs(alpha + 1.0)) <= _MOAT:
        raise SingularParameterError(
            "alpha sits at +-1 (removable singularity); use limit_eval")
    if beta_side and min(abs(beta - 1.0), abs(beta + 1.0)) <= _MOAT:
        raise SingularParameterError(
            "beta sits at +-1 (removable singularity); use limit_eval")
    if abs(k) <= _MOAT or abs(k + 1.0) <= _MOAT:
        raise SingularParameterError(
            "k at 0 or -1 divides the prefactor to zero; use limit_eval "
            "on a nearby k or the series route")
    if params.a_pi() == 0:
        raise SingularParameterError("a*pi must be nonzero")


@dataclass(frozen=True)
class ContourTermSpec:
    """One addend of the twelve-term decomposition.

    (variable, root_sign, order_shift) is a primary key: the twelve specs
    tile {alpha-side, beta-side} x {+, -} x {-1, 0, +1}.  The gamma order
    is k + 1 + order_shift; the prefactor kind follows the shift (unit at
    +1, alpha-plus-beta at 0, alpha-beta-product at -1).
    """

    index: int
    variable: str          # "alpha-side" | "beta-side"
    root_sign: str         # "+" | "-" sign of i*sqrt(1 - x^2)
    order_shift: int       # in {-1, 0, +1}
    prefactor_kind: str    # "unit" | "alpha-plus-beta" | "alpha-beta-product"

    def __post_init__(self):
        if self.variable not in ("alpha-side", "beta-side"):
            raise ConfigError(f"bad variable {self.variable!r}")
        if self.root_sign not in ("+", "-"):
            raise ConfigError(f"bad root_sign {self.root_sign!r}")
        if self.order_shift not in (-1, 0, 1):
            raise ConfigError(f"bad order_shift {self.order_shift!r}")
        kinds = ("unit", "alpha-plus-beta", "alpha-beta-product")
        if self.prefactor_kind not in kinds:
            raise ConfigError(f"bad prefactor_kind {self.prefactor_kind!r}")


TWELVE_TERMS = (
    ContourTermSpec(1, "alpha-side", "+", +1, "unit"),
    ContourTermSpec(2, "alpha-side", "+", 0, "alpha-plus-beta"),
    ContourTermSpec(3, "alpha-side", "-", +1, "unit"),
    ContourTermSpec(4, "alpha-side", "-", 0, "alpha-plus-beta"),
    ContourTermSpec(5, "alpha-side", "+", -1, "alpha-beta-product"),
    ContourTermSpec(6, "alpha-side", "-", -1, "alpha-beta-product"),
    ContourTermSpec(7, "beta-side", "+", +1, "unit"),
    ContourTermSpec(8, "beta-side", "+", 0, "alpha-plus-beta"),
    ContourTermSpec(9, "beta-side", "+", -1, "alpha-beta-product"),
    ContourTermSpec(10, "beta-side", "-", +1, "unit"),
    ContourTermSpec(11, "beta-side", "-", 0, "alpha-plus-beta"),
    ContourTermSpec(12, "beta-side", "-", -1, "alpha-beta-product"),
)


def contour_term(spec: ContourTermSpec, params: SeriesParams) -> complex:
    """Value of one decomposition addend, series-normalized.

    Each addend is i * pref / (4 * sqrt(1-x^2) * (alpha-beta)) times
    e^(z X) X^(-(k+1+shift)) Gamma(k+1+shift, z X) / Gamma(k+1+shift)
    with X = x +- i sqrt(1-x^2) and z = a*pi; the sum of the twelve is
    the series value once the shared Gamma(k) z^(-k) factor from the
    generating-kernel side is folded in, which this function does.
    """
    _check_regular(params,
                   alpha_side=spec.variable == "alpha-side",
                   beta_side=spec.variable == "beta-side")
    z = params.a_pi()
    k, alpha, beta = params.k, params.alpha, params.beta
    x = alpha if spec.variable == "alpha-side" else beta
    root = csqrt(1.0 - x * x)
    big_x = x + 1j * root if spec.root_sign == "+" else x - 1j * root
    order = k + 1.0 + spec.order_shift
    if spec.prefactor_kind == "unit":
        pref = 1.0 + 0.0j
    elif spec.prefactor_kind == "alpha-plus-beta":
        # printed with a stray standalone token in two of the equations;
        # the multiplier used to build them is (alpha + beta)
        pref = alpha + beta
    else:
        pref = alpha * beta
    side = 1.0 if spec.variable == "alpha-side" else -1.0
    rsgn = 1.0 if spec.root_sign == "+" else -1.0
    sign = side * rsgn * (-1.0 if spec.order_shift == 0 else 1.0)
    norm = cexp(log_gamma(k) - log_gamma(order)) * cpow(z, -k)
    return (sign * 1j * pref / (4.0 * root * (alpha - beta))
            * cexp(z * big_x) * cpow(big_x, -order)
            * upper_gamma(order, z * big_x) * norm)


def closed_form(params: SeriesParams) -> complex:
    """The assembled sixteen-addend bracket, transcribed literally."""
    _check_regular(params)
    z = params.a_pi()
    k, alpha, beta = params.k, params.alpha, params.beta
    sa = csqrt(1.0 - alpha * alpha)
    sb = csqrt(1.0 - beta * beta)
    am = alpha - 1j * sa
    ap = alpha + 1j * sa
    bm = beta - 1j * sb
    bp = beta + 1j * sb

    e_am, e_ap, e_bm, e_bp = cexp(z * am), cexp(z * ap), cexp(z * bm), cexp(z * bp)
    g0_am, g1_am, g2_am = (upper_gamma(k, z * am), upper_gamma(k + 1, z * am),
                           upper_gamma(k + 2, z * am))
    g0_ap, g1_ap, g2_ap = (upper_gamma(k, z * ap), upper_gamma(k + 1, z * ap),
                           upper_gamma(k + 2, z * ap))
    g0_bm, g1_bm, g2_bm = (upper_gamma(k, z * bm), upper_gamma(k + 1, z * bm),
                           upper_gamma(k + 2, z * bm))
    g0_bp, g1_bp, g2_bp = (upper_gamma(k, z * bp), upper_gamma(k + 1, z * bp),
                           upper_gamma(k + 2, z * bp))
    p0_am, p1_am, p2_am = cpow(am, -k), cpow(am, -k - 1), cpow(am, -k - 2)
    p0_ap, p1_ap, p2_ap = cpow(ap, -k), cpow(ap, -k - 1), cpow(ap, -k - 2)
    p0_bm, p1_bm, p2_bm = cpow(bm, -k), cpow(bm, -k - 1), cpow(bm, -k - 2)
    p0_bp, p1_bp, p2_bp = cpow(bp, -k), cpow(bp, -k - 1), cpow(bp, -k - 2)

    bracket = (
        e_am * sb * g2_am * p2_am
        - e_am * (k + 1) * alpha * sb * g1_am * p1_am
        - e_am * (k + 1) * beta * sb * g1_am * p1_am
        + e_am * k * (k + 1) * alpha * beta * sb * g0_am * p0_am
        - e_ap * k * (k + 1) * alpha * p0_ap * beta * sb * g0_ap
        - e_bm * k * (k + 1) * alpha * sa * beta * p0_bm * g0_bm
        + e_bp * k * (k + 1) * alpha * sa * beta * p0_bp * g0_bp
        + e_ap * (k + 1) * alpha * p1_ap * sb * g1_ap
        + e_ap * (k + 1) * p1_ap * beta * sb * g1_ap
        + e_bm * (k + 1) * sa * beta * p1_bm * g1_bm
        + e_bm * (k + 1) * alpha * sa * p1_bm * g1_bm
        - e_bp * (k + 1) * sa * beta * p1_bp * g1_bp
        - e_bp * (k + 1) * alpha * sa * p1_bp * g1_bp
        - e_ap * p2_ap * sb * g2_ap
        - e_bm * sa * p2_bm * g2_bm
        + e_bp * sa * p2_bp * g2_bp
    )
    pref = 1.0 / (4j * k * (k + 1) * cpow(z, k) * sa * (alpha - beta) * sb)
    return pref * bracket


def closed_form_cos(a, k, theta_alpha, theta_beta) -> complex:
    """Angle-coordinate form of the closed expression (alpha = cos theta).

    Written out exactly as the cotangent/cosecant expression prints,
    including the mixed e^(+-i theta) power pairings on the beta side.
    """
    a, k = complex(a), complex(k)
    ta, tb = complex(theta_alpha), complex(theta_beta)
    ca, cb = cmath.cos(ta), cmath.cos(tb)
    sina, sinb = cmath.sin(ta), cmath.sin(tb)
    probe = SeriesParams(a=a, k=k, alpha=ca, beta=cb)
    _check_regular(probe)
    if abs(sina) <= _MOAT or abs(sinb) <= _MOAT:
        raise SingularParameterError(
            "sin(theta) vanishes (cos theta at +-1); use limit_eval")
    z = a * math.pi
    xm, xp = cexp(-1j * ta), cexp(1j * ta)
    ym, yp = cexp(-1j * tb), cexp(1j * tb)
    cot_a, csc_a = ca / sina, 1.0 / sina
    cot_b, csc_b = cb / sinb, 1.0 / sinb
    g0_xm, g1_xm, g2_xm = (upper_gamma(k, z * xm), upper_gamma(1 + k, z * xm),
                           upper_gamma(2 + k, z * xm))
    g0_xp, g1_xp, g2_xp = (upper_gamma(k, z * xp), upper_gamma(1 + k, z * xp),
                           upper_gamma(2 + k, z * xp))
    g0_ym, g1_ym, g2_ym = (upper_gamma(k, z * ym), upper_gamma(1 + k, z * ym),
                           upper_gamma(2 + k, z * ym))
    g0_yp, g1_yp, g2_yp = (upper_gamma(k, z * yp), upper_gamma(1 + k, z * yp),
                           upper_gamma(2 + k, z * yp))
    pxm, pxp = cpow(xm, -k), cpow(xp, -k)
    pyp_k, pym_k = cpow(yp, k), cpow(ym, k)

    bracket = (
        cexp(z * xm) * pxm * k * (1 + k) * cb * cot_a * g0_xm
        - cexp(z * xp) * pxp * k * (1 + k) * cb * cot_a * g0_xp
        - k * (1 + k) * ca * cot_b * (cexp(z * ym) * pyp_k * g0_ym
                                      - cexp(z * yp) * pym_k * g0_yp)
        - cexp(z * xm + 1j * ta) * pxm * (1 + k) * (ca + cb) * csc_a * g1_xm
        + cexp(z * xp - 1j * ta) * pxp * (1 + k) * (ca + cb) * csc_a * g1_xp
        + cexp(z * ym + 1j * tb) * pyp_k * (1 + k) * (ca + cb) * csc_b * g1_ym
        - cexp(z * yp - 1j * tb) * pym_k * (1 + k) * (ca + cb) * csc_b * g1_yp
        + cexp(z * xm + 2j * ta) * pxm * csc_a * g2_xm
        - cexp(z * xp - 2j * ta) * pxp * csc_a * g2_xp
        - cexp(z * ym + 2j * tb) * pyp_k * csc_b * g2_ym
        + cexp(z * yp - 2j * tb) * pym_k * csc_b * g2_yp
    )
    return bracket / (4.0 * k * 1j * (1 + k) * cpow(z, k) * (ca - cb))


def prop1_value(a, k) -> complex:
    """All-ones limit of the series: 1 + 1/k + e^z (1+k-z) E_{1-k}(z), z = a pi."""
    a, k = complex(a), complex(k)
    if k == 0:
        raise PoleError("k = 0 is a pole (1/k term)")
    z = a * math.pi
    if z == 0:
        raise SingularParameterError("a*pi must be nonzero")
    return 1.0 + 1.0 / k + cexp(z) * (1.0 + k - z) * exp_integral_e(1.0 - k, z)


def golden_ratio_value(a, k) -> complex:
    """Series point alpha = sqrt5, beta = sqrt5/2: four E-function addends.

    The Chebyshev roots at these arguments are sqrt5 -+ 2 and
    (sqrt5 -+ 1)/2, so every exponential scale in the formula is a
    golden-ratio power.
    """
    a, k = complex(a), complex(k)
    if k == 0:
        raise PoleError("k = 0 is a pole (1/k term)")
    z = a * math.pi
    if z == 0:
        raise SingularParameterError("a*pi must be nonzero")
    r5 = math.sqrt(5.0)
    terms = (
        (4.0 + r5) * cexp((r5 - 2.0) * z) * exp_integral_e(1.0 - k, (r5 - 2.0) * z)
        + (r5 - 1.0) * cexp(0.5 * (r5 - 1.0) * z) * exp_integral_e(1.0 - k, 0.5 * (r5 - 1.0) * z)
        + (1.0 + r5) * cexp(0.5 * (1.0 + r5) * z) * exp_integral_e(1.0 - k, 0.5 * (1.0 + r5) * z)
        + (r5 - 4.0) * cexp((2.0 + r5) * z) * exp_integral_e(1.0 - k, (2.0 + r5) * z)
    )
    return 1.0 / k + terms / (4.0 * r5)


def erfc_product_value() -> complex:
    """Reference value of the cosine-product series at the error-function point.

    This is the fixed-constant expression (k = -1/2, a = e^4/pi, angles
    pi/2 and pi/4) assembled from erf/erfc; roots of -1 are principal
    powers.  The two erf(w) + 1 factors are carried out as erfc(-w),
    which is the same number: erf(w) here is -1 plus a residue of order
    1e-19, so the literal addition would round the residue away and the
    adjacent e^(+38.6...) exponential would amplify that rounding to a
    percent-level error.
    """
    e2 = math.exp(2.0)
    e4 = math.exp(4.0)
    minus1 = -1.0 + 0.0j

    def root(p: float) -> complex:
        return cpow(minus1, p)

    r2 = math.sqrt(2.0)
    bracket = (
        (2.0 + 1j * r2) * cexp(-1j * e4) * erfc_complex(-root(0.75) * e2)
        + 2.0 * root(7.0 / 8.0) * cexp(-root(0.75) * e4) * erfc_complex(-root(7.0 / 8.0) * e2)
        + 2.0 * root(5.0 / 8.0) * cexp(root(0.25) * e4) * erfc_complex(root(1.0 / 8.0) * e2)
        - (r2 + 2j) * cexp(1j * e4) * erfc_complex(root(0.25) * e2)
    )
    return (0.25 + 0.25j) * e2 * math.sqrt(math.pi) * bracket


def _branch_disc(a: complex, k: complex) -> complex:
    # (-a)^k - a^k e^(i k pi): identically zero for a > 0 real under the
    # upper-side reading of the cut, and the multi-branch residue
    # elsewhere
    return cpow(-a, k) - cpow(a, k) * cexp(1j * k * math.pi)


def _diff_c1(a: complex, k: complex) -> complex:
    z = a * math.pi
    pref = cexp(-(a + 1j * k) * math.pi) / (cpow(z, k) * k)
    return pref * (
        k * (1.0 + k + z) * upper_gamma(k, -z)
        + cexp(z) * (_branch_disc(a, k) * (1.0 + k) * cpow(math.pi + 0j, k)
                     - cexp((a + 1j * k) * math.pi) * k * (1.0 + k - z) * upper_gamma(k, z))
    )


def _diff_c2(a: complex, k: complex) -> complex:
    z = a * math.pi
    r3 = math.sqrt(3.0)
    pref = cpow(a, -k) * cexp(-((2.0 + r3) * a + 1j * k) * math.pi) / (12.0 * k)
    return pref * (
        6.0 * cexp((2.0 + r3) * z) * _branch_disc(a, k) * (2.0 + k)
        + k * (
            -cpow(a, k) * cexp(4.0 * z + 1j * k * math.pi)
            * (6.0 + 2.0 * r3 + 3.0 * k + 3.0 * (r3 - 2.0) * z)
            * exp_integral_e(1.0 - k, -((r3 - 2.0) * z))
            + cpow(-a, k) * cexp(2.0 * r3 * z)
            * (6.0 + 2.0 * r3 + 3.0 * k - 3.0 * (r3 - 2.0) * z)
            * exp_integral_e(1.0 - k, (r3 - 2.0) * z)
            + cpow(-a, k)
            * (6.0 - 2.0 * r3 + 3.0 * k + 3.0 * (2.0 + r3) * z)
            * exp_integral_e(1.0 - k, -((2.0 + r3) * z))
            + cpow(a, k) * cexp((2.0 * (2.0 + r3) * a + 1j * k) * math.pi)
            * (-6.0 + 2.0 * r3 - 3.0 * k + 3.0 * (2.0 + r3) * z)
            * exp_integral_e(1.0 - k, (2.0 + r3) * z)
        )
    )


def _diff_c3(a: complex, k: complex) -> complex:
    z = a * math.pi
    r2 = math.sqrt(2.0)
    s = 3.0 + 2.0 * r2
    t = 3.0 - 2.0 * r2
    m = -3.0 + 2.0 * r2
    pref = (cpow(m + 0j, -2 * k) * cpow(a, -k) * cpow(m * a, -k)
            * cexp((-(s * a) + 2j * k) * math.pi) * cpow(-(s * math.pi) + 0j, -k)
            / (16.0 * k))
    return pref * (
        8.0 * cpow(t + 0j, 2 * k) * cpow(-a, k) * cexp(s * z) * _branch_disc(a, k)
        * (2.0 + k) * cpow(math.pi + 0j, k)
        + cpow(t + 0j, 3 * k) * cpow(-a, k) * k
        * (8.0 - 3.0 * r2 + 4.0 * k + 4.0 * s * z) * upper_gamma(k, -(s * z))
        + cpow(m * a, k) * k * (
            -cexp(6.0 * z + 1j * k * math.pi)
            * (8.0 + 3.0 * r2 + 4.0 * k + 4.0 * m * z) * upper_gamma(k, t * z)
            + cexp(4.0 * r2 * z) * (
                (8.0 + 3.0 * r2 + 4.0 * k + 4.0 * t * z) * upper_gamma(k, m * z)
                + cpow(t + 0j, 2 * k) * cexp(6.0 * z + 1j * k * math.pi)
                * (-8.0 + 3.0 * r2 - 4.0 * k + 4.0 * s * z) * upper_gamma(k, s * z)
            )
        )
    )


def _diff_c4(a: complex, k: complex) -> complex:
    z = a * math.pi
    r15 = math.sqrt(15.0)
    s = 4.0 + r15
    t = 4.0 - r15
    m = -4.0 + r15
    pref = (cpow(a, -k) * cexp(-(s * z)) * cpow(m * math.pi + 0j, -k) / (60.0 * k))
    return pref * (
        30.0 * cexp(s * z) * _branch_disc(a, k) * (2.0 + k) * cpow(t * math.pi + 0j, k)
        - cexp(8.0 * z + 1j * k * math.pi) * k
        * (30.0 + 4.0 * r15 + 15.0 * k + 15.0 * m * z) * upper_gamma(k, -(m * z))
        + cexp(2.0 * r15 * z) * k
        * (30.0 + 4.0 * r15 + 15.0 * k - 15.0 * m * z) * upper_gamma(k, m * z)
        + cpow(31.0 - 8.0 * r15 + 0j, k) * k * (
            (30.0 - 4.0 * r15 + 15.0 * k + 15.0 * s * z) * upper_gamma(k, -(s * z))
            + cexp((2.0 * s * a + 1j * k) * math.pi)
            * (-30.0 + 4.0 * r15 - 15.0 * k + 15.0 * s * z) * upper_gamma(k, s * z)
        )
    )


def _diff_c5(a: complex, k: complex) -> complex:
    z = a * math.pi
    r6 = math.sqrt(6.0)
    s = 5.0 + 2.0 * r6
    t = 5.0 - 2.0 * r6
    m = -5.0 + 2.0 * r6
    pref = (cpow(m + 0j, -2 * k) * cpow(a, -k) * cpow(m * a, -k) / (48.0 * k)
            * cexp((-(s * a) + 2j * k) * math.pi) * cpow(-(s * math.pi) + 0j, -k))
    return pref * (
        24.0 * cpow(t + 0j, 2 * k) * cpow(-a, k) * cexp(s * z) * _branch_disc(a, k)
        * (2.0 + k) * cpow(math.pi + 0j, k)
        + cpow(t + 0j, 3 * k) * cpow(-a, k) * k
        * (24.0 - 5.0 * r6 + 12.0 * k + 12.0 * s * z) * upper_gamma(k, -(s * z))
        + cpow(m * a, k) * k * (
            -cexp(10.0 * z + 1j * k * math.pi)
            * (24.0 + 5.0 * r6 + 12.0 * k + 12.0 * m * z) * upper_gamma(k, t * z)
            + cexp(4.0 * r6 * z) * (
                (24.0 + 5.0 * r6 + 12.0 * k + 12.0 * t * z) * upper_gamma(k, m * z)
                + cpow(t + 0j, 2 * k) * cexp(10.0 * z + 1j * k * math.pi)
                * (-24.0 + 5.0 * r6 - 12.0 * k + 12.0 * s * z) * upper_gamma(k, s * z)
            )
        )
    )


_DIFF_FORMULAS = {1: _diff_c1, 2: _diff_c2, 3: _diff_c3, 4: _diff_c4, 5: _diff_c5}
# c = 3 and c = 5 stack powers like (3-2 sqrt2)^(2k) (-a)^k ((-3+2 sqrt2) a)^(-k)
# whose branch the source expression leaves open; principal powers are used
# and the result is flagged rather than trusted silently.
_DIFF_BRANCH_SENSITIVE = frozenset({3, 5})


def diff_closed_form(c: int, a, k) -> complex:
    """Odd-shell difference identity at alpha = beta = c, for c in 1..5."""
    if not isinstance(c, int) or isinstance(c, bool) or c not in _DIFF_FORMULAS:
        raise ConfigError(f"c must be an integer in 1..5, got {c!r}")
    a, k = complex(a), complex(k)
    if k == 0:
        raise PoleError("k = 0 is a pole")
    if a == 0:
        raise SingularParameterError("a*pi must be nonzero")
    if c in _DIFF_BRANCH_SENSITIVE:
        flag(BRANCH_SENSITIVE)
    return _DIFF_FORMULAS[c](a, k)


_LIMIT_KINDS = ("alpha-to-beta", "alpha-to-one", "alpha-to-minus-one", "both-to-one")


@dataclass(frozen=True)
class LimitSpec:
    kind: str
    eps0: float = 1e-2
    levels: int = 6

    def __post_init__(self):
        if self.kind not in _LIMIT_KINDS:
            raise ConfigError(f"kind must be one of {_LIMIT_KINDS}, got {self.kind!r}")
        if not (0.0 < self.eps0 <= 1e-2):
            raise ConfigError(f"eps0 must lie in (0, 1e-2], got {self.eps0!r}")
        if not isinstance(self.levels, int) or not (3 <= self.levels <= 8):
            raise ConfigError(f"levels must be an integer in [3, 8], got {self.levels!r}")
        if self.eps0 * 0.5 ** (self.levels - 1) <= 2.0 * _MOAT:
            raise ConfigError(
                "smallest perturbation would land inside the singularity moat; "
                "increase eps0 or decrease levels")


def _on_singular_set(params: SeriesParams, kind: str) -> bool:
    if kind == "alpha-to-beta":
        return abs(params.alpha - params.beta) <= _MOAT
    if kind == "alpha-to-one":
        return abs(params.alpha - 1.0) <= _MOAT
    if kind == "alpha-to-minus-one":
        return abs(params.alpha + 1.0) <= _MOAT
    return abs(params.alpha - 1.0) <= _MOAT and abs(params.beta - 1.0) <= _MOAT


def _perturbed(params: SeriesParams, kind: str, eps: float) -> SeriesParams:
    a, k, alpha, beta = params.a, params.k, params.alpha, params.beta
    if kind == "alpha-to-beta":
        nudged = beta + eps if beta == 0 else beta * (1.0 + eps)
        return SeriesParams(a=a, k=k, alpha=alpha, beta=nudged)
    if kind == "alpha-to-one":
        return SeriesParams(a=a, k=k, alpha=1.0 - eps, beta=beta)
    if kind == "alpha-to-minus-one":
        return SeriesParams(a=a, k=k, alpha=-1.0 + eps, beta=beta)
    # both-to-one: distinct rates keep alpha and beta separated while both
    # approach 1 along the real axis from inside
    return SeriesParams(a=a, k=k, alpha=1.0 - eps, beta=1.0 - 2.0 * eps)


def limit_eval(params: SeriesParams, limit: LimitSpec) -> complex:
    """closed_form at a removable singularity, by extrapolating in epsilon.

    Evaluates on eps_j = eps0 * 2^-j and Richardson-extrapolates with an
    O(eps) leading-error model (the singular point is a 0/0 of functions
    even in each square root, so the value is analytic in eps along the
    perturbation path).  Raises when the extrapolants stop contracting
    by at least 2 per level above the rounding floor.
    """
    if not _on_singular_set(params, limit.kind):
        raise SingularParameterError(
            f"params do not sit on the {limit.kind} singular set")
    rows = []
    for j in range(limit.levels):
        eps = limit.eps0 * 0.5 ** j
        value = closed_form(_perturbed(params, limit.kind, eps))
        # Neville update of the Richardson tableau, ratio 2, order 1 model
        row = [value]
        prev = rows[-1] if rows else None
        if prev is not None:
            for m in range(1, j + 1):
                weight = 2.0 ** m
                row.append((weight * row[m - 1] - prev[m - 1]) / (weight - 1.0))
        rows.append(row)
    diag = [rows[j][j] for j in range(limit.levels)]
    scale = max(abs(diag[-1]), 1e-300)
    # The perturbed evaluations sit in a 0/0 region and lose up to
    # eps^-2 ~ 1e7 machine epsilons to cancellation, so the tableau
    # corrections plateau around 1e-9 of scale; below this floor a
    # failed contraction is rounding noise, not divergence.
    floor = 3e-8 * scale
    diffs = [abs(diag[j] - diag[j - 1]) for j in range(1, limit.levels)]
    for j in range(1, len(diffs)):
        if diffs[j] > floor and diffs[j] > 0.5 * diffs[j - 1]:
            raise NonConvergenceError(
                f"limit extrapolation stopped contracting at level {j + 1}: "
                f"consecutive corrections {diffs[j - 1]:.3e} -> {diffs[j]:.3e}")
    return diag[-1]
