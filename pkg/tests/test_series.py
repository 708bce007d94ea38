"""Direct shell summation: exact termination, optimal truncation, honesty.

The enumeration oracle (plain double loop over (n,p), no convolution,
no recurrences) is the reference everywhere a value is not checkable by
hand.
"""

import math
import random

import pytest

from chebgamma import (
    ConfigError,
    PoleError,
    SeriesParams,
    TruncationPolicy,
    closed_form,
    difference_series,
    series_sum,
    series_terminates,
)
from oracles import double_sum_direct, finite_series_exact

E4 = math.exp(4.0)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def params(alpha, beta, k, a_pi):
    return SeriesParams(a=a_pi / math.pi, k=k, alpha=alpha, beta=beta)


# -------------------------------------------------------------- termination

def test_series_terminates_examples():
    assert series_terminates(1.0) == 1
    assert series_terminates(0.5) is None
    assert series_terminates(0.0) == 0
    assert series_terminates(3.0 + 1e-13j) == 3
    assert series_terminates(-2.0) is None
    assert series_terminates(2.0 + 0.1j) is None


def test_pole_at_k_zero():
    with pytest.raises(PoleError):
        series_sum(params(0.2, 0.1, 0.0, 10.0))


def test_policy_validation():
    with pytest.raises(ConfigError):
        TruncationPolicy(mode="creative")
    with pytest.raises(ConfigError):
        TruncationPolicy(max_shell=2)
    with pytest.raises(ConfigError):
        TruncationPolicy(rel_tol=0.5)


# ------------------------------------------------------------ exact anchors

def test_order_one_is_two_shells():
    rng = random.Random(31)
    for _ in range(25):
        alpha, beta = rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)
        z = rng.uniform(2.0, 40.0)
        res = series_sum(params(alpha, beta, 1.0, z))
        assert res.termination == "terminated-exactly"
        assert res.error_estimate == 0.0
        assert rel(res.value, 1.0 + (alpha + beta) / z) < 1e-14


def test_order_two_at_unit_arguments():
    z = 7.3
    res = series_sum(params(1.0, 1.0, 2.0, z))
    assert rel(res.value, 0.5 + 2.0 / z + 3.0 / z ** 2) < 1e-14


def test_exact_values_match_enumeration_oracle():
    rng = random.Random(32)
    for _ in range(40):
        k = rng.choice([1, 2, 3, 4, 5, 6])
        alpha = complex(rng.uniform(-1.2, 1.2), rng.uniform(-0.4, 0.4))
        beta = complex(rng.uniform(-1.2, 1.2), rng.uniform(-0.4, 0.4))
        z = complex(rng.uniform(3.0, 30.0), rng.uniform(-5.0, 5.0))
        res = series_sum(params(alpha, beta, float(k), z))
        ref = finite_series_exact(alpha, beta, k, z)
        assert rel(res.value, ref) < 1e-12


def test_exact_termination_is_max_shell_invariant():
    rng = random.Random(33)
    for k in range(1, 7):
        alpha, beta = rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)
        z = rng.uniform(4.0, 25.0)
        p = params(alpha, beta, float(k), z)
        base = series_sum(p, TruncationPolicy(max_shell=k + 4))
        for extra in (16, 64, 512):
            again = series_sum(p, TruncationPolicy(max_shell=extra))
            assert again.value == base.value
            assert again.termination == "terminated-exactly"


# ---------------------------------------------------------------- symmetry

def test_swap_symmetry_one_ulp():
    rng = random.Random(34)
    for _ in range(60):
        alpha = complex(rng.uniform(-0.95, 0.95), rng.uniform(-0.2, 0.2))
        beta = complex(rng.uniform(-0.95, 0.95), rng.uniform(-0.2, 0.2))
        k = rng.choice([1.0, 2.0, 3.0, -0.5, 1.7])
        z = rng.uniform(30.0, 80.0)
        va = series_sum(params(alpha, beta, k, z)).value
        vb = series_sum(params(beta, alpha, k, z)).value
        assert abs(va - vb) <= 2.3e-16 * abs(va)


# ------------------------------------------------------- difference series

def test_difference_anchor_values():
    z = 13.0
    for c in (0.3, 1.0, 2.0, 5.0):
        res = difference_series(params(c, c, 1.0, z))
        assert rel(res.value, -4.0 * c / z) < 1e-13
    res = difference_series(params(1.0, 1.0, 2.0, z))
    assert rel(res.value, -4.0 / z) < 1e-13


def test_difference_vanishes_at_zero_arguments():
    for k in (1.0, 2.0, 5.0):
        res = difference_series(params(0.0, 0.0, k, 9.0))
        assert res.value == 0.0


def test_parity_reconstruction_100_draws():
    rng = random.Random(35)
    for _ in range(100):
        k = float(rng.choice([1, 2, 3]))
        alpha = rng.uniform(-0.9, 0.9)
        beta = rng.uniform(-0.9, 0.9)
        z = rng.uniform(5.0, 50.0)
        diff = difference_series(params(alpha, beta, k, z))
        plus = series_sum(params(alpha, beta, k, z))
        minus = series_sum(params(-alpha, -beta, k, z))
        budget = diff.error_estimate + plus.error_estimate + minus.error_estimate
        budget += 1e-13 * (abs(plus.value) + abs(minus.value))
        assert abs(diff.value - (minus.value - plus.value)) <= budget


# -------------------------------------------------- optimal truncation path

def test_non_integer_order_tracks_oracle_partial_sums():
    # For non-integer k in the asymptotic regime, the engine's value must
    # equal the oracle's partial sum at the shell count the engine reports.
    alpha, beta, k, z = 0.3, -0.55, -0.5, E4
    res = series_sum(params(alpha, beta, k, z), TruncationPolicy(mode="optimal"))
    assert res.termination in ("optimal-truncation", "tolerance-met")
    # shells_used counts contributing shells, so the last index is one less.
    ref = double_sum_direct(alpha, beta, k, z, res.shells_used - 1)
    assert rel(res.value, ref) < 1e-12
    assert res.error_estimate > 0.0


def test_fixed_mode_respects_shell_budget():
    alpha, beta, k, z = 0.2, 0.7, 1.4, 60.0
    res = series_sum(params(alpha, beta, k, z),
                     TruncationPolicy(mode="fixed", max_shell=6))
    assert res.shells_used <= 7
    assert rel(res.value, double_sum_direct(alpha, beta, k, z, res.shells_used - 1)) < 1e-13


def test_not_in_asymptotic_regime_warning():
    # Non-integer order with |a pi| below the growth/offset threshold must
    # carry the advisory warning; comfortably inside the regime must not.
    near = series_sum(params(0.99, 0.2, 0.5, 1.0), TruncationPolicy(mode="optimal"))
    assert "not-in-asymptotic-regime" in near.warnings
    far = series_sum(params(0.3, 0.2, 0.5, 80.0), TruncationPolicy(mode="optimal"))
    assert "not-in-asymptotic-regime" not in far.warnings


def test_shell_term_ratio_asymptotics():
    # |term_{q+1}| / |term_q| -> |k - q| * rho_max / |a pi| for large q:
    # the coefficient ratio tends to the growth radius and the weight
    # ratio contributes the |k - q| factor.
    from chebgamma import growth_radius, pochhammer_recip, shell_values

    alpha, beta, k, z = 1.5, 0.2, 0.5, 100.0
    rho = max(growth_radius(alpha), growth_radius(beta))
    coeffs = shell_values(42, alpha, beta)
    for q in (34, 38, 41):
        t_hi = abs(coeffs[q] * pochhammer_recip(k, q) / z ** q)
        t_lo = abs(coeffs[q - 1] * pochhammer_recip(k, q - 1) / z ** (q - 1))
        expect = abs(k - (q - 1)) * rho / z
        assert abs(t_hi / t_lo - expect) <= 0.25 * expect


def test_warning_trips_below_radius_guard_for_non_integer_k():
    rng = random.Random(36)
    for _ in range(40):
        alpha = rng.uniform(1.1, 2.2)  # growth radius > 1
        rho = alpha + math.sqrt(alpha * alpha - 1.0)
        z = rng.uniform(0.3, 0.999) * rho * 1.05
        res = series_sum(params(alpha, 0.1, 0.5, z), TruncationPolicy(mode="optimal"))
        assert "not-in-asymptotic-regime" in res.warnings


# ----------------------------------------------------------------- honesty

def test_error_estimate_bounds_closed_form_deviation():
    # Worked-example regime: k = -1/2, a*pi = e^4.  The reported estimate
    # must bound the actual deviation from the independent closed form in
    # at least 99 of 100 draws.
    rng = random.Random(3)
    z = E4
    failures = 0
    for _ in range(100):
        alpha = rng.uniform(-0.97, 0.97)
        beta = rng.uniform(-0.97, 0.97)
        if abs(alpha - beta) < 2e-3 or max(abs(alpha), abs(beta)) > 0.999:
            beta = -beta if abs(alpha + beta) > 2e-3 else 0.5 * beta
        res = series_sum(params(alpha, beta, -0.5, z), TruncationPolicy(mode="optimal"))
        ref = closed_form(params(alpha, beta, -0.5, z))
        if abs(res.value - ref) > res.error_estimate:
            failures += 1
    assert failures <= 1
