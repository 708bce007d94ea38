"""Parameter-grid sweeps driven by flat text config files.

Config grammar (one ``key = value`` pair per line; ``#`` starts a
comment; blank lines ignored; list values are comma separated)::

    a      = 0.6366, 2.0        # complex literals: "1.5", "1.5-0.25i", "2i"
    k      = 1, 2.5, 1+0.5i
    alpha  = -0.5, 0.0, 0.5
    beta   = 0.25
    mode   = both               # series | closed | both
    series_mode = optimal       # truncation policy: exact-if-terminating | fixed | optimal
    max_shell   = 256
    rel_tol     = 1e-12
    output_path = sweep_out.csv
    format      = csv           # csv | json

Rows are emitted in deterministic lexicographic order over (a, k,
alpha, beta) with each axis in its declared value order.  Grid points
are independent pure evaluations, so they could run concurrently; this
implementation evaluates sequentially and writes buffered rows once,
which already makes the output deterministic.  Points that land on a
singular parameter set are reported as ``skipped-with-warning`` rows
rather than aborting the sweep.  CSV numbers carry 17 significant
digits so a parsed-back grid is bit-identical.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass, field
from typing import Optional

from ._flags import collect
from .closedform import closed_form
from .errors import ConfigError, KernelDomainError, SingularParameterError
from .series import SeriesParams, TruncationPolicy, series_sum

__all__ = [
    "SWEEP_COLUMNS",
    "SweepConfig",
    "SweepSummary",
    "parse_complex_literal",
    "parse_sweep_config",
    "run_sweep",
]

_COMPLEX_RE = re.compile(
    r"""^\s*
        (?P<real>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
        (?P<imag>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?
        (?P<unit>i)?
        \s*$""",
    re.VERBOSE,
)


def parse_complex_literal(token: str) -> complex:
    """Parse "1.5", "-0.25i", "1.5-0.25i", "2e-3+1e2i" (no spaces inside)."""
    m = _COMPLEX_RE.match(token)
    if not m or (m.group("real") is None and m.group("unit") is None):
        raise ConfigError(f"bad complex literal {token!r}")
    real_s, imag_s, unit = m.group("real"), m.group("imag"), m.group("unit")
    if unit is None:
        if imag_s is not None:
            raise ConfigError(f"bad complex literal {token!r}")
        return complex(float(real_s), 0.0)
    if imag_s is None:
        # pure imaginary: the "real" group captured the coefficient
        coeff = 1.0 if real_s is None else float(real_s)
        return complex(0.0, coeff)
    if imag_s in ("+", "-"):
        imag_s += "1"
    return complex(0.0 if real_s is None else float(real_s), float(imag_s))


SWEEP_COLUMNS = (
    "a_re", "a_im", "k_re", "k_im", "alpha_re", "alpha_im", "beta_re", "beta_im",
    "series_re", "series_im", "series_err", "closed_re", "closed_im",
    "rel_diff", "warnings",
)

_MODES = ("series", "closed", "both")
_FORMATS = ("csv", "json")
_MAX_POINTS = 10 ** 6


@dataclass(frozen=True)
class SweepConfig:
    a: tuple
    k: tuple
    alpha: tuple
    beta: tuple
    mode: str = "both"
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    output_path: str = "sweep_out.csv"
    format: str = "csv"

    def __post_init__(self):
        for name in ("a", "k", "alpha", "beta"):
            axis = getattr(self, name)
            if not isinstance(axis, tuple) or not axis:
                raise ConfigError(f"grid axis {name!r} must be a nonempty tuple")
            if not all(isinstance(v, complex) for v in axis):
                raise ConfigError(f"grid axis {name!r} must contain complex values")
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.format not in _FORMATS:
            raise ConfigError(f"format must be one of {_FORMATS}, got {self.format!r}")
        total = len(self.a) * len(self.k) * len(self.alpha) * len(self.beta)
        if total > _MAX_POINTS:
            raise ConfigError(f"grid has {total} points, limit is {_MAX_POINTS}")


@dataclass(frozen=True)
class SweepSummary:
    points_evaluated: int
    failures: int
    output_path: str


_AXIS_KEYS = ("a", "k", "alpha", "beta")
_SCALAR_KEYS = ("mode", "series_mode", "max_shell", "rel_tol", "output_path", "format")


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse the flat key/value grammar; errors carry line numbers."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, rhs = line.partition("=")
        key, rhs = key.strip(), rhs.strip()
        if key not in _AXIS_KEYS + _SCALAR_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not rhs:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        if key in _AXIS_KEYS:
            try:
                values[key] = tuple(parse_complex_literal(tok)
                                    for tok in rhs.split(","))
            except ConfigError as exc:
                raise ConfigError(f"line {lineno}: {exc}") from None
        else:
            values[key] = rhs
    missing = [key for key in _AXIS_KEYS if key not in values]
    if missing:
        raise ConfigError(f"missing grid axes: {', '.join(missing)}")

    policy_kwargs = {}
    if "series_mode" in values:
        policy_kwargs["mode"] = values.pop("series_mode")
    if "max_shell" in values:
        try:
            policy_kwargs["max_shell"] = int(values.pop("max_shell"))
        except ValueError:
            raise ConfigError("max_shell must be an integer") from None
    if "rel_tol" in values:
        try:
            policy_kwargs["rel_tol"] = float(values.pop("rel_tol"))
        except ValueError:
            raise ConfigError("rel_tol must be a float") from None
    return SweepConfig(
        a=values["a"], k=values["k"], alpha=values["alpha"], beta=values["beta"],
        mode=values.get("mode", "both"),
        policy=TruncationPolicy(**policy_kwargs),
        output_path=values.get("output_path", "sweep_out.csv"),
        format=values.get("format", "csv"),
    )


def _g17(x: float) -> str:
    return format(x, ".17g")


def _evaluate_point(a, k, alpha, beta, config):
    """One grid point -> dict keyed by SWEEP_COLUMNS (floats or None)."""
    row = {
        "a_re": a.real, "a_im": a.imag, "k_re": k.real, "k_im": k.imag,
        "alpha_re": alpha.real, "alpha_im": alpha.imag,
        "beta_re": beta.real, "beta_im": beta.imag,
        "series_re": None, "series_im": None, "series_err": None,
        "closed_re": None, "closed_im": None, "rel_diff": None,
        "warnings": "",
    }
    notes = []
    series_value = closed_value = None
    try:
        params = SeriesParams(a=a, k=k, alpha=alpha, beta=beta)
        with collect() as seen:
            if config.mode in ("series", "both"):
                result = series_sum(params, config.policy)
                series_value = result.value
                row["series_re"] = series_value.real
                row["series_im"] = series_value.imag
                row["series_err"] = result.error_estimate
            if config.mode in ("closed", "both"):
                closed_value = closed_form(params)
                row["closed_re"] = closed_value.real
                row["closed_im"] = closed_value.imag
        notes.extend(sorted(seen))
    except (SingularParameterError, KernelDomainError, ConfigError) as exc:
        notes.append(f"skipped-with-warning: {exc}")
        return row, notes, True
    if series_value is not None and closed_value is not None:
        denom = max(abs(series_value), abs(closed_value), 1e-300)
        row["rel_diff"] = abs(series_value - closed_value) / denom
    return row, notes, False


def run_sweep(config: SweepConfig) -> SweepSummary:
    """Evaluate the full grid and write one row per point.

    Returns the number of points, the number of rows that could not be
    evaluated (singular or out-of-domain parameters), and the output
    path.  IO errors propagate to the caller.
    """
    rows = []
    failures = 0
    for a in config.a:
        for k in config.k:
            for alpha in config.alpha:
                for beta in config.beta:
                    row, notes, skipped = _evaluate_point(a, k, alpha, beta, config)
                    row["warnings"] = "; ".join(notes)
                    failures += skipped
                    rows.append(row)

    if config.format == "csv":
        with open(config.output_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SWEEP_COLUMNS)
            for row in rows:
                writer.writerow(
                    [row[col] if col == "warnings"
                     else ("" if row[col] is None else _g17(row[col]))
                     for col in SWEEP_COLUMNS])
    else:
        with open(config.output_path, "w") as fh:
            json.dump({"rows": rows}, fh, indent=2)
            fh.write("\n")
    return SweepSummary(points_evaluated=len(rows), failures=failures,
                        output_path=config.output_path)
