"""Truncated power series: binomial convolutions, radius probes, model bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DataError

_KINDS = ("int", "rational", "float")


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients c_0..c_N with an explicit coefficient kind.

    Exact kinds (int, rational) never silently downcast; mixing an exact
    series with a float one yields floats.
    """

    coeffs: tuple
    kind: str = "int"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DataError(f"unknown coefficient kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_list(cls, values: Sequence) -> "PowerSeries":
        vals = list(values)
        if all(isinstance(v, int) for v in vals):
            return cls(tuple(vals), "int")
        if any(isinstance(v, float) for v in vals):
            return cls(tuple(float(v) for v in vals), "float")
        return cls(tuple(Fraction(v) for v in vals), "rational")

    @classmethod
    def geometric(cls, ratio, length: int) -> "PowerSeries":
        return cls.from_list([ratio**n for n in range(length)])

    @classmethod
    def unit(cls, length: int) -> "PowerSeries":
        return cls(tuple([1] + [0] * (length - 1)), "int")

    def to_float(self) -> "PowerSeries":
        return PowerSeries(tuple(float(c) for c in self.coeffs), "float")

    def truncate(self, length: int) -> "PowerSeries":
        if length > len(self.coeffs):
            raise DataError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[:length], self.kind)

    def rescale(self, factor) -> "PowerSeries":
        """Substitute z -> factor * z."""
        vals = [c * factor**n for n, c in enumerate(self.coeffs)]
        return PowerSeries.from_list(vals)

    def add(self, other: "PowerSeries") -> "PowerSeries":
        _check_compatible(self, other)
        return PowerSeries.from_list([x + y for x, y in zip(self.coeffs, other.coeffs)])

    def cauchy_mul(self, other: "PowerSeries") -> "PowerSeries":
        _check_compatible(self, other)
        n = len(self.coeffs)
        out = [sum(self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1)) for k in range(n)]
        return PowerSeries.from_list(out)

    def cauchy_pow(self, exponent: int) -> "PowerSeries":
        out = PowerSeries.unit(len(self.coeffs))
        if self.kind == "float":
            out = out.to_float()
        for _ in range(exponent):
            out = out.cauchy_mul(self)
        return out


def _check_compatible(a: PowerSeries, b: PowerSeries) -> None:
    if len(a) != len(b):
        raise DataError(f"truncation lengths differ: {len(a)} vs {len(b)}")


def binomial_convolve(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """c_n = sum over i+j=n of C(n, i) * a_i * b_j, computed exactly."""
    _check_compatible(a, b)
    n = len(a)
    out = [
        sum(math.comb(k, i) * a.coeffs[i] * b.coeffs[k - i] for i in range(k + 1))
        for k in range(n)
    ]
    return PowerSeries.from_list(out)


def binomial_convolve_eta(a: PowerSeries, b: PowerSeries, eta: float) -> PowerSeries:
    """c_n = sum over i+j=n of eta * C(eta*n, eta*i) * a_i * b_j.

    Generalized binomials go through the log-gamma function,
    C(x, y) = Gamma(x+1) / (Gamma(y+1) * Gamma(x-y+1)); the result is a
    float series.  At eta = 1 this matches binomial_convolve to roundoff.
    """
    if eta <= 0:
        raise DataError("eta must be positive")
    _check_compatible(a, b)
    n = len(a)
    lg = [math.lgamma(eta * t + 1.0) for t in range(n)]
    out = []
    for k in range(n):
        total = 0.0
        for i in range(k + 1):
            coeff = eta * math.exp(lg[k] - lg[i] - lg[k - i])
            total += coeff * float(a.coeffs[i]) * float(b.coeffs[k - i])
        out.append(total)
    return PowerSeries(tuple(out), "float")


@dataclass(frozen=True)
class RadiusReport:
    root_tail: tuple[float, ...]
    ratio_tail: tuple[float, ...]
    root_estimate: float
    ratio_estimate: float
    tail_monotone: bool


def radius_estimate(series: PowerSeries, tail: int = 10) -> RadiusReport:
    """Root-test and ratio-test radius probes from the truncation tail.

    A series whose tail is all zeros (a polynomial) reports infinite radius.
    """
    coeffs = [abs(float(c)) for c in series.coeffs]
    nonzero = [(n, c) for n, c in enumerate(coeffs) if c > 0 and n > 0]
    if not nonzero:
        return RadiusReport((), (), math.inf, math.inf, True)
    k = min(tail, len(nonzero))
    root_tail = tuple(c ** (-1.0 / n) for n, c in nonzero[-k:])
    ratios = []
    for (n1, c1), (n2, c2) in zip(nonzero, nonzero[1:]):
        if n2 == n1 + 1:
            ratios.append(c1 / c2)
    ratio_tail = tuple(ratios[-k:])
    if series.coeffs[-1] == 0 and all(c == 0 for c in coeffs[len(coeffs) // 2 :]):
        return RadiusReport(root_tail, ratio_tail, math.inf, math.inf, True)
    root_estimate = _median(root_tail)
    ratio_estimate = _median(ratio_tail) if ratio_tail else root_estimate
    diffs = [b - a for a, b in zip(root_tail, root_tail[1:])]
    monotone = all(x <= 1e-12 for x in diffs) or all(x >= -1e-12 for x in diffs)
    return RadiusReport(root_tail, ratio_tail, root_estimate, ratio_estimate, monotone)


def _median(values: Sequence[float]) -> float:
    vals = sorted(values)
    m = len(vals)
    if m == 0:
        return math.nan
    return vals[m // 2] if m % 2 else 0.5 * (vals[m // 2 - 1] + vals[m // 2])


def rho_recursion(rho_start: float, size_a: int, steps: int) -> list[float]:
    """Iterate rho -> rho*(#A-1)/#A + 1/#A; the fixed point is 1."""
    if rho_start < 1:
        raise DataError("rho_start must be at least 1")
    if size_a < 2:
        raise DataError("size_a must be at least 2")
    out = [float(rho_start)]
    for _ in range(steps):
        out.append(out[-1] * (size_a - 1) / size_a + 1.0 / size_a)
    return out


@dataclass(frozen=True)
class DiagnosticRow:
    n: int
    lhs: float
    rhs: float
    slack: float  # rhs - lhs


def model_rhs_diagnostic(
    gamma_coeffs: Sequence[int],
    size_a: int,
    d: int,
    eta: float,
    upto: int,
) -> list[DiagnosticRow]:
    """Tabulate the one-level growth-series model bound against given coefficients.

    The right-hand side rescales the series by ((#A-1)/#A)^eta, raises it to
    the d-th power, drops the two lowest coefficients, convolves with the
    geometric series of ratio 1/#A^eta under the eta-binomial, shifts by d
    and scales by #A.  Purely diagnostic: the bound involves an unknown
    group-dependent correlation parameter, and the same series is used on
    both sides, which is exact only for level-independent data.
    """
    if upto >= len(gamma_coeffs):
        raise DataError("not enough coefficients for the requested degree")
    n = upto + 1
    work = n + d  # headroom so the z^d shift keeps full precision
    if work > len(gamma_coeffs):
        work = len(gamma_coeffs)
    gamma = PowerSeries.from_list([float(c) for c in gamma_coeffs[:work]])
    lam = ((size_a - 1) / size_a) ** eta
    powered = gamma.rescale(lam).cauchy_pow(d)
    shifted = PowerSeries(powered.coeffs[2:] + (0.0, 0.0), "float")
    geom = PowerSeries.geometric(1.0 / size_a**eta, work)
    conv = binomial_convolve_eta(geom, shifted, eta)
    rows = []
    for k in range(n):
        rhs = size_a * conv.coeffs[k - d] if k >= d else 0.0
        lhs = float(gamma_coeffs[k])
        rows.append(DiagnosticRow(k, lhs, rhs, rhs - lhs))
    return rows
