"""Closed-form entanglement of compression test states.

A test state lives on n two-qubit pairs shared between two labs (call
them B and C, one qubit of every pair on each side).  Each pair carries
one of two orthonormal signal states:

* product encoding:  |00> and |11>;
* Bell encoding:     (|00> + |11>)/sqrt2  and  (|00> - |11>)/sqrt2.

The test state is the uniform superposition of all C(n, k) placements of
k second-kind factors among the n pairs.  With the Bell encoding the
computational basis is a Schmidt basis across the B|C cut and the
squared Schmidt coefficient of a weight-i string is

    xi_i^2 = S_i^2 / (2^n * C(n, k)),

with S_i the exact alternating sum from :mod:`triconc.exactmath`.  The
input entanglement is the entropy of that spectrum; the output
entanglement after the compression relabeling is n - log2 C(n, k) in
the power-of-two idealization (the stochastic correction for general
C(n, k) lives in :mod:`triconc.protocol`).  With the product encoding
both sides equal log2 C(n, k) and the gap vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactmath import binom, inner_sum_table, log2_big

__all__ = [
    "Encoding",
    "TestStateSpec",
    "AmplitudeTable",
    "EntanglementReport",
    "SlopeFit",
    "amplitude_table",
    "e_in",
    "e_out",
    "gap_scan",
    "fit_line",
    "slope_fit",
]

#: Relative slack when checking that n*p is an integer.
_INTEGRALITY_TOL = 1e-9


class Encoding(Enum):
    """Signal-pair encoding: product |00>/|11> or Bell (|00> +- |11>)/sqrt2."""

    PRODUCT = "product"
    BELL = "bell"


@dataclass(frozen=True)
class TestStateSpec:
    """n pairs, k second-kind factors, and the pair encoding."""

    __test__ = False  # not a pytest class, despite the name

    n: int
    k: int
    encoding: Encoding = Encoding.BELL

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if not (0 <= self.k <= self.n):
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")


@dataclass(frozen=True)
class AmplitudeTable:
    """Exact amplitude data of a Bell-encoded test state.

    s[i] is the signed integer inner sum for weight i; xi_sq[i] is the
    exact rational squared amplitude S_i^2 / (2^n * C(n, k)).  The
    multiplicity-weighted xi_sq sum over all weights is exactly 1.
    """

    n: int
    k: int
    s: tuple[int, ...]
    xi_sq: tuple[Fraction, ...]

    def normalization(self) -> Fraction:
        """Exact value of sum_i C(n, i) * xi_sq[i]; equals 1 by construction."""
        return sum(
            (binom(self.n, i) * q for i, q in enumerate(self.xi_sq)),
            start=Fraction(0),
        )


@dataclass(frozen=True)
class EntanglementReport:
    """Input/output entanglement (ebits) of one (n, k) configuration."""

    n: int
    k: int
    e_in: float
    e_out: float
    gap: float

    def __post_init__(self) -> None:
        if not (-1e-9 <= self.e_in <= self.n + 1e-9):
            raise ValueError(f"e_in out of [0, n]: {self.e_in} at n={self.n}")
        if not (-1e-9 <= self.e_out <= self.n + 1e-9):
            raise ValueError(f"e_out out of [0, n]: {self.e_out} at n={self.n}")


@dataclass(frozen=True)
class SlopeFit:
    """Ordinary least-squares line through (n, gap) points."""

    p: float
    points: tuple[tuple[int, float], ...]
    slope: float
    intercept: float
    residual: float  # root-mean-square residual of the fit


def amplitude_table(spec: TestStateSpec) -> AmplitudeTable:
    """Exact amplitude table of a Bell-encoded test state.

    The product encoding has no amplitude table (its Schmidt spectrum is
    flat over C(n, k) computational strings) and is rejected.
    """
    if spec.encoding is not Encoding.BELL:
        raise ValueError(
            "amplitude tables exist only for the Bell encoding; the product "
            "encoding has a flat spectrum of rank C(n, k)"
        )
    n, k = spec.n, spec.k
    s = inner_sum_table(n, k)
    denom = (1 << n) * binom(n, k)
    xi_sq = tuple(Fraction(v * v, denom) for v in s)
    return AmplitudeTable(n=n, k=k, s=tuple(s), xi_sq=xi_sq)


def _entropy_from_sums(n: int, k: int, s: list[int]) -> float:
    # -sum_i C(n,i) xi^2 log2(xi^2) with xi^2 = s_i^2/(2^n C(n,k)), done in
    # (weight, log2) pairs so that xi^2 below float underflow still counts.
    cnk = binom(n, k)
    denom = (1 << n) * cnk
    log2_denom = n + log2_big(cnk)
    total = 0.0
    for i, si in enumerate(s):
        if si == 0:
            continue
        sq = si * si
        weight = (binom(n, i) * sq) / denom  # exact int ratio -> nearest float
        total -= weight * (log2_big(sq) - log2_denom)
    return total


def e_in(spec: TestStateSpec) -> float:
    """Entanglement (ebits) of the test state across the B|C cut.

    Bell encoding: entropy of the xi^2 spectrum.  Product encoding: the
    permutation strings are orthogonal computational strings, so the
    state is maximally entangled on a rank-C(n, k) subspace and the
    entropy is log2 C(n, k).
    """
    if spec.encoding is Encoding.PRODUCT:
        return log2_big(binom(spec.n, spec.k))
    return _entropy_from_sums(spec.n, spec.k, inner_sum_table(spec.n, spec.k))


def e_out(spec: TestStateSpec) -> float:
    """Entanglement (ebits) after the compression relabeling.

    Bell encoding: n - log2 C(n, k), exact when C(n, k) is a power of
    two (all information pairs factor out and each trailing Bell pair
    carries one ebit); for other C(n, k) this is the idealized value,
    and the batching construction in :mod:`triconc.protocol` covers the
    exact stochastic treatment.  Product encoding: relabeling orthogonal
    computational strings preserves the flat rank-C(n, k) spectrum, so
    the value is log2 C(n, k) and the gap is zero.
    """
    if spec.encoding is Encoding.PRODUCT:
        return log2_big(binom(spec.n, spec.k))
    return spec.n - log2_big(binom(spec.n, spec.k))


def _k_for(n: int, p: float) -> int:
    k = round(n * p)
    if abs(n * p - k) > _INTEGRALITY_TOL * max(1.0, n):
        raise ValueError(
            f"n*p must be an integer so that k = n*p is exact; "
            f"got n={n}, p={p}, n*p={n * p}"
        )
    return k


def gap_scan(p: float, n_list: list[int]) -> list[EntanglementReport]:
    """Entanglement reports for Bell-encoded test states with k = n*p.

    Every n in n_list must satisfy n*p integer (the scan takes k exactly,
    never averaged over the binomial spread).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    reports = []
    for n in n_list:
        k = _k_for(n, p)
        spec = TestStateSpec(n=n, k=k, encoding=Encoding.BELL)
        ein = e_in(spec)
        eout = e_out(spec)
        reports.append(
            EntanglementReport(n=n, k=k, e_in=ein, e_out=eout, gap=ein - eout)
        )
    return reports


def fit_line(points: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Ordinary least squares through (x, y) points.

    Returns (slope, intercept, rms_residual); an exactly linear input
    comes back with zero residual.
    """
    if len(points) < 3:
        raise ValueError(f"fit needs at least 3 points, got {len(points)}")
    m = len(points)
    mean_x = sum(x for x, _ in points) / m
    mean_y = sum(y for _, y in points) / m
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    if sxx == 0.0:
        raise ValueError("degenerate fit: all x equal")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    rss = sum((y - (slope * x + intercept)) ** 2 for x, y in points)
    return slope, intercept, math.sqrt(rss / m)


def slope_fit(p: float, n_list: list[int]) -> SlopeFit:
    """OLS fit of gap(n) over an integer-n*p grid of at least 3 points."""
    reports = gap_scan(p, n_list)
    pts = [(r.n, r.gap) for r in reports]
    slope, intercept, residual = fit_line(pts)
    return SlopeFit(
        p=p,
        points=tuple(pts),
        slope=slope,
        intercept=intercept,
        residual=residual,
    )
