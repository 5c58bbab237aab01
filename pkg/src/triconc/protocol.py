"""Stochastic side of the concentration protocol.

Covers the measurement statistics (binomial draws of the tau count per
batch), the typical-subspace mass, the batching stopping rule that waits
for the accumulated Schmidt-rank product D_M to land within a (1+eps)
factor of a power of two, and the entanglement bound for the residual
superposition state that batching leaves behind.

Reproducibility: every stochastic entry point takes an explicit seed;
independent runs derive their streams from (seed, run_index) so trials
can be evaluated in any order or in parallel with identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactmath import binom, log2_big, shannon_h
from .oracle import (
    MAX_DENSE_PAIRS,
    PairEncoding,
    entropy_of,
    schmidt_spectrum,
    superpose_strings,
)

__all__ = [
    "BatchConfig",
    "BatchRunStats",
    "TruncationError",
    "sample_k",
    "typical_mass",
    "run_batches",
    "superposition_bound",
    "gamma_state_direct",
]

#: Keep the rank product exact while it fits this many bits, then switch
#: to accumulating log2 in floats (~1e-12 accurate per step).
_EXACT_BITS = 10_000


@dataclass(frozen=True)
class BatchConfig:
    """Parameters of one batching run."""

    n: int
    p: float
    epsilon: float
    max_batches: int = 10_000
    seed: int = 0xC0FFEE

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability out of [0, 1]: {self.p}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"need 0 < epsilon < 1, got {self.epsilon}")
        if self.max_batches < 1:
            raise ValueError(f"need max_batches >= 1, got {self.max_batches}")


@dataclass(frozen=True)
class BatchRunStats:
    """Outcome of one batching run.

    gamma_log2 is log2 of the accumulated rank product D_M = 2^l (1 +
    eps_prime); n_total is the number of copies consumed (batches times
    batch size); gamma_entropy_bound is the residual-state bound
    2 (epsilon * n_total + 2); theta_tail_ebits is the number of pairs
    the relabeling parks in the theta state, n_total - ceil(log2 D_M),
    whose expected value is about n_total * (1 - H(p)).
    """

    m_batches: int
    k_list: tuple[int, ...]
    l: int
    eps_prime: float
    gamma_log2: float
    n_total: int
    gamma_entropy_bound: float
    theta_tail_ebits: float


class TruncationError(RuntimeError):
    """Raised when a run hits max_batches; carries the partial stats."""

    def __init__(self, stats: BatchRunStats):
        super().__init__(
            f"stopping rule not met within {stats.m_batches} batches "
            f"(eps_prime so far {stats.eps_prime:.6f})"
        )
        self.stats = stats


def sample_k(n: int, p: float, rng: np.random.Generator) -> int:
    """One binomial draw of the tau count in a batch of n copies."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    return int(rng.binomial(n, p))


def typical_mass(n: int, p: float, c: float) -> float:
    """Binomial mass inside the window n*p +- c*sqrt(n).

    Exact binomial coefficients, float powers; large n goes through
    log space to dodge float overflow of the coefficient.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    if c <= 0.0:
        raise ValueError(f"need c > 0, got {c}")
    half = c * math.sqrt(n)
    lo = max(0, math.ceil(n * p - half))
    hi = min(n, math.floor(n * p + half))
    total = 0.0
    for k in range(lo, hi + 1):
        if p == 0.0:
            total += 1.0 if k == 0 else 0.0
        elif p == 1.0:
            total += 1.0 if k == n else 0.0
        elif n <= 900:  # C(900, 450) still fits a float
            total += binom(n, k) * p**k * (1.0 - p) ** (n - k)
        else:
            log2_term = (
                log2_big(binom(n, k))
                + k * math.log2(p)
                + (n - k) * math.log2(1.0 - p)
            )
            total += 2.0**log2_term
    return min(total, 1.0)


def _stats(
    m: int, k_list: list[int], l: int, eps_prime: float, cfg: BatchConfig
) -> BatchRunStats:
    n_total = m * cfg.n
    log_gamma = l + math.log2(1.0 + eps_prime)
    codebook_pairs = l if eps_prime == 0.0 else l + 1  # ceil(log2 D_M)
    return BatchRunStats(
        m_batches=m,
        k_list=tuple(k_list),
        l=l,
        eps_prime=eps_prime,
        gamma_log2=log_gamma,
        n_total=n_total,
        gamma_entropy_bound=2.0 * (cfg.epsilon * n_total + 2.0),
        theta_tail_ebits=float(n_total - codebook_pairs),
    )


def run_batches(cfg: BatchConfig, run_index: int = 0) -> BatchRunStats:
    """Measure batches of n copies until D_M is nearly a power of two.

    After each batch the accumulated rank product D_M = prod_i C(n, k_i)
    is tested against the window [2^l, 2^l (1 + epsilon)]; equivalently,
    the run stops once eps_prime = D_M / 2^l - 1 with l = floor(log2
    D_M) satisfies eps_prime <= epsilon.  D_M is kept as an exact
    integer while it fits 10^4 bits so float drift cannot corrupt the
    window test near its edges; truly long runs switch to log2
    accumulation.  Raises :class:`TruncationError` (carrying the partial
    stats) if max_batches is exhausted.
    """
    rng = np.random.default_rng([cfg.seed, run_index])
    d_exact: int | None = 1
    log2_d = 0.0
    k_list: list[int] = []
    for m in range(1, cfg.max_batches + 1):
        k = sample_k(cfg.n, cfg.p, rng)
        k_list.append(k)
        step = binom(cfg.n, k)
        if d_exact is not None:
            d_exact *= step
            if d_exact.bit_length() > _EXACT_BITS:
                log2_d = log2_big(d_exact)
                d_exact = None
        else:
            log2_d += log2_big(step)
        if d_exact is not None:
            l = d_exact.bit_length() - 1
            eps_prime = (d_exact - (1 << l)) / (1 << l)
        else:
            l = math.floor(log2_d)
            eps_prime = 2.0 ** (log2_d - l) - 1.0
        if eps_prime <= cfg.epsilon:
            return _stats(m, k_list, l, eps_prime, cfg)
    raise TruncationError(_stats(cfg.max_batches, k_list, l, eps_prime, cfg))


def superposition_bound(alpha_sq: float, e1: float, e2: float) -> float:
    """Entanglement bound for a superposition of two orthogonal states.

    For orthogonal bipartite pure states phi1, phi2 combined with
    weights alpha_sq and 1 - alpha_sq, the entanglement of the
    superposition is at most

        2 * [alpha_sq * E(phi1) + (1 - alpha_sq) * E(phi2) + H(alpha_sq)].
    """
    if not 0.0 <= alpha_sq <= 1.0:
        raise ValueError(f"alpha_sq out of [0, 1]: {alpha_sq}")
    if e1 < 0.0 or e2 < 0.0:
        raise ValueError("entanglements must be nonnegative")
    return 2.0 * (alpha_sq * e1 + (1.0 - alpha_sq) * e2 + shannon_h(alpha_sq))


def gamma_state_direct(l: int, eps_prime_count: int, tail_pairs: int) -> float:
    """Exact B|C entanglement of an explicit residual batching state.

    The state is the uniform superposition of the first 2^l codebook
    strings prefixed by theta plus the next eps_prime_count strings
    prefixed by tau (so eps_prime = eps_prime_count / 2^l), on 1 + l
    pairs, tensored with tail_pairs extra theta pairs.  With the Bell
    encoding every tail pair adds exactly one ebit.  Built densely and
    measured via the oracle, so the scale is capped at 10 pairs.
    """
    if l < 0 or l > 12:
        raise ValueError(f"need 0 <= l <= 12, got {l}")
    if not 0 <= eps_prime_count < (1 << l) or (l == 0 and eps_prime_count != 0):
        raise ValueError(
            f"eps_prime_count must lie in [0, 2^l - 1], got {eps_prime_count}"
        )
    if tail_pairs < 0:
        raise ValueError(f"need tail_pairs >= 0, got {tail_pairs}")
    total_pairs = 1 + l + tail_pairs
    if total_pairs > MAX_DENSE_PAIRS:
        raise ValueError(
            f"{total_pairs} pairs exceeds the dense cap of {MAX_DENSE_PAIRS}"
        )
    tail = [0] * tail_pairs
    strings = []
    for j in range(1 << l):
        strings.append(tuple([0] + _bits(j, l) + tail))
    for j in range(eps_prime_count):
        strings.append(tuple([1] + _bits(j, l) + tail))
    state = superpose_strings(strings, PairEncoding.bell())
    return entropy_of(schmidt_spectrum(state))


def _bits(j: int, width: int) -> list[int]:
    return [(j >> (width - 1 - a)) & 1 for a in range(width)]
