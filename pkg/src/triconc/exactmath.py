"""Exact combinatorics and base-2 entropy primitives.

Everything downstream leans on three guarantees made here:

* binomial coefficients are arbitrary-precision integers, never floats;
* the alternating binomial sums that carry the test-state amplitudes are
  evaluated in exact integer arithmetic, because they cancel massively
  (for n of a few hundred the terms dwarf the result by hundreds of
  orders of magnitude and any float path returns garbage);
* log2 of a huge integer goes through bit_length plus a mantissa that
  fits a float exactly, so it stays accurate to ~1e-15 absolute no
  matter how many thousands of bits the integer has.
"""

from __future__ import annotations

import math

__all__ = [
    "binom",
    "log2_big",
    "shannon_h",
    "inner_sum",
    "inner_sum_table",
]


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) for 0 <= k <= n."""
    if n < 0 or k < 0:
        raise ValueError(f"binom requires nonnegative arguments, got ({n}, {k})")
    if k > n:
        raise ValueError(f"binom requires k <= n, got ({n}, {k})")
    return math.comb(n, k)


def log2_big(x: int) -> float:
    """log2 of a positive arbitrary-precision integer.

    Splits x into (mantissa, shift) with a 54-bit mantissa, which a float
    represents exactly; the truncation error is below 2**-53 relative,
    i.e. ~1.6e-16 absolute in the logarithm.  Works for integers far
    beyond float range.
    """
    if x <= 0:
        raise ValueError(f"log2_big requires a positive integer, got {x}")
    nbits = x.bit_length()
    if nbits <= 53:
        return math.log2(x)
    shift = nbits - 54
    return shift + math.log2(x >> shift)


def shannon_h(p: float) -> float:
    """Binary Shannon entropy H(p) in bits, with the 0*log0 = 0 convention."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of [0, 1]: {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def inner_sum(n: int, k: int, i: int) -> int:
    """Signed integer amplitude sum S_i for the weight-i Schmidt class.

    S_i = sum_x (-1)^x * C(n-i, k-x) * C(i, x) over the x where both
    binomials are nonzero.  The squared amplitude of a weight-i string
    in the (n, k) test state is S_i**2 / (2**n * C(n, k)).
    """
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not (0 <= i <= n):
        raise ValueError(f"need 0 <= i <= n, got i={i}, n={n}")
    lo = max(0, i - (n - k))
    hi = min(i, k)
    total = 0
    for x in range(lo, hi + 1):
        term = math.comb(n - i, k - x) * math.comb(i, x)
        total += -term if (x & 1) else term
    return total


def inner_sum_table(n: int, k: int) -> list[int]:
    """All inner sums S_0 .. S_n for fixed (n, k), in O(n) integer steps.

    Uses the three-term recurrence in the weight index,

        (n - i) * S_{i+1} = (n - 2k) * S_i - i * S_{i-1},

    whose divisions are exact in integer arithmetic.  Equivalent to
    calling inner_sum for each i (the test suite cross-checks the two
    routes), but turns the O(n^2) table into O(n), which is what makes
    dense scans up to n = 500 cheap.
    """
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    s = [0] * (n + 1)
    s[0] = math.comb(n, k)
    if n == 0:
        return s
    s[1] = math.comb(n - 1, k) - (math.comb(n - 1, k - 1) if k >= 1 else 0)
    for i in range(1, n):
        num = (n - 2 * k) * s[i] - i * s[i - 1]
        q, r = divmod(num, n - i)
        if r:
            raise ArithmeticError(f"inexact recurrence step at (n={n}, k={k}, i={i})")
        s[i + 1] = q
    return s
