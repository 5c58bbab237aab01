"""Acceptance suite: the named numerical targets, one test per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL
line per criterion.  Eight of the ten criteria pass.  Two encode
idealizations that exact computation refutes, and they fail *by
measurement*, not by bug:

* criterion 4's output-entropy half: the idealized value
  n - log2 C(n, k) is provably unreachable by any injective relabeling
  codebook when C(n, k) is not a power of two (minimal case n=3, k=1:
  every 3-of-4 codebook forces spectrum {3/8 x2, 1/24 x6}, entropy
  2.2075, against the idealized 1.4150);
* criterion 8's mean batch count: the stopping window has log2-scale
  width log2(1+eps) ~ 1.44 eps, so the 1/eps target overestimates the
  hitting rate; measured mean is ~8.9 at eps = 0.1, about 7.5 standard
  errors from 10.

The failure messages carry the measured numbers.  The module test
suites assert the exactly-verified behavior for the same machinery.
"""

import math
import time
from fractions import Fraction

import numpy as np

from triconc import (
    BatchConfig,
    Encoding,
    PairEncoding,
    TestStateSpec,
    amplitude_table,
    apply_local_circuit,
    apply_ubc,
    binom,
    build_test_state,
    compression_circuit_n2,
    e_in,
    e_out,
    entanglement_delta,
    entropy_of,
    gamma_state_direct,
    ledger,
    run_batches,
    schmidt_spectrum,
    shannon_h,
    slope_fit,
    string_state,
    superpose_strings,
    superposition_bound,
    ubc_codebook,
)

BELL = PairEncoding.bell()


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def test_c01_exact_four_pair_example():
    """amplitude_table(4,1) = (1/2, 1/4, 0, -1/4, -1/2) exactly; e_in = 3,
    e_out = 2 to 1e-12; runtime under 1 ms."""
    spec = TestStateSpec(4, 1, Encoding.BELL)
    amplitude_table(spec), e_in(spec), e_out(spec)  # warm caches/imports
    start = time.perf_counter()
    table = amplitude_table(spec)
    ein = e_in(spec)
    eout = e_out(spec)
    elapsed = time.perf_counter() - start

    root = math.isqrt((1 << 4) * binom(4, 1))
    assert root * root == (1 << 4) * binom(4, 1)
    signed = tuple(Fraction(v, root) for v in table.s)
    expected = (Fraction(1, 2), Fraction(1, 4), Fraction(0),
                Fraction(-1, 4), Fraction(-1, 2))
    ok = (signed == expected and abs(ein - 3.0) < 1e-12
          and abs(eout - 2.0) < 1e-12 and elapsed < 1e-3)
    _report("c01 exact n=4 example", ok,
            f"xi={tuple(str(x) for x in signed)}, e_in={ein}, e_out={eout}, "
            f"{elapsed * 1e6:.0f} us")
    assert signed == expected
    assert abs(ein - 3.0) < 1e-12
    assert abs(eout - 2.0) < 1e-12
    assert elapsed < 1e-3


def test_c02_gap_slope_at_p08():
    """OLS slope of gap(n) for p = 0.8 over n in {50,...,500}: 0.466 +- 0.01."""
    start = time.perf_counter()
    fit = slope_fit(0.8, list(range(50, 501, 50)))
    elapsed = time.perf_counter() - start
    ok = abs(fit.slope - 0.466) <= 0.01 and elapsed < 5.0
    _report("c02 slope p=0.8", ok,
            f"slope={fit.slope:.6f} (target 0.466 +- 0.01), "
            f"rms residual={fit.residual:.4f}, {elapsed:.2f} s")
    assert abs(fit.slope - 0.466) <= 0.01
    assert elapsed < 5.0


def test_c03_gap_slope_at_p05():
    """OLS slope of gap(n) for p = 0.5 over n in {50,...,500}: 0.56 +- 0.01."""
    start = time.perf_counter()
    fit = slope_fit(0.5, list(range(50, 501, 50)))
    elapsed = time.perf_counter() - start
    ok = abs(fit.slope - 0.56) <= 0.01 and elapsed < 5.0
    _report("c03 slope p=0.5", ok,
            f"slope={fit.slope:.6f} (target 0.56 +- 0.01), "
            f"rms residual={fit.residual:.4f}, {elapsed:.2f} s")
    assert abs(fit.slope - 0.56) <= 0.01
    assert elapsed < 5.0


def test_c04_formula_vs_oracle_every_config():
    """For every n <= 8 and every k: |e_in(formula) - e_in(oracle)| < 1e-10
    and |e_out(formula) - e_out(oracle via the relabeling)| < 1e-10.

    The e_in half and the power-of-two e_out half hold at float
    precision.  The e_out half FAILS wherever C(n, k) is not a power of
    two, and provably must: the relabeled state is a uniform
    superposition of C(n, k) codebook strings on ceil(log2 C(n, k))
    pairs, whose Schmidt spectrum cannot have entropy
    ceil(log2 C) - log2 C short of flat, and no injective codebook makes
    it flat (n=3, k=1 forces {3/8 x2, 1/24 x6} for every 3-string
    codebook).  The idealized formula is kept as the contract under
    test; this check measures the idealization error honestly.
    """
    start = time.perf_counter()
    worst_e_in = 0.0
    violations = []
    for n in range(1, 9):
        for k in range(n + 1):
            spec = TestStateSpec(n, k, Encoding.BELL)
            state = build_test_state(spec, BELL)
            ein_oracle = entropy_of(schmidt_spectrum(state))
            worst_e_in = max(worst_e_in, abs(ein_oracle - e_in(spec)))
            out = apply_ubc(state, n, k, BELL)
            eout_oracle = entropy_of(schmidt_spectrum(out))
            delta = abs(eout_oracle - e_out(spec))
            if delta >= 1e-10:
                count = binom(n, k)
                violations.append((n, k, count, e_out(spec), eout_oracle))
    elapsed = time.perf_counter() - start
    ok = worst_e_in < 1e-10 and not violations and elapsed < 60.0
    lines = ", ".join(
        f"(n={n},k={k},C={c}): idealized {f:.4f} vs oracle {o:.4f}"
        for n, k, c, f, o in violations[:4]
    )
    _report(
        "c04 oracle equivalence n<=8",
        ok,
        f"worst e_in delta {worst_e_in:.2e}; e_out idealization violated at "
        f"{len(violations)} of {sum(n + 1 for n in range(1, 9))} configs "
        f"(every one with C(n,k) not a power of two), e.g. {lines}; "
        f"{elapsed:.1f} s",
    )
    assert elapsed < 60.0
    assert worst_e_in < 1e-10
    assert not violations, (
        f"e_out(formula) = n - log2 C(n,k) is an exact-power-of-two "
        f"idealization; the relabeling oracle contradicts it at "
        f"{len(violations)} non-power-of-two configs (first: {violations[0]}). "
        f"No injective codebook can close this gap, so this criterion is "
        f"unattainable as stated; see the module docstring."
    )


def test_c05_product_encoding_reversibility():
    """Product encoding: gap = 0 to 1e-12 for every n <= 8, k <= n."""
    enc = PairEncoding.product()
    worst_formula = 0.0
    worst_oracle = 0.0
    for n in range(1, 9):
        for k in range(n + 1):
            spec = TestStateSpec(n, k, Encoding.PRODUCT)
            worst_formula = max(worst_formula, abs(e_in(spec) - e_out(spec)))
            state = build_test_state(spec, enc)
            out = apply_ubc(state, n, k, enc)
            worst_oracle = max(worst_oracle, entanglement_delta(state, out))
    ok = worst_formula < 1e-12 and worst_oracle < 1e-12
    _report("c05 product-encoding zero gap", ok,
            f"worst formula gap {worst_formula:.2e}, "
            f"worst oracle delta {worst_oracle:.2e}")
    assert worst_formula < 1e-12
    assert worst_oracle < 1e-12


def test_c06_exact_normalization_to_n100():
    """sum_i C(n,i) xi_i^2 = 1 as an exact rational identity, all n <= 100."""
    start = time.perf_counter()
    for n in range(1, 101):
        for k in range(n + 1):
            table = amplitude_table(TestStateSpec(n, k, Encoding.BELL))
            assert table.normalization() == 1, (n, k)
    elapsed = time.perf_counter() - start
    ok = elapsed < 30.0
    _report("c06 exact normalization n<=100", ok,
            f"all {sum(n + 1 for n in range(1, 101))} tables sum to exactly 1, "
            f"{elapsed:.1f} s")
    assert elapsed < 30.0


def test_c07_two_pair_relabeling_by_one_sided_gates():
    """A circuit of B-local and C-local gates reproduces the n=2 relabeling
    on all four logical basis states with fidelity 1 - 1e-10."""
    circuit = compression_circuit_n2()
    pinned = dict(ubc_codebook(2, 1))
    worst = 0.0
    outputs = []
    for bits in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        out = apply_local_circuit(string_state(bits, BELL), circuit)
        best_bits, best_fid = None, -1.0
        for cand in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            fid = abs(np.vdot(string_state(cand, BELL).amps, out.amps))
            if fid > best_fid:
                best_bits, best_fid = cand, fid
        outputs.append(best_bits)
        worst = max(worst, 1.0 - best_fid)
        if bits in pinned:
            assert best_bits == pinned[bits], (bits, best_bits)
    distinct = len(set(outputs)) == 4
    ok = worst < 1e-10 and distinct
    _report("c07 n=2 one-sided-gates relabeling", ok,
            f"worst infidelity {worst:.2e}, images "
            f"{dict(zip(['tt', 'tT', 'Tt', 'TT'], outputs))}")
    assert worst < 1e-10
    assert distinct


def test_c08_batching_statistics():
    """eps = 0.1, n = 20, p = 0.5, 2000 seeded trials: mean batch count
    within 3 standard errors of 10; every run has eps' in [0, eps].

    The containment half passes.  The mean half FAILS by measurement:
    the run stops when the fractional part of log2 D_M lands in
    [0, log2(1+eps)], a window of width log2(1.1) = 0.1375, so the
    equidistribution rate is 1/0.1375 = 7.27 batches; early-step
    transients lift the observed mean to ~8.9, still far below the
    first-order 1/eps = 10 target.
    """
    start = time.perf_counter()
    cfg = BatchConfig(n=20, p=0.5, epsilon=0.1, seed=0xC0FFEE)
    counts = []
    eps_ok = True
    for trial in range(2000):
        stats = run_batches(cfg, run_index=trial)
        counts.append(stats.m_batches)
        eps_ok = eps_ok and 0.0 <= stats.eps_prime <= 0.1
    elapsed = time.perf_counter() - start
    mean = sum(counts) / len(counts)
    stderr = float(np.std(counts, ddof=1)) / math.sqrt(len(counts))
    dev = abs(mean - 10.0)
    ok = dev <= 3 * stderr and eps_ok and elapsed < 10.0
    _report(
        "c08 batching statistics",
        ok,
        f"mean M = {mean:.3f}, se = {stderr:.3f}, |mean - 10| = {dev:.2f} "
        f"({dev / stderr:.1f} se); eps' containment "
        f"{'holds' if eps_ok else 'VIOLATED'}; {elapsed:.1f} s",
    )
    assert eps_ok
    assert elapsed < 10.0
    assert dev <= 3 * stderr, (
        f"mean batch count {mean:.3f} (se {stderr:.3f}) is {dev / stderr:.1f} "
        f"standard errors from the 1/eps = 10 target.  The stopping window "
        f"[2^l, 2^l(1+eps)] has log2-scale width log2(1+eps) = "
        f"{math.log2(1.1):.4f}, not eps, so the 1/eps expectation "
        f"overestimates; the measured rate is the honest value and this "
        f"criterion is unattainable as stated."
    )


def test_c09_residual_state_bound_chain():
    """Every small residual construction (l <= 3, total pairs <= 5)
    satisfies direct E <= 2[a E1 + (1-a) E2 + H(a)] <= 2(eps' N + 2)."""
    checked = 0
    worst_slack = -math.inf
    for l in (1, 2, 3):
        for tail in range(0, 5 - 1 - l + 1):
            n_pairs = 1 + l + tail
            for count in range(0, 2**l):
                direct = gamma_state_direct(l, count, tail) - tail
                eps_prime = count / 2**l
                alpha_sq = 1.0 / (1.0 + eps_prime)
                if count:
                    phi2 = superpose_strings(
                        [tuple([1] + [(j >> (l - 1 - a)) & 1 for a in range(l)])
                         for j in range(count)],
                        BELL,
                    )
                    e2 = entropy_of(schmidt_spectrum(phi2))
                else:
                    e2 = 0.0
                mid = superposition_bound(alpha_sq, 1.0, e2)
                final = 2.0 * (eps_prime * n_pairs + 2.0)
                assert direct <= mid + 1e-9, (l, count, tail, direct, mid)
                assert mid <= final + 1e-9, (l, count, tail, mid, final)
                worst_slack = max(worst_slack, direct - mid)
                checked += 1
    _report("c09 residual-state bound chain", True,
            f"{checked} constructions, max(direct - mid bound) = "
            f"{worst_slack:.3f} (<= 0 required)")
    assert checked >= 24


def test_c10_entanglement_of_formation_ledger():
    """Concurrence-route ef_in equals H(1/2 + sqrt(p(1-p))) to 1e-10 on a
    101-point grid; ef_out = 1 - H(p); p in {0, 1/2} give the trivial
    ledgers."""
    worst = 0.0
    for i in range(101):
        p = i / 100
        led = ledger(p)
        closed = shannon_h(0.5 + math.sqrt(p * (1.0 - p)))
        worst = max(worst, abs(led.ef_in_per_copy - closed))
        assert abs(led.ef_out_per_copy - (1.0 - shannon_h(p))) < 1e-12
    l0 = ledger(0.0)
    assert abs(l0.ef_in_per_copy - 1.0) < 1e-10
    assert l0.ef_out_per_copy == 1.0
    assert abs(l0.locking_deficit_per_copy) < 1e-12
    assert (l0.s_a_per_copy, l0.s_b_per_copy) == (0.0, 1.0)
    l_half = ledger(0.5)
    assert abs(l_half.ef_in_per_copy) < 1e-10
    assert abs(l_half.ef_out_per_copy) < 1e-12
    assert abs(l_half.locking_deficit_per_copy) < 1e-12
    assert l_half.s_a_per_copy == 1.0
    ok = worst < 1e-10
    _report("c10 E_F ledger", ok,
            f"worst |concurrence route - closed form| = {worst:.2e} "
            f"over 101 grid points")
    assert worst < 1e-10
