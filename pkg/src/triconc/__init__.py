"""Tripartite entanglement-concentration numerics.

Exact test-state amplitudes and entropies (:mod:`triconc.teststate`) on
top of arbitrary-precision combinatorics (:mod:`triconc.exactmath`),
cross-checked by a dense state-vector oracle (:mod:`triconc.oracle`);
stochastic batching statistics and the residual-state entanglement
bound (:mod:`triconc.protocol`); entanglement-of-formation bookkeeping
(:mod:`triconc.eof`); and a dataset-emitting CLI (:mod:`triconc.cli`).
"""

from .exactmath import binom, inner_sum, inner_sum_table, log2_big, shannon_h
from .teststate import (
    AmplitudeTable,
    Encoding,
    EntanglementReport,
    SlopeFit,
    TestStateSpec,
    amplitude_table,
    e_in,
    e_out,
    fit_line,
    gap_scan,
    slope_fit,
)
from .oracle import (
    Gate,
    LocalCircuit,
    PairEncoding,
    PureStateVector,
    SchmidtSpectrum,
    apply_local_circuit,
    apply_ubc,
    build_test_state,
    compression_circuit_n2,
    entanglement_delta,
    entropy_of,
    schmidt_spectrum,
    string_state,
    superpose_strings,
    ubc_codebook,
)
from .protocol import (
    BatchConfig,
    BatchRunStats,
    TruncationError,
    gamma_state_direct,
    run_batches,
    sample_k,
    superposition_bound,
    typical_mass,
)
from .eof import EofLedger, concurrence, eof_from_concurrence, ledger, rp_reduced_bc

__version__ = "0.1.0"
