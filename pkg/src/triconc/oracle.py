"""Brute-force state-vector ground truth for small pair counts.

States live on ``n_pairs`` two-qubit pairs; pair ``j`` consists of one
qubit on the B side and one on the C side.  Amplitudes are stored dense,
indexed by the pair of bitstrings ``(b, c)`` with pair 0 as the most
significant bit on each side, flattened as ``index = (b << n) | c``.
Equivalently, ``amps.reshape(2**n, 2**n)[b, c]`` is the amplitude of
``|b>_B |c>_C``, which is the layout the Schmidt decomposition across
the B|C cut wants.

The module knows nothing about closed forms: it builds permutation test
states explicitly, extracts Schmidt spectra by SVD, applies the
compression relabeling as an explicit change of basis, and simulates
one-sided circuits as dense unitaries.  Everything is capped at 10
pairs (4**10 amplitudes); that is the price of being an oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .teststate import Encoding, TestStateSpec

__all__ = [
    "MAX_DENSE_PAIRS",
    "PairEncoding",
    "PureStateVector",
    "SchmidtSpectrum",
    "Gate",
    "LocalCircuit",
    "string_state",
    "superpose_strings",
    "build_test_state",
    "schmidt_spectrum",
    "entropy_of",
    "permutation_strings",
    "ubc_codebook",
    "apply_ubc",
    "apply_local_circuit",
    "entanglement_delta",
    "compression_circuit_n2",
]

#: Dense complex vectors stop here: 4**10 amplitudes is desk-scale.
MAX_DENSE_PAIRS = 10

_ORTHO_TOL = 1e-12


@dataclass(frozen=True, eq=False)  # ndarray fields: no element-wise __eq__
class PairEncoding:
    """The orthonormal signal pair (theta, tau) of one two-qubit pair.

    Each state is stored as a 2x2 complex matrix indexed ``[b, c]`` over
    the pair's B and C qubits, i.e. the four amplitudes on {00, 01, 10,
    11}.
    """

    theta: np.ndarray
    tau: np.ndarray

    def __post_init__(self) -> None:
        for name, m in (("theta", self.theta), ("tau", self.tau)):
            if m.shape != (2, 2):
                raise ValueError(f"{name} must be a 2x2 amplitude matrix")
            if abs(np.linalg.norm(m) - 1.0) > _ORTHO_TOL:
                raise ValueError(f"{name} is not normalized")
        if abs(np.vdot(self.theta, self.tau)) > _ORTHO_TOL:
            raise ValueError("theta and tau must be orthogonal")

    @classmethod
    def bell(cls) -> "PairEncoding":
        """theta = (|00>+|11>)/sqrt2, tau = (|00>-|11>)/sqrt2."""
        s = 1.0 / math.sqrt(2.0)
        return cls(
            theta=np.array([[s, 0.0], [0.0, s]], dtype=complex),
            tau=np.array([[s, 0.0], [0.0, -s]], dtype=complex),
        )

    @classmethod
    def product(cls) -> "PairEncoding":
        """theta = |00>, tau = |11>."""
        return cls(
            theta=np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
            tau=np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex),
        )

    @classmethod
    def for_encoding(cls, encoding: Encoding) -> "PairEncoding":
        return cls.bell() if encoding is Encoding.BELL else cls.product()


@dataclass(frozen=True, eq=False)  # ndarray field: no element-wise __eq__
class PureStateVector:
    """Dense normalized state of n_pairs two-qubit pairs."""

    n_pairs: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.n_pairs < 1 or self.n_pairs > MAX_DENSE_PAIRS:
            raise ValueError(f"n_pairs must be in [1, {MAX_DENSE_PAIRS}]")
        if self.amps.shape != (4**self.n_pairs,):
            raise ValueError(
                f"amps must have length 4**{self.n_pairs}, got {self.amps.shape}"
            )

    def as_matrix(self) -> np.ndarray:
        """(2^n, 2^n) view with row = B bitstring, column = C bitstring."""
        d = 1 << self.n_pairs
        return self.amps.reshape(d, d)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt probabilities across B|C, grouped as (value, multiplicity)."""

    probs: tuple[tuple[float, int], ...]

    def total(self) -> float:
        return sum(v * m for v, m in self.probs)


@dataclass(frozen=True)
class Gate:
    """One gate acting on a single side's qubits, pair-indexed."""

    side: str  # "B" or "C"
    kind: str  # "CNOT", "X", "Z", "H"
    target: int
    control: int | None = None

    def __post_init__(self) -> None:
        if self.side not in ("B", "C"):
            raise ValueError(f"side must be 'B' or 'C', got {self.side!r}")
        if self.kind not in ("CNOT", "X", "Z", "H"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if (self.kind == "CNOT") != (self.control is not None):
            raise ValueError("control index is required for CNOT and only CNOT")


@dataclass(frozen=True)
class LocalCircuit:
    """Ordered gates, each local to one side."""

    gates: tuple[Gate, ...]


def _string_matrix(bits: tuple[int, ...], enc: PairEncoding) -> np.ndarray:
    m = np.array([[1.0 + 0.0j]])
    for b in bits:
        m = np.kron(m, enc.tau if b else enc.theta)
    return m


def string_state(bits: tuple[int, ...], enc: PairEncoding) -> PureStateVector:
    """Product state with pair j in tau if bits[j] else theta."""
    n = len(bits)
    if n > MAX_DENSE_PAIRS:
        raise ValueError(f"{n} pairs exceeds the dense cap of {MAX_DENSE_PAIRS}")
    return PureStateVector(n_pairs=n, amps=_string_matrix(bits, enc).reshape(-1))


def superpose_strings(
    strings: list[tuple[int, ...]], enc: PairEncoding
) -> PureStateVector:
    """Uniform superposition of distinct theta/tau product strings."""
    if not strings:
        raise ValueError("need at least one string")
    n = len(strings[0])
    if any(len(s) != n for s in strings):
        raise ValueError("all strings must have the same length")
    if len(set(strings)) != len(strings):
        raise ValueError("strings must be distinct")
    if n > MAX_DENSE_PAIRS:
        raise ValueError(f"{n} pairs exceeds the dense cap of {MAX_DENSE_PAIRS}")
    d = 1 << n
    m = np.zeros((d, d), dtype=complex)
    for bits in strings:
        m += _string_matrix(bits, enc)
    m /= math.sqrt(len(strings))  # distinct strings are orthonormal
    return PureStateVector(n_pairs=n, amps=m.reshape(-1))


def permutation_strings(n: int, k: int) -> list[tuple[int, ...]]:
    """All weight-k tau-indicator strings of length n, lexicographic."""
    out = []
    for positions in itertools.combinations(range(n), k):
        bits = [0] * n
        for j in positions:
            bits[j] = 1
        out.append(tuple(bits))
    out.sort()
    return out


def build_test_state(spec: TestStateSpec, enc: PairEncoding | None = None) -> PureStateVector:
    """Uniform superposition over all C(n, k) permutation strings."""
    if spec.n > MAX_DENSE_PAIRS:
        raise ValueError(
            f"n={spec.n} exceeds the dense cap of {MAX_DENSE_PAIRS} pairs"
        )
    if enc is None:
        enc = PairEncoding.for_encoding(spec.encoding)
    return superpose_strings(permutation_strings(spec.n, spec.k), enc)


def schmidt_spectrum(state: PureStateVector) -> SchmidtSpectrum:
    """Schmidt probabilities of the B-side reduction, by SVD.

    SVD covers both the diagonal states built here and arbitrary circuit
    outputs.  Probabilities below 1e-14 are dropped; the rest are
    grouped to 1e-10 with the group mean as representative, which keeps
    entropies accurate because first-order deviations cancel around the
    mean.
    """
    if abs(state.norm() - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized: |amps| = {state.norm()}")
    sv = np.linalg.svd(state.as_matrix(), compute_uv=False)
    probs = np.sort(sv * sv)[::-1]
    probs = probs[probs > 1e-14]
    groups: list[list[float]] = []
    for v in probs:
        if groups and abs(groups[-1][0] - v) <= 1e-10:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return SchmidtSpectrum(
        probs=tuple((sum(g) / len(g), len(g)) for g in groups)
    )


def entropy_of(spectrum: SchmidtSpectrum) -> float:
    """Von Neumann entropy (bits) of a Schmidt spectrum, 0*log0 = 0."""
    total = 0.0
    for value, mult in spectrum.probs:
        if value > 0.0:
            total -= mult * value * math.log2(value)
    return total


def ubc_codebook(n: int, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The compression relabeling as (permutation string, image string) pairs.

    The j-th lexicographic permutation string maps to the j-th
    lexicographic theta/tau string on the leading ceil(log2 C(n, k))
    pairs, padded with theta.  Any fixed injective codebook defines the
    same unitary up to a relabeling; lexicographic order makes it
    reproducible.
    """
    perms = permutation_strings(n, k)
    count = len(perms)
    width = (count - 1).bit_length() if count > 1 else 0
    images = []
    for j in range(count):
        bits = [(j >> (width - 1 - a)) & 1 for a in range(width)]
        images.append(tuple(bits + [0] * (n - width)))
    return list(zip(perms, images))


def _pair_major(amps: np.ndarray, n: int) -> np.ndarray:
    # (b0..b_{n-1}, c0..c_{n-1}) axes -> one length-4 axis (b_j, c_j) per pair
    t = amps.reshape((2,) * (2 * n))
    order = [a for j in range(n) for a in (j, n + j)]
    return t.transpose(order).reshape((4,) * n)


def _from_pair_major(t: np.ndarray, n: int) -> np.ndarray:
    full = t.reshape((2,) * (2 * n))
    order = [2 * j for j in range(n)] + [2 * j + 1 for j in range(n)]
    return full.transpose(order).reshape(4**n)


def _logical_coefficients(state: PureStateVector, enc: PairEncoding) -> np.ndarray:
    # Contract each pair with <theta| and <tau|; axis j of the result is the
    # logical (theta=0 / tau=1) index of pair j.
    n = state.n_pairs
    w = np.stack([enc.theta.reshape(-1), enc.tau.reshape(-1)]).conj().T  # (4, 2)
    t = _pair_major(state.amps, n)
    for _ in range(n):
        t = np.tensordot(t, w, axes=([0], [0]))
    return t


def _from_logical(logical: np.ndarray, n: int, enc: PairEncoding) -> PureStateVector:
    a = np.stack([enc.theta.reshape(-1), enc.tau.reshape(-1)])  # (2, 4)
    t = logical
    for _ in range(n):
        t = np.tensordot(t, a, axes=([0], [0]))
    return PureStateVector(n_pairs=n, amps=_from_pair_major(t, n))


def apply_ubc(
    state: PureStateVector, n: int, k: int, enc: PairEncoding
) -> PureStateVector:
    """Apply the compression relabeling to a permutation-subspace state.

    The state must (a) lie in the theta/tau product span of its pairs,
    verified by a round-trip change of basis with residual below 1e-10,
    and (b) be supported only on weight-k strings.  Both violations are
    domain errors.  The relabeling follows :func:`ubc_codebook` and is
    an isometry on the permutation subspace.
    """
    if state.n_pairs != n:
        raise ValueError(f"state has {state.n_pairs} pairs, expected {n}")
    logical = _logical_coefficients(state, enc)
    roundtrip = _from_logical(logical, n, enc)
    residual = float(np.linalg.norm(state.amps - roundtrip.amps))
    if residual > 1e-10:
        raise ValueError(
            f"state is not in the theta/tau product span (residual {residual:.3e})"
        )
    weights = np.zeros_like(logical, dtype=bool)
    for bits in permutation_strings(n, k):
        weights[bits] = True
    off_support = float(np.linalg.norm(logical[~weights]))
    if off_support > 1e-10:
        raise ValueError(
            f"state leaves the weight-{k} permutation subspace "
            f"(off-support norm {off_support:.3e})"
        )
    mapped = np.zeros_like(logical)
    for perm, image in ubc_codebook(n, k):
        mapped[image] = logical[perm]
    return _from_logical(mapped, n, enc)


def _side_unitary(gate: Gate, n: int) -> np.ndarray:
    dim = 1 << n
    if gate.target >= n or (gate.control is not None and gate.control >= n):
        raise ValueError(f"gate {gate} addresses a pair index >= {n}")
    t_bit = 1 << (n - 1 - gate.target)
    if gate.kind == "CNOT":
        if gate.control == gate.target:
            raise ValueError("CNOT control and target must differ")
        c_bit = 1 << (n - 1 - gate.control)
        src = np.arange(dim)
        dst = np.where(src & c_bit, src ^ t_bit, src)
        u = np.zeros((dim, dim), dtype=complex)
        u[dst, src] = 1.0
        return u
    if gate.kind == "X":
        src = np.arange(dim)
        u = np.zeros((dim, dim), dtype=complex)
        u[src ^ t_bit, src] = 1.0
        return u
    if gate.kind == "Z":
        phases = np.where(np.arange(dim) & t_bit, -1.0, 1.0).astype(complex)
        return np.diag(phases)
    # H
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
    u = np.array([[1.0 + 0.0j]])
    for j in range(n):
        u = np.kron(u, h if j == gate.target else np.eye(2, dtype=complex))
    return u


def apply_local_circuit(
    state: PureStateVector, circuit: LocalCircuit
) -> PureStateVector:
    """Apply each gate as a unitary on its side's qubits only."""
    n = state.n_pairs
    m = state.as_matrix().copy()
    for gate in circuit.gates:
        u = _side_unitary(gate, n)
        if gate.side == "B":
            m = u @ m
        else:
            m = m @ u.T  # columns are C bitstrings: |c> -> U|c>
    return PureStateVector(n_pairs=n, amps=m.reshape(-1))


def entanglement_delta(state_in: PureStateVector, state_out: PureStateVector) -> float:
    """|E(in) - E(out)| across B|C: a lower bound on the non-locality of
    whatever transformation connects the two states."""
    e_in = entropy_of(schmidt_spectrum(state_in))
    e_out = entropy_of(schmidt_spectrum(state_out))
    return abs(e_in - e_out)


def compression_circuit_n2() -> LocalCircuit:
    """Candidate one-sided-gates circuit for the n=2, k=1 relabeling.

    Physical CNOTs from pair 1 into pair 0 on both sides implement a
    logical CNOT in the reversed direction (control pair 0, target pair
    1) on the Bell-encoded logical bits; Z on one side's pair-1 qubit is
    a logical NOT of pair 1.  Net logical action: (a, b) -> (a, a xor b
    xor 1), which sends theta.tau -> theta.theta and tau.theta ->
    tau.theta as the relabeling requires.  The verification against the
    explicit codebook is in the test suite and `triconc oracle-check`.
    """
    return LocalCircuit(
        gates=(
            Gate(side="B", kind="CNOT", control=1, target=0),
            Gate(side="C", kind="CNOT", control=1, target=0),
            Gate(side="B", kind="Z", target=1),
        )
    )
