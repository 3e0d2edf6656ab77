"""Two-time pseudo-density matrices and the causality measure.

A pseudo-density matrix (PDM) is Hermitian with unit trace but, unlike a
density matrix, may carry negative eigenvalues; those witness temporal
correlations between the two ends of a process. The causality measure is
the base-2 logarithm of its trace norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import QuantumChannel, apply_on_second
from .linalg import (
    PAULIS,
    anticommutator,
    as_matrix,
    kron,
    partial_transpose,
    permute_qubits,
    require_hermitian,
    trace_norm,
)

# F values above this negative floor are floating noise and clamp to zero.
NEG_CLAMP = 1e-12
TRACE_ATOL = 1e-9


@dataclass(frozen=True)
class PseudoDensityMatrix:
    """Hermitian unit-trace operator over (earlier time x later time)."""

    matrix: np.ndarray
    l_in: int
    l_out: int

    def __post_init__(self):
        m = require_hermitian(self.matrix)
        if m.shape != (2 ** (self.l_in + self.l_out),) * 2:
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.l_in}+{self.l_out} qubits"
            )
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"pseudo-density matrix trace {tr!r} is not 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def swap_matrix(l: int) -> np.ndarray:
    """SWAP^(x l) on 2l qubits, pairing qubit i with qubit l+i.

    Built from the Pauli-sum form of the two-qubit SWAP, per pair, then
    rewired so the first l qubits form the earlier-time register.
    """
    if l < 1:
        raise ValueError("need at least one qubit pair")
    swap2 = 0.5 * sum(kron(s, s) for s in PAULIS)
    per_pair = swap2
    for _ in range(l - 1):
        per_pair = kron(per_pair, swap2)
    # per-pair wire layout (a1,b1,a2,b2,...) -> (a1..al, b1..bl)
    order = [2 * j for j in range(l)] + [2 * j + 1 for j in range(l)]
    return permute_qubits(per_pair, order)


def swap_permutation(l: int) -> np.ndarray:
    """The same operator in its permutation form, sum |x><y| x |y><x|."""
    d = 2**l
    s = np.zeros((d * d, d * d), dtype=complex)
    for x in range(d):
        for y in range(d):
            s[x * d + y, y * d + x] = 1.0
    return s


def _require_density(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = require_hermitian(rho)
    if rho.shape != (dim, dim):
        raise ValueError(f"state shape {rho.shape} does not match dimension {dim}")
    vals = np.linalg.eigvalsh(rho)
    if vals[0] < -1e-9:
        raise ValueError(f"state has negative eigenvalue {vals[0]:.3e}")
    if abs(np.trace(rho).real - 1.0) > TRACE_ATOL:
        raise ValueError(f"state trace {np.trace(rho).real!r} is not 1")
    return rho


def pdm_two_point(rho: np.ndarray, c: QuantumChannel) -> PseudoDensityMatrix:
    """PDM of one channel use bracketed by two single-qubit measurements.

    Computes (I x N)({rho x I/2, SWAP}) for a single-qubit input state rho.
    """
    rho = _require_density(as_matrix(rho), 2)
    if c.qubits_in != 1 or c.qubits_out != 1:
        raise ValueError(f"{c.label} is not a single-qubit channel")
    pre = anticommutator(kron(rho, np.eye(2, dtype=complex) / 2.0), swap_matrix(1))
    return PseudoDensityMatrix(apply_on_second(c, pre, 2), l_in=1, l_out=1)


def pdm_from_channel(c: QuantumChannel) -> PseudoDensityMatrix:
    """PDM of a channel probed with a maximally mixed earlier-time register."""
    if c.qubits_in != c.qubits_out:
        raise ValueError(
            f"{c.label}: PDM construction needs equal input/output qubit counts "
            f"(got {c.qubits_in}->{c.qubits_out})"
        )
    l = c.qubits_in
    src = swap_matrix(l) / 2**l
    return PseudoDensityMatrix(apply_on_second(c, src, 2**l), l_in=l, l_out=l)


def causality_F(r: PseudoDensityMatrix) -> float:
    """log2 of the PDM trace norm; zero for positive semi-definite PDMs."""
    value = math.log2(trace_norm(r.matrix))
    if -NEG_CLAMP < value < 0.0:
        return 0.0
    return value


def f_tr(r: PseudoDensityMatrix) -> float:
    """Trace-norm causality monotone, trace norm minus one."""
    return trace_norm(r.matrix) - 1.0


def log_negativity(state: np.ndarray, dims) -> float:
    """log2 trace norm of the partial transpose of a bipartite state."""
    state = require_hermitian(state)
    if abs(np.trace(state).real - 1.0) > TRACE_ATOL:
        raise ValueError(f"state trace {np.trace(state).real!r} is not 1")
    return math.log2(trace_norm(partial_transpose(state, dims, 1)))


def lemma1_check(k_map: np.ndarray, k: int, m: int) -> float:
    """Max-entry residual of the swap intertwining identity for a map K.

    For K from k qubits to m qubits, compares (I x K) S_k (I x K^dag)
    against (K^dag x I) S_m (K x I); both sides live on k+m qubits.
    """
    k_map = as_matrix(k_map)
    if k_map.shape != (2**m, 2**k):
        raise ValueError(f"map shape {k_map.shape} does not match {k}->{m} qubits")
    eye_k = np.eye(2**k, dtype=complex)
    eye_m = np.eye(2**m, dtype=complex)
    lhs = kron(eye_k, k_map) @ swap_matrix(k) @ kron(eye_k, k_map.conj().T)
    rhs = kron(k_map.conj().T, eye_m) @ swap_matrix(m) @ kron(k_map, eye_m)
    return float(np.max(np.abs(lhs - rhs)))
