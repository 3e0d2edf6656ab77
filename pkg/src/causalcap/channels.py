"""Quantum channels in Kraus form, with Choi-matrix algebra.

A channel is stored as a validated list of Kraus operators together with an
eagerly computed Choi matrix (normalized to trace 1, i.e. the channel acting
on one half of a maximally entangled state). Channels are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    HERM_ATOL,
    I2,
    PAULI_Z,
    as_matrix,
    dagger,
    hermiticity_defect,
    kron,
    partial_trace,
    random_complex,
)

COMPLETENESS_ATOL = 1e-9
CHOI_EIG_ATOL = 1e-9
CHOI_MARGINAL_ATOL = 1e-8
# Choi eigenvalues below this are treated as numerical rank noise and dropped
# during Kraus extraction.
KRAUS_TRUNCATION = 1e-10


class ChannelFormatError(ValueError):
    """A channel description (file or dict) violates the channel contract."""


@dataclass(frozen=True)
class QuantumChannel:
    """Completely positive trace-preserving map between qubit registers."""

    qubits_in: int
    qubits_out: int
    kraus: tuple
    choi: np.ndarray
    label: str = "channel"

    @property
    def dim_in(self) -> int:
        return 2**self.qubits_in

    @property
    def dim_out(self) -> int:
        return 2**self.qubits_out


def _completeness_residual(ops: Sequence[np.ndarray], dim_in: int) -> float:
    acc = np.zeros((dim_in, dim_in), dtype=complex)
    for a in ops:
        acc += a.conj().T @ a
    return float(np.max(np.abs(acc - np.eye(dim_in))))


def max_entangled_state(dim: int) -> np.ndarray:
    """Amplitude vector of the maximally entangled state on dim x dim."""
    return np.eye(dim, dtype=complex).reshape(-1) / np.sqrt(dim)


def _choi_from_kraus(ops: Sequence[np.ndarray], dim_in: int) -> np.ndarray:
    # (I x A)|Phi+> has component A[y, x]/sqrt(d) at index (x, y)
    vecs = [a.T.reshape(-1) / np.sqrt(dim_in) for a in ops]
    j = np.zeros((len(vecs[0]), len(vecs[0])), dtype=complex)
    for v in vecs:
        j += np.outer(v, v.conj())
    return j


def from_kraus(
    ops: Sequence[np.ndarray],
    qubits_in: int | None = None,
    qubits_out: int | None = None,
    label: str = "channel",
) -> QuantumChannel:
    """Build a channel from Kraus operators, validating trace preservation."""
    mats = tuple(as_matrix(a) for a in ops)
    if not mats:
        raise ValueError("a channel needs at least one Kraus operator")
    rows, cols = mats[0].shape
    if any(a.shape != (rows, cols) for a in mats):
        raise ValueError("Kraus operators must share a common shape")
    if qubits_in is None:
        qubits_in = int(np.log2(cols))
    if qubits_out is None:
        qubits_out = int(np.log2(rows))
    if (2**qubits_in, 2**qubits_out) != (cols, rows):
        raise ValueError(
            f"Kraus shape {mats[0].shape} does not match {qubits_in}->{qubits_out} qubits"
        )
    residual = _completeness_residual(mats, cols)
    if residual > COMPLETENESS_ATOL:
        raise ValueError(
            f"Kraus list is not trace preserving (completeness residual {residual:.3e})"
        )
    choi = _choi_from_kraus(mats, cols)
    choi = 0.5 * (choi + choi.conj().T)
    choi.setflags(write=False)
    return QuantumChannel(qubits_in, qubits_out, mats, choi, label)


def apply(c: QuantumChannel, rho: np.ndarray) -> np.ndarray:
    """Channel action: sum_k A_k rho A_k^dagger."""
    rho = as_matrix(rho)
    if rho.shape != (c.dim_in, c.dim_in):
        raise ValueError(f"state shape {rho.shape} does not match channel input {c.dim_in}")
    out = np.zeros((c.dim_out, c.dim_out), dtype=complex)
    for a in c.kraus:
        out += a @ rho @ a.conj().T
    return out


def apply_on_second(c: QuantumChannel, m: np.ndarray, ref_dim: int) -> np.ndarray:
    """Apply the channel to the second tensor factor of a bipartite operator."""
    m = as_matrix(m)
    if m.shape != (ref_dim * c.dim_in, ref_dim * c.dim_in):
        raise ValueError(
            f"operator shape {m.shape} does not match {ref_dim} x {c.dim_in} bipartition"
        )
    out = np.zeros((ref_dim * c.dim_out, ref_dim * c.dim_out), dtype=complex)
    eye = np.eye(ref_dim, dtype=complex)
    for a in c.kraus:
        ext = np.kron(eye, a)
        out += ext @ m @ ext.conj().T
    return out


def choi(c: QuantumChannel) -> np.ndarray:
    """Trace-1 Choi matrix (cached at construction)."""
    return c.choi


def kraus_from_choi(
    j: np.ndarray,
    qubits_in: int,
    qubits_out: int,
    label: str = "channel",
) -> QuantumChannel:
    """Extract a Kraus list from a trace-1 Choi matrix.

    The Choi matrix must be Hermitian, positive semi-definite up to
    eigenvalue tolerance, and have a maximally mixed marginal on the input
    factor (trace preservation).
    """
    j = as_matrix(j)
    dim_in, dim_out = 2**qubits_in, 2**qubits_out
    if j.shape != (dim_in * dim_out, dim_in * dim_out):
        raise ValueError(f"Choi shape {j.shape} does not match {qubits_in}->{qubits_out} qubits")
    defect = hermiticity_defect(j)
    if defect > HERM_ATOL:
        raise ValueError(f"Choi matrix is not Hermitian (max defect {defect:.3e})")
    j = 0.5 * (j + j.conj().T)
    if abs(np.trace(j).real - 1.0) > 1e-9:
        raise ValueError(f"Choi matrix trace {np.trace(j).real!r} is not 1")
    vals, vecs = np.linalg.eigh(j)
    if vals[0] < -CHOI_EIG_ATOL:
        raise ValueError(f"not completely positive (Choi eigenvalue {vals[0]:.3e})")
    marginal = partial_trace(j, [dim_in, dim_out], keep={0})
    marg_res = float(np.max(np.abs(marginal - np.eye(dim_in) / dim_in)))
    if marg_res > CHOI_MARGINAL_ATOL:
        raise ValueError(f"not trace preserving (input marginal residual {marg_res:.3e})")
    ops = []
    for lam, vec in zip(vals, vecs.T):
        if lam <= KRAUS_TRUNCATION:
            continue
        # column-of-Choi eigenvector w[x*dim_out + y] -> Kraus entry A[y, x]
        a = np.sqrt(lam * dim_in) * vec.reshape(dim_in, dim_out).T
        ops.append(a)
    return from_kraus(ops, qubits_in, qubits_out, label=label)


def compose(d: QuantumChannel, c: QuantumChannel) -> QuantumChannel:
    """Composition d after c."""
    if c.qubits_out != d.qubits_in:
        raise ValueError(
            f"cannot compose: {c.label} outputs {c.qubits_out} qubits, "
            f"{d.label} expects {d.qubits_in}"
        )
    ops = [dj @ ak for dj in d.kraus for ak in c.kraus]
    return from_kraus(ops, c.qubits_in, d.qubits_out, label=f"{d.label}∘{c.label}")


def tensor(c: QuantumChannel, d: QuantumChannel) -> QuantumChannel:
    """Parallel use of two channels; qubit counts add."""
    ops = [np.kron(a, b) for a in c.kraus for b in d.kraus]
    return from_kraus(
        ops, c.qubits_in + d.qubits_in, c.qubits_out + d.qubits_out,
        label=f"{c.label}⊗{d.label}",
    )


def conjugate(c: QuantumChannel) -> QuantumChannel:
    """Channel with entrywise-conjugated Kraus operators.

    Satisfies transpose(N(X)) = N_conj(transpose(X)) for every input X.
    """
    return from_kraus(
        [a.conj() for a in c.kraus], c.qubits_in, c.qubits_out, label=f"{c.label}*"
    )


def shifted_depolarizing(p: float, gamma: float) -> QuantumChannel:
    """Single-qubit map rho -> (1-4p) rho + 4p (I + gamma Z)/2.

    Constructed through its Choi matrix (the action is given directly, a
    Kraus list is not), then converted with :func:`kraus_from_choi`.
    """
    if not 0.0 <= p <= 0.25:
        raise ValueError(f"p={p!r} outside [0, 1/4]")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma!r} outside [0, 1]")
    shift = (np.eye(2) + gamma * PAULI_Z) / 2.0

    def act(e: np.ndarray) -> np.ndarray:
        return (1.0 - 4.0 * p) * e + 4.0 * p * np.trace(e) * shift

    j = np.zeros((4, 4), dtype=complex)
    for x in range(2):
        for y in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[x, y] = 1.0
            j += 0.5 * np.kron(e, act(e))
    return kraus_from_choi(
        j, 1, 1, label=f"shifted-depolarizing(p={p:g},gamma={gamma:g})"
    )


def named_channel(name: str, **params) -> QuantumChannel:
    """Construct one of the built-in channel families by name."""
    name = name.lower()
    if name == "identity":
        qubits = int(params.pop("qubits", 1))
        if qubits < 1:
            raise ValueError("identity channel needs qubits >= 1")
        _reject_extra(name, params)
        return from_kraus(
            [np.eye(2**qubits, dtype=complex)], qubits, qubits, label=f"identity({qubits})"
        )
    if name == "depolarizing":
        p = float(params.pop("p"))
        _reject_extra(name, params)
        c = shifted_depolarizing(p, 0.0)
        return QuantumChannel(
            c.qubits_in, c.qubits_out, c.kraus, c.choi, label=f"depolarizing(p={p:g})"
        )
    if name == "shifted-depolarizing":
        p = float(params.pop("p"))
        gamma = float(params.pop("gamma"))
        _reject_extra(name, params)
        return shifted_depolarizing(p, gamma)
    if name == "dephasing":
        lam = float(params.pop("strength", 1.0))
        _reject_extra(name, params)
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"dephasing strength {lam!r} outside [0, 1]")
        return from_kraus(
            [np.sqrt(1.0 - lam / 2.0) * I2, np.sqrt(lam / 2.0) * PAULI_Z],
            1, 1, label=f"dephasing({lam:g})",
        )
    if name == "amplitude-damping":
        eta = float(params.pop("eta"))
        _reject_extra(name, params)
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"damping eta {eta!r} outside [0, 1]")
        a0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - eta)]], dtype=complex)
        a1 = np.array([[0.0, np.sqrt(eta)], [0.0, 0.0]], dtype=complex)
        return from_kraus([a0, a1], 1, 1, label=f"amplitude-damping({eta:g})")
    raise ValueError(f"unknown channel name {name!r}")


def _reject_extra(name: str, params: dict) -> None:
    if params:
        raise ValueError(f"unexpected parameters for {name!r}: {sorted(params)}")


def random_channel(
    qubits_in: int,
    qubits_out: int,
    env_qubits: int = 1,
    seed: int = 0,
) -> QuantumChannel:
    """Random CPTP channel from an isometry into system + environment.

    The isometry is an orthonormalized random complex matrix; the
    environment is traced out. Deterministic per seed.
    """
    if env_qubits < 1:
        raise ValueError("env_qubits must be at least 1")
    dim_in, dim_out, dim_env = 2**qubits_in, 2**qubits_out, 2**env_qubits
    if dim_out * dim_env < dim_in:
        raise ValueError(
            f"no isometry from {qubits_in} qubits into {qubits_out}+{env_qubits}"
        )
    rng = np.random.default_rng(seed)
    v, _ = np.linalg.qr(random_complex(dim_out * dim_env, dim_in, rng))
    # system-major row ordering: row (s, e) sits at s*dim_env + e
    ops = [v[e::dim_env, :] for e in range(dim_env)]
    return from_kraus(
        ops, qubits_in, qubits_out,
        label=f"random({qubits_in}->{qubits_out},env={env_qubits},seed={seed})",
    )


def channel_to_dict(c: QuantumChannel) -> dict:
    """Serialize to the channel JSON schema (nested [re, im] pairs)."""
    return {
        "label": c.label,
        "qubits_in": c.qubits_in,
        "qubits_out": c.qubits_out,
        "kraus": [
            [[[float(z.real), float(z.imag)] for z in row] for row in a]
            for a in c.kraus
        ],
    }


def channel_from_dict(data: dict) -> QuantumChannel:
    """Parse the channel JSON schema, naming the violated invariant on failure."""
    try:
        label = str(data["label"])
        qubits_in = int(data["qubits_in"])
        qubits_out = int(data["qubits_out"])
        raw = data["kraus"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ChannelFormatError(f"malformed channel description: {exc}") from exc
    if qubits_in < 1 or qubits_out < 1:
        raise ChannelFormatError("qubit counts must be positive")
    try:
        ops = [
            np.array([[complex(re, im) for re, im in row] for row in a], dtype=complex)
            for a in raw
        ]
    except (TypeError, ValueError) as exc:
        raise ChannelFormatError(f"kraus entries must be [re, im] pairs: {exc}") from exc
    try:
        return from_kraus(ops, qubits_in, qubits_out, label=label)
    except ValueError as exc:
        raise ChannelFormatError(str(exc)) from exc


def load_channel(path) -> QuantumChannel:
    """Load a channel from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ChannelFormatError(f"invalid JSON in {path}: {exc}") from exc
    return channel_from_dict(data)


def save_channel(c: QuantumChannel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(channel_to_dict(c), fh)
        fh.write("\n")
