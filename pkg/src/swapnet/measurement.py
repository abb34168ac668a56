"""Bell/GHZ basis measurements on selected qubits and post-measurement bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qstate import DensityMatrix, StateError, as_matrix, check_indices, n_qubits_of
from .states import ghz_ket, ghz_pair

ZERO_PROBABILITY = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

BELL = "bell"
GHZ = "ghz"


class ZeroProbabilityOutcome(StateError):
    pass


@dataclass(frozen=True)
class BasisProjector:
    index: int
    projector: np.ndarray


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    probability: float
    conditional_state: DensityMatrix


def _normalize_kind(kind: str) -> str:
    kind = str(kind).lower()
    if kind not in (BELL, GHZ):
        raise StateError(f"unknown basis kind {kind!r}; use 'bell' or 'ghz'")
    return kind


def _check_arity(kind: str, k: int) -> None:
    if kind == BELL and k != 2:
        raise StateError(f"Bell measurement acts on exactly 2 qubits, got {k}")
    if kind == GHZ and k < 2:
        raise StateError(f"GHZ measurement needs at least 2 qubits, got {k}")


def basis_kets(kind: str, k: int) -> list[np.ndarray]:
    kind = _normalize_kind(kind)
    _check_arity(kind, k)
    return [ghz_ket(k, i).amplitudes for i in range(1, 2**k + 1)]


def basis_projectors(kind: str, k: int) -> list[BasisProjector]:
    """Rank-1 projectors of the Bell (k = 2) or k-qubit GHZ basis, labelled from 1."""
    out = []
    for i, ket in enumerate(basis_kets(kind, k), start=1):
        proj = np.outer(ket, ket.conj())
        proj.flags.writeable = False
        out.append(BasisProjector(i, proj))
    return out


def project(rho, qubits: Sequence[int], ket: np.ndarray) -> np.ndarray:
    """Unnormalized ``<g| rho |g>`` on ``qubits``, as a matrix on the remaining qubits."""
    mat = as_matrix(rho)
    n = n_qubits_of(rho)
    qubits = check_indices(qubits, n)
    k = len(qubits)
    if len(ket) != 2**k:
        raise StateError("ket dimension does not match the measured qubits")
    rest = [q for q in range(n) if q not in qubits]
    if not rest:
        raise StateError("measurement must leave at least one qubit unmeasured")
    t = mat.reshape([2] * (2 * n)).transpose(qubits + rest + [n + q for q in qubits] + [n + q for q in rest])
    dk, dr = 2**k, 2 ** len(rest)
    t = t.reshape(dk, dr, dk, dr)
    return np.einsum("s,satb,t->ab", ket.conj(), t, ket)


def measure(rho, qubits: Sequence[int], kind: str, outcome: int) -> MeasurementOutcome:
    """Project ``qubits`` onto basis element ``outcome`` and trace them out."""
    kind = _normalize_kind(kind)
    _check_arity(kind, len(qubits))
    kets = basis_kets(kind, len(qubits))
    if not 1 <= outcome <= len(kets):
        raise StateError(f"outcome {outcome} out of range 1..{len(kets)}")
    unnorm = project(rho, qubits, kets[outcome - 1])
    prob = float(np.trace(unnorm).real)
    if prob < ZERO_PROBABILITY:
        raise ZeroProbabilityOutcome(f"zero-probability outcome {outcome} (p = {prob:.3e})")
    state = unnorm / prob
    state = (state + state.conj().T) / 2
    return MeasurementOutcome(outcome, prob, DensityMatrix(state, check=False))


def outcome_distribution(rho, qubits: Sequence[int], kind: str) -> list[float]:
    """Probabilities of every basis outcome, zero-probability outcomes included."""
    kind = _normalize_kind(kind)
    _check_arity(kind, len(qubits))
    return [float(np.trace(project(rho, qubits, g)).real) for g in basis_kets(kind, len(qubits))]


def _apply_pauli(mat: np.ndarray, n: int, op: np.ndarray, qubit: int) -> np.ndarray:
    t = mat.reshape([2] * (2 * n))
    t = np.moveaxis(np.tensordot(op, t, axes=([1], [qubit])), 0, qubit)
    t = np.moveaxis(np.tensordot(t, op.conj().T, axes=([n + qubit], [0])), -1, n + qubit)
    return t.reshape(2**n, 2**n)


def correction_paulis(
    outcome_index: int, k: int, groups: Sequence[Sequence[int]]
) -> list[tuple[str, int]]:
    """Pauli corrections ``[(name, qubit), ...]`` mapping outcome ``outcome_index`` to outcome 1.

    ``groups[i]`` lists the remaining qubits that shared a parent with measured
    qubit ``i``. Every group whose measured qubit reads 1 in the outcome's first
    basis string is bit-flipped; even (minus-sign) outcomes then get a phase
    flip on the first remaining qubit.
    """
    s, _, sign = ghz_pair(k, outcome_index)
    ops = []
    for i, group in enumerate(groups):
        if (s >> (k - 1 - i)) & 1:
            ops.extend(("X", q) for q in group)
    if sign < 0:
        ops.append(("Z", 0))
    return ops


def default_groups(n_remaining: int, k: int) -> list[list[int]]:
    if n_remaining % k:
        raise StateError(f"cannot split {n_remaining} remaining qubits into {k} parent groups")
    size = n_remaining // k
    return [list(range(i * size, (i + 1) * size)) for i in range(k)]


def local_correction(
    state,
    outcome_index: int,
    kind: str,
    k: int | None = None,
    groups: Sequence[Sequence[int]] | None = None,
) -> DensityMatrix:
    """Undo the outcome-dependent local Pauli frame of a swapped state.

    ``k`` is the number of measured qubits (2 for Bell). Without ``groups`` the
    remaining qubits are split into ``k`` equal contiguous blocks, one per parent.
    """
    kind = _normalize_kind(kind)
    if k is None:
        k = 2 if kind == BELL else (len(groups) if groups is not None else None)
    if k is None:
        raise StateError("GHZ correction needs the number of measured qubits")
    _check_arity(kind, k)
    n = n_qubits_of(state)
    if groups is None:
        groups = default_groups(n, k)
    if len(groups) != k:
        raise StateError("need exactly one remaining-qubit group per measured qubit")
    mat = as_matrix(state)
    for name, q in correction_paulis(outcome_index, k, groups):
        check_indices([q], n)
        mat = _apply_pauli(mat, n, PAULI_X if name == "X" else PAULI_Z, q)
    return DensityMatrix(mat, check=False)
