"""Chain and star entanglement-swapping networks, plus closed-form reference states.

A chain fuses two-qubit parents end to end with Bell measurements on the inner
qubits. A star sends qubit 0 of each of N parents (M qubits each) into one
N-qubit GHZ measurement and keeps the N(M-1) remaining qubits, grouped by parent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import measurement as meas
from .qstate import DensityMatrix, StateError, as_matrix, n_qubits_of, tensor
from .states import ghz_ket, rho_lambda, werner, white_noise

CHAIN = "chain"
STAR = "star"


@dataclass(frozen=True)
class FixedOutcome:
    """Keep only the runs in which basis element ``index`` clicked (then correct it)."""

    index: int = 1


@dataclass(frozen=True)
class AllOutcomesCanonical:
    """Keep every run: correct each outcome and average with its probability."""


@dataclass(frozen=True)
class SwapConfig:
    topology: str
    parent_states: tuple
    outcome_policy: object = field(default_factory=FixedOutcome)
    kind: str = meas.GHZ

    def __post_init__(self):
        if self.topology not in (CHAIN, STAR):
            raise StateError(f"unknown topology {self.topology!r}")
        sizes = {n_qubits_of(p) for p in self.parent_states}
        if self.topology == CHAIN and sizes != {2}:
            raise StateError("chain swapping needs two-qubit parents")
        if self.topology == STAR and len(sizes) != 1:
            raise StateError("star swapping needs parents of equal size")

    @property
    def measured_assignment(self) -> list[list[int]]:
        """Measured qubits (indices into the joint parent register) per measurement."""
        if self.topology == CHAIN:
            return [[2 * i + 1, 2 * i + 2] for i in range(len(self.parent_states) - 1)]
        m = n_qubits_of(self.parent_states[0])
        return [[i * m for i in range(len(self.parent_states))]]

    def run(self) -> DensityMatrix:
        if self.topology == CHAIN:
            return chain_swap(self.parent_states, self.outcome_policy)
        return star_swap(self.parent_states, self.outcome_policy, kind=self.kind)


def _policy_outcomes(policy, n_outcomes: int) -> list[int] | None:
    if isinstance(policy, FixedOutcome):
        if not 1 <= policy.index <= n_outcomes:
            raise StateError(f"outcome {policy.index} out of range 1..{n_outcomes}")
        return [policy.index]
    if isinstance(policy, AllOutcomesCanonical):
        return None
    raise StateError(f"unknown outcome policy {policy!r}")


def bell_swap(left, right, policy=None) -> DensityMatrix:
    """One Bell measurement on qubit 1 of ``left`` and qubit 0 of ``right``."""
    policy = FixedOutcome() if policy is None else policy
    joint = tensor(left, right)
    chosen = _policy_outcomes(policy, 4)
    if chosen is not None:
        out = meas.measure(joint, [1, 2], meas.BELL, chosen[0])
        return meas.local_correction(out.conditional_state, chosen[0], meas.BELL)
    acc = np.zeros((4, 4), dtype=np.complex128)
    for i, p in enumerate(meas.outcome_distribution(joint, [1, 2], meas.BELL), start=1):
        if p < meas.ZERO_PROBABILITY:
            continue
        out = meas.measure(joint, [1, 2], meas.BELL, i)
        acc += p * as_matrix(meas.local_correction(out.conditional_state, i, meas.BELL))
    return DensityMatrix(acc, check=False)


def chain_swap(parents: Sequence, policy=None) -> DensityMatrix:
    """Fuse two-qubit parents left to right; returns the end-to-end two-qubit state."""
    if len(parents) < 2:
        raise StateError("chain swapping needs at least two parents")
    for p in parents:
        if n_qubits_of(p) != 2:
            raise StateError("chain parents must be two-qubit states")
    state = parents[0]
    for nxt in parents[1:]:
        state = bell_swap(state, nxt, policy)
    return state


def _blocks(parent) -> np.ndarray:
    """Parent matrix as ``[a, :, b, :]`` blocks, ``a, b`` indexing its qubit 0."""
    mat = as_matrix(parent)
    d = mat.shape[0] // 2
    return mat.reshape(2, d, 2, d)


def _kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def star_project(parents: Sequence, ket: np.ndarray) -> np.ndarray:
    """Unnormalized remaining-qubit state after projecting every parent's qubit 0 on ``ket``.

    Works blockwise on the product structure, so the joint parent register is never
    built: only amplitude pairs ``(s, t)`` with nonzero ``ket[s] * ket[t]`` contribute.
    """
    n = len(parents)
    blocks = [_blocks(p) for p in parents]
    support = np.flatnonzero(np.abs(ket) > 0)
    d_out = int(np.prod([b.shape[1] for b in blocks]))
    acc = np.zeros((d_out, d_out), dtype=np.complex128)
    for s in support:
        for t in support:
            coeff = np.conj(ket[s]) * ket[t]
            sb = [(s >> (n - 1 - i)) & 1 for i in range(n)]
            tb = [(t >> (n - 1 - i)) & 1 for i in range(n)]
            acc += coeff * _kron_all([blocks[i][sb[i], :, tb[i], :] for i in range(n)])
    return acc


def star_swap(parents: Sequence, policy=None, kind: str = meas.GHZ) -> DensityMatrix:
    """Joint GHZ (or, for two parents, Bell) measurement on qubit 0 of every parent."""
    policy = FixedOutcome() if policy is None else policy
    n = len(parents)
    if n < 2:
        raise StateError("star swapping needs at least two parents")
    sizes = {n_qubits_of(p) for p in parents}
    if len(sizes) != 1:
        raise StateError("star parents must all have the same number of qubits")
    (m,) = sizes
    if m < 2:
        raise StateError("star parents need at least two qubits")
    kets = meas.basis_kets(kind, n)
    groups = meas.default_groups(n * (m - 1), n)
    chosen = _policy_outcomes(policy, len(kets))

    def corrected(i: int) -> tuple[float, np.ndarray]:
        unnorm = star_project(parents, kets[i - 1])
        prob = float(np.trace(unnorm).real)
        if prob < meas.ZERO_PROBABILITY:
            raise meas.ZeroProbabilityOutcome(f"zero-probability outcome {i} (p = {prob:.3e})")
        state = DensityMatrix((unnorm + unnorm.conj().T) / (2 * prob), check=False)
        return prob, as_matrix(meas.local_correction(state, i, kind, k=n, groups=groups))

    if chosen is not None:
        return DensityMatrix(corrected(chosen[0])[1], check=False)
    acc = None
    for i in range(1, len(kets) + 1):
        try:
            prob, mat = corrected(i)
        except meas.ZeroProbabilityOutcome:
            continue
        acc = prob * mat if acc is None else acc + prob * mat
    return DensityMatrix(acc, check=False)


def oracle_chain_werner(ps: Sequence[float]) -> DensityMatrix:
    """Werner state whose visibility is the product of the parents' visibilities."""
    return werner(float(np.prod(ps)))


def oracle_star3_werner(p: float) -> DensityMatrix:
    """Closed form of three Werner pairs swapped by a three-qubit GHZ measurement."""
    p = float(p)
    g = as_matrix(ghz_ket(3, 1).projector())
    ends = np.zeros((8, 8), dtype=np.complex128)
    ends[0, 0] = ends[7, 7] = 1.0
    mat = p**3 * g + (1 - p**2) * as_matrix(white_noise(3)) + 0.5 * p**2 * (1 - p) * ends
    return DensityMatrix(mat)


def oracle_swapped_rho_lambda(a: float, lam: float) -> DensityMatrix:
    """Closed form of two ``rho_lambda`` parents swapped on the ``B1`` outcome.

    The ``|B1><B1|`` weight is ``lam^2 a^2 b^2`` (not half of it); with that weight
    the bracket's trace equals the normaliser ``lam^2 a^2 b^2 + (1 - lam^2)/4``.
    """
    rho_lambda(a, lam)  # parameter validation
    b = math.sqrt(1 - a * a)
    norm = lam**2 * a**2 * b**2 + (1 - lam**2) / 4
    bell = as_matrix(ghz_ket(2, 1).projector())
    mat = (
        lam**2 * a**2 * b**2 * bell
        + (1 - lam) ** 2 / 8 * np.diag([1, 0, 0, 1])
        + lam * (1 - lam) / 2 * np.diag([0, a**2, b**2, 0])
    )
    return DensityMatrix(mat / norm)
