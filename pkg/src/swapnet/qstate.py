"""Dense multi-qubit states: kets, density matrices, tensor products, partial traces.

Qubit 0 is the leftmost symbol of a ket string such as ``|01>``, i.e. the most
significant bit of the amplitude index (big-endian).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = -1e-10
DEFAULT_MAX_QUBITS = 12


class StateError(ValueError):
    """Raised when an array does not describe a valid state of the requested kind."""


def max_qubits() -> int:
    """Dimension cap (in qubits) for dense states; ``SWAPNET_MAX_QUBITS`` overrides it."""
    raw = os.environ.get("SWAPNET_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise StateError(f"SWAPNET_MAX_QUBITS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise StateError("SWAPNET_MAX_QUBITS must be positive")
    return value


def _qubits_for_dim(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise StateError(f"dimension {dim} is not a power of two >= 2")
    if n > max_qubits():
        raise StateError(f"{n} qubits exceeds the dimension cap of {max_qubits()} qubits")
    return n


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


class Ket:
    """Normalized pure state of ``n_qubits`` qubits."""

    __slots__ = ("amplitudes", "n_qubits")

    def __init__(self, amplitudes, *, normalize: bool = False):
        vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = _qubits_for_dim(vec.size)
        norm = np.linalg.norm(vec)
        if normalize:
            if norm == 0:
                raise StateError("cannot normalize the zero vector")
            vec = vec / norm
        elif abs(norm**2 - 1) > NORM_TOL:
            raise StateError(f"ket is not normalized (squared norm {norm**2!r})")
        self.amplitudes = _frozen(vec)
        self.n_qubits = n

    @classmethod
    def from_bits(cls, bits: str) -> "Ket":
        """Computational basis ket from a string like ``"010"``."""
        if not bits or set(bits) - {"0", "1"}:
            raise StateError(f"invalid bit string {bits!r}")
        vec = np.zeros(2 ** len(bits), dtype=np.complex128)
        vec[int(bits, 2)] = 1.0
        return cls(vec)

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def inner(self, other: "Ket") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __repr__(self):
        return f"Ket(n_qubits={self.n_qubits})"


class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on ``n_qubits`` qubits.

    Instances are immutable; the underlying array is read-only.
    """

    __slots__ = ("data", "n_qubits")

    def __init__(self, data, *, check: bool = True):
        mat = np.asarray(data, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise StateError(f"density matrix must be square, got shape {mat.shape}")
        n = _qubits_for_dim(mat.shape[0])
        if check:
            _check_density(mat)
        self.data = _frozen(mat)
        self.n_qubits = n

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.data, self.data)))

    def eigenvalues(self) -> np.ndarray:
        return eig_hermitian(self.data)[0]

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.data - np.asarray(other))) <= atol)

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits})"


def _check_density(mat: np.ndarray) -> None:
    herm_err = np.max(np.abs(mat - mat.conj().T))
    if herm_err > HERMITIAN_TOL:
        raise StateError(f"matrix is not Hermitian (deviation {herm_err:.3e})")
    tr = np.trace(mat)
    if abs(tr - 1) > NORM_TOL:
        raise StateError(f"trace is {tr.real!r}, expected 1")
    min_eig = np.linalg.eigvalsh(mat).min()
    if min_eig < PSD_TOL:
        raise StateError(f"matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")


def as_matrix(rho) -> np.ndarray:
    """Plain complex ndarray view of a DensityMatrix or array-like."""
    return np.asarray(rho, dtype=np.complex128)


def n_qubits_of(rho) -> int:
    if isinstance(rho, (DensityMatrix, Ket)):
        return rho.n_qubits
    return _qubits_for_dim(np.asarray(rho).shape[0])


def check_indices(indices: Iterable[int], n_qubits: int) -> list[int]:
    """Validate a qubit index set against an ``n_qubits`` state."""
    idx = [int(i) for i in indices]
    for i in idx:
        if not 0 <= i < n_qubits:
            raise StateError(f"index out of range: qubit {i} on a {n_qubits}-qubit state")
    if len(set(idx)) != len(idx):
        raise StateError(f"duplicate qubit indices in {idx}")
    return idx


def tensor(*states) -> DensityMatrix:
    """Kronecker product; earlier arguments occupy the leftmost (most significant) qubits."""
    if not states:
        raise StateError("tensor needs at least one state")
    out = as_matrix(states[0])
    for s in states[1:]:
        out = np.kron(out, as_matrix(s))
    return DensityMatrix(out, check=False)


def partial_trace(rho, discard: Sequence[int]) -> DensityMatrix:
    """Trace out the qubits in ``discard``; the rest keep their relative order."""
    mat = as_matrix(rho)
    n = n_qubits_of(rho)
    discard = check_indices(discard, n)
    if not discard:
        raise StateError("discard set must be nonempty")
    keep = [q for q in range(n) if q not in discard]
    if not keep:
        raise StateError("cannot trace out every qubit")
    return DensityMatrix(_ptrace_keep(mat, n, keep), check=False)


def _ptrace_keep(mat: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    discard = [q for q in range(n) if q not in keep]
    t = mat.reshape([2] * (2 * n))
    perm = list(keep) + discard + [n + q for q in keep] + [n + q for q in discard]
    t = t.transpose(perm)
    dk, dd = 2 ** len(keep), 2 ** len(discard)
    t = t.reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def permute_qubits(rho, order: Sequence[int]) -> DensityMatrix:
    """Reorder qubits so that new qubit ``k`` is old qubit ``order[k]``."""
    mat = as_matrix(rho)
    n = n_qubits_of(rho)
    order = check_indices(order, n)
    if len(order) != n:
        raise StateError("order must list every qubit exactly once")
    t = mat.reshape([2] * (2 * n)).transpose(list(order) + [n + q for q in order])
    return DensityMatrix(t.reshape(2**n, 2**n), check=False)


def apply_local(rho, op: np.ndarray, qubit: int) -> DensityMatrix:
    """Conjugate ``rho`` by the single-qubit unitary ``op`` acting on ``qubit``."""
    mat = as_matrix(rho)
    n = n_qubits_of(rho)
    (qubit,) = check_indices([qubit], n)
    t = mat.reshape([2] * (2 * n))
    t = np.moveaxis(np.tensordot(op, t, axes=([1], [qubit])), 0, qubit)
    t = np.moveaxis(np.tensordot(t, op.conj().T, axes=([n + qubit], [0])), -1, n + qubit)
    return DensityMatrix(t.reshape(2**n, 2**n), check=False)


def eig_hermitian(m, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvector columns of a Hermitian matrix."""
    mat = as_matrix(m)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise StateError("eig_hermitian needs a square matrix")
    err = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
    if err > tol:
        raise StateError(f"matrix is not Hermitian (deviation {err:.3e})")
    vals, vecs = np.linalg.eigh(mat)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def validate(rho) -> DensityMatrix:
    """Re-run the full density-matrix checks (Hermitian, unit trace, PSD)."""
    return DensityMatrix(as_matrix(rho), check=True)
