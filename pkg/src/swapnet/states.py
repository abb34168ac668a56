"""Constructors for the parametrized state families used in swapping experiments."""

from __future__ import annotations

import math

import numpy as np

from .qstate import DensityMatrix, Ket, StateError

AMPLITUDE_TOL = 1e-12


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0 or math.isnan(value):
        raise StateError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def ghz_pair(n: int, i: int) -> tuple[int, int, int]:
    """Return ``(s, s_complement, sign)`` for the ``i``-th GHZ basis ket on ``n`` qubits.

    Pairs ``j = (i - 1) // 2`` are enumerated by the bits of the pair member whose
    last qubit is 0, read with qubit 0 as the least significant bit. The member
    written first (``s``) is the one of lower Hamming weight, ties going to the
    member with qubit 0 equal to 0. Odd ``i`` carries the ``+`` sign. For ``n = 3``
    this is the listing ``000/111, 100/011, 010/101, 001/110``; for ``n = 2`` it
    reproduces the Bell basis.
    """
    n = int(n)
    if n < 2:
        raise StateError(f"GHZ basis needs at least 2 qubits, got {n}")
    if not 1 <= i <= 2**n:
        raise StateError(f"GHZ index {i} out of range 1..{2**n}")
    j = (i - 1) // 2
    # bits of j over qubits 0..n-2, qubit 0 least significant; qubit n-1 is 0
    bits = [(j >> k) & 1 for k in range(n - 1)] + [0]
    a = int("".join(map(str, bits)), 2)
    b = (2**n - 1) ^ a
    wa, wb = sum(bits), n - sum(bits)
    if wb < wa or (wb == wa and bits[0] == 1):
        a, b = b, a
    sign = 1 if i % 2 == 1 else -1
    return a, b, sign


def ghz_ket(n: int, i: int = 1) -> Ket:
    """The ``i``-th element (1-based) of the ``n``-qubit GHZ basis."""
    a, b, sign = ghz_pair(n, i)
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[a] = 1 / math.sqrt(2)
    vec[b] = sign / math.sqrt(2)
    return Ket(vec)


def bell_ket(i: int) -> Ket:
    """Bell basis: ``(|00> +- |11>)/sqrt2`` for i = 1, 2 and ``(|01> +- |10>)/sqrt2`` for i = 3, 4."""
    if i not in (1, 2, 3, 4):
        raise StateError(f"Bell index must be 1..4, got {i}")
    return ghz_ket(2, i)


def white_noise(n: int) -> DensityMatrix:
    if n < 1:
        raise StateError("white noise needs at least one qubit")
    return DensityMatrix(np.eye(2**n) / 2**n, check=False)


def noisy_ghz(m: int, v: float) -> DensityMatrix:
    """``v |GHZ_m><GHZ_m| + (1 - v) I / 2^m``."""
    if m < 2:
        raise StateError(f"noisy GHZ state needs at least 2 qubits, got {m}")
    v = _check_unit_interval("visibility", v)
    ghz = np.asarray(ghz_ket(m, 1).projector())
    return DensityMatrix(v * ghz + (1 - v) * np.eye(2**m) / 2**m)


def werner(p: float) -> DensityMatrix:
    """Two-qubit Werner state ``p |B1><B1| + (1 - p) I / 4``."""
    return noisy_ghz(2, p)


def rho_lambda(a: float, lam: float) -> DensityMatrix:
    """``lam |psi><psi| + (1 - lam)/2 (|00><00| + |11><11|)`` with ``psi = a|01> - b|10>``.

    ``b = +sqrt(1 - a^2)``. The state is PPT-entangled exactly when
    ``lam > 1 / (1 + 2ab)``.
    """
    a = float(a)
    if not 0.0 < a < 1.0:
        raise StateError(f"amplitude a must lie in (0, 1), got {a!r}")
    lam = _check_unit_interval("lambda", lam)
    b = math.sqrt(1 - a * a)
    psi = np.array([0, a, -b, 0], dtype=np.complex128)
    mat = lam * np.outer(psi, psi) + (1 - lam) / 2 * np.diag([1, 0, 0, 1]).astype(np.complex128)
    return DensityMatrix(mat)
