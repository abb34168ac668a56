"""Entanglement and local-realism criteria for few-qubit states.

Mermin-Klyshko (MK) values use the normalization in which local realism bounds
``tr(B_n rho)`` by 1 and quantum mechanics by ``2**((n - 1) / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .qstate import StateError, as_matrix, eig_hermitian, n_qubits_of

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
MAX_TENSOR_QUBITS = 8
PPT_TOL = -1e-10
BISECTION_TOL = 1e-5
GRID_POINTS = 16
CONCURRENCE_CUTOFF = 1e-12  # eigenvalues of rho below this are treated as exact zeros


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    value: float
    threshold: float

    @property
    def violated(self) -> bool:
        return self.value > self.threshold

    def to_dict(self) -> dict:
        d = asdict(self)
        d["violated"] = self.violated
        return d


@dataclass(frozen=True)
class CorrelationTensor:
    """Full-correlation tensor ``T[x1, ..., xn] = tr(rho sigma_x1 ... sigma_xn)``, axes ordered x, y, z."""

    n_qubits: int
    values: np.ndarray

    def __getitem__(self, labels: str) -> float:
        return float(self.values[tuple("xyz".index(c) for c in labels)])


# --------------------------------------------------------------------------- #
# correlation tensor                                                          #
# --------------------------------------------------------------------------- #


def correlation_tensor(rho) -> CorrelationTensor:
    n = n_qubits_of(rho)
    if n > MAX_TENSOR_QUBITS:
        raise StateError(f"correlation tensor limited to {MAX_TENSOR_QUBITS} qubits, got {n}")
    t = as_matrix(rho).reshape([2] * (2 * n))
    # tr(rho O) = sum rho[r, c] O[c, r]; before step k the axes are
    # rows k..n-1, cols k..n-1, then the Pauli labels already produced
    for k in range(n):
        t = np.tensordot(t, SIGMA, axes=([0, n - k], [2, 1]))
    return CorrelationTensor(n, np.real(t).copy())


def ghz_visibility(rho) -> float:
    """Twice the modulus of the ``|0...0><1...1|`` coherence."""
    mat = as_matrix(rho)
    if n_qubits_of(rho) < 2:
        raise StateError("GHZ visibility needs at least two qubits")
    return float(2 * abs(mat[0, -1]))


# --------------------------------------------------------------------------- #
# Mermin-Klyshko operators                                                    #
# --------------------------------------------------------------------------- #


def xy_direction(phi: float) -> np.ndarray:
    return np.array([math.cos(phi), math.sin(phi), 0.0])


def xy_settings(phis: Sequence[float], phis_prime: Sequence[float]) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-party ``(a, a')`` unit vectors for observables in the x-y plane."""
    if len(phis) != len(phis_prime):
        raise ValueError("need one primed angle per unprimed angle")
    return [(xy_direction(p % (2 * math.pi)), xy_direction(q % (2 * math.pi))) for p, q in zip(phis, phis_prime)]


def _sigma_dot(vec) -> np.ndarray:
    return np.tensordot(np.asarray(vec, dtype=float), SIGMA, axes=1)


def mk_operator(settings: Sequence[tuple]) -> np.ndarray:
    """Mermin-Klyshko Bell operator from the recursion

    ``B_k = 1/2 B_{k-1} (x) (s_a + s_a') + 1/2 B'_{k-1} (x) (s_a - s_a')``,
    with ``B'_k`` obtained by swapping primed and unprimed settings and ``B_1 = s_a1``.
    """
    if not settings:
        raise ValueError("need settings for at least one party")
    a, ap = settings[0]
    b, bp = _sigma_dot(a), _sigma_dot(ap)
    for a, ap in settings[1:]:
        sa, sap = _sigma_dot(a), _sigma_dot(ap)
        b, bp = (
            0.5 * np.kron(b, sa + sap) + 0.5 * np.kron(bp, sa - sap),
            0.5 * np.kron(bp, sap + sa) + 0.5 * np.kron(b, sap - sa),
        )
    return b


def _mk_coefficients(settings) -> list[np.ndarray]:
    # B_n + i B'_n factorizes into (a_1 + i a'_1) (x) prod_k ((1 - i) a_k + (1 + i) a'_k) / 2
    out = []
    for k, (a, ap) in enumerate(settings):
        a, ap = np.asarray(a, float), np.asarray(ap, float)
        out.append(a + 1j * ap if k == 0 else ((1 - 1j) * a + (1 + 1j) * ap) / 2)
    return out


def _contract(values: np.ndarray, vecs: Sequence[np.ndarray]) -> complex:
    t = values
    for v in vecs:
        t = np.tensordot(t, v, axes=([0], [0]))
    return complex(t)


def mk_value(rho_or_tensor, settings) -> float:
    """``tr(B_n rho)`` evaluated through the correlation tensor."""
    tensor = rho_or_tensor if isinstance(rho_or_tensor, CorrelationTensor) else correlation_tensor(rho_or_tensor)
    if len(settings) != tensor.n_qubits:
        raise ValueError("need exactly one setting pair per qubit")
    return _contract(tensor.values, _mk_coefficients(settings)).real


def _coordinate_ascent(values: np.ndarray, a: np.ndarray, ap: np.ndarray, plane: str,
                       max_sweeps: int = 2000, tol: float = 1e-14) -> tuple[float, np.ndarray, np.ndarray]:
    """Blockwise exact maximization: for fixed other parties the objective is linear in a_k and a'_k."""
    n = a.shape[0]
    dims = 2 if plane == "xy" else 3
    vals = values[(slice(0, dims),) * n] if dims == 2 else values
    a, ap = a[:, :dims].copy(), ap[:, :dims].copy()
    best = -np.inf
    for _ in range(max_sweeps):
        for k in range(n):
            coeffs = _mk_coefficients(list(zip(a, ap)))
            u = np.moveaxis(vals, k, 0)
            for j in range(n):
                if j != k:
                    u = np.tensordot(u, coeffs[j], axes=([1], [0]))
            # objective is Re(u . c_k), linear in a_k and a'_k
            if k == 0:
                ga, gap = u.real, -u.imag
            else:
                ga = ((1 - 1j) * u).real / 2
                gap = ((1 + 1j) * u).real / 2
            if np.linalg.norm(ga) > 0:
                a[k] = ga / np.linalg.norm(ga)
            if np.linalg.norm(gap) > 0:
                ap[k] = gap / np.linalg.norm(gap)
        value = _contract(vals, _mk_coefficients(list(zip(a, ap)))).real
        if value - best < tol:
            best = max(best, value)
            break
        best = value
    return best, a, ap


def mk_max(rho, plane: str = "xy") -> float:
    """Largest ``tr(B_n rho)`` found over local settings.

    ``plane="xy"`` restricts every observable to the x-y plane; ``plane="full"``
    allows arbitrary unit vectors. Seeds come from a fixed 16-point angle grid
    (identical settings at every site), then each of the best seeds is refined
    by exact blockwise maximization. Deterministic.
    """
    if plane not in ("xy", "full"):
        raise ValueError("plane must be 'xy' or 'full'")
    tensor = correlation_tensor(rho)
    n = tensor.n_qubits
    grid = np.arange(GRID_POINTS) * 2 * math.pi / GRID_POINTS
    seeds = []
    for phi in grid:
        for phi_p in grid:
            a = np.tile(xy_direction(phi), (n, 1))
            ap = np.tile(xy_direction(phi_p), (n, 1))
            seeds.append((mk_value(tensor, list(zip(a, ap))), a, ap))
    if plane == "full":
        for theta in grid[: GRID_POINTS // 2]:
            for phi in grid[:: 4]:
                d = np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
                dp = np.array([math.cos(theta) * math.cos(phi), math.cos(theta) * math.sin(phi), -math.sin(theta)])
                a, ap = np.tile(d, (n, 1)), np.tile(dp, (n, 1))
                seeds.append((mk_value(tensor, list(zip(a, ap))), a, ap))
    seeds.sort(key=lambda s: -s[0])
    best = max(s[0] for s in seeds)
    for _, a, ap in seeds[:8]:
        value, _, _ = _coordinate_ascent(tensor.values, a, ap, plane)
        best = max(best, value)
    return float(best)


def mk_max_xy(rho) -> float:
    return mk_max(rho, "xy")


def mk_quantum_bound(n: int) -> float:
    return 2 ** ((n - 1) / 2)


def mk_star_threshold(n_parents: int, m: int) -> float:
    """Critical parent visibility ``(2**((N(M-1) - 1)/2))**(-1/N)`` for the star MK test."""
    return 2 ** (-(n_parents * (m - 1) - 1) / (2 * n_parents))


# --------------------------------------------------------------------------- #
# two settings per site: full-correlation tensor criterion                    #
# --------------------------------------------------------------------------- #


def two_setting_tensor_max(rho, max_iter: int = 500, tol: float = 1e-14) -> float:
    """Max over local planes of the summed squares of the in-plane correlation-tensor block.

    For three qubits: ``max sum_{i,j,k in {1,2}} T'_{ijk}^2`` with ``T'`` the tensor
    expressed in independently rotated local frames. Values above 1 rule out a
    local-realistic model of the two-setting correlations.
    """
    tensor = correlation_tensor(rho)
    if tensor.n_qubits != 3:
        raise StateError("two-setting tensor criterion is implemented for three qubits")
    t = tensor.values
    frames = []
    for k in range(3):
        unfold = np.moveaxis(t, k, 0).reshape(3, -1)
        _, vecs = eig_hermitian(unfold @ unfold.T)
        frames.append(vecs[:, :2].real.T)
    best = -np.inf
    for _ in range(max_iter):
        for k in range(3):
            core = t
            for j in range(3):
                if j != k:
                    core = np.moveaxis(np.tensordot(frames[j], np.moveaxis(core, j, 0), axes=1), 0, j)
            unfold = np.moveaxis(core, k, 0).reshape(3, -1)
            _, vecs = eig_hermitian(unfold @ unfold.T)
            frames[k] = vecs[:, :2].real.T
        core = t
        for j in range(3):
            core = np.moveaxis(np.tensordot(frames[j], np.moveaxis(core, j, 0), axes=1), 0, j)
        value = float(np.sum(core**2))
        if value - best < tol:
            best = max(best, value)
            break
        best = value
    return best


# --------------------------------------------------------------------------- #
# functional Bell inequality                                                  #
# --------------------------------------------------------------------------- #


def functional_norm_squared(n: int, v: float) -> float:
    """``||E||^2`` for ``E(phi) = v cos(phi_1 + ... + phi_n)`` over ``[0, 2pi]^n``."""
    return v**2 * (2 * math.pi) ** n / 2


def functional_lhv_bound(n: int, v: float = 1.0) -> float:
    """Largest scalar product of ``v cos(sum phi)`` with any local-realistic correlation.

    Per site, ``max_f |int e^{i phi} f(phi) dphi| = int |cos| = 4`` for ``|f| <= 1``.
    """
    return abs(v) * 4.0**n


def functional_violation(n: int, v: float) -> CriterionReport:
    """Functional Bell test of a GHZ-type correlation of visibility ``v`` on ``n`` parties.

    Violated iff ``||E||^2 > bound``, i.e. ``v > 2 (2/pi)**n``.
    """
    if n < 1:
        raise ValueError("need at least one party")
    if not 0.0 <= v <= 1.0:
        raise ValueError("visibility must lie in [0, 1]")
    return CriterionReport("functional", functional_norm_squared(n, v), functional_lhv_bound(n, v))


def functional_threshold(n_parents: int) -> float:
    """Critical Werner visibility ``(2/pi) 2**(1/N)`` for the swapped N-party state."""
    return (2 / math.pi) * 2 ** (1 / n_parents)


# --------------------------------------------------------------------------- #
# two-qubit criteria                                                          #
# --------------------------------------------------------------------------- #


def _require_two_qubits(rho, name: str) -> np.ndarray:
    if n_qubits_of(rho) != 2:
        raise StateError(f"{name} needs a two-qubit state")
    return as_matrix(rho)


def horodecki_chsh_max(rho) -> float:
    """Maximal CHSH value ``2 sqrt(m1 + m2)``, ``m1, m2`` the two largest eigenvalues of ``T^T T``."""
    _require_two_qubits(rho, "CHSH maximum")
    t = correlation_tensor(rho).values
    m = np.sort(np.linalg.eigvalsh(t.T @ t))[::-1]
    return float(2 * math.sqrt(max(m[0] + m[1], 0.0)))


def partial_transpose(rho, qubit: int = 1) -> np.ndarray:
    mat = _require_two_qubits(rho, "partial transpose").reshape(2, 2, 2, 2)
    axes = (0, 3, 2, 1) if qubit == 1 else (2, 1, 0, 3)
    return mat.transpose(axes).reshape(4, 4)


def ppt_entangled(rho) -> bool:
    """True iff the partial transpose has an eigenvalue below ``-1e-10``."""
    return bool(np.linalg.eigvalsh(partial_transpose(rho)).min() < PPT_TOL)


def concurrence(rho) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the square roots, in decreasing order, of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``. They equal the singular values of
    ``sqrt(rho) (sy x sy) sqrt(rho)*``, which avoids a second square root of
    eigenvalues that are zero up to roundoff.
    """
    mat = _require_two_qubits(rho, "concurrence")
    yy = np.kron(SIGMA[1], SIGMA[1])
    vals, vecs = eig_hermitian((mat + mat.conj().T) / 2)
    vals = np.where(vals > CONCURRENCE_CUTOFF, vals, 0.0)
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    lam = np.linalg.svd(root @ yy @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1 - x) * math.log2(1 - x))


def eof_from_concurrence(c: float) -> float:
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def eof(rho) -> float:
    """Entanglement of formation ``H((1 + sqrt(1 - C^2)) / 2)``."""
    return eof_from_concurrence(concurrence(rho))


# --------------------------------------------------------------------------- #
# thresholds                                                                  #
# --------------------------------------------------------------------------- #


class BracketError(ValueError):
    pass


def critical_visibility(
    predicate: Callable[[float], bool],
    bracket: tuple[float, float] = (0.0, 1.0),
    tol: float = BISECTION_TOL,
) -> float:
    """Bisect a monotone predicate (false at ``lo``, true at ``hi``) down to ``tol``."""
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    if predicate(lo) or not predicate(hi):
        raise BracketError(f"bracket [{lo}, {hi}] does not straddle the criterion boundary")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
