import numpy as np
import pytest
from hypothesis import strategies as st

from swapnet.qstate import DensityMatrix

ACCEPTANCE_LINES: list[str] = []


def random_density(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    dim = 2**n_qubits
    rank = dim if rank is None else rank
    x = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = x @ x.conj().T
    return DensityMatrix(rho / np.trace(rho))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
