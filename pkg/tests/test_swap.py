import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from swapnet.measurement import measure
from swapnet.nonclassicality import critical_visibility, ghz_visibility, mk_max_xy
from swapnet.qstate import StateError, partial_trace, tensor, validate
from swapnet.states import bell_ket, noisy_ghz, rho_lambda, werner
from swapnet.swap import (
    AllOutcomesCanonical,
    FixedOutcome,
    SwapConfig,
    chain_swap,
    oracle_chain_werner,
    oracle_star3_werner,
    oracle_swapped_rho_lambda,
    star_swap,
)

GRID = np.round(np.linspace(0, 1, 11), 12)


def maxdiff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


class TestChain:
    def test_two_pairs(self):
        assert maxdiff(chain_swap([werner(0.9), werner(0.9)]), werner(0.81)) <= 1e-12

    def test_product_law(self):
        assert maxdiff(chain_swap([werner(0.9), werner(0.8), werner(0.7)]), werner(0.504)) <= 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pure_singlets_stay_maximally_entangled(self, n):
        singlet = bell_ket(4).projector()
        out = np.asarray(chain_swap([singlet] * n))
        assert min(maxdiff(out, bell_ket(k).projector()) for k in range(1, 5)) <= 1e-12

    @pytest.mark.parametrize("p", GRID)
    def test_oracle_equivalence(self, p):
        assert maxdiff(chain_swap([werner(p)] * 3), oracle_chain_werner([p] * 3)) <= 1e-12

    def test_oracle_single(self):
        assert maxdiff(oracle_chain_werner([0.4]), werner(0.4)) == 0

    def test_measurement_order_irrelevant(self):
        ps = [werner(0.9), werner(0.75), werner(0.6)]
        joint = tensor(*ps)

        def run(order):
            # measure pairs (1,2) and (3,4) of the 6-qubit register in the given order
            rho = joint
            pairs = {"left": [1, 2], "right": [3, 4]}
            for name in order:
                qubits = pairs[name]
                rho = measure(rho, qubits, "bell", 1).conditional_state
                if name == "left":
                    pairs["right"] = [1, 2]
            return rho

        a = run(["left", "right"])
        b = run(["right", "left"])
        assert maxdiff(a, b) <= 1e-12
        assert maxdiff(a, chain_swap(ps)) <= 1e-12

    def test_needs_two_parents(self):
        with pytest.raises(StateError):
            chain_swap([werner(0.5)])

    def test_all_outcomes_policy(self):
        ps = [werner(0.8)] * 2
        assert maxdiff(chain_swap(ps, AllOutcomesCanonical()), chain_swap(ps)) <= 1e-12


class TestStar:
    @pytest.mark.parametrize("p", [0.2, 0.8])
    def test_three_werner_closed_form(self, p):
        assert maxdiff(star_swap([werner(p)] * 3), oracle_star3_werner(p)) <= 1e-12

    @pytest.mark.parametrize("p", GRID)
    def test_oracle_equivalence_grid(self, p):
        assert maxdiff(star_swap([werner(p)] * 3), oracle_star3_werner(p)) <= 1e-12

    def test_oracle_limits(self):
        from swapnet.states import ghz_ket, white_noise

        assert maxdiff(oracle_star3_werner(1), ghz_ket(3, 1).projector()) <= 1e-15
        assert maxdiff(oracle_star3_werner(0), white_noise(3)) <= 1e-15

    @pytest.mark.parametrize("p", [0.3, 0.75])
    def test_two_parents_equal_one_chain_step(self, p):
        assert maxdiff(star_swap([werner(p)] * 2), werner(p * p)) <= 1e-12
        assert maxdiff(star_swap([werner(p)] * 2), chain_swap([werner(p)] * 2)) <= 1e-12

    def test_bell_measurement_on_ghz_parents_crosses_at_closed_form(self):
        f = critical_visibility(lambda v: mk_max_xy(star_swap([noisy_ghz(3, v)] * 2, kind="bell")) > 1, (0.3, 1))
        assert abs(f - (2**1.5) ** -0.5) < 1e-4

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_visibility_product_law(self, n):
        p = 0.83
        assert abs(ghz_visibility(star_swap([werner(p)] * n)) - p**n) <= 1e-10

    def test_remaining_qubits_grouped_by_parent(self):
        out = star_swap([noisy_ghz(3, 0.9)] * 2)
        assert out.n_qubits == 4
        # qubits 0,1 came from parent 1 and stay perfectly correlated in z
        reduced = np.asarray(partial_trace(out, [2, 3]))
        assert abs(reduced[1, 1]) < 0.1 and abs(reduced[2, 2]) < 0.1

    @pytest.mark.parametrize("m", [2, 3])
    def test_every_outcome_gives_the_same_corrected_state(self, m):
        parents = [noisy_ghz(m, 0.7)] * 3
        ref = star_swap(parents)
        for i in range(1, 9):
            assert maxdiff(star_swap(parents, FixedOutcome(i)), ref) <= 1e-12
        assert maxdiff(star_swap(parents, AllOutcomesCanonical()), ref) <= 1e-12

    def test_rejects_mixed_sizes(self):
        with pytest.raises(StateError):
            star_swap([werner(0.5), noisy_ghz(3, 0.5)])

    def test_outputs_are_states(self):
        for n in (2, 3, 4):
            for p in (0.0, 0.5, 1.0):
                validate(star_swap([werner(p)] * n))


class TestRepeaterFamily:
    @pytest.mark.parametrize("a,lam", [(0.6, 0.8), (0.4, 0.55), (0.2, 0.95), (0.7, 1.0)])
    def test_swapped_state_closed_form(self, a, lam):
        assert maxdiff(chain_swap([rho_lambda(a, lam)] * 2), oracle_swapped_rho_lambda(a, lam)) <= 1e-12

    def test_normaliser_is_outcome_probability(self):
        a, lam = 0.6, 0.8
        b = math.sqrt(1 - a * a)
        out = measure(tensor(rho_lambda(a, lam), rho_lambda(a, lam)), [1, 2], "bell", 1)
        assert out.probability == pytest.approx(lam**2 * a**2 * b**2 + (1 - lam**2) / 4, abs=1e-14)


class TestConfig:
    def test_chain_assignment(self):
        cfg = SwapConfig("chain", (werner(0.9),) * 3)
        assert cfg.measured_assignment == [[1, 2], [3, 4]]
        assert maxdiff(cfg.run(), werner(0.729)) <= 1e-12

    def test_star_assignment(self):
        cfg = SwapConfig("star", (noisy_ghz(3, 0.9),) * 3)
        assert cfg.measured_assignment == [[0, 3, 6]]
        assert cfg.run().n_qubits == 6

    def test_chain_needs_pairs(self):
        with pytest.raises(StateError):
            SwapConfig("chain", (noisy_ghz(3, 0.9),) * 2)
