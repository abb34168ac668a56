"""
Star swapping and Mermin-Klyshko thresholds
===========================================

N parents send one qubit each into a joint GHZ measurement. The outer qubits
end up in a noisy GHZ-like state whose MK value in the x-y plane is
V**N * 2**((N(M-1)-1)/2), so the critical parent visibility shrinks with N.
"""

from swapnet import (
    critical_visibility,
    mk_max_xy,
    mk_star_threshold,
    noisy_ghz,
    star_swap,
    two_setting_tensor_max,
    werner,
)

# Three Werner pairs: the MK maximum is 2 p^3
for p in (0.7, 0.8, 0.9):
    xi = star_swap([werner(p)] * 3)
    print(f"p = {p}: mk_max_xy = {mk_max_xy(xi):.6f}   2p^3 = {2 * p**3:.6f}   tensor2 = {two_setting_tensor_max(xi):.6f}")

# Bisected thresholds against the closed form, for pair and GHZ_3 parents
for n, m in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]:
    v = critical_visibility(lambda x: mk_max_xy(star_swap([noisy_ghz(m, x)] * n)) > 1)
    print(f"N = {n}, M = {m}: bisected {v:.5f}   closed form {mk_star_threshold(n, m):.5f}")

# For many Werner pairs the threshold approaches the two-party CHSH value 1/sqrt(2)
for n in (5, 10, 20, 50):
    print(f"N = {n}: V_N = {mk_star_threshold(n, 2):.5f}")
