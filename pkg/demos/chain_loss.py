"""
Losing Bell violation along a chain of Werner pairs
===================================================

Each Bell measurement multiplies the visibilities of the two pairs it fuses,
so the end-to-end state of N pairs is again a Werner state with visibility
p**N. The pair violates CHSH only when p**N > 1/sqrt(2).
"""

import numpy as np

from swapnet import chain_swap, critical_visibility, horodecki_chsh_max, werner

# Swap two pairs at p = 0.9 and compare with the product law
p = 0.9
swapped = chain_swap([werner(p), werner(p)])
print("max deviation from werner(p^2):", np.abs(np.asarray(swapped) - np.asarray(werner(p * p))).max())



def end_to_end(x, n):
    return werner(x) if n == 1 else chain_swap([werner(x)] * n)


# The CHSH threshold climbs toward 1 as the chain gets longer
for n in range(1, 7):
    pc = critical_visibility(lambda x: horodecki_chsh_max(end_to_end(x, n)) > 2)
    print(f"N = {n}: CHSH violated for p > {pc:.5f}   (closed form {2 ** (-1 / (2 * n)):.5f})")

# Between 1/sqrt(2) and (1/2)**(1/4) the parents violate CHSH but the swapped pair does not
p = 0.8
print("parent CHSH:", horodecki_chsh_max(werner(p)), " swapped CHSH:", horodecki_chsh_max(chain_swap([werner(p)] * 2)))
