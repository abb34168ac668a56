"""
Entanglement of formation can grow under swapping
=================================================

For the family rho_lambda = lam |psi><psi| + (1-lam)/2 (|00><00| + |11><11|)
with psi = a|01> - b|10>, one Bell swap of two copies can raise the
entanglement of formation. We scan a 50 x 50 grid and report where.
"""

import numpy as np

from swapnet import chain_swap, concurrence, eof, rho_lambda
from swapnet.cli import cmd_repeater_scan

res = cmd_repeater_scan(np.linspace(0.01, 0.99, 50), np.linspace(0.51, 0.99, 50))
gains = [pt for pt in res.points if pt["gain"]]
print(f"{len(gains)} of {len(res.points)} grid cells gain entanglement of formation")

best = max(gains, key=lambda pt: pt["eof_out"] - pt["eof_in"])
print("largest gain at a = {a:.2f}, lambda = {lambda:.2f}: {eof_in:.4f} -> {eof_out:.4f}".format(**best))

# Look at that cell in detail
parent = rho_lambda(best["a"], best["lambda"])
child = chain_swap([parent, parent])
print("concurrence before / after:", concurrence(parent), concurrence(child))
print("EoF before / after:", eof(parent), eof(child))
