"""
Coherence of a few two-qubit states
===================================

Coherence here is sqrt(J(rho, rho_d)), the square root of the quantum
Jensen-Shannon divergence between a state and its dephased copy.
"""

import numpy as np

from dmcoherence import coherence, coherence_report, pure_state, qjsd
from dmcoherence.densemath import dephase, kron

# A Bell pair: maximally entangled, but only two of four basis states occupied
bell = pure_state([1, 0, 0, 1])
print("C(Bell, z)    =", coherence(bell))
print("J(Bell, Bell_d) =", qjsd(bell, dephase(bell)))

# the Bell pair happens to score the same in all three product bases
for basis in "xyz":
    print(f"C(Bell, {basis})    = {coherence(bell, basis):.6f}")

# |++> is a product state that is incoherent in x and coherent in z
plus = np.array([1, 1]) / np.sqrt(2)
pp = pure_state(np.kron(plus, plus))
print("C(|++>, x) =", coherence(pp, "x"), " C(|++>, z) =", coherence(pp, "z"))

# %%
# Local versus correlated coherence
# ---------------------------------
# The local part is the coherence of the product of the two marginals.
# The Bell pair has maximally mixed marginals, so all of its coherence is
# carried by correlations.

for label, rho in [("Bell", bell), ("|++>", pp), ("mixed product", kron(np.diag([0.7, 0.3]), 0.5 * np.ones((2, 2))))]:
    rep = coherence_report(rho)
    print(f"{label:>14}: total {rep.total:.4f}  local {rep.local:.4f}  correlated {rep.correlated:.4f}")
