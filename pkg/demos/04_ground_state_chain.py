"""
Ground states of the Jz = 0 chain
=================================

With Jx = Jy = J, Jz = 0 and D along z the chain maps onto free fermions
with energies 4 (J cos q + D sin q). The closed-form coherence assumes the
ground state is an equal-weight superposition of all zero-magnetisation
configurations; exact diagonalisation shows how close that is.
"""

import math

from dmcoherence import DegeneracyError, ModelSpec, chain_ground_coherence, coherence_closed_form_jz0
from dmcoherence.models import DispersionParams, jw_mode_set

for n in (2, 4, 6, 10, 20, 40):
    print(f"N={n:>2}  m={math.comb(n, n // 2):>14}  C={coherence_closed_form_jz0(n):.10f}")

# %%
# Exact diagonalisation. N=2 (open) reproduces the closed form; N=6 and N=10
# fall short of it because the amplitudes are not all equal.

print(chain_ground_coherence(ModelSpec(2, (1, 1, 0), (0, 0, 1.0), "open")))
for n in (6, 10):
    res = chain_ground_coherence(ModelSpec(n, (1, 1, 0), (0, 0, 0.3)))
    print(f"N={n}: ED {res.coherence:.6f}  closed form {res.closed_form:.6f}  "
          f"deviation {res.deviation:+.6f}  E0 {res.energy:.6f}  sum of filled modes {res.modes.energy:.6f}")

# %%
# Changing D inside one filled-mode sector leaves the ground state alone.

for d in (0.3, 0.45, 0.5):
    print(d, chain_ground_coherence(ModelSpec(6, (1, 1, 0), (0, 0, d))).coherence)

# Without DM the N=4 ring has zero-energy modes and a degenerate ground level
print(jw_mode_set(DispersionParams(1.0, 0.0, 4)))
try:
    chain_ground_coherence(ModelSpec(4, (1, 1, 0)))
except DegeneracyError as exc:
    print("refused:", exc)
