"""
Two-qubit states and their local-unitary invariants
===================================================

A density matrix is split into local Bloch vectors s, p and a correlation
matrix beta. Nine polynomials in these coordinates do not change under
local unitaries, and det(rho^Gamma) is a polynomial in them.
"""

import numpy as np

from twoqubit import qstate, invariants

# a random state from the Hilbert-Schmidt ensemble; seed and index fix it
rho = qstate.sample_one(qstate.EnsembleSpec("hilbert-schmidt", seed=1), index=0)
print("eigenvalues:", np.round(qstate.eigensystem(rho).eigenvalues, 4))

# coordinates: rho = I/4 + sum s_j sigma_j (x) I / 2 + ... + sum beta_kl sigma_k (x) sigma_l
c = qstate.bloch_decompose(rho)
print("s =", np.round(c.s, 4))
print("p =", np.round(c.p, 4))
print("beta =\n", np.round(c.beta, 4))

# the nine invariants
v = invariants.state_invariants(rho)
for name, value in v.as_dict().items():
    print(f"{name:>4} = {value: .6e}")

# rotate each qubit separately; the invariants stay put
uv = qstate.sample_local_unitary(seed=1, index=0)
moved = qstate.apply_local_unitary(rho, uv)
w = invariants.state_invariants(moved)
print("largest change under U (x) V:", np.abs(v.as_array() - w.as_array()).max())

# the closed form for det(rho^Gamma) against the direct 4x4 determinant
print("det(rho^Gamma) direct :", invariants.det_pt_direct(rho))
print("det(rho^Gamma) formula:", invariants.det_pt_via_invariants(v))

# Werner states: det(rho^Gamma) = (1 + w)^3 (1 - 3w) / 256 changes sign at w = 1/3
for w_ in (0.0, 0.2, 1 / 3, 0.5, 1.0):
    d = invariants.det_pt_direct(qstate.werner_state(w_))
    print(f"w = {w_:.3f}  det(rho^Gamma) = {d: .6f}")
