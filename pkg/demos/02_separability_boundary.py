"""
The boundary of the separable states
====================================

For two qubits a state is separable exactly when det(rho^Gamma) >= 0.
Entangled states can be pushed along a segment towards I/4 until they hit
det(rho^Gamma) = 0; inside the state space such points are smooth.
"""

import numpy as np

from twoqubit import geometry, qstate

# the sign test and the eigenvalue test agree
bell = qstate.bell_state()
verdict = geometry.is_separable(bell)
print("Bell state separable:", bool(verdict), " margin:", verdict.margin,
      " min eig of rho^Gamma:", verdict.min_eig_pt)

# classification tags which boundary pieces a matrix lies on
for label, m in [("I/4", qstate.maximally_mixed()),
                 ("|00><00|", np.diag([1.0, 0, 0, 0])),
                 ("Werner 1/3", qstate.werner_state(1 / 3)),
                 ("Bell", bell)]:
    c = geometry.classify(m)
    print(f"{label:>11}: {c.tag.value:<18} on boundary of M: {c.on_boundary_M}")

# bisection from the Bell state towards I/4 lands on the Werner state w = 1/3
lam = geometry.boundary_parameter(bell)
print("boundary at lambda =", lam)

# a random entangled state, its boundary point and the local geometry there
spec = qstate.EnsembleSpec("hilbert-schmidt", seed=4)
rho = next(r for r in qstate.sample(spec, 50) if geometry.is_separable(r).margin < 0)
star = geometry.boundary_point(rho)
point = geometry.analyze_hypersurface_point(star, "DGamma")
print("zero eigenvalues of rho*^Gamma:", point.zero_count,
      " gradient norm:", f"{point.gradient_norm:.3e}", " singular:", point.singular)

# singular points of det = 0 are the matrices with two or more zero eigenvalues
for diag in ((0, 0.2, 0.3, 0.5), (0, 0, 0.4, 0.6), (0, 0, 0, 1)):
    pt = geometry.analyze_hypersurface_point(np.diag(diag))
    print(diag, "zeros:", pt.zero_count, "singular:", pt.singular)

# a product vector e (x) f inside a two-dimensional subspace
e = np.eye(4, dtype=complex)
pv = geometry.kernel_product_vector((e[0] + e[3]) / np.sqrt(2), e[1])
print("product vector:", np.round(pv.vector, 6), " residual:", pv.residual)

# a short audit of the smoothness statement
report = geometry.smoothness_audit(50, seed=7)
print("audit:", len(report.records), "boundary points,", len(report.failures), "failures")
