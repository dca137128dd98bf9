"""
Molien-Weyl dimensions and a direct check
=========================================

The same dimensions come out of a torus integral over weight data, and
out of the kernel of the Lie algebra acting on polynomials.
"""

from twoqubit import molien, series

ws = molien.two_qubit_weight_system()
print("weights per slot:", ws.slot_sizes())

# constant-term extraction at a few multidegrees
for d in [(2, 0, 0), (1, 1, 1), (0, 0, 3), (0, 0, 4), (2, 2, 2)]:
    print(d, "Molien-Weyl:", molien.invariant_dimension(ws, d))

# the kernel of so(3) + so(3) acting on polynomials of multidegree d
for d in [(1, 1, 1), (0, 0, 3), (1, 1, 2)]:
    print(d, "Lie kernel:", molien.invariant_dimension_lie(d),
          "space:", molien.polynomial_space_dimension(d))

# all multidegrees up to total degree 8 against the rational function
report = molien.cross_check(8, lie_max_degree=4)
print(len(report.rows), "multidegrees,", report.lie_checked, "Lie-checked,",
      len(report.mismatches), "mismatches")
print("degree sums:", report.degree_sums())
print("series     :", series.poincare_series(1, 8).univariate())

# weight data for su(2) + su(3) gives different numbers, e.g. a cubic invariant
other = molien.su2_su3_weight_system()
print("(0,3,0): su(3) data", molien.invariant_dimension(other, (0, 3, 0)),
      "vs two qubits", molien.invariant_dimension(ws, (0, 3, 0)))
