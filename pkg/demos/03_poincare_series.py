"""
Counting invariants with the Poincare series
============================================

The number of linearly independent invariants of each degree is the
coefficient of a rational function. Everything here is exact integer
arithmetic.
"""

from twoqubit import series

# single grading: total degree
single = series.poincare_series(grading=1, max_degree=23)
print("dimensions by degree:", single.univariate())

# three gradings: degrees in s, p and beta separately
tri = series.poincare_series(grading=3, max_degree=6)
for exp, coeff in tri.items():
    print(f"t1^{exp[0]} t2^{exp[1]} t3^{exp[2]}: {coeff}")

# summing over multidegrees of the same total degree gives the single series back
print("degree sums:", tri.degree_sums())

# setting t1 = t2 = t3 = z: numerator and denominator share (1 + z^2)(1 - z^3)
b = series.builtin_series()
common = series.common_diagonal_factor()
print("N(z,z,z) / common =", b.p3_num.substitute_diagonal().exact_divide(common))
print("identity holds:", series.diagonal_identity_holds())

# coefficients grow quickly but stay exact
big = series.poincare_series(grading=1, max_degree=200).univariate()
print("degree 200:", big[200])
