import itertools
import json
from collections import Counter

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twoqubit import series
from twoqubit.errors import NotDivisible, ZeroConstantTerm
from twoqubit.series import FactoredPoly, IntPoly, expand_rational
from twoqubit.verify import REFERENCE_SINGLE_COEFFS, REFERENCE_TRIGRADED_TERMS

T1, T2, T3, Z = sympy.symbols("t1 t2 t3 z")


def to_intpoly(expr, gens):
    poly = sympy.Poly(sympy.expand(expr), *gens)
    return IntPoly(len(gens), {e: int(c) for e, c in poly.terms()})


@pytest.fixture(scope="module")
def transcription(data_dir):
    raw = json.loads((data_dir / "transcription.json").read_text())
    return {k: sympy.sympify(v) for k, v in raw.items() if k != "comment"}


# --- ring arithmetic -------------------------------------------------------

exps = st.tuples(*[st.integers(0, 3)] * 2)
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(lambda d: IntPoly(2, d))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == IntPoly(2)


@given(polys, polys)
def test_exact_divide_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_divide(b) == a


@given(polys, polys)
@settings(max_examples=50)
def test_against_sympy(a, b):
    x, y = sympy.symbols("x y")
    to_sym = lambda p: sum(c * x**e[0] * y**e[1] for e, c in p.terms.items())
    assert to_intpoly(to_sym(a) * to_sym(b), (x, y)) == a * b


def test_small_examples():
    z = IntPoly.from_coeffs
    assert z((1, -1)) * z((1, 1, 1)) == z((1, 0, 0, -1))
    assert z((1, 0, 0, -1)).exact_divide(z((1, -1))) == z((1, 1, 1))
    assert z((1, -1)) ** 3 == z((1, -3, 3, -1))
    assert IntPoly.binomial((2, 1), 3) == IntPoly(2, {(0, 0): 1, (2, 1): -3})
    assert IntPoly(1, {(2,): 0}).is_zero()


def test_not_divisible():
    z = IntPoly.from_coeffs
    with pytest.raises(NotDivisible):
        z((1, 0, 1)).exact_divide(z((1, 1)))
    with pytest.raises(NotDivisible):
        z((1, 1)).exact_divide(z((2, 2)) + z((0, 1)))
    with pytest.raises(ZeroDivisionError):
        z((1,)).exact_divide(IntPoly(1))


def test_substitution_and_swap():
    p = IntPoly(3, {(1, 0, 2): 2, (0, 1, 0): -1})
    assert p.substitute_diagonal() == IntPoly(1, {(3,): 2, (1,): -1})
    assert p.swap_variables(0, 1) == IntPoly(3, {(0, 1, 2): 2, (1, 0, 0): -1})


def test_bad_exponent():
    with pytest.raises(ValueError):
        IntPoly(2, {(1,): 1})
    with pytest.raises(ValueError):
        IntPoly(2, {(1, 2): 1}) + IntPoly(1, {(1,): 1})


# --- series expansion ------------------------------------------------------

def test_geometric():
    table = expand_rational(IntPoly.const(1, 1), IntPoly.from_coeffs((1, -1)), 10)
    assert table.univariate() == [1] * 11


def test_factored_matches_expanded():
    den = FactoredPoly((IntPoly.binomial((1, 0)), IntPoly.binomial((1, 1)),
                        IntPoly.binomial((0, 2))))
    num = IntPoly(2, {(0, 0): 1, (1, 1): -2})
    a = expand_rational(num, den, 9)
    b = expand_rational(num, den.expand(), 9)
    assert a.coeffs == b.coeffs


def test_truncation_key_error():
    table = series.poincare_series(1, 5)
    assert table[5] == 7
    with pytest.raises(KeyError):
        table[6]


def test_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        expand_rational(IntPoly.const(1, 1), IntPoly.from_coeffs((0, 1)), 4)


def test_non_integer_series():
    with pytest.raises(NotDivisible):
        expand_rational(IntPoly.const(1, 1), IntPoly.from_coeffs((2, 1)), 4)


# --- stored data -----------------------------------------------------------

def test_stored_data_matches_second_transcription(transcription):
    b = series.builtin_series()
    assert b.p3_num == to_intpoly(transcription["N"], (T1, T2, T3))
    assert b.p3_den.expand() == to_intpoly(transcription["D"], (T1, T2, T3))
    assert b.p1_num == to_intpoly(transcription["P1_num"], (Z,))
    assert b.p1_den.expand() == to_intpoly(transcription["P1_den"], (Z,))


def test_stored_shapes():
    b = series.builtin_series()
    assert len(b.p3_num.terms) == 20 and len(b.p3_den.factors) == 10
    assert b.p3_num.total_degree() == 15
    den = b.p1_den.expand()
    # linear terms: -9 from (1 - z)^9, +6 from (1 + z)^6, +3 from (1 + z + z^2)^3
    assert den.coeff((0,)) == 1 and den.coeff((1,)) == 0
    assert den.total_degree() == 9 + 6 + 4 + 6


def truncated_product(series_list, n):
    out = [1] + [0] * (n - 1)
    for a in series_list:
        out = [sum(out[i] * a[k - i] for i in range(k + 1)) for k in range(n)]
    return out


def test_single_graded_against_binomial_series(transcription):
    # 1/D1 from closed-form binomial series, using
    # 1/(1 + z + z^2)^3 = (1 - z)^3 / (1 - z^3)^3
    n = 24
    comb = sympy.binomial
    inv_d1 = truncated_product([
        [comb(k + 8, 8) for k in range(n)],
        [(-1) ** k * comb(k + 5, 5) for k in range(n)],
        [(-1) ** (k // 2) * (k // 2 + 1) if k % 2 == 0 else 0 for k in range(n)],
        [comb(k // 3 + 2, 2) if k % 3 == 0 else 0 for k in range(n)],
        [1, -3, 3, -1] + [0] * (n - 4),
    ], n)
    num = sympy.Poly(transcription["P1_num"], Z).all_coeffs()[::-1]
    oracle = truncated_product([num + [0] * (n - len(num)), inv_d1], n)
    assert oracle == list(REFERENCE_SINGLE_COEFFS)
    assert series.poincare_series(1, 23).univariate() == oracle


def geometric_product_oracle(max_degree):
    """Multiply N by the ten geometric series directly, without division."""
    b = series.builtin_series()
    gens = [max(f.terms) for f in b.p3_den.factors]
    partial = Counter({(0, 0, 0): 1})
    for g in gens:
        nxt = Counter()
        step = sum(g)
        for e, c in partial.items():
            k = 0
            while sum(e) + k * step <= max_degree:
                nxt[tuple(a + k * x for a, x in zip(e, g))] += c
                k += 1
        partial = nxt
    out = Counter()
    for en, cn in b.p3_num.terms.items():
        for e, c in partial.items():
            if sum(en) + sum(e) <= max_degree:
                out[tuple(a + b for a, b in zip(en, e))] += cn * c
    return {e: c for e, c in out.items() if c}


def test_trigraded_against_oracle():
    table = series.poincare_series(3, 12)
    assert {e: c for e, c in table.items()} == geometric_product_oracle(12)


def test_trigraded_reference_terms():
    table = series.poincare_series(3, 6)
    assert dict(table.items()) == REFERENCE_TRIGRADED_TERMS
    assert table[(1, 1, 1)] == 1 and table[(0, 0, 4)] == 2 and table[(2, 2, 2)] == 4


def test_diagonal_identity():
    assert series.diagonal_identity_holds()
    b = series.builtin_series()
    common = series.common_diagonal_factor()
    assert b.p3_num.substitute_diagonal().exact_divide(common) == b.p1_num
    assert b.p3_den.substitute_diagonal().expand().exact_divide(common) == b.p1_den.expand()


def test_degree_sums_to_30():
    tri = series.poincare_series(3, 30)
    assert tri.degree_sums() == series.poincare_series(1, 30).univariate()


def test_symmetry_and_positivity():
    table = series.poincare_series(3, 20)
    for e, c in table.coeffs.items():
        assert c > 0
        assert table[(e[1], e[0], e[2])] == c


def test_parity_of_first_two_degrees():
    # Terms with d1 + d2 odd do occur, e.g. t1^2 t2 t3^3 in the reference expansion.
    table = series.poincare_series(3, 30)
    odd = [e for e, _ in table.items() if (e[0] + e[1]) % 2]
    assert odd and (2, 1, 3) in odd and (1, 2, 3) in odd
    # parity of d1 + d2 + d3 is unconstrained as well
    assert table[(0, 0, 3)] == 1


def test_monomial_counts():
    for n, d in itertools.product((1, 2, 3), range(6)):
        assert len(list(series.monomials(n, d))) == sympy.binomial(n + d - 1, d)
