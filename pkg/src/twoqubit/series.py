"""Exact integer polynomials and truncated power series.

Coefficients are Python ints throughout, so nothing can overflow. The
Poincare series of the two-qubit invariant algebra are stored as a
numerator :class:`IntPoly` over a :class:`FactoredPoly` denominator and
expanded with :func:`expand_rational`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Tuple

from .errors import NotDivisible, ZeroConstantTerm

Exponent = Tuple[int, ...]


def monomials(nvars: int, degree: int) -> Iterator[Exponent]:
    """Yield every exponent tuple of the given total degree, lex-descending."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


def graded_monomials(nvars: int, max_degree: int) -> Iterator[Exponent]:
    for d in range(max_degree + 1):
        yield from monomials(nvars, d)


class IntPoly:
    """Sparse polynomial with integer coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, int] | None = None):
        if not 1 <= nvars:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        self.terms: Dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp) < 0:
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            if c:
                self.terms[exp] = self.terms.get(exp, 0) + int(c)
                if not self.terms[exp]:
                    del self.terms[exp]

    @classmethod
    def const(cls, nvars: int, c: int) -> "IntPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Exponent, c: int = 1) -> "IntPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def binomial(cls, exp: Exponent, c: int = 1) -> "IntPoly":
        """``1 - c * t**exp``."""
        return cls.const(len(exp), 1) - cls.monomial(exp, c)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPoly":
        """Univariate polynomial from ascending coefficients."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    def _check(self, other: "IntPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly.const(self.nvars, other)
        self._check(other)
        return other

    def __add__(self, other) -> "IntPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = self._lift(other)
        out: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def coeff(self, exp: Exponent) -> int:
        return self.terms.get(tuple(exp), 0)

    @property
    def constant_term(self) -> int:
        return self.coeff((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def substitute_diagonal(self) -> "IntPoly":
        """Set every variable equal to a single variable ``z``."""
        out: Dict[Exponent, int] = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            out[k] = out.get(k, 0) + c
        return IntPoly(1, out)

    def swap_variables(self, i: int, j: int) -> "IntPoly":
        def sw(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)

        return IntPoly(self.nvars, {sw(e): c for e, c in self.terms.items()})

    def leading(self) -> Tuple[Exponent, int]:
        """Leading term in lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_divide(self, divisor: "IntPoly") -> "IntPoly":
        """Return ``q`` with ``self == divisor * q`` or raise NotDivisible.

        Multivariate division by a single polynomial under lex order: the
        remainder vanishes exactly when the divisor divides ``self``.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading()
        rem = dict(self.terms)
        quot: Dict[Exponent, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if min(shift) < 0 or c % lead_c:
                raise NotDivisible(f"{divisor!r} does not divide {self!r}")
            q = c // lead_c
            quot[shift] = q
            for de, dc in divisor.terms.items():
                k = tuple(a + b for a, b in zip(de, shift))
                v = rem.get(k, 0) - q * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return IntPoly(self.nvars, quot)


@dataclass(frozen=True)
class FactoredPoly:
    """A product of polynomials kept unexpanded."""

    factors: Tuple[IntPoly, ...]

    @property
    def nvars(self) -> int:
        return self.factors[0].nvars

    def expand(self) -> IntPoly:
        return reduce(lambda a, b: a * b, self.factors, IntPoly.const(self.nvars, 1))

    def substitute_diagonal(self) -> "FactoredPoly":
        return FactoredPoly(tuple(f.substitute_diagonal() for f in self.factors))


@dataclass
class SeriesTable:
    """Power series coefficients, complete up to ``max_total_degree``."""

    nvars: int
    max_total_degree: int
    coeffs: Dict[Exponent, int] = field(default_factory=dict)

    def __getitem__(self, exp) -> int:
        if isinstance(exp, int):
            exp = (exp,)
        exp = tuple(exp)
        if sum(exp) > self.max_total_degree:
            raise KeyError(f"{exp} beyond truncation degree {self.max_total_degree}")
        return self.coeffs.get(exp, 0)

    def items(self):
        return ((e, c) for e, c in sorted(self.coeffs.items(),
                                          key=lambda ec: (sum(ec[0]), tuple(-x for x in ec[0])))
                if c)

    def degree_sums(self) -> list[int]:
        sums = [0] * (self.max_total_degree + 1)
        for e, c in self.coeffs.items():
            sums[sum(e)] += c
        return sums

    def univariate(self) -> list[int]:
        """Coefficient list of a one-variable table."""
        if self.nvars != 1:
            raise ValueError("table is multivariate; use degree_sums()")
        return [self[(k,)] for k in range(self.max_total_degree + 1)]


def _divide_series(s: Dict[Exponent, int], f: IntPoly, order) -> None:
    f0 = f.constant_term
    if f0 == 0:
        raise ZeroConstantTerm(f"{f!r} has no constant term")
    rest = [(e, c) for e, c in f.terms.items() if any(e)]
    for e in order:
        v = s.get(e, 0)
        for k, c in rest:
            prev = tuple(a - b for a, b in zip(e, k))
            if min(prev) >= 0:
                v -= c * s.get(prev, 0)
        q, r = divmod(v, f0)
        if r:
            raise NotDivisible(f"series coefficient at {e} is not an integer")
        if q:
            s[e] = q
        else:
            s.pop(e, None)


def expand_rational(num: IntPoly, den, max_total_degree: int) -> SeriesTable:
    """Expand ``num / den`` as a power series up to ``max_total_degree``.

    ``den`` may be an :class:`IntPoly` or a :class:`FactoredPoly`; in the
    latter case each factor is divided out in turn, which is much cheaper
    than dividing by the expanded product.
    """
    factors = den.factors if isinstance(den, FactoredPoly) else (den,)
    nvars = num.nvars
    for f in factors:
        num._check(f)
    order = list(graded_monomials(nvars, max_total_degree))
    s = {e: c for e, c in num.terms.items() if sum(e) <= max_total_degree}
    for f in factors:
        _divide_series(s, f, order)
    return SeriesTable(nvars, max_total_degree, s)


def _t(a: int, b: int, c: int) -> Exponent:
    return (a, b, c)


# Numerator of the trigraded series, as (coefficient, (d1, d2, d3)).
_P3_NUMERATOR_TERMS = (
    (1, _t(0, 0, 0)),
    (-1, _t(1, 0, 2)), (-1, _t(0, 1, 2)), (1, _t(1, 1, 2)),
    (1, _t(1, 1, 3)), (1, _t(2, 1, 3)), (1, _t(1, 2, 3)),
    (1, _t(2, 0, 4)), (1, _t(1, 1, 4)), (1, _t(0, 2, 4)),
    (-1, _t(3, 1, 5)), (-1, _t(2, 2, 5)), (-1, _t(1, 3, 5)),
    (-1, _t(2, 1, 6)), (-1, _t(1, 2, 6)), (-1, _t(2, 2, 6)),
    (-1, _t(2, 2, 7)), (1, _t(3, 2, 7)), (1, _t(2, 3, 7)),
    (-1, _t(3, 3, 9)),
)

# Each denominator factor is 1 - t1^a t2^b t3^c.
_P3_DENOMINATOR_EXPONENTS = (
    _t(2, 0, 0), _t(0, 2, 0), _t(0, 0, 2), _t(1, 1, 1), _t(1, 0, 2),
    _t(0, 1, 2), _t(0, 0, 3), _t(2, 0, 2), _t(0, 2, 2), _t(0, 0, 4),
)

_P1_NUMERATOR = (1, 0, -1, -1, 2, 2, 2, -1, -1, 0, 1)

# (base polynomial coefficients, multiplicity)
_P1_DENOMINATOR = (((1, -1), 9), ((1, 1), 6), ((1, 0, 1), 2), ((1, 1, 1), 3))


@dataclass(frozen=True)
class BuiltinSeries:
    p1_num: IntPoly
    p1_den: FactoredPoly
    p3_num: IntPoly
    p3_den: FactoredPoly


def builtin_series() -> BuiltinSeries:
    """The stored Poincare series: single-graded and trigraded."""
    p3_num = IntPoly(3, {e: c for c, e in _P3_NUMERATOR_TERMS})
    p3_den = FactoredPoly(tuple(IntPoly.binomial(e) for e in _P3_DENOMINATOR_EXPONENTS))
    p1_num = IntPoly.from_coeffs(_P1_NUMERATOR)
    p1_den = FactoredPoly(tuple(
        IntPoly.from_coeffs(base) for base, mult in _P1_DENOMINATOR for _ in range(mult)
    ))
    return BuiltinSeries(p1_num, p1_den, p3_num, p3_den)


def common_diagonal_factor() -> IntPoly:
    """``(1 + z^2)(1 - z^3)``, shared by N(z,z,z) and D(z,z,z)."""
    return IntPoly.from_coeffs((1, 0, 1)) * IntPoly.from_coeffs((1, 0, 0, -1))


def poincare_series(grading: int, max_degree: int) -> SeriesTable:
    """Expand the stored single (``grading=1``) or trigraded (``3``) series."""
    b = builtin_series()
    if grading == 1:
        return expand_rational(b.p1_num, b.p1_den, max_degree)
    if grading == 3:
        return expand_rational(b.p3_num, b.p3_den, max_degree)
    raise ValueError("grading must be 1 or 3")


def diagonal_identity_holds() -> bool:
    """Exact check that N(z,z,z) * D1(z) == N1(z) * D(z,z,z)."""
    b = builtin_series()
    lhs = b.p3_num.substitute_diagonal() * b.p1_den.expand()
    rhs = b.p1_num * b.p3_den.substitute_diagonal().expand()
    return lhs == rhs
