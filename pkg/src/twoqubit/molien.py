"""Dimensions of spaces of invariants, computed two independent ways.

``invariant_dimension`` uses the Molien-Weyl formula: the dimension of
invariants of multidegree d equals the constant term (in the torus
variables) of the Weyl factor times the product over graded slots of the
complete homogeneous symmetric functions h_{d_i} of the slot's weight
monomials. All arithmetic is on exact Laurent polynomials.

``invariant_dimension_lie`` builds the polynomial space of multidegree d
in the fifteen coordinates (s, p, beta) directly, lets the six generators
of so(3) + so(3) act as derivations, and takes the kernel dimension of the
stacked matrix by fraction-free elimination over the integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb, gcd
from typing import Dict, Iterable, Sequence, Tuple

from .errors import Mismatch, TooLarge
from .series import SeriesTable, graded_monomials, poincare_series

Weight = Tuple[int, ...]

LIE_CAP = 50_000


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Weight, int] | None = None):
        self.nvars = nvars
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exp: Weight, c: int = 1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): c})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + LaurentPoly(other.nvars, {e: -c for e, c in other.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: Dict[Weight, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __repr__(self):
        return f"LaurentPoly({self.terms})"

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def invert_variables(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def shift(self, w: Weight) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, w)): c
                                        for e, c in self.terms.items()})


def constant_term_of_product(a: LaurentPoly, b: LaurentPoly) -> int:
    """Constant term of a*b without forming the product."""
    get = b.terms.get
    return sum(c * get(tuple(-x for x in e), 0) for e, c in a.terms.items())


@dataclass(frozen=True)
class WeightSystem:
    slots: Tuple[Tuple[Weight, ...], ...]
    weyl_factor: LaurentPoly = field(compare=False)

    @property
    def nvars(self) -> int:
        return self.weyl_factor.nvars

    def slot_sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.slots)

    def closed_under_negation(self) -> bool:
        return all(sorted(s) == sorted(tuple(-x for x in w) for w in s) for s in self.slots)

    def inverted(self) -> "WeightSystem":
        return WeightSystem(tuple(tuple(tuple(-x for x in w) for w in s) for s in self.slots),
                            self.weyl_factor.invert_variables())


def weyl_factor(negative_roots: Iterable[Weight], nvars: int) -> LaurentPoly:
    """Product of (1 - t^alpha) over the given (negative) roots."""
    out = LaurentPoly.one(nvars)
    for alpha in negative_roots:
        out = out * (LaurentPoly.one(nvars) - LaurentPoly.monomial(alpha))
    return out


def two_qubit_weight_system() -> WeightSystem:
    """Torus weights of s, p and beta under SU(2) x SU(2).

    Each adjoint representation has weights {x, 1, 1/x}; the tensor slot
    carries all nine pairwise sums.
    """
    adj_x = ((1, 0), (0, 0), (-1, 0))
    adj_w = ((0, 1), (0, 0), (0, -1))
    tensor = tuple((a[0] + b[0], a[1] + b[1]) for a in adj_x for b in adj_w)
    return WeightSystem((adj_x, adj_w, tensor), weyl_factor([(-1, 0), (0, -1)], 2))


def trivial_weight_system() -> WeightSystem:
    """One slot holding a single zero weight, with the two-qubit Weyl factor."""
    return WeightSystem((((0, 0),),), two_qubit_weight_system().weyl_factor)


def su2_su3_weight_system() -> WeightSystem:
    """Weight data of su(2) + su(3) + su(2) (x) su(3) in torus variables x, y, z.

    Grading slots carry 3, 8 and 24 weights; the numerator is
    (1 - 1/x)(1 - 1/y)(1 - 1/z)(1 - 1/(yz)). Slot sizes look similar to the
    two-qubit system but the dimensions differ; it is kept so the
    difference can be computed rather than argued.
    """
    z0 = (0, 0, 0)
    x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)

    def add(*ws):
        return tuple(sum(c) for c in zip(z0, *ws))

    def neg(w):
        return tuple(-c for c in w)

    su3 = (y, add(y, z), neg(y), neg(add(y, z)), z, neg(z))
    t1 = (z0, x, neg(x))
    t2 = (z0, z0) + su3
    t3 = ((z0, z0, x, x, neg(x), neg(x))
          + tuple(add(x, w) for w in su3) + tuple(add(neg(x), w) for w in su3)
          + su3)
    return WeightSystem((t1, t2, t3),
                        weyl_factor([neg(x), neg(y), neg(z), neg(add(y, z))], 3))


@lru_cache(maxsize=None)
def _complete_homogeneous(slot: Tuple[Weight, ...], nvars: int, d: int) -> Tuple[LaurentPoly, ...]:
    """h_0 .. h_d of the slot's weight monomials.

    Adds one weight w at a time, using h_k(..., w) = h_k(...) + w * h_{k-1}(..., w).
    """
    h = [LaurentPoly.one(nvars)] + [LaurentPoly(nvars) for _ in range(d)]
    for w in slot:
        for k in range(1, d + 1):
            h[k] = h[k] + h[k - 1].shift(w)
    return tuple(h)


def complete_homogeneous(slot: Sequence[Weight], d: int) -> LaurentPoly:
    slot = tuple(tuple(w) for w in slot)
    return _complete_homogeneous(slot, len(slot[0]), d)[d]


def power_sum(slot: Sequence[Weight], k: int) -> LaurentPoly:
    nvars = len(slot[0])
    out = LaurentPoly(nvars)
    for w in slot:
        out = out + LaurentPoly.monomial(tuple(k * x for x in w))
    return out


def invariant_dimension(ws: WeightSystem, d: Sequence[int]) -> int:
    d = tuple(int(x) for x in d)
    if len(d) != len(ws.slots) or min(d, default=0) < 0:
        raise ValueError(f"multidegree {d} does not fit {len(ws.slots)} slots")
    acc = ws.weyl_factor
    for slot, di in zip(ws.slots[:-1], d[:-1]):
        acc = acc * complete_homogeneous(slot, di)
    return constant_term_of_product(acc, complete_homogeneous(ws.slots[-1], d[-1]))


# ------------------------------------------------------------ Lie-kernel oracle

# Coordinates 0-2: s, 3-5: p, 6-14: beta (row-major).
def _s(i):
    return i


def _p(i):
    return 3 + i


def _b(i, j):
    return 6 + 3 * i + j


def _so3_generator(a: int) -> Dict[Tuple[int, int], int]:
    """(J_a)_{ij} = -e_{aij}: infinitesimal rotation about axis a."""
    out = {}
    for i in range(3):
        for j in range(3):
            e = _levi(a, i, j)
            if e:
                out[(i, j)] = -e
    return out


def _levi(i, j, k) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def lie_generators() -> list[Dict[int, Dict[int, int]]]:
    """Six derivations as linear maps x_k -> sum c * x_m on the 15 coordinates.

    The first factor rotates s and the rows index of beta, the second
    rotates p and the column index of beta.
    """
    gens = []
    for a in range(3):
        j = _so3_generator(a)
        g: Dict[int, Dict[int, int]] = {}
        for (i, k), c in j.items():
            # delta s_i = sum_k J_ik s_k
            g.setdefault(_s(i), {})[_s(k)] = c
            for col in range(3):
                g.setdefault(_b(i, col), {})[_b(k, col)] = c
        gens.append(g)
    for a in range(3):
        j = _so3_generator(a)
        g = {}
        for (i, k), c in j.items():
            g.setdefault(_p(i), {})[_p(k)] = c
            for row in range(3):
                g.setdefault(_b(row, i), {})[_b(row, k)] = c
        gens.append(g)
    return gens


def _multidegree_monomials(d: Sequence[int]) -> list[Tuple[int, ...]]:
    """Sorted coordinate-index multisets of multidegree d."""
    blocks = (range(0, 3), range(3, 6), range(6, 15))
    parts = [list(combinations_with_replacement(b, k)) for b, k in zip(blocks, d)]
    return [sum(c, ()) for c in product(*parts)]


def polynomial_space_dimension(d: Sequence[int]) -> int:
    return comb(d[0] + 2, 2) * comb(d[1] + 2, 2) * comb(d[2] + 8, 8)


def _apply_derivation(gen, mono: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    """Image of a monomial under the derivation x_k -> gen[k]."""
    out: Dict[Tuple[int, ...], int] = {}
    for pos, k in enumerate(mono):
        for m, c in gen.get(k, {}).items():
            new = tuple(sorted(mono[:pos] + (m,) + mono[pos + 1:]))
            out[new] = out.get(new, 0) + c
    return {k: v for k, v in out.items() if v}


def integer_rank(rows: Iterable[Dict[int, int]]) -> int:
    """Rank over Q of sparse integer rows, by fraction-free elimination.

    Each incoming row is reduced against the stored pivot rows with
    integer cross-multiplication and divided by its content, so entries
    stay integral and no rounding can occur.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[col] = {k: v // g for k, v in row.items()}
                break
            a, b = prow[col], row[col]
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)


def invariant_dimension_lie(d: Sequence[int], cap: int = LIE_CAP) -> int:
    d = tuple(int(x) for x in d)
    size = polynomial_space_dimension(d)
    if size > cap:
        raise TooLarge(f"polynomial space of multidegree {d} has dimension {size} > {cap}")
    basis = _multidegree_monomials(d)
    index = {m: i for i, m in enumerate(basis)}
    # one row per (generator, output monomial); columns are basis monomials
    rows = []
    for gen in lie_generators():
        images = [_apply_derivation(gen, m) for m in basis]
        by_out: Dict[Tuple[int, ...], Dict[int, int]] = {}
        for col, img in enumerate(images):
            for out, c in img.items():
                by_out.setdefault(out, {})[col] = c
        rows.extend(by_out.values())
    return len(basis) - integer_rank(rows)


# ---------------------------------------------------------------- cross-check

@dataclass
class CrossCheckRow:
    degree: Tuple[int, int, int]
    series: int
    molien: int
    lie: int | None

    @property
    def ok(self) -> bool:
        return self.series == self.molien and (self.lie is None or self.lie == self.molien)


@dataclass
class CrossCheckReport:
    max_total_degree: int
    rows: list[CrossCheckRow]

    @property
    def mismatches(self) -> list[CrossCheckRow]:
        return [r for r in self.rows if not r.ok]

    @property
    def lie_checked(self) -> int:
        return sum(1 for r in self.rows if r.lie is not None)

    def degree_sums(self) -> list[int]:
        sums = [0] * (self.max_total_degree + 1)
        for r in self.rows:
            sums[sum(r.degree)] += r.molien
        return sums


def cross_check(max_total_degree: int, lie_max_degree: int | None = None,
                cap: int = LIE_CAP, raise_on_mismatch: bool = True) -> CrossCheckReport:
    """Compare Molien-Weyl dimensions with the stored rational function and,
    where affordable, with the Lie-kernel oracle.

    ``lie_max_degree`` bounds the total degree for the Lie oracle on top of
    ``cap``; rows are in canonical (graded, lex-descending) order.
    """
    table: SeriesTable = poincare_series(3, max_total_degree)
    ws = two_qubit_weight_system()
    rows = []
    for deg in graded_monomials(3, max_total_degree):
        lie = None
        if ((lie_max_degree is None or sum(deg) <= lie_max_degree)
                and polynomial_space_dimension(deg) <= cap):
            lie = invariant_dimension_lie(deg, cap)
        row = CrossCheckRow(deg, table[deg], invariant_dimension(ws, deg), lie)
        if raise_on_mismatch and not row.ok:
            raise Mismatch(deg, {"series": row.series, "molien": row.molien, "lie": row.lie})
        rows.append(row)
    return CrossCheckReport(max_total_degree, rows)
