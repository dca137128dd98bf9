"""Nine polynomial local-unitary invariants of a two-qubit state and the
closed-form determinant of the partial transpose built from them."""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from itertools import permutations

import numpy as np

from .qstate import MakhlinCoordinates, as_matrix, bloch_decompose, det, partial_transpose

INVARIANT_NAMES = ("I1", "I2", "I3", "I4", "I5", "I7", "I8", "I12", "I14")


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


# Nonzero Levi-Civita entries: six signed index triples.
LEVI_CIVITA = tuple((_perm_sign(p), p) for p in permutations(range(3)))


def levi_civita_tensor() -> np.ndarray:
    e = np.zeros((3, 3, 3))
    for sign, (i, j, k) in LEVI_CIVITA:
        e[i, j, k] = sign
    return e


@dataclass(frozen=True)
class InvariantVector:
    I1: float
    I2: float
    I3: float
    I4: float
    I5: float
    I7: float
    I8: float
    I12: float
    I14: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def i14_contraction(s, p, beta) -> float:
    """sum e_ijk e_lmn s_i p_l beta_jm beta_kn over the 36 nonzero index pairs."""
    total = 0.0
    for sg1, (i, j, k) in LEVI_CIVITA:
        for sg2, (l, m, n) in LEVI_CIVITA:
            total += sg1 * sg2 * s[i] * p[l] * beta[j, m] * beta[k, n]
    return total


def compute_invariants(c: MakhlinCoordinates) -> InvariantVector:
    s, p, b = c.s, c.p, c.beta
    btb = b.T @ b
    sb = s @ b
    bp = b @ p
    return InvariantVector(
        I1=_det3(b),
        I2=float(np.trace(btb)),
        I3=float(np.trace(btb @ btb)),
        I4=float(s @ s),
        I5=float(sb @ sb),
        I7=float(p @ p),
        I8=float(bp @ bp),
        I12=float(s @ b @ p),
        I14=float(i14_contraction(s, p, b)),
    )


def _det3(b) -> float:
    return float(b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1])
                 - b[0, 1] * (b[1, 0] * b[2, 2] - b[1, 2] * b[2, 0])
                 + b[0, 2] * (b[1, 0] * b[2, 1] - b[1, 1] * b[2, 0]))


def state_invariants(rho) -> InvariantVector:
    return compute_invariants(bloch_decompose(rho))


def det_pt_via_invariants(v: InvariantVector) -> float:
    """det(rho^Gamma) as a polynomial in the nine invariants."""
    quad = (32 * v.I3 - 16 * v.I5 - 16 * v.I8 - 16 * v.I14 - 16 * v.I2**2
            + v.I4**2 + v.I7**2 + 8 * v.I2 * v.I4 + 8 * v.I2 * v.I7 - 2 * v.I4 * v.I7)
    return (1 / 256 - (4 * v.I2 + v.I4 + v.I7) / 32
            + (4 * v.I1 + v.I12) / 2 + quad / 16)


def det_pt_direct(rho) -> float:
    """det(rho^Gamma) by permutation expansion of the 4x4 determinant."""
    d = det(partial_transpose(as_matrix(rho)))
    return float(d.real)
