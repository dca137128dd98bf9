"""Two-qubit states: validation, Bloch coordinates, partial transpose,
spectra, adjugates and reproducible sampling.

Coordinates follow

    rho = I/4 + X (x) I + I (x) Y + Z,
    X = 1/2 sum_i s_i sigma_i,  Y = 1/2 sum_i p_i sigma_i,
    Z = sum_ij beta_ij sigma_i (x) sigma_j,

so ``s_j = tr(rho (sigma_j (x) I)) / 2`` and
``beta_kl = tr(rho (sigma_k (x) sigma_l)) / 4``.

Random streams: sample ``i`` of a run seeded with ``seed`` draws from
``numpy.random.Generator(PCG64(SeedSequence(seed, spawn_key=(i,))))``;
auxiliary streams use ``spawn_key=(stream, i)``.
The stream therefore depends only on ``(seed, i)``, never on how many
samples were drawn before it or on which worker drew it.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .errors import InvalidSpec, NoConvergence, NotHermitian, NotPositive, TraceNotOne

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
STRICT_EIG_TOL = 1e-10
ZERO_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

# sigma_i (x) I, I (x) sigma_i and sigma_k (x) sigma_l, precomputed.
_S_OPS = np.array([np.kron(s, I2) for s in SIGMA])
_P_OPS = np.array([np.kron(I2, s) for s in SIGMA])
_B_OPS = np.array([[np.kron(a, b) for b in SIGMA] for a in SIGMA])


class DensityMatrix:
    """A validated 4x4 hermitian matrix of unit trace.

    Positivity is not part of the type; construct through
    :func:`validate_state` with ``strict=True`` to require it.
    """

    __slots__ = ("_mat",)

    def __init__(self, mat):
        m = np.array(mat, dtype=complex)
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        self._mat = m

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    def __array__(self, dtype=None, copy=None):
        return self._mat if dtype is None else self._mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self._mat, precision=4)})"

    def to_json(self) -> dict:
        return matrix_to_json(self._mat)


def as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.mat
    return np.asarray(m, dtype=complex)


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    return {"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    re = np.array(obj["re"], dtype=float)
    im = np.array(obj.get("im", np.zeros_like(re)), dtype=float)
    m = re + 1j * im
    dim = int(obj.get("dim", m.shape[0]))
    if m.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} entries, got shape {m.shape}")
    return m


def validate_state(m, strict: bool = False) -> DensityMatrix:
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not hermitian (max |M - M^+| = {asym:.3g})", asym)
    tr = np.trace(m)
    defect = abs(tr - 1)
    if defect > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr.real:.17g}, off by {defect:.3g}", defect)
    rho = DensityMatrix(m)
    if strict:
        lam = eigensystem(rho.mat).eigenvalues[0]
        if lam < -STRICT_EIG_TOL:
            raise NotPositive(f"minimum eigenvalue {lam:.3g} is negative", lam)
    return rho


@dataclass(frozen=True)
class MakhlinCoordinates:
    s: np.ndarray
    p: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        for name, shape in (("s", (3,)), ("p", (3,)), ("beta", (3, 3))):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {v.shape}")
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} has non-finite entries")
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    def swapped(self) -> "MakhlinCoordinates":
        """Coordinates after exchanging the two qubits."""
        return MakhlinCoordinates(self.p, self.s, self.beta.T)

    def to_json(self) -> dict:
        return {"s": self.s.tolist(), "p": self.p.tolist(), "beta": self.beta.tolist()}

    @classmethod
    def from_json(cls, obj) -> "MakhlinCoordinates":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["s"], obj["p"], obj["beta"])


def bloch_decompose(rho) -> MakhlinCoordinates:
    m = as_matrix(rho)
    s = np.einsum("ij,kji->k", m, _S_OPS) / 2
    p = np.einsum("ij,kji->k", m, _P_OPS) / 2
    beta = np.einsum("ij,klji->kl", m, _B_OPS) / 4
    return MakhlinCoordinates(s.real, p.real, beta.real)


def bloch_compose(c: MakhlinCoordinates) -> np.ndarray:
    return (I4 / 4
            + np.einsum("k,kij->ij", c.s, _S_OPS) / 2
            + np.einsum("k,kij->ij", c.p, _P_OPS) / 2
            + np.einsum("kl,klij->ij", c.beta, _B_OPS))


def partial_transpose(rho) -> np.ndarray:
    """Transpose on the second qubit: each 2x2 block is transposed in place."""
    m = as_matrix(rho)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    zero_tol: float = ZERO_TOL

    @property
    def zero_count(self) -> int:
        return int(np.sum(np.abs(self.eigenvalues) <= self.zero_tol))

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])


def _rotate(a, v, p: int, q: int) -> None:
    """One complex Jacobi rotation zeroing a[p][q], applied in place.

    The 2x2 unitary is diag(1, conj(phase)) followed by a real rotation,
    where phase = a[p][q] / |a[p][q]|.
    """
    n = len(a)
    apq = a[p][q]
    r = abs(apq)
    ph = (apq / r).conjugate()
    theta = (a[q][q].real - a[p][p].real) / (2 * r)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1))
    c = 1 / math.sqrt(t * t + 1)
    s = t * c
    u10, u11 = -s * ph, c * ph
    for k in range(n):
        x, y = a[k][p], a[k][q]
        a[k][p], a[k][q] = x * c + y * u10, x * s + y * u11
        x, y = v[k][p], v[k][q]
        v[k][p], v[k][q] = x * c + y * u10, x * s + y * u11
    u10c, u11c = u10.conjugate(), u11.conjugate()
    for k in range(n):
        x, y = a[p][k], a[q][k]
        a[p][k], a[q][k] = c * x + u10c * y, s * x + u11c * y
    a[p][q] = a[q][p] = 0j


def eigensystem(h, zero_tol: float = ZERO_TOL, max_sweeps: int = 50) -> SpectralData:
    """Eigen-decomposition of a hermitian matrix by cyclic Jacobi rotations.

    Stops once the off-diagonal Frobenius mass is at most 1e-14 ||H||.
    """
    m = np.array(as_matrix(h), dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    asym = float(np.max(np.abs(m - m.conj().T))) if n else 0.0
    if asym > 1e-10:
        raise NotHermitian(f"matrix is not hermitian (max |H - H^+| = {asym:.3g})", asym)
    a = ((m + m.conj().T) / 2).tolist()
    v = np.eye(n, dtype=complex).tolist()
    target2 = 1e-28 * float(np.sum(np.abs(m) ** 2))
    for _ in range(max_sweeps):
        off2 = sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j)
        if off2 <= target2:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) > 1e-300:
                    _rotate(a, v, p, q)
    else:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    lam = np.array([a[i][i].real for i in range(n)])
    order = np.argsort(lam, kind="stable")
    return SpectralData(lam[order], np.array(v, dtype=complex).reshape(n, n)[:, order], zero_tol)


_PERM_CACHE: dict[int, list[tuple[int, tuple[int, ...]]]] = {}


def _signed_permutations(n: int):
    if n not in _PERM_CACHE:
        out = []
        for perm in permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            out.append((-1 if inv % 2 else 1, perm))
        _PERM_CACHE[n] = out
    return _PERM_CACHE[n]


def det(m) -> complex:
    """Determinant; exact permutation expansion for n <= 4, LU above."""
    m = as_matrix(m)
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0j
    if n > 4:
        return complex(np.linalg.det(m))
    rows = m.tolist()
    total = 0j
    for sign, perm in _signed_permutations(n):
        prod = 1 + 0j
        for i, j in enumerate(perm):
            prod *= rows[i][j]
        total += sign * prod
    return total


def adjugate(h) -> np.ndarray:
    """Transpose of the cofactor matrix; defined for singular input too."""
    m = as_matrix(h)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    adj = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, j, axis=0), i, axis=1)
            adj[i, j] = (-1) ** (i + j) * det(minor)
    return adj


# ---------------------------------------------------------------- sampling

ENSEMBLE_KINDS = ("hilbert-schmidt", "pure", "product-pure", "separable-mixture", "rank-deficient")


@dataclass(frozen=True)
class EnsembleSpec:
    """``param`` is the term count for separable-mixture and the rank for
    rank-deficient; other kinds ignore it."""

    kind: str
    seed: int
    param: int | None = None

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise InvalidSpec(f"unknown ensemble kind {self.kind!r}")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must be an unsigned 64-bit integer")
        if self.kind == "separable-mixture" and (self.param or 0) < 1:
            raise InvalidSpec("separable-mixture needs a positive number of terms")
        if self.kind == "rank-deficient" and not 1 <= (self.param or 0) <= 4:
            raise InvalidSpec("rank-deficient needs a rank between 1 and 4")


def rng_for(seed: int, index: int, stream: int | None = None) -> np.random.Generator:
    """Generator for sample ``index``; ``stream`` selects an auxiliary family."""
    key = (index,) if stream is None else (stream, index)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _projector(v):
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def _product_pure(rng):
    e = _ginibre(rng, 2, 1)[:, 0]
    f = _ginibre(rng, 2, 1)[:, 0]
    return np.kron(_projector(e), _projector(f))


def _draw(spec: EnsembleSpec, rng) -> np.ndarray:
    if spec.kind in ("hilbert-schmidt", "rank-deficient"):
        a = _ginibre(rng, 4, 4 if spec.kind == "hilbert-schmidt" else spec.param)
        m = a @ a.conj().T
        return m / np.trace(m).real
    if spec.kind == "pure":
        return _projector(_ginibre(rng, 4, 1)[:, 0])
    if spec.kind == "product-pure":
        return _product_pure(rng)
    weights = rng.dirichlet(np.ones(spec.param))
    return sum(w * _product_pure(rng) for w in weights)


def sample_one(spec: EnsembleSpec, index: int) -> DensityMatrix:
    return DensityMatrix(_draw(spec, rng_for(spec.seed, index)))


def sample(spec: EnsembleSpec, count: int, start: int = 0) -> list[DensityMatrix]:
    if count < 1:
        raise InvalidSpec("count must be at least 1")
    return [sample_one(spec, i) for i in range(start, start + count)]


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal(4)
    a, b, c, d = x / np.linalg.norm(x)
    alpha, beta = a + 1j * b, c + 1j * d
    return np.array([[alpha, -np.conj(beta)], [beta, np.conj(alpha)]])


def sample_local_unitary(seed: int, index: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Haar-random pair (U, V) in SU(2) x SU(2)."""
    rng = rng_for(seed, index)
    return haar_su2(rng), haar_su2(rng)


def apply_local_unitary(rho, uv: Sequence[np.ndarray]) -> DensityMatrix:
    w = np.kron(uv[0], uv[1])
    return DensityMatrix(w @ as_matrix(rho) @ w.conj().T)


# ---------------------------------------------------------------- fixtures

def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(I4 / 4)


def bell_state() -> DensityMatrix:
    """Projector onto (|00> + |11>)/sqrt(2)."""
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return DensityMatrix(np.outer(v, v))


def werner_state(w: float) -> DensityMatrix:
    return DensityMatrix(w * bell_state().mat + (1 - w) * I4 / 4)
