"""Separability and the geometry of the boundary of the separable set.

For two qubits a state is separable exactly when det(rho^Gamma) >= 0, and
the boundary of the separable set splits into the part of det(rho) = 0
lying where rho^Gamma >= 0 and the part of det(rho^Gamma) = 0 lying where
rho >= 0. The gradient of det on the trace-one affine chart is the
traceless part of the adjugate; it vanishes exactly when the matrix has
two or more zero eigenvalues.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import AuditFailure, NoConvergence, NotAState, NotOnHypersurface, SameSign
from .invariants import det_pt_direct
from .qstate import (
    ZERO_TOL,
    DensityMatrix,
    EnsembleSpec,
    adjugate,
    as_matrix,
    det,
    eigensystem,
    maximally_mixed,
    partial_transpose,
    rng_for,
    sample_one,
)

CLASSIFY_TOL = 1e-9
ROOT_TOL = 1e-12
GRADIENT_TOL = 1e-9
INTERIOR_DELTA = 1e-3
MAX_BISECTIONS = 60


class Tag(str, enum.Enum):
    NOT_A_STATE = "NotAState"
    INTERIOR_SEPARABLE = "InteriorSeparable"
    INTERIOR_ENTANGLED = "InteriorEntangled"
    BOUNDARY_D = "BoundaryD"
    BOUNDARY_DGAMMA = "BoundaryDGamma"
    BOUNDARY_BOTH = "BoundaryBoth"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Separability:
    separable: bool
    margin: float
    min_eig_pt: float
    tol: float

    @property
    def ppt(self) -> bool:
        return self.min_eig_pt >= -self.tol

    @property
    def agrees(self) -> bool:
        """Whether the determinant test and the PPT eigenvalue test concur."""
        return self.separable == self.ppt

    def __bool__(self):
        return self.separable


def is_separable(rho, tol: float = CLASSIFY_TOL) -> Separability:
    m = as_matrix(rho)
    lam = eigensystem(m).min
    if lam < -tol:
        raise NotAState(f"minimum eigenvalue {lam:.3g} is negative", lam)
    margin = det_pt_direct(m)
    return Separability(margin >= -tol, margin, eigensystem(partial_transpose(m)).min, tol)


@dataclass(frozen=True)
class BoundaryClass:
    tag: Tag
    on_boundary_M: bool
    min_eig: float
    min_eig_pt: float
    det: float
    det_pt: float

    @property
    def separable(self) -> bool:
        return self.tag in (Tag.INTERIOR_SEPARABLE, Tag.BOUNDARY_D,
                            Tag.BOUNDARY_DGAMMA, Tag.BOUNDARY_BOTH)

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "on_boundary_M": self.on_boundary_M,
                "min_eig": self.min_eig, "min_eig_pt": self.min_eig_pt,
                "det": self.det, "det_pt": self.det_pt}


def classify(rho, tol: float = CLASSIFY_TOL) -> BoundaryClass:
    m = as_matrix(rho)
    pt = partial_transpose(m)
    lam = eigensystem(m).min
    mu = eigensystem(pt).min
    d = det(m).real
    d_pt = det(pt).real
    on_d = abs(d) <= tol
    on_dg = abs(d_pt) <= tol

    if lam < -tol:
        tag = Tag.NOT_A_STATE
    elif d_pt < -tol or mu < -tol:
        tag = Tag.INTERIOR_ENTANGLED
    elif on_d and on_dg:
        tag = Tag.BOUNDARY_BOTH
    elif on_d:
        tag = Tag.BOUNDARY_D
    elif on_dg:
        tag = Tag.BOUNDARY_DGAMMA
    else:
        tag = Tag.INTERIOR_SEPARABLE
    on_m = tag is not Tag.NOT_A_STATE and on_d
    return BoundaryClass(tag, on_m, lam, mu, d, d_pt)


def _segment(rho_out, rho_in, lam):
    return lam * rho_out + (1 - lam) * rho_in


def boundary_parameter(rho_out, rho_in=None, tol: float = ROOT_TOL,
                       max_iter: int = MAX_BISECTIONS) -> float:
    """Bisect the segment from ``rho_in`` (separable) to ``rho_out``
    (entangled) for the sign change of det(rho^Gamma); returns the weight
    on ``rho_out``."""
    a = as_matrix(rho_out)
    b = as_matrix(maximally_mixed() if rho_in is None else rho_in)
    f_lo = det_pt_direct(b)
    f_hi = det_pt_direct(a)
    if not (f_lo > 0 > f_hi):
        raise SameSign(f"endpoint margins {f_lo:.3g} (inside) and {f_hi:.3g} (outside) "
                       "do not bracket the boundary")
    lo, hi = 0.0, 1.0
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if det_pt_direct(_segment(a, b, mid)) >= 0:
            lo = mid
        else:
            hi = mid
    lam = (lo + hi) / 2
    residual = det_pt_direct(_segment(a, b, lam))
    if abs(residual) > tol:
        raise NoConvergence(f"bisection ended with |det rho^Gamma| = {abs(residual):.3g}")
    return lam


def boundary_point(rho_out, rho_in=None, tol: float = ROOT_TOL) -> DensityMatrix:
    a = as_matrix(rho_out)
    b = as_matrix(maximally_mixed() if rho_in is None else rho_in)
    lam = boundary_parameter(a, b, tol)
    return DensityMatrix(_segment(a, b, lam))


@dataclass(frozen=True)
class HypersurfacePoint:
    rho: DensityMatrix
    which: str
    gradient: np.ndarray
    singular: bool
    zero_count: int

    @property
    def gradient_norm(self) -> float:
        return float(np.linalg.norm(self.gradient))

    @property
    def proposition_holds(self) -> bool:
        """Singular exactly when at least two eigenvalues vanish."""
        return self.singular == (self.zero_count >= 2)


def det_gradient(h) -> np.ndarray:
    """Gradient of det on trace-one hermitian matrices (traceless adjugate)."""
    adj = adjugate(h)
    n = adj.shape[0]
    g = adj - np.trace(adj) / n * np.eye(n)
    return (g + g.conj().T) / 2


def analyze_hypersurface_point(h, which: str = "D", tol: float = GRADIENT_TOL,
                               zero_tol: float = ZERO_TOL) -> HypersurfacePoint:
    """Smooth/singular verdict at a point of det(h) = 0 (``which="D"``) or
    det(h^Gamma) = 0 (``which="DGamma"``)."""
    m = as_matrix(h)
    if which == "D":
        target = m
    elif which == "DGamma":
        target = partial_transpose(m)
    else:
        raise ValueError("which must be 'D' or 'DGamma'")
    d = det(target)
    if abs(d) > tol:
        raise NotOnHypersurface(f"|det| = {abs(d):.3g} exceeds {tol:.3g}")
    grad = det_gradient(target)
    if which == "DGamma":
        # Gamma is a self-adjoint isometry for tr(A^+ B), so the gradient pulls back through it
        grad = partial_transpose(grad)
    singular = float(np.linalg.norm(grad)) <= tol
    zeros = eigensystem(target, zero_tol=zero_tol).zero_count
    return HypersurfacePoint(DensityMatrix(m) if m.shape == (4, 4) else m,
                             which, grad, singular, zeros)


def non_state_on_D() -> np.ndarray:
    """Trace-one hermitian matrix with det = 0 and a negative eigenvalue."""
    return np.diag([0.0, 0.5, 1.0, -0.5]).astype(complex)


# ---------------------------------------------------------- product vectors

@dataclass(frozen=True)
class ProductVector:
    e: np.ndarray
    f: np.ndarray
    vector: np.ndarray
    residual: float
    degenerate: bool = False


def _factor_rank_one(v: np.ndarray, degenerate: bool = False) -> ProductVector:
    v = v / np.linalg.norm(v)
    u, _, vh = np.linalg.svd(v.reshape(2, 2))
    e, f = u[:, 0], vh[0, :]
    # fix the free phase so the factorization matches v as closely as possible
    phase = np.vdot(np.kron(e, f), v)
    e = e * phase / abs(phase) if abs(phase) > 0 else e
    return ProductVector(e, f, v, float(np.linalg.norm(v - np.kron(e, f))), degenerate)


def _stable_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of a x^2 + b x + c with |a| > 0, larger-branch root first."""
    sq = np.sqrt(complex(b * b - 4 * a * c))
    if (np.conj(b) * sq).real < 0:
        sq = -sq
    q = -(b + sq) / 2
    r1 = q / a
    r2 = c / q if q != 0 else r1
    return r1, r2


def product_vectors_in_span(v1, v2, scale_tol: float = 1e-14) -> list[ProductVector]:
    """All product vectors (up to scale) in span{v1, v2}; one or two of them,
    or a single representative when every vector in the span is a product."""
    v1 = np.asarray(v1, dtype=complex)
    v2 = np.asarray(v2, dtype=complex)
    basis = np.stack([v1, v2], axis=1)
    if v1.shape != (4,) or v2.shape != (4,):
        raise ValueError("basis vectors must lie in C^2 (x) C^2")
    if np.max(np.abs(basis.conj().T @ basis - np.eye(2))) > 1e-10:
        raise ValueError("basis must be orthonormal")
    m1, m2 = v1.reshape(2, 2), v2.reshape(2, 2)
    a = m1[0, 0] * m1[1, 1] - m1[0, 1] * m1[1, 0]
    c = m2[0, 0] * m2[1, 1] - m2[0, 1] * m2[1, 0]
    b = (m1[0, 0] * m2[1, 1] + m2[0, 0] * m1[1, 1]
         - m1[0, 1] * m2[1, 0] - m2[0, 1] * m1[1, 0])
    if max(abs(a), abs(b), abs(c)) <= scale_tol:
        return [_factor_rank_one(v1, degenerate=True)]
    if max(abs(a), abs(c)) <= scale_tol:
        pairs = [(1, 0), (0, 1)]
    elif abs(a) >= abs(c):
        pairs = [(r, 1) for r in _stable_roots(a, b, c)]
    else:
        pairs = [(1, r) for r in _stable_roots(c, b, a)]
    return [_factor_rank_one(al * v1 + be * v2) for al, be in pairs]


def kernel_product_vector(v1, v2) -> ProductVector:
    """A product vector e (x) f inside span{v1, v2}.

    Matricizing a vector of C^2 (x) C^2 (row index on the first qubit)
    turns "is a product" into "has rank one", so the product vectors of a
    pencil are the roots of the binary quadratic det(alpha M1 + beta M2).
    """
    return product_vectors_in_span(v1, v2)[0]


def proof_identity_gap(rho, e, f) -> float:
    """|<e,f|rho^Gamma|e,f> - <e,f*|rho|e,f*>|."""
    m = as_matrix(rho)
    ef = np.kron(e, f)
    efc = np.kron(e, np.conj(f))
    return float(abs(np.vdot(ef, partial_transpose(m) @ ef) - np.vdot(efc, m @ efc)))


# ----------------------------------------------------------- smoothness audit

@dataclass(frozen=True)
class AuditRecord:
    index: int
    tag: str
    det: float
    det_pt: float
    zero_count: int
    min_eig: float
    gradient_norm: float
    failure: str | None = None

    def to_json(self) -> dict:
        return {"index": self.index, "tag": self.tag, "det": self.det,
                "det_pt": self.det_pt, "zero_count": self.zero_count}


@dataclass
class AuditReport:
    records: list[AuditRecord] = field(default_factory=list)
    identity_max_deviation: float = 0.0
    candidates_drawn: int = 0

    @property
    def failures(self) -> list[AuditRecord]:
        return [r for r in self.records if r.failure]

    @property
    def ok(self) -> bool:
        return not self.failures


def _audit_one(seed: int, index: int, delta: float, tol: float,
               zero_tol: float, grad_tol: float) -> AuditRecord | None:
    rho = sample_one(EnsembleSpec("hilbert-schmidt", seed), index).mat
    if eigensystem(rho).min <= delta or det_pt_direct(rho) >= 0:
        return None
    star = boundary_point(rho, tol=tol).mat
    cls = classify(star, tol=CLASSIFY_TOL)
    zeros = eigensystem(partial_transpose(star), zero_tol=zero_tol).zero_count
    point = analyze_hypersurface_point(star, "DGamma", tol=grad_tol, zero_tol=zero_tol)
    failure = None
    if not cls.min_eig > 0:
        failure = f"boundary point left the interior (min eig {cls.min_eig:.3g})"
    elif zeros != 1:
        failure = f"rho*^Gamma has {zeros} zero eigenvalues"
    elif point.singular:
        failure = f"gradient vanishes (norm {point.gradient_norm:.3g})"
    return AuditRecord(index, cls.tag.value, cls.det, cls.det_pt, zeros,
                       cls.min_eig, point.gradient_norm, failure)


def proof_identity_trials(seed: int, count: int) -> Iterator[float]:
    for j in range(count):
        rng = rng_for(seed, j, stream=1)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        e = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        f = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        yield proof_identity_gap(rho, e / np.linalg.norm(e), f / np.linalg.norm(f))


def smoothness_audit(n_samples: int, seed: int, tol: float = ROOT_TOL,
                     delta: float = INTERIOR_DELTA, zero_tol: float = ZERO_TOL,
                     grad_tol: float = GRADIENT_TOL, identity_trials: int | None = None,
                     threads: int = 1, raise_on_failure: bool = True) -> AuditReport:
    """Check that boundary points of the separable set found strictly
    inside the state space are smooth points of det(rho^Gamma) = 0.

    Candidates are Hilbert-Schmidt samples drawn at stream indices
    0, 1, 2, ...; those that are entangled with minimum eigenvalue above
    ``delta`` are pushed to the boundary along the segment towards I/4.
    The selection depends only on the index, so ``threads`` changes speed
    but never the report.
    """
    report = AuditReport()
    batch = max(4 * n_samples, 64)
    start = 0
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while len(report.records) < n_samples:
            idx = range(start, start + batch)
            results = pool.map(lambda i: _audit_one(seed, i, delta, tol, zero_tol, grad_tol), idx)
            for i, rec in zip(idx, results):
                if len(report.records) >= n_samples:
                    break
                report.candidates_drawn = i + 1
                if rec is not None:
                    report.records.append(rec)
            start += batch
    trials = n_samples if identity_trials is None else identity_trials
    report.identity_max_deviation = max(proof_identity_trials(seed, trials), default=0.0)
    if raise_on_failure:
        if report.failures:
            bad = report.failures[0]
            raise AuditFailure(bad.failure, bad.index)
        if report.identity_max_deviation > 1e-12:
            raise AuditFailure(
                f"product-vector identity off by {report.identity_max_deviation:.3g}", -1)
    return report
