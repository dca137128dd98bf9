"""Named end-to-end checks backing ``twoqubit verify all``.

Each check returns a :class:`CheckResult`; nothing here raises on a
failed comparison. ``scale`` multiplies every sample count, so ``0.1`` gives
a quick smoke run; the default of 1 runs the full sample counts.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry, invariants, molien, qstate, series

# Taylor coefficients of the single-graded series, degrees 0..23.
REFERENCE_SINGLE_COEFFS = (
    1, 0, 3, 2, 10, 7, 29, 25, 73, 74, 172, 187, 381, 431, 785, 920,
    1539, 1827, 2878, 3441, 5151, 6185, 8887, 10666,
)

# Reference trigraded expansion through total degree 6: {(d1, d2, d3): coefficient}.
REFERENCE_TRIGRADED_TERMS = {
    (0, 0, 0): 1,
    (2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1,
    (0, 0, 3): 1, (1, 1, 1): 1,
    (0, 0, 4): 2, (0, 2, 2): 2, (0, 4, 0): 1, (1, 1, 2): 1,
    (2, 0, 2): 2, (2, 2, 0): 1, (4, 0, 0): 1,
    (0, 0, 5): 1, (0, 2, 3): 1, (1, 1, 3): 2, (1, 3, 1): 1, (2, 0, 3): 1, (3, 1, 1): 1,
    (0, 0, 6): 3, (0, 2, 4): 4, (0, 4, 2): 2, (0, 6, 0): 1, (1, 1, 4): 2,
    (1, 2, 3): 1, (1, 3, 2): 1, (2, 0, 4): 4, (2, 1, 3): 1, (2, 2, 2): 4,
    (2, 4, 0): 1, (3, 1, 2): 1, (4, 0, 2): 2, (4, 2, 0): 1, (6, 0, 0): 1,
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<28} {self.detail} ({self.seconds:.1f}s)"


def _n(count: int, scale: float) -> int:
    return max(1, int(round(count * scale)))


def check_single_series(scale: float = 1.0) -> CheckResult:
    got = series.poincare_series(1, 23).univariate()
    ok = tuple(got) == REFERENCE_SINGLE_COEFFS
    return CheckResult("single-series", ok, f"24 coefficients {'match' if ok else got}")


def check_diagonal_identity(scale: float = 1.0) -> CheckResult:
    b = series.builtin_series()
    common = series.common_diagonal_factor()
    identity = series.diagonal_identity_holds()
    num_q = b.p3_num.substitute_diagonal().exact_divide(common)
    den_q = b.p3_den.substitute_diagonal().expand().exact_divide(common)
    ok = identity and num_q == b.p1_num and den_q == b.p1_den.expand()
    return CheckResult("diagonal-identity", ok,
                       f"cross-multiplication {identity}, quotients match {ok}")


def check_trigraded(scale: float = 1.0) -> CheckResult:
    table = series.poincare_series(3, 6)
    got = {e: c for e, c in table.items()}
    sums = table.degree_sums()
    ok = got == REFERENCE_TRIGRADED_TERMS and tuple(sums) == REFERENCE_SINGLE_COEFFS[:7]
    return CheckResult("trigraded-series", ok, f"{len(got)} terms, degree sums {sums}")


def check_molien(scale: float = 1.0) -> CheckResult:
    report = molien.cross_check(8, lie_max_degree=4, raise_on_mismatch=False)
    ok = (not report.mismatches and len(report.rows) == 165
          and report.lie_checked == 35)
    return CheckResult("molien-oracles", ok,
                       f"{len(report.rows)} multidegrees, {report.lie_checked} Lie-checked, "
                       f"{len(report.mismatches)} mismatches")


def det_formula_deviations(n_hs: int, n_rank: int, n_sep: int, seed: int):
    specs = [
        (qstate.EnsembleSpec("hilbert-schmidt", seed), n_hs),
        (qstate.EnsembleSpec("rank-deficient", seed, 2), n_rank),
        (qstate.EnsembleSpec("separable-mixture", seed, 4), n_sep),
    ]
    for spec, count in specs:
        for i in range(count):
            rho = qstate.sample_one(spec, i)
            direct = invariants.det_pt_direct(rho)
            via = invariants.det_pt_via_invariants(invariants.state_invariants(rho))
            yield spec.kind, i, direct, via


def check_det_formula(scale: float = 1.0, seed: int = 2024) -> CheckResult:
    worst = max(abs(d - v) for _, _, d, v in
                det_formula_deviations(_n(10_000, scale), _n(1000, scale), _n(1000, scale), seed))
    return CheckResult("det-formula", worst <= 1e-12, f"max |direct - formula| = {worst:.2e}")


def invariant_deviation(a: invariants.InvariantVector, b: invariants.InvariantVector) -> float:
    """Largest violation ratio against 1e-10 relative (1e-12 absolute below 1e-6)."""
    worst = 0.0
    for x, y in zip(a.as_array(), b.as_array()):
        ref = max(abs(x), abs(y))
        bound = 1e-12 if ref < 1e-6 else 1e-10 * ref
        worst = max(worst, abs(x - y) / bound)
    return worst


def check_lu_invariance(scale: float = 1.0, seed: int = 11) -> CheckResult:
    spec = qstate.EnsembleSpec("hilbert-schmidt", seed)
    worst = 0.0
    for i in range(_n(1000, scale)):
        rho = qstate.sample_one(spec, i)
        uv = qstate.sample_local_unitary(seed, 10**6 + i)
        before = invariants.state_invariants(rho)
        after = invariants.state_invariants(qstate.apply_local_unitary(rho, uv))
        worst = max(worst, invariant_deviation(before, after))
    return CheckResult("lu-invariance", worst <= 1.0, f"worst deviation / bound = {worst:.2e}")


def check_criterion_agreement(scale: float = 1.0, seed: int = 5) -> CheckResult:
    spec = qstate.EnsembleSpec("hilbert-schmidt", seed)
    disagree = 0
    n = _n(10_000, scale)
    for i in range(n):
        verdict = geometry.is_separable(qstate.sample_one(spec, i), tol=1e-10)
        disagree += not verdict.agrees
    w = geometry.boundary_parameter(qstate.bell_state())
    ok = disagree == 0 and abs(w - 1 / 3) <= 1e-10
    return CheckResult("criterion-agreement", ok,
                       f"{disagree}/{n} disagreements, Werner w* - 1/3 = {w - 1 / 3:.1e}")


def haar_unitary(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


SINGULARITY_FIXTURES = (
    (0.0, 0.2, 0.3, 0.5),
    (0.0, 0.0, 0.4, 0.6),
    (0.0, 0.0, 0.0, 1.0),
)


def singularity_points(conjugates: int, seed: int = 3):
    """Diagonal fixtures with 1, 2, 3 zero eigenvalues plus unitary conjugates."""
    for k, diag in enumerate(SINGULARITY_FIXTURES):
        base = np.diag(diag).astype(complex)
        zeros = sum(1 for x in diag if x == 0)
        yield zeros, base
        for j in range(conjugates):
            u = haar_unitary(qstate.rng_for(seed, j, stream=k))
            yield zeros, u @ base @ u.conj().T


def check_singularity(scale: float = 1.0) -> CheckResult:
    wrong = total = 0
    for zeros, h in singularity_points(_n(100, scale)):
        point = geometry.analyze_hypersurface_point(h, "D", tol=1e-9)
        total += 1
        wrong += point.singular != (zeros >= 2) or not point.proposition_holds
    return CheckResult("singularity-equivalence", wrong == 0,
                       f"{wrong}/{total} misclassified")


def check_smoothness(scale: float = 1.0, seed: int = 7) -> CheckResult:
    report = geometry.smoothness_audit(_n(1000, scale), seed, raise_on_failure=False)
    ok = report.ok and report.identity_max_deviation <= 1e-12
    return CheckResult("smoothness-audit", ok,
                       f"{len(report.records)} boundary points, {len(report.failures)} failures")


def structured_subspaces():
    e = np.eye(4, dtype=complex)
    bell = (e[0] + e[3]) / np.sqrt(2)
    anti = (e[0] - e[3]) / np.sqrt(2)
    psi = (e[1] + e[2]) / np.sqrt(2)
    return [(e[1], e[2]), (e[0], e[3]), (bell, e[1]), (bell, anti), (e[0], e[1]),
            (psi, e[0]), (bell, psi)]


def random_subspace(rng: np.random.Generator):
    z = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    q, _ = np.linalg.qr(z)
    return q[:, 0], q[:, 1]


def check_product_vectors(scale: float = 1.0, seed: int = 13) -> CheckResult:
    subspaces = structured_subspaces()
    subspaces += [random_subspace(qstate.rng_for(seed, j))
                  for j in range(_n(100, scale) - len(subspaces))]
    worst = max(geometry.kernel_product_vector(a, b).residual for a, b in subspaces)
    gap = max(geometry.proof_identity_trials(seed, _n(1000, scale)))
    ok = worst <= 1e-10 and gap <= 1e-12
    return CheckResult("product-vectors", ok,
                       f"max residual {worst:.1e}, identity gap {gap:.1e}")


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "single-series": check_single_series,
    "diagonal-identity": check_diagonal_identity,
    "trigraded-series": check_trigraded,
    "molien-oracles": check_molien,
    "det-formula": check_det_formula,
    "lu-invariance": check_lu_invariance,
    "criterion-agreement": check_criterion_agreement,
    "singularity-equivalence": check_singularity,
    "smoothness-audit": check_smoothness,
    "product-vectors": check_product_vectors,
}


def run_all(scale: float = 1.0) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS.items():
        t0 = time.perf_counter()
        res = fn(scale=scale)
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
