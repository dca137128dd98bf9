import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from twoqubit import qstate
from twoqubit.invariants import (
    InvariantVector,
    compute_invariants,
    det_pt_direct,
    det_pt_via_invariants,
    i14_contraction,
    levi_civita_tensor,
    state_invariants,
)
from twoqubit.qstate import EnsembleSpec, MakhlinCoordinates, sample
from twoqubit.verify import invariant_deviation

finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)
vec3 = arrays(float, 3, elements=finite)
mat3 = arrays(float, (3, 3), elements=finite)

ZERO = MakhlinCoordinates(np.zeros(3), np.zeros(3), np.zeros((3, 3)))
BELL = MakhlinCoordinates(np.zeros(3), np.zeros(3), np.diag([0.25, -0.25, 0.25]))
PRODUCT = MakhlinCoordinates([0, 0, 0.5], [0, 0, 0.5], np.diag([0, 0, 0.25]))


def levi(i, j, k):
    return np.sign(np.linalg.det(np.eye(3)[[i, j, k]])) if len({i, j, k}) == 3 else 0


def i14_naive(s, p, b):
    total = 0.0
    for i, j, k, l, m, n in itertools.product(range(3), repeat=6):
        total += levi(i, j, k) * levi(l, m, n) * s[i] * p[l] * b[j, m] * b[k, n]
    return total


def cofactor(b):
    return np.linalg.det(b) * np.linalg.inv(b).T


def test_levi_civita():
    e = levi_civita_tensor()
    for idx in itertools.product(range(3), repeat=3):
        assert e[idx] == levi(*idx)


def test_zero():
    v = compute_invariants(ZERO)
    assert not v.as_array().any()
    assert det_pt_via_invariants(v) == 1 / 256


def test_bell():
    v = compute_invariants(BELL)
    assert v.I1 == pytest.approx(-1 / 64, abs=1e-16)
    assert v.I2 == pytest.approx(3 / 16, abs=1e-16)
    assert v.I3 == pytest.approx(3 / 256, abs=1e-16)
    assert v.I4 == v.I5 == v.I7 == v.I8 == v.I12 == v.I14 == 0
    assert det_pt_via_invariants(v) == pytest.approx(-1 / 16, abs=1e-16)


def test_product_state():
    v = compute_invariants(PRODUCT)
    expected = dict(I1=0, I2=1 / 16, I3=1 / 256, I4=1 / 4, I5=1 / 64, I7=1 / 4, I8=1 / 64,
                    I12=1 / 16, I14=0)
    for name, value in expected.items():
        assert getattr(v, name) == pytest.approx(value, abs=1e-16), name
    assert det_pt_via_invariants(v) == pytest.approx(0, abs=1e-16)


def test_i5_uses_row_vector():
    s = np.array([1.0, 0, 0])
    b = np.zeros((3, 3))
    b[0, 1] = 2.0  # s b = (0, 2, 0), b s = 0
    v = compute_invariants(MakhlinCoordinates(s, np.zeros(3), b))
    assert v.I5 == 4
    v = compute_invariants(MakhlinCoordinates(np.zeros(3), [0, 1.0, 0], b))
    assert v.I8 == 4  # b p = (2, 0, 0)


@given(vec3, vec3, mat3)
def test_i14_expansion_matches_naive(s, p, b):
    assert i14_contraction(s, p, b) == pytest.approx(i14_naive(s, p, b), abs=1e-12)


def test_i14_is_twice_cofactor_form():
    rng = np.random.default_rng(1)
    for _ in range(20):
        s, p, b = rng.standard_normal(3), rng.standard_normal(3), rng.standard_normal((3, 3))
        assert i14_contraction(s, p, b) == pytest.approx(2 * s @ cofactor(b) @ p, rel=1e-10)


@given(vec3, vec3, mat3)
def test_swap_covariance(s, p, b):
    c = MakhlinCoordinates(s, p, b)
    v, w = compute_invariants(c), compute_invariants(c.swapped())
    assert (v.I4, v.I5) == pytest.approx((w.I7, w.I8), abs=1e-12)
    for name in ("I1", "I2", "I3", "I12", "I14"):
        assert getattr(v, name) == pytest.approx(getattr(w, name), abs=1e-12)


def test_swap_on_states():
    swap = np.eye(4)[[0, 2, 1, 3]]
    for rho in sample(EnsembleSpec("hilbert-schmidt", 41), 50):
        swapped = swap @ rho.mat @ swap
        c = qstate.bloch_decompose(rho).swapped()
        d = qstate.bloch_decompose(swapped)
        np.testing.assert_allclose(c.beta, d.beta, atol=1e-15)
        np.testing.assert_allclose(c.s, d.s, atol=1e-15)


def werner_det_pt(w):
    return (1 + w) ** 3 * (1 - 3 * w) / 256


@pytest.mark.parametrize("w", [0.0, 0.1, 1 / 3, 0.5, 0.8, 1.0])
def test_werner(w):
    rho = qstate.werner_state(w)
    # oracle: eigenvalues of the partially transposed Werner state
    lam = np.linalg.eigvalsh(qstate.partial_transpose(rho))
    assert np.prod(lam) == pytest.approx(werner_det_pt(w), abs=1e-16)
    assert det_pt_direct(rho) == pytest.approx(werner_det_pt(w), abs=1e-16)
    assert det_pt_via_invariants(state_invariants(rho)) == pytest.approx(werner_det_pt(w), abs=1e-16)


def test_werner_endpoints():
    assert werner_det_pt(1) == -1 / 16
    assert werner_det_pt(1 / 3) == 0
    assert det_pt_direct(np.eye(4) / 4) == pytest.approx(1 / 256, abs=1e-18)


@pytest.mark.parametrize("kind,param", [("hilbert-schmidt", None), ("rank-deficient", 1),
                                        ("rank-deficient", 2), ("rank-deficient", 3),
                                        ("separable-mixture", 4), ("pure", None),
                                        ("product-pure", None)])
def test_formula_equivalence(kind, param):
    for rho in sample(EnsembleSpec(kind, 77, param), 300):
        direct = det_pt_direct(rho)
        assert direct == pytest.approx(np.linalg.det(qstate.partial_transpose(rho)).real, abs=1e-15)
        assert abs(direct - det_pt_via_invariants(state_invariants(rho))) <= 1e-12


def test_nonnegative_squares():
    for kind, param in [("hilbert-schmidt", None), ("separable-mixture", 3), ("pure", None)]:
        for rho in sample(EnsembleSpec(kind, 5, param), 200):
            v = state_invariants(rho)
            assert min(v.I2, v.I3, v.I4, v.I5, v.I7, v.I8) >= 0


def test_local_unitary_invariance():
    worst = 0.0
    for i, rho in enumerate(sample(EnsembleSpec("hilbert-schmidt", 13), 1000)):
        uv = qstate.sample_local_unitary(99, i)
        after = qstate.apply_local_unitary(rho, uv)
        worst = max(worst, invariant_deviation(state_invariants(rho), state_invariants(after)))
    assert worst <= 1.0


def test_non_local_unitary_breaks_invariance():
    # a generic global unitary changes the invariants (sanity check of the test above)
    rho = sample(EnsembleSpec("hilbert-schmidt", 13), 1)[0]
    rng = np.random.default_rng(0)
    from conftest import random_unitary

    u = random_unitary(rng)
    moved = u @ rho.mat @ u.conj().T
    assert invariant_deviation(state_invariants(rho), state_invariants(moved)) > 1e3


def test_vector_helpers():
    v = InvariantVector(*range(9))
    assert list(v.as_dict()) == ["I1", "I2", "I3", "I4", "I5", "I7", "I8", "I12", "I14"]
    np.testing.assert_array_equal(v.as_array(), np.arange(9))
