import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renyi_uncertainty import DomainError, NLevelState, ValidationError, dft, idft, nlevel_probs, p_norm
from renyi_uncertainty.bounds import verify_nlevel
from renyi_uncertainty.entropy import ProbVec, renyi_entropy
from renyi_uncertainty.nlevel import dft_matrix, dft_norm_constant


def random_state(rng, n):
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return NLevelState(a / np.linalg.norm(a))


@pytest.mark.parametrize("n", [2, 3, 5, 8, 17, 64])
def test_fast_transform_matches_dense_matrix(rng, n):
    s = random_state(rng, n)
    assert np.max(np.abs(dft(s).amps - dft_matrix(n) @ s.amps)) < 1e-12
    assert np.max(np.abs(idft(dft(s)).amps - s.amps)) < 1e-12


def test_matrix_is_unitary():
    f = dft_matrix(12)
    assert np.allclose(f @ f.conj().T, np.eye(12), atol=1e-13)


def test_zero_based_indices_give_same_probabilities(rng):
    n = 9
    s = random_state(rng, n)
    k = np.arange(n)
    zero_based = np.exp(2j * math.pi * np.outer(k, k) / n) / math.sqrt(n) @ s.amps
    one_based = nlevel_probs(dft(s)).probs
    # label k = N is frequency 0 mod N: a cyclic relabelling, nothing more
    assert np.allclose(np.roll(np.abs(zero_based) ** 2, -1), one_based, atol=1e-14)
    for a in (0.7, 1.0, 3.0):
        assert float(renyi_entropy(np.abs(zero_based) ** 2, a)) == pytest.approx(
            float(renyi_entropy(one_based, a)), abs=1e-13)


def test_probability_labels_start_at_one():
    assert list(nlevel_probs(NLevelState.uniform(3)).labels) == [1, 2, 3]


def test_state_validation():
    with pytest.raises(ValidationError):
        NLevelState([1.0])
    with pytest.raises(ValidationError):
        NLevelState([1.0, 1.0])
    with pytest.raises(ValidationError):
        idft(NLevelState.uniform(4))


def test_momentum_input_is_inverted(rng):
    s = random_state(rng, 6)
    t = dft(s)
    assert dft(t).basis == "position_like"
    assert np.allclose(dft(t).amps, s.amps, atol=1e-13)


def test_composite_system_is_additive(rng):
    for n, m in ((2, 3), (4, 4), (3, 8)):
        a, b = random_state(rng, n), random_state(rng, m)
        joint = NLevelState(np.kron(a.amps, b.amps))
        for alpha in (0.7, 1.0, 2.0):
            lhs_joint = verify_nlevel(joint, alpha)
            ra, rb = verify_nlevel(a, alpha), verify_nlevel(b, alpha)
            # the 2-D DFT on Z_N x Z_M is the product of the factor transforms
            pa, pb = nlevel_probs(dft(a)), nlevel_probs(dft(b))
            pq = ProbVec.product(pa, pb)
            qa = ProbVec.product(nlevel_probs(a), nlevel_probs(b))
            joint_sum = float(renyi_entropy(pq, alpha)) + float(renyi_entropy(qa, lhs_joint.params["beta"]))
            assert joint_sum == pytest.approx(ra.lhs + rb.lhs, abs=1e-10)
            assert math.log(n * m) == pytest.approx(ra.rhs + rb.rhs, abs=1e-14)


def test_p_norm():
    assert p_norm([3, 4], 2) == pytest.approx(5.0)
    assert p_norm([3, -4], math.inf) == 4.0
    assert p_norm([0, 0], 3) == 0.0
    with pytest.raises(DomainError):
        p_norm([1, 2], 0.5)


@settings(max_examples=50)
@given(st.integers(2, 40), st.sampled_from([2.0, 3.0, 4.0, 10.0]), st.integers(0, 2 ** 32 - 1))
def test_norm_inequality(n, p, seed):
    rng = np.random.default_rng(seed)
    s = random_state(rng, n)
    q = p / (p - 1)
    slack = dft_norm_constant(n, p) * p_norm(s.amps, q) - p_norm(dft(s).amps, p)
    assert slack >= -1e-12


def test_norm_constant_domain():
    assert dft_norm_constant(8, 2) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        dft_norm_constant(8, 1.5)
