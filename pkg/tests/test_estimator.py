import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from steroid import SteroidDecomposition, check_symmetric_tensor
from steroid.exceptions import ShapeError, SymmetryError

from conftest import planted, random_symmetric


def test_params_round_trip():
    est = SteroidDecomposition(tau=1e-8, head="eigenproduct")
    params = est.get_params()
    assert params["tau"] == 1e-8 and params["head"] == "eigenproduct"
    est.set_params(max_tail_iters=3)
    assert clone(est).get_params()["max_tail_iters"] == 3


def test_fit_example1(example1):
    est = SteroidDecomposition().fit(example1)
    assert est.coef_.shape == (4,)
    assert est.components_.shape == (4, 2)
    assert est.residual_norm_ <= 1e-10
    assert est.converged_ and est.n_iter_ == 0
    assert est.n_features_in_ == 2 and est.order_ == 3
    np.testing.assert_allclose(est.reconstruct(), example1, atol=1e-10)


def test_transform_recovers_coefficients(example1):
    est = SteroidDecomposition().fit(example1)
    np.testing.assert_allclose(est.transform(example1), est.coef_, rtol=1e-8)
    np.testing.assert_allclose(est.fit_transform(example1), est.coef_, rtol=1e-8)


def test_transform_other_tensor_in_span(rng):
    t = random_symmetric(2, 3, rng)
    est = SteroidDecomposition().fit(t)
    other = random_symmetric(2, 3, rng)
    # four pure powers span all 2x2x2 symmetric tensors
    np.testing.assert_allclose(est.inverse_transform(est.transform(other)), other, atol=1e-10)
    assert est.score(other) == pytest.approx(0.0, abs=1e-10)


def test_not_fitted(example1):
    with pytest.raises(NotFittedError):
        SteroidDecomposition().transform(example1)


def test_shape_checks(example1, rng):
    est = SteroidDecomposition().fit(example1)
    with pytest.raises(ShapeError):
        est.transform(random_symmetric(3, 3, rng))
    with pytest.raises(ShapeError):
        est.inverse_transform(np.zeros(2))


@pytest.mark.parametrize("kwargs", [{"tau": 0}, {"head": "x"}, {"max_tail_iters": -1}])
def test_invalid_params(example1, kwargs):
    with pytest.raises(ValueError):
        SteroidDecomposition(**kwargs).fit(example1)


def test_validation_helper():
    with pytest.raises(ValueError):
        check_symmetric_tensor(np.array([[np.nan, 0], [0, 1.0]]))
    with pytest.raises(SymmetryError):
        check_symmetric_tensor(np.array([[0, 1.0], [0, 0]]))
    with pytest.raises(ShapeError):
        check_symmetric_tensor(np.zeros((2, 3)))
    out = check_symmetric_tensor([[1, 2], [2, 1]])
    assert out.dtype == np.float64


def test_planted_recovery():
    t, lams, vs = planted(3, 4, 2, np.random.default_rng(8))
    est = SteroidDecomposition().fit(t)
    assert est.residual_norm_ <= 1e-8 * np.linalg.norm(t)
