"""The scikit-learn-protocol regressor: params, fit/predict/score, ecosystem fit.

scikit-learn itself is imported only here, to prove interoperability; the
package never depends on it at runtime.
"""

import pytest

from boltnet.errors import NotFittedError, ValidationError
from boltnet.estimator import FeedForwardRegressor


def toy_data(n=12, seed=0):
    import random

    rng = random.Random(seed)
    X = [[rng.random(), rng.random()] for _ in range(n)]
    y = [[0.3, 0.7] for _ in range(n)]
    return X, y


# ------------------------------------------------------------ parameters

def test_get_params_lists_every_constructor_argument():
    est = FeedForwardRegressor()
    params = est.get_params()
    assert set(params) == {
        "hidden_sizes", "hidden_activation", "output_activation",
        "init_method", "bias_init", "learning_rate", "batch_size",
        "epochs", "huber_delta", "band", "seed",
    }
    assert params["hidden_sizes"] == (6, 3)
    assert params["learning_rate"] == 0.01


def test_params_survive_a_constructor_round_trip():
    est = FeedForwardRegressor(epochs=7, seed=42, hidden_activation="relu")
    again = FeedForwardRegressor(**est.get_params())
    assert again.get_params() == est.get_params()


def test_set_params_returns_self_and_applies():
    est = FeedForwardRegressor()
    assert est.set_params(epochs=3, band=0.1) is est
    assert est.epochs == 3
    assert est.band == 0.1


def test_set_params_rejects_unknown_names():
    with pytest.raises(ValidationError) as err:
        FeedForwardRegressor().set_params(momentum=0.9)
    assert "momentum" in str(err.value)


def test_repr_names_class_and_params():
    text = repr(FeedForwardRegressor(epochs=3))
    assert text.startswith("FeedForwardRegressor(")
    assert "epochs=3" in text


# ------------------------------------------------------------ fit/predict

def test_fit_returns_self_and_sets_state():
    X, y = toy_data()
    est = FeedForwardRegressor(epochs=5)
    assert est.fit(X, y) is est
    assert est.n_features_in_ == 2
    assert est.n_outputs_ == 2
    assert len(est.history_.mean_loss) == 5
    assert len(est.history_.accuracy_pct) == 5
    assert est.history_.elapsed_seconds > 0


def test_predict_shape_matches_inputs():
    X, y = toy_data()
    preds = FeedForwardRegressor(epochs=5).fit(X, y).predict(X[:4])
    assert len(preds) == 4
    assert all(len(row) == 2 for row in preds)
    assert all(isinstance(v, float) for row in preds for v in row)


def test_predict_before_fit_raises():
    with pytest.raises(NotFittedError):
        FeedForwardRegressor().predict([[0.0, 0.0]])


def test_predict_rejects_wrong_feature_width():
    X, y = toy_data()
    est = FeedForwardRegressor(epochs=2).fit(X, y)
    with pytest.raises(ValidationError):
        est.predict([[1.0, 2.0, 3.0]])


def test_fit_rejects_mismatched_lengths():
    X, y = toy_data()
    with pytest.raises(ValidationError):
        FeedForwardRegressor(epochs=2).fit(X, y[:-1])


@pytest.mark.parametrize(
    "bad",
    [
        {"hidden_activation": "tanh"},
        {"output_activation": "relu"},
        {"init_method": "orthogonal"},
        {"bias_init": "ones"},
        {"learning_rate": 0.0},
        {"batch_size": 0},
        {"epochs": 0},
        {"huber_delta": -1.0},
        {"band": 0.0},
        {"hidden_sizes": (6,)},
        {"hidden_sizes": (6, 0)},
    ],
)
def test_invalid_params_surface_at_fit_not_construction(bad):
    X, y = toy_data()
    est = FeedForwardRegressor(**bad)  # construction never validates
    with pytest.raises(ValidationError):
        est.fit(X, y)


def test_unconventional_pairing_warns_during_fit():
    X, y = toy_data()
    with pytest.warns(UserWarning):
        FeedForwardRegressor(
            init_method="xavier", hidden_activation="relu", epochs=1
        ).fit(X, y)


def test_same_seed_reproduces_same_model():
    X, y = toy_data()
    a = FeedForwardRegressor(epochs=20, seed=3).fit(X, y).predict(X)
    b = FeedForwardRegressor(epochs=20, seed=3).fit(X, y).predict(X)
    assert a == b


def test_different_seed_changes_the_model():
    X, y = toy_data()
    a = FeedForwardRegressor(epochs=20, seed=3).fit(X, y).predict(X)
    b = FeedForwardRegressor(epochs=20, seed=4).fit(X, y).predict(X)
    assert a != b


def test_learns_a_constant_target_to_full_band_accuracy():
    X, y = toy_data(n=12)
    est = FeedForwardRegressor(epochs=400, learning_rate=0.1, seed=1)
    est.fit(X, y)
    assert est.score(X, y) == 100.0
    pred = est.predict([[0.5, 0.5]])[0]
    assert pred[0] == pytest.approx(0.3, rel=0.05)
    assert pred[1] == pytest.approx(0.7, rel=0.05)


def test_score_is_a_percentage():
    X, y = toy_data()
    est = FeedForwardRegressor(epochs=2).fit(X, y)
    s = est.score(X, y)
    assert 0.0 <= s <= 100.0


# -------------------------------------------------------- ecosystem fit

def test_sklearn_clone_produces_an_unfitted_copy():
    from sklearn.base import clone

    est = FeedForwardRegressor(epochs=9, seed=5)
    est.fit(*toy_data())
    copy = clone(est)
    assert copy.get_params() == est.get_params()
    assert not hasattr(copy, "network_")


def test_works_inside_a_sklearn_pipeline():
    from sklearn.pipeline import Pipeline
    from sklearn.preprocessing import StandardScaler

    X, y = toy_data()
    pipe = Pipeline(
        [
            ("scale", StandardScaler()),
            ("net", FeedForwardRegressor(epochs=30, seed=2)),
        ]
    )
    pipe.fit(X, y)
    preds = pipe.predict(X)
    assert len(preds) == len(X)
    assert 0.0 <= pipe.score(X, y) <= 100.0


def test_pipeline_set_params_reaches_nested_estimator():
    from sklearn.pipeline import Pipeline
    from sklearn.preprocessing import StandardScaler

    pipe = Pipeline(
        [("scale", StandardScaler()), ("net", FeedForwardRegressor())]
    )
    pipe.set_params(net__epochs=11)
    assert pipe.named_steps["net"].epochs == 11
