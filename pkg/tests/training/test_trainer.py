import math

import numpy as np
import pytest
from attrs import evolve

from sourcedet_mamba.autodiff import Tensor
from sourcedet_mamba.errors import NumericError, TrainingError
from sourcedet_mamba.hypergraph import Hypergraph, build_incidence, build_operators
from sourcedet_mamba.models import ModelConfig
from sourcedet_mamba.training import (
    LOG_COLUMNS,
    OperatorCache,
    SourceDetMamba,
    TrainingSample,
    build_samples,
    load_dataset,
    train,
    validation_f_score,
)


@pytest.fixture
def dataset(dataset_dir):
    return load_dataset(dataset_dir)


@pytest.fixture
def samples(dataset, tiny_model_config):
    return build_samples(dataset, dataset.ids, tiny_model_config)


@pytest.fixture
def cache(dataset) -> OperatorCache:
    return OperatorCache(dataset.incidence, dataset.hypergraph.weights)


class TestTrain:
    def test_history(self, tiny_model_config, samples, cache):
        result = train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache, samples[4:])

        assert list(result.history.columns) == LOG_COLUMNS
        assert result.history["epoch"].tolist() == [1, 2]
        assert np.isfinite(result.history["train_loss"]).all()
        assert result.best_epoch in (1, 2)
        assert not result.stopped_early

    def test_parameters_change(self, tiny_model_config, samples, cache):
        model = SourceDetMamba(tiny_model_config)
        before = model.state_dict()

        train(model, samples[:4], tiny_model_config, cache)

        assert any(not np.array_equal(before[k], v) for k, v in model.state_dict().items())

    def test_deterministic(self, tiny_model_config, samples, cache):
        first = train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache, samples[4:])
        second = train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache, samples[4:])

        assert first.history.equals(second.history)
        for name, values in first.model.state_dict().items():
            np.testing.assert_array_equal(values, second.model.state_dict()[name])

    def test_without_validation(self, tiny_model_config, samples, cache):
        result = train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache)

        assert result.history["val_f_score"].isna().all()
        assert result.best_epoch == int(result.history["train_loss"].idxmin()) + 1

    def test_early_stopping(self, mocker, tiny_model_config, samples, cache):
        mocker.patch("sourcedet_mamba.training.trainer.validation_f_score", return_value=0.5)
        config = evolve(tiny_model_config, epochs=10, patience=2)

        result = train(SourceDetMamba(config), samples[:4], config, cache, samples[4:])

        assert result.stopped_early
        assert result.best_epoch == 1
        assert len(result.history) == 3

    def test_non_finite_loss(self, mocker, tiny_model_config, samples, cache):
        mocker.patch("sourcedet_mamba.training.trainer.balanced_loss", return_value=Tensor(math.nan))

        with pytest.raises(TrainingError) as excinfo:
            train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache)

        assert (excinfo.value.epoch, excinfo.value.batch) == (1, 0)
        assert excinfo.value.last_finite_loss is None

    def test_numeric_error_is_wrapped(self, mocker, tiny_model_config, samples, cache):
        mocker.patch("sourcedet_mamba.training.trainer.balanced_loss", side_effect=NumericError("log", (4,)))

        with pytest.raises(TrainingError) as excinfo:
            train(SourceDetMamba(tiny_model_config), samples[:4], tiny_model_config, cache)

        assert isinstance(excinfo.value.__cause__, NumericError)

    def test_empty_training_set(self, tiny_model_config, cache):
        with pytest.raises(TrainingError):
            train(SourceDetMamba(tiny_model_config), [], tiny_model_config, cache)

    def test_larger_weight_decay_gives_smaller_weights(self, tiny_model_config, samples, cache):
        config = evolve(tiny_model_config, epochs=30, learning_rate=0.01)

        free = train(SourceDetMamba(config), samples[:4], evolve(config, weight_decay=0.0), cache).model
        decayed = train(SourceDetMamba(config), samples[:4], evolve(config, weight_decay=1.0), cache).model

        assert decayed.l2_norm() < free.l2_norm()

    def test_memorizes_a_single_cascade(self):
        hg = Hypergraph(n=6, edges=[[0, 1, 2], [0, 3], [3, 4], [1, 4, 5], [2, 5]])
        config = ModelConfig(
            seed=5,
            hgnn_width=8,
            pe_width=2,
            n_blocks=1,
            d_state=4,
            channels=8,
            edge_hidden=4,
            activation="softplus",
            learning_rate=0.02,
            weight_decay=0.0,
            epochs=500,
            batch_size=1,
            patience=500,
        )
        rng = np.random.default_rng(5)
        sample = TrainingSample(
            cascade_id=0,
            features=tuple(rng.normal(size=(6, config.feature_width)) for _ in range(2)),
            labels=np.array([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        )

        result = train(SourceDetMamba(config), [sample], config, OperatorCache(build_incidence(hg)))

        assert result.history["train_loss"].min() < 0.05
        scores = result.model.predict(sample.features, build_operators(build_incidence(hg)))
        assert scores.argmax() == 0


class TestValidationFScore:
    def test_range(self, tiny_model_config, samples, cache):
        value = validation_f_score(SourceDetMamba(tiny_model_config), samples, cache)
        assert 0.0 <= value <= 1.0

    def test_no_samples(self, tiny_model_config, cache):
        assert math.isnan(validation_f_score(SourceDetMamba(tiny_model_config), [], cache))
