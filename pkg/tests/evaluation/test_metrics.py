import numpy as np
import pytest

from sourcedet_mamba.errors import ContractError, ShapeError
from sourcedet_mamba.evaluation import auc, best_threshold, f_score, metrics, threshold_sweep


@pytest.fixture
def scored():
    """Sources {0, 1, 2}; at 0.5 the prediction is {0, 1, 3}"""
    scores = np.array([0.9, 0.8, 0.1, 0.7, 0.2, 0.3])
    labels = np.array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0])
    return scores, labels


class TestMetrics:
    def test_two_of_three(self, scored):
        result = metrics(*scored, threshold=0.5)

        assert result.precision == pytest.approx(2 / 3)
        assert result.recall == pytest.approx(2 / 3)
        assert result.f_score == pytest.approx(2 / 3)
        assert result.acc == pytest.approx(4 / 6)
        assert result.balanced_acc == pytest.approx(2 / 3)
        assert result.auc == pytest.approx(2 / 3)

    def test_nothing_predicted(self, scored):
        result = metrics(*scored, threshold=0.95)
        assert (result.precision, result.recall, result.f_score) == (0.0, 0.0, 0.0)
        assert result.acc == pytest.approx(0.5)

    def test_threshold_is_inclusive(self):
        assert f_score(np.array([0.5, 0.4]), np.array([1.0, 0.0]), threshold=0.5) == 1.0

    @pytest.mark.parametrize("labels", [np.zeros(4), np.ones(4)])
    def test_degenerate_labels(self, labels):
        with pytest.raises(ContractError):
            metrics(np.full(4, 0.5), labels)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            metrics(np.zeros(3), np.array([1.0, 0.0]))


class TestAuc:
    def test_constant_scores(self):
        assert auc(np.full(6, 0.3), np.array([1, 0, 0, 1, 0, 0])) == 0.5

    def test_perfect_ranking(self):
        assert auc(np.array([0.9, 0.1, 0.2]), np.array([1, 0, 0])) == 1.0

    def test_reversed_ranking(self):
        assert auc(np.array([0.0, 0.1, 0.2]), np.array([1, 0, 0])) == 0.0

    def test_ties_count_half(self):
        assert auc(np.array([0.5, 0.5, 0.1]), np.array([1, 0, 0])) == pytest.approx(0.75)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_pair_count(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 40))
        labels = np.zeros(n)
        labels[rng.choice(n, size=int(rng.integers(1, n)), replace=False)] = 1.0
        # coarse rounding makes ties common
        scores = np.round(rng.random(n), 1)

        positives, negatives = scores[labels == 1], scores[labels == 0]
        wins = sum(1.0 if p > q else 0.5 if p == q else 0.0 for p in positives for q in negatives)

        assert auc(scores, labels) == pytest.approx(wins / (positives.size * negatives.size))

    @pytest.mark.parametrize("transform", [lambda s: 7.5 * s, lambda s: s + 3.0, np.exp, lambda s: s**3])
    def test_invariant_to_monotone_transforms(self, transform):
        rng = np.random.default_rng(11)
        scores = rng.normal(size=30)
        labels = (rng.random(30) < 0.3).astype(float)
        labels[:2] = [1.0, 0.0]

        assert auc(transform(scores), labels) == pytest.approx(auc(scores, labels))


class TestThresholdSweep:
    def test_columns_and_rows(self, scored):
        sweep = threshold_sweep(*scored, thresholds=[0.25, 0.5, 0.75])

        assert list(sweep.columns) == ["threshold", "precision", "recall", "f_score"]
        assert sweep["threshold"].tolist() == [0.25, 0.5, 0.75]
        assert sweep["recall"].tolist() == pytest.approx([2 / 3, 2 / 3, 2 / 3])

    def test_best_threshold_prefers_lowest_on_ties(self, scored):
        sweep = threshold_sweep(*scored, thresholds=[0.05, 0.75, 0.5, 0.72])
        # 0.72 and 0.75 both predict {0, 1}
        assert best_threshold(sweep) == 0.72

    @pytest.mark.parametrize("seed", range(5))
    def test_recall_never_rises_with_threshold(self, seed):
        rng = np.random.default_rng(seed)
        scores = rng.random(40)
        labels = (rng.random(40) < 0.2).astype(float)
        labels[:2] = [1.0, 0.0]
        thresholds = np.linspace(0.0, 1.0, 21)

        recall = threshold_sweep(scores, labels, thresholds)["recall"].to_numpy()

        assert np.all(np.diff(recall) <= 0)
        assert recall[0] == 1.0
