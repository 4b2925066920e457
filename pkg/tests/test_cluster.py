import numpy as np
import pytest

from terraml.cluster import deepcluster_pretrain, extract_features, kmeans, nmi
from terraml.datasets import MultiLabelImageDataset
from terraml.errors import InvalidParams, LengthMismatch
from terraml.models import SmallCNNMultiLabel, parameter_checksum

from .conftest import make_random_multilabel_root


def make_blobs(rng, centers, n_per=50, sigma=0.1):
    points = []
    labels = []
    for i, center in enumerate(centers):
        points.append(rng.normal(loc=center, scale=sigma, size=(n_per, len(center))))
        labels.extend([i] * n_per)
    return np.concatenate(points), np.array(labels)


def test_well_separated_pairs():
    points = np.array([[0.0, 0.0], [0.1, 0.0], [10.0, 10.0], [10.0, 10.1]])
    result = kmeans(points, k=2, seed=0)
    assert result.labels[0] == result.labels[1]
    assert result.labels[2] == result.labels[3]
    assert result.labels[0] != result.labels[2]


def test_k_equals_n_zero_inertia():
    rng = np.random.default_rng(1)
    points = rng.normal(size=(6, 3))
    result = kmeans(points, k=6, seed=0)
    assert result.inertia == 0.0
    assert sorted(result.labels) == list(range(6))


def test_four_blobs_nmi_one():
    rng = np.random.default_rng(2)
    points, truth = make_blobs(rng, [(0, 0), (10, 0), (0, 10), (10, 10)])
    result = kmeans(points, k=4, seed=3, max_iter=25)
    assert result.n_iter <= 25
    assert abs(nmi(result.labels, truth) - 1.0) < 1e-12
    history = result.inertia_history
    assert all(b <= a for a, b in zip(history, history[1:]))


def test_inertia_non_increasing_on_hard_data():
    rng = np.random.default_rng(3)
    points = rng.normal(size=(120, 6))
    result = kmeans(points, k=7, seed=5, max_iter=50)
    history = result.inertia_history
    assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))
    assert set(result.labels) == set(range(7))  # empty clusters repaired


def test_kmeans_invariant_under_row_permutation_with_ids():
    rng = np.random.default_rng(4)
    points, _ = make_blobs(rng, [(0, 0), (8, 0), (0, 8)], n_per=20)
    ids = [f"s{i:03d}" for i in range(len(points))]
    base = kmeans(points, k=3, seed=11, ids=ids)
    perm = rng.permutation(len(points))
    shuffled = kmeans(points[perm], k=3, seed=11, ids=[ids[int(i)] for i in perm])
    realigned = np.empty(len(points), dtype=int)
    realigned[perm] = shuffled.labels
    assert abs(nmi(realigned, base.labels) - 1.0) < 1e-12
    assert shuffled.inertia == pytest.approx(base.inertia, rel=1e-12)


def test_kmeans_param_validation():
    pts = np.zeros((4, 2))
    with pytest.raises(InvalidParams):
        kmeans(pts, k=0, seed=0)
    with pytest.raises(InvalidParams):
        kmeans(pts, k=5, seed=0)
    with pytest.raises(InvalidParams):
        kmeans(pts, k=2, seed=0, max_iter=0)
    with pytest.raises(InvalidParams):
        kmeans(np.array([[np.nan, 0.0]]), k=1, seed=0)


def test_nmi_identities():
    a = np.array([0, 0, 1, 1, 2, 2])
    assert abs(nmi(a, a) - 1.0) < 1e-12
    assert nmi(np.zeros(6), a) == 0.0
    assert abs(nmi([0, 0, 1, 1], [1, 1, 0, 0]) - 1.0) < 1e-12
    b = np.array([0, 1, 0, 1, 0, 1])
    assert abs(nmi(a, b) - nmi(b, a)) < 1e-12
    with pytest.raises(LengthMismatch):
        nmi([0, 1], [0, 1, 2])


# --- feature extraction and pretraining ------------------------------------------


MODEL_CFG = {
    "num_classes": 3,
    "learning_rate": 1e-3,
    "input_height": 8,
    "input_width": 8,
    "conv_channels": [2, 4],
    "hidden_units": 8,
}


@pytest.fixture
def small_dataset(tmp_path):
    root = make_random_multilabel_root(tmp_path / "imgs", 12, seed=6)
    return MultiLabelImageDataset(root, batch_size=4, shuffle=True, seed=3)


def test_extract_features_shape_and_norms(small_dataset):
    model = SmallCNNMultiLabel(dict(MODEL_CFG))
    model.prepare(seed=0)
    feats = extract_features(model, small_dataset)
    assert feats.shape == (12, 8)
    norms = np.linalg.norm(feats, axis=1)
    for n in norms:
        assert n == pytest.approx(1.0, abs=1e-6) or n == 0.0


def test_extract_features_duplicated_sample(small_dataset):
    model = SmallCNNMultiLabel(dict(MODEL_CFG))
    model.prepare(seed=0)
    feats = extract_features(model, small_dataset)
    again = extract_features(model, small_dataset)
    np.testing.assert_array_equal(feats, again)


def test_pretrain_zero_cycles_is_identity(small_dataset):
    model = SmallCNNMultiLabel(dict(MODEL_CFG))
    model.prepare(seed=1)
    before = parameter_checksum(model.parameters())
    _, records = deepcluster_pretrain(
        model, small_dataset, k=3, cycles=0, epochs_per_cycle=1, seed=0
    )
    assert records == []
    assert parameter_checksum(model.parameters()) == before


def test_pretrain_cycle_reports(small_dataset, tmp_path):
    from terraml.metrics import EventLogWriter, read_event_log

    model = SmallCNNMultiLabel(dict(MODEL_CFG))
    model.prepare(seed=1)
    events_path = tmp_path / "events.jsonl"
    with EventLogWriter(events_path) as events:
        model, records = deepcluster_pretrain(
            model, small_dataset, k=3, cycles=3, epochs_per_cycle=1, seed=0,
            event_writer=events,
        )
    assert [r.cycle for r in records] == [1, 2, 3]
    assert records[0].nmi_vs_prev is None
    assert all(r.nmi_vs_prev is not None for r in records[1:])
    assert model.head_width == model.num_classes  # pseudo-label head detached
    tags = [r.tag for r in read_event_log(events_path).records]
    assert tags.count("cluster/inertia") == 3
    assert tags.count("cluster/nmi_vs_prev") == 2
