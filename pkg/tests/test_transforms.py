import numpy as np
import pytest

from terraml.errors import IndexOutOfRange, InvalidParams
from terraml.transforms import (
    Compose,
    NormalizeTransform,
    OneHotEncode,
    RandomHorizontalFlip,
    ResizeTransform,
    normalize,
    one_hot_encode,
    random_horizontal_flip,
    resize,
)


def test_resize_identity():
    rng = np.random.default_rng(0)
    img = rng.random((3, 12, 10))
    np.testing.assert_allclose(resize(img, 12, 10), img, atol=1e-7)


def test_resize_constant():
    img = np.full((1, 6, 6), 0.42)
    np.testing.assert_allclose(resize(img, 3, 9), 0.42, atol=1e-12)


def test_resize_checkerboard_average():
    img = np.array([[[0.0, 1.0], [1.0, 0.0]]])
    np.testing.assert_allclose(resize(img, 1, 1), [[[0.5]]], atol=1e-12)


def test_resize_round_trip_on_gradient():
    ys = np.linspace(0.0, 1.0, 16)
    xs = np.linspace(0.0, 1.0, 16)
    img = ((ys[:, None] + xs[None, :]) / 2.0)[None, :, :]
    down = resize(img, 8, 8)
    back = resize(down, 16, 16)
    assert np.abs(back - img).max() <= 0.1


def test_resize_rejects_bad_params():
    with pytest.raises(InvalidParams):
        ResizeTransform(0, 4)


def test_resize_preserves_channels():
    for c in (1, 3):
        out = resize(np.random.default_rng(1).random((c, 7, 9)), 4, 4)
        assert out.shape == (c, 4, 4)


def test_normalize_values():
    img = np.full((1, 2, 2), 0.5)
    np.testing.assert_allclose(normalize(img, 0.5, 0.5), 0.0, atol=1e-12)
    img2 = np.full((2, 2, 2), 1.0)
    np.testing.assert_allclose(normalize(img2, 0.25, 0.5), 1.5, atol=1e-12)
    rng = np.random.default_rng(2)
    img3 = rng.random((3, 4, 4))
    np.testing.assert_allclose(normalize(img3, 0.0, 1.0), img3, atol=1e-12)


def test_normalize_rejects_bad_std_and_lengths():
    with pytest.raises(InvalidParams):
        NormalizeTransform(0.5, 0.0)
    with pytest.raises(InvalidParams):
        NormalizeTransform([0.1, 0.2], [1.0, 1.0])(np.zeros((3, 2, 2)))


def test_flip_degenerate_probabilities():
    img = np.arange(12, dtype=np.float64).reshape(1, 3, 4)
    np.testing.assert_array_equal(random_horizontal_flip(img, 0.0), img)
    flipped = random_horizontal_flip(img, 1.0)
    np.testing.assert_array_equal(flipped, img[:, :, ::-1])
    np.testing.assert_array_equal(random_horizontal_flip(flipped, 1.0), img)


def test_flip_rate_monte_carlo():
    img = np.array([[[1.0, 0.0]]])
    flips = 0
    for i in range(10_000):
        rng = np.random.default_rng(i)
        out = random_horizontal_flip(img, 0.5, rng)
        flips += int(out[0, 0, 0] == 0.0)
    assert 0.48 <= flips / 10_000 <= 0.52


def test_flip_deterministic_given_seed():
    img = np.random.default_rng(3).random((3, 5, 5))
    a = random_horizontal_flip(img, 0.5, np.random.default_rng(99))
    b = random_horizontal_flip(img, 0.5, np.random.default_rng(99))
    np.testing.assert_array_equal(a, b)


def test_flip_rejects_bad_probability():
    with pytest.raises(InvalidParams):
        RandomHorizontalFlip(1.5)


def test_one_hot_cases():
    np.testing.assert_array_equal(one_hot_encode(0, 3), [1, 0, 0])
    np.testing.assert_array_equal(one_hot_encode(2, 3), [0, 0, 1])
    for k in range(2, 6):
        for t in range(k):
            assert one_hot_encode(t, k).sum() == 1.0
    with pytest.raises(IndexOutOfRange):
        one_hot_encode(3, 3)


def test_compose_identity_and_order():
    img = np.random.default_rng(4).random((3, 6, 6))
    np.testing.assert_array_equal(Compose([])(img), img)
    combo = Compose([ResizeTransform(4, 4), NormalizeTransform(0.0, 1.0)])(img)
    np.testing.assert_allclose(combo, normalize(resize(img, 4, 4), 0.0, 1.0), atol=1e-12)


def test_compose_flip_involution():
    img = np.random.default_rng(5).random((3, 6, 6))
    twice = Compose([RandomHorizontalFlip(1.0), RandomHorizontalFlip(1.0)])(img)
    np.testing.assert_array_equal(twice, img)
