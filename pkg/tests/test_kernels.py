"""Kernel backends against brute-force oracles and against each other."""

import numpy as np
import pytest

from terraml.kernels import _npkernels

try:
    from terraml.kernels import _ckernels

    BACKENDS = [_npkernels, _ckernels]
except ImportError:
    BACKENDS = [_npkernels]

ids = [m.__name__.rsplit(".", 1)[-1] for m in BACKENDS]


def conv2d_oracle(x, w, b, pad):
    n, c, h, wd = x.shape
    f, _, kh, kw = w.shape
    oh, ow = h + 2 * pad - kh + 1, wd + 2 * pad - kw + 1
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    out = np.zeros((n, f, oh, ow))
    for i in range(n):
        for j in range(f):
            for oy in range(oh):
                for ox in range(ow):
                    patch = xp[i, :, oy : oy + kh, ox : ox + kw]
                    out[i, j, oy, ox] = (patch * w[j]).sum() + b[j]
    return out


@pytest.mark.parametrize("impl", BACKENDS, ids=ids)
@pytest.mark.parametrize("pad", [0, 1])
def test_conv2d_forward_matches_oracle(impl, pad):
    rng = np.random.default_rng(3)
    x = rng.normal(size=(2, 3, 6, 5))
    w = rng.normal(size=(4, 3, 3, 3))
    b = rng.normal(size=4)
    got = impl.conv2d_forward(x, w, b, pad)
    np.testing.assert_allclose(got, conv2d_oracle(x, w, b, pad), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS, ids=ids)
@pytest.mark.parametrize("pad", [0, 1])
def test_conv2d_backward_matches_finite_differences(impl, pad):
    rng = np.random.default_rng(4)
    x = rng.normal(size=(1, 2, 5, 4))
    w = rng.normal(size=(3, 2, 3, 3))
    b = rng.normal(size=3)
    g = rng.normal(size=impl.conv2d_forward(x, w, b, pad).shape)

    def loss(xv, wv, bv):
        return float((impl.conv2d_forward(xv, wv, bv, pad) * g).sum())

    gx, gw, gb = impl.conv2d_backward(x, w, g, pad)
    h = 1e-6
    for arr, grad in ((x, gx), (w, gw), (b, gb)):
        flat = arr.reshape(-1)
        num = np.zeros_like(flat)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            up = loss(x, w, b)
            flat[i] = orig - h
            down = loss(x, w, b)
            flat[i] = orig
            num[i] = (up - down) / (2 * h)
        np.testing.assert_allclose(grad.reshape(-1), num, rtol=1e-5, atol=1e-7)


@pytest.mark.parametrize("impl", BACKENDS, ids=ids)
def test_maxpool_forward_backward(impl):
    rng = np.random.default_rng(5)
    x = rng.normal(size=(2, 3, 7, 6))  # odd height exercises the cropped tail
    out, switches = impl.maxpool2_forward(x)
    assert out.shape == (2, 3, 3, 3)
    for i in range(2):
        for c in range(3):
            for oy in range(3):
                for ox in range(3):
                    tile = x[i, c, 2 * oy : 2 * oy + 2, 2 * ox : 2 * ox + 2]
                    assert out[i, c, oy, ox] == tile.max()
    g = rng.normal(size=out.shape)
    gx = impl.maxpool2_backward(switches, g, 7, 6)
    assert gx.shape == x.shape
    # Every gradient entry lands on the max of its 2x2 tile, once.
    assert gx[:, :, 6, :].sum() == 0.0
    np.testing.assert_allclose(gx.sum(), g.sum())


@pytest.mark.parametrize("impl", BACKENDS, ids=ids)
def test_pairwise_sqdist_argmin(impl):
    rng = np.random.default_rng(6)
    pts = rng.normal(size=(40, 3))
    cen = rng.normal(size=(5, 3))
    labels, dist = impl.pairwise_sqdist_argmin(pts, cen)
    d2 = ((pts[:, None, :] - cen[None]) ** 2).sum(-1)
    np.testing.assert_array_equal(labels, d2.argmin(axis=1))
    np.testing.assert_allclose(dist, d2.min(axis=1), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS, ids=ids)
def test_resize_bilinear_cases(impl):
    rng = np.random.default_rng(7)
    img = rng.random((3, 9, 11))
    np.testing.assert_allclose(impl.resize_bilinear(img, 9, 11), img, atol=1e-7)
    const = np.full((2, 5, 5), 0.37)
    np.testing.assert_allclose(impl.resize_bilinear(const, 8, 3), 0.37, atol=1e-12)
    checker = np.array([[[0.0, 1.0], [1.0, 0.0]]])
    np.testing.assert_allclose(impl.resize_bilinear(checker, 1, 1), [[[0.5]]], atol=1e-12)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree():
    rng = np.random.default_rng(8)
    x = rng.normal(size=(2, 3, 8, 8))
    w = rng.normal(size=(4, 3, 3, 3))
    b = rng.normal(size=4)
    g = rng.normal(size=(2, 4, 8, 8))
    np.testing.assert_allclose(
        _npkernels.conv2d_forward(x, w, b, 1), _ckernels.conv2d_forward(x, w, b, 1),
        rtol=1e-10, atol=1e-12,
    )
    for a, c in zip(_npkernels.conv2d_backward(x, w, g, 1), _ckernels.conv2d_backward(x, w, g, 1)):
        np.testing.assert_allclose(a, c, rtol=1e-10, atol=1e-12)
    img = rng.random((3, 13, 9))
    np.testing.assert_allclose(
        _npkernels.resize_bilinear(img, 5, 17), _ckernels.resize_bilinear(img, 5, 17),
        rtol=1e-12, atol=1e-12,
    )
