"""Vectorized numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not built.
All kernels take and return C-contiguous float64 arrays; convolutions are
stride 1 with symmetric zero padding.
"""

from __future__ import annotations

import numpy as np


def _sliding_windows(x: np.ndarray, kh: int, kw: int) -> np.ndarray:
    """View of shape (N, C, OH, OW, kh, kw) over an already-padded input."""
    n, c, h, w = x.shape
    oh, ow = h - kh + 1, w - kw + 1
    sn, sc, sh, sw = x.strides
    return np.lib.stride_tricks.as_strided(
        x, shape=(n, c, oh, ow, kh, kw), strides=(sn, sc, sh, sw, sh, sw), writeable=False
    )


def _im2col(x: np.ndarray, kh: int, kw: int, pad: int):
    if pad:
        x = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    windows = _sliding_windows(x, kh, kw)
    n, _, oh, ow = windows.shape[:4]
    cols = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * oh * ow, -1)
    return np.ascontiguousarray(cols), oh, ow


def conv2d_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray, pad: int) -> np.ndarray:
    n = x.shape[0]
    f, _, kh, kw = w.shape
    cols, oh, ow = _im2col(x, kh, kw, pad)
    out = cols @ w.reshape(f, -1).T + b
    return np.ascontiguousarray(out.reshape(n, oh, ow, f).transpose(0, 3, 1, 2))


def conv2d_backward(x: np.ndarray, w: np.ndarray, grad_out: np.ndarray, pad: int):
    n, _, h, wd = x.shape
    f, c, kh, kw = w.shape
    oh, ow = grad_out.shape[2], grad_out.shape[3]

    grad_b = grad_out.sum(axis=(0, 2, 3))

    cols, _, _ = _im2col(x, kh, kw, pad)
    gmat = grad_out.transpose(0, 2, 3, 1).reshape(n * oh * ow, f)
    grad_w = (gmat.T @ cols).reshape(f, c, kh, kw)

    # Input gradient is the full correlation of grad_out with the weights
    # rotated 180 degrees and with in/out channels swapped; crop the padding.
    w_rot = np.ascontiguousarray(w[:, :, ::-1, ::-1].transpose(1, 0, 2, 3))
    full = conv2d_forward(grad_out, w_rot, np.zeros(c), pad=kh - 1)
    if pad:
        grad_x = full[:, :, pad : pad + h, pad : pad + wd]
    else:
        grad_x = full
    return np.ascontiguousarray(grad_x), grad_w, grad_b


def maxpool2_forward(x: np.ndarray):
    n, c, h, w = x.shape
    oh, ow = h // 2, w // 2
    tiles = (
        x[:, :, : oh * 2, : ow * 2]
        .reshape(n, c, oh, 2, ow, 2)
        .transpose(0, 1, 2, 4, 3, 5)
        .reshape(n, c, oh, ow, 4)
    )
    switches = tiles.argmax(axis=-1).astype(np.uint8)
    out = np.take_along_axis(tiles, switches[..., None].astype(np.intp), axis=-1)[..., 0]
    return np.ascontiguousarray(out), switches


def maxpool2_backward(switches: np.ndarray, grad_out: np.ndarray, h: int, w: int) -> np.ndarray:
    n, c, oh, ow = grad_out.shape
    spread = np.zeros((n, c, oh, ow, 4))
    np.put_along_axis(spread, switches[..., None].astype(np.intp), grad_out[..., None], axis=-1)
    grad_x = np.zeros((n, c, h, w))
    grad_x[:, :, : oh * 2, : ow * 2] = (
        spread.reshape(n, c, oh, ow, 2, 2).transpose(0, 1, 2, 4, 3, 5).reshape(n, c, oh * 2, ow * 2)
    )
    return grad_x


def pairwise_sqdist_argmin(points: np.ndarray, centroids: np.ndarray):
    """Nearest centroid per point: (labels, squared distance to it)."""
    d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=-1)
    labels = d2.argmin(axis=1)
    return labels.astype(np.int64), d2[np.arange(len(points)), labels]


def _axis_coords(n_in: int, n_out: int) -> np.ndarray:
    if n_out == 1:
        return np.array([(n_in - 1) / 2.0])
    return np.arange(n_out) * ((n_in - 1) / (n_out - 1))


def resize_bilinear(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Corner-aligned bilinear resample of a (C, H, W) image, clamped to [0, 1]."""
    _, h, w = img.shape
    ys = _axis_coords(h, out_h)
    xs = _axis_coords(w, out_w)
    y0 = np.minimum(ys.astype(np.intp), h - 1)
    x0 = np.minimum(xs.astype(np.intp), w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    wy = (ys - y0)[None, :, None]
    wx = (xs - x0)[None, None, :]
    top = img[:, y0[:, None], x0[None, :]] * (1 - wx) + img[:, y0[:, None], x1[None, :]] * wx
    bot = img[:, y1[:, None], x0[None, :]] * (1 - wx) + img[:, y1[:, None], x1[None, :]] * wx
    out = top * (1 - wy) + bot * wy
    return np.clip(out, 0.0, 1.0)
