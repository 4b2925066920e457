# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Mirrors the numpy backend in ``_npkernels``: same signatures, same results up
to floating-point summation order. Stride-1 convolutions, symmetric zero
padding, float64 throughout.
"""

import numpy as np


def conv2d_forward(double[:, :, :, ::1] x, double[:, :, :, ::1] w, double[::1] b, int pad):
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1], h = x.shape[2], wd = x.shape[3]
    cdef Py_ssize_t f = w.shape[0], kh = w.shape[2], kw = w.shape[3]
    cdef Py_ssize_t oh = h + 2 * pad - kh + 1, ow = wd + 2 * pad - kw + 1
    out_arr = np.empty((n, f, oh, ow))
    cdef double[:, :, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, oy, ox, ch, ky, kx, iy, ix
    cdef double acc
    with nogil:
        for i in range(n):
            for j in range(f):
                for oy in range(oh):
                    for ox in range(ow):
                        acc = b[j]
                        for ch in range(c):
                            for ky in range(kh):
                                iy = oy + ky - pad
                                if iy < 0 or iy >= h:
                                    continue
                                for kx in range(kw):
                                    ix = ox + kx - pad
                                    if ix < 0 or ix >= wd:
                                        continue
                                    acc += x[i, ch, iy, ix] * w[j, ch, ky, kx]
                        out[i, j, oy, ox] = acc
    return out_arr


def conv2d_backward(double[:, :, :, ::1] x, double[:, :, :, ::1] w,
                    double[:, :, :, ::1] grad_out, int pad):
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1], h = x.shape[2], wd = x.shape[3]
    cdef Py_ssize_t f = w.shape[0], kh = w.shape[2], kw = w.shape[3]
    cdef Py_ssize_t oh = grad_out.shape[2], ow = grad_out.shape[3]
    grad_x_arr = np.zeros((n, c, h, wd))
    grad_w_arr = np.zeros((f, c, kh, kw))
    grad_b_arr = np.zeros(f)
    cdef double[:, :, :, ::1] gx = grad_x_arr
    cdef double[:, :, :, ::1] gw = grad_w_arr
    cdef double[::1] gb = grad_b_arr
    cdef Py_ssize_t i, j, oy, ox, ch, ky, kx, iy, ix
    cdef double g, acc
    with nogil:
        for j in range(f):
            acc = 0.0
            for i in range(n):
                for oy in range(oh):
                    for ox in range(ow):
                        acc += grad_out[i, j, oy, ox]
            gb[j] = acc
        for i in range(n):
            for j in range(f):
                for oy in range(oh):
                    for ox in range(ow):
                        g = grad_out[i, j, oy, ox]
                        if g == 0.0:
                            continue
                        for ch in range(c):
                            for ky in range(kh):
                                iy = oy + ky - pad
                                if iy < 0 or iy >= h:
                                    continue
                                for kx in range(kw):
                                    ix = ox + kx - pad
                                    if ix < 0 or ix >= wd:
                                        continue
                                    gw[j, ch, ky, kx] += g * x[i, ch, iy, ix]
                                    gx[i, ch, iy, ix] += g * w[j, ch, ky, kx]
    return grad_x_arr, grad_w_arr, grad_b_arr


def maxpool2_forward(double[:, :, :, ::1] x):
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1], h = x.shape[2], w = x.shape[3]
    cdef Py_ssize_t oh = h // 2, ow = w // 2
    out_arr = np.empty((n, c, oh, ow))
    sw_arr = np.zeros((n, c, oh, ow), dtype=np.uint8)
    cdef double[:, :, :, ::1] out = out_arr
    cdef unsigned char[:, :, :, ::1] sw = sw_arr
    cdef Py_ssize_t i, ch, oy, ox, dy, dx
    cdef double best, v
    cdef unsigned char k, bk
    with nogil:
        for i in range(n):
            for ch in range(c):
                for oy in range(oh):
                    for ox in range(ow):
                        best = x[i, ch, 2 * oy, 2 * ox]
                        bk = 0
                        k = 0
                        for dy in range(2):
                            for dx in range(2):
                                v = x[i, ch, 2 * oy + dy, 2 * ox + dx]
                                if v > best:
                                    best = v
                                    bk = k
                                k += 1
                        out[i, ch, oy, ox] = best
                        sw[i, ch, oy, ox] = bk
    return out_arr, sw_arr


def maxpool2_backward(unsigned char[:, :, :, ::1] switches, double[:, :, :, ::1] grad_out,
                      Py_ssize_t h, Py_ssize_t w):
    cdef Py_ssize_t n = grad_out.shape[0], c = grad_out.shape[1]
    cdef Py_ssize_t oh = grad_out.shape[2], ow = grad_out.shape[3]
    grad_x_arr = np.zeros((n, c, h, w))
    cdef double[:, :, :, ::1] gx = grad_x_arr
    cdef Py_ssize_t i, ch, oy, ox
    cdef unsigned char k
    with nogil:
        for i in range(n):
            for ch in range(c):
                for oy in range(oh):
                    for ox in range(ow):
                        k = switches[i, ch, oy, ox]
                        gx[i, ch, 2 * oy + k // 2, 2 * ox + k % 2] += grad_out[i, ch, oy, ox]
    return grad_x_arr


def pairwise_sqdist_argmin(double[:, ::1] points, double[:, ::1] centroids):
    cdef Py_ssize_t n = points.shape[0], d = points.shape[1], k = centroids.shape[0]
    labels_arr = np.empty(n, dtype=np.int64)
    dist_arr = np.empty(n)
    cdef long long[::1] labels = labels_arr
    cdef double[::1] dist = dist_arr
    cdef Py_ssize_t i, j, m
    cdef double best, acc, diff
    with nogil:
        for i in range(n):
            best = -1.0
            for j in range(k):
                acc = 0.0
                for m in range(d):
                    diff = points[i, m] - centroids[j, m]
                    acc += diff * diff
                if best < 0.0 or acc < best:
                    best = acc
                    labels[i] = j
            dist[i] = best
    return labels_arr, dist_arr


def resize_bilinear(double[:, :, ::1] img, Py_ssize_t out_h, Py_ssize_t out_w):
    cdef Py_ssize_t c = img.shape[0], h = img.shape[1], w = img.shape[2]
    out_arr = np.empty((c, out_h, out_w))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t ch, oy, ox, y0, x0, y1, x1
    cdef double sy, sx, yc, xc, wy, wx, v
    sy = (h - 1) / <double>(out_h - 1) if out_h > 1 else 0.0
    sx = (w - 1) / <double>(out_w - 1) if out_w > 1 else 0.0
    with nogil:
        for oy in range(out_h):
            yc = (h - 1) / 2.0 if out_h == 1 else oy * sy
            y0 = <Py_ssize_t>yc
            if y0 > h - 1:
                y0 = h - 1
            y1 = y0 + 1 if y0 + 1 < h else h - 1
            wy = yc - y0
            for ox in range(out_w):
                xc = (w - 1) / 2.0 if out_w == 1 else ox * sx
                x0 = <Py_ssize_t>xc
                if x0 > w - 1:
                    x0 = w - 1
                x1 = x0 + 1 if x0 + 1 < w else w - 1
                wx = xc - x0
                for ch in range(c):
                    v = (img[ch, y0, x0] * (1 - wx) + img[ch, y0, x1] * wx) * (1 - wy) \
                        + (img[ch, y1, x0] * (1 - wx) + img[ch, y1, x1] * wx) * wy
                    if v < 0.0:
                        v = 0.0
                    elif v > 1.0:
                        v = 1.0
                    out[ch, oy, ox] = v
    return out_arr
