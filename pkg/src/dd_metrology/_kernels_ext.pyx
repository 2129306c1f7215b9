# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled filter-function and twisting-kernel loops.

Same contract as ``_kernels_py``: exact expressions, omega > 0, no guard.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos

cnp.import_array()


def filter_raw(times, double t, omega):
    cdef const double[::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(omega, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0], m = wv.shape[0], i, k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double w, re, im, sg, end = -1.0 if n % 2 == 0 else 1.0
    with nogil:
        for i in range(m):
            w = wv[i]
            re = 1.0 + end * cos(w * t)
            im = end * sin(w * t)
            sg = -2.0
            for k in range(n):
                re += sg * cos(w * tv[k])
                im += sg * sin(w * tv[k])
                sg = -sg
            ov[i] = (re * re + im * im) / (2.0 * w * w)
    return out


def kernel_raw(times, double t, omega):
    cdef const double[::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(omega, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0], m = wv.shape[0], i, k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double w, theta, mu, sg, c, s, cn, sn, pre_re, pre_im
    cdef double end = -1.0 if n % 2 == 0 else 1.0
    with nogil:
        for i in range(m):
            w = wv[i]
            theta = end * sin(w * t)
            mu = 0.0
            pre_re = 0.0
            pre_im = 0.0
            sg = -1.0
            if n > 0:
                c = cos(w * tv[0])
                s = sin(w * tv[0])
            for k in range(n):
                theta += 2.0 * sg * s
                pre_re += sg * c
                pre_im -= sg * s
                if k + 1 < n:
                    cn = cos(w * tv[k + 1])
                    sn = sin(w * tv[k + 1])
                else:
                    cn = cos(w * t)
                    sn = sin(w * t)
                mu += sg * ((c - cn) * pre_im + (s - sn) * pre_re)
                c = cn
                s = sn
                sg = -sg
            ov[i] = (theta + 2.0 * mu) / (w * w) + t / w
    return out
