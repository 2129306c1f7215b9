"""Pure numpy evaluation of the filter function and twisting kernel.

Both functions take the interior pulse instants ``times`` (length n), the
total duration ``t`` and a 1-D array of strictly positive frequencies, and
evaluate the exact closed expressions without any small-frequency guard.
Results are identical (to rounding) to the compiled ``_kernels_ext``.
"""
import numpy as np


def _signs(n):
    # (-1)**m for m = 1..n
    return np.where(np.arange(1, n + 1) % 2 == 0, 1.0, -1.0)


def filter_raw(times, t, omega):
    times = np.asarray(times, dtype=float)
    omega = np.asarray(omega, dtype=float)
    n = times.size
    end = -1.0 if n % 2 == 0 else 1.0
    re = 1.0 + end * np.cos(omega * t)
    im = end * np.sin(omega * t)
    if n:
        phase = np.multiply.outer(omega, times)
        sg = 2.0 * _signs(n)
        re = re + np.cos(phase) @ sg
        im = im + np.sin(phase) @ sg
    return (re * re + im * im) / (2.0 * omega * omega)


def kernel_raw(times, t, omega):
    times = np.asarray(times, dtype=float)
    omega = np.asarray(omega, dtype=float)
    n = times.size
    w2 = omega * omega
    end = -1.0 if n % 2 == 0 else 1.0
    theta = end * np.sin(omega * t)
    mu = np.zeros_like(omega)
    if n:
        sg = _signs(n)
        phase = np.multiply.outer(omega, times)
        c, s = np.cos(phase), np.sin(phase)
        theta = theta + 2.0 * (s @ sg)
        # prefix sums S_m = sum_{j<=m} (-1)^j exp(-i w t_j)
        pre_re = np.cumsum(c * sg, axis=1)
        pre_im = -np.cumsum(s * sg, axis=1)
        # E_{m+1}, with E_{n+1} = exp(i w t)
        c_next = np.concatenate([c[:, 1:], np.cos(omega * t)[:, None]], axis=1)
        s_next = np.concatenate([s[:, 1:], np.sin(omega * t)[:, None]], axis=1)
        d_re = c - c_next
        d_im = s - s_next
        mu = 2.0 * ((d_re * pre_im + d_im * pre_re) @ sg)
    return (theta + mu) / w2 + t / omega
