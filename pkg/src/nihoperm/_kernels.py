"""Bulk GF(2^n) kernels: carry-less multiply, powering, exp-table construction.

Two interchangeable backends operate on 1-D int64 arrays of packed field
elements (bit i of a value = coefficient of x^i):

* ``numba`` - @njit element loops, the default whenever numba imports.
* ``numpy`` - bit-serial vectorized passes, used as a fallback.

Selection is done once at import time from the environment variable
``NIHOPERM_BACKEND`` ("numba" or "numpy"). Both backends are exposed as
``numba_kernels`` / ``numpy_kernels`` so tests and benchmarks can compare
them directly; the module-level ``mul_vec`` / ``pow_vec`` / ``exp_table``
are the selected ones.

All kernels take the field as two ints: ``n`` (extension degree) and
``red`` (the modulus with its leading x^n term stripped, i.e. the value
XORed in on reduction). Exponents passed to ``pow_vec`` must be >= 0;
``x**0`` is 1 for every x including 0.
"""

from __future__ import annotations

import os

import numpy as np


class numpy_kernels:
    """Pure-numpy fallback backend (bit-serial, vectorized over the array)."""

    name = "numpy"

    @staticmethod
    def mul_vec(a: np.ndarray, b: np.ndarray, n: int, red: int) -> np.ndarray:
        a = a.astype(np.int64, copy=True)
        b = b.astype(np.int64, copy=True)
        res = np.zeros_like(a)
        mask = (1 << n) - 1
        top = 1 << (n - 1)
        for _ in range(n):
            res ^= np.where((b & 1) != 0, a, 0)
            b >>= 1
            carry = (a & top) != 0
            a = (a << 1) & mask
            a ^= np.where(carry, red, 0)
        return res

    @staticmethod
    def pow_vec(x: np.ndarray, e: int, n: int, red: int) -> np.ndarray:
        res = np.ones_like(x, dtype=np.int64)
        base = x.astype(np.int64, copy=True)
        e = int(e)
        while e > 0:
            if e & 1:
                res = numpy_kernels.mul_vec(res, base, n, red)
            e >>= 1
            if e:
                base = numpy_kernels.mul_vec(base, base, n, red)
        return res

    @staticmethod
    def exp_table(n: int, red: int, g: int) -> np.ndarray:
        # Doubling construction: once g^0..g^(k-1) are known, the next k
        # entries are g^k * (g^0..g^(k-1)), one vectorized multiply per round.
        order = (1 << n) - 1
        out = np.empty(order, dtype=np.int64)
        out[0] = 1
        filled = 1
        while filled < order:
            k = min(filled, order - filled)
            step = numpy_kernels.mul_vec(
                out[filled - 1 : filled], np.array([g], dtype=np.int64), n, red
            )[0]
            out[filled : filled + k] = numpy_kernels.mul_vec(
                out[:k], np.full(k, step, dtype=np.int64), n, red
            )
            filled += k
        return out


def _build_numba_kernels():
    try:
        import numba
    except ImportError:
        return None

    @numba.njit(cache=True, inline="always")
    def _mul1(a, b, n, red, mask):
        res = np.int64(0)
        x = a
        y = b
        for _ in range(n):
            if y & 1:
                res ^= x
            y >>= 1
            carry = (x >> (n - 1)) & 1
            x = (x << 1) & mask
            if carry:
                x ^= red
        return res

    @numba.njit(cache=True)
    def mul_vec(a, b, n, red):
        mask = np.int64((1 << n) - 1)
        out = np.empty(a.size, dtype=np.int64)
        for i in range(a.size):
            out[i] = _mul1(np.int64(a[i]), np.int64(b[i]), n, np.int64(red), mask)
        return out

    @numba.njit(cache=True)
    def pow_vec(x, e, n, red):
        mask = np.int64((1 << n) - 1)
        out = np.empty(x.size, dtype=np.int64)
        for i in range(x.size):
            res = np.int64(1)
            base = np.int64(x[i])
            ee = e
            while ee > 0:
                if ee & 1:
                    res = _mul1(res, base, n, np.int64(red), mask)
                ee >>= 1
                if ee:
                    base = _mul1(base, base, n, np.int64(red), mask)
            out[i] = res
        return out

    @numba.njit(cache=True)
    def exp_table(n, red, g):
        mask = np.int64((1 << n) - 1)
        order = (1 << n) - 1
        out = np.empty(order, dtype=np.int64)
        out[0] = 1
        for i in range(1, order):
            out[i] = _mul1(out[i - 1], np.int64(g), n, np.int64(red), mask)
        return out

    class numba_impl:
        name = "numba"

    numba_impl.mul_vec = staticmethod(mul_vec)
    numba_impl.pow_vec = staticmethod(pow_vec)
    numba_impl.exp_table = staticmethod(exp_table)
    return numba_impl


numba_kernels = _build_numba_kernels()

_requested = os.environ.get("NIHOPERM_BACKEND", "").strip().lower()
if _requested == "numpy":
    _active = numpy_kernels
elif _requested == "numba":
    if numba_kernels is None:
        raise ImportError("NIHOPERM_BACKEND=numba but numba is not importable")
    _active = numba_kernels
elif _requested == "":
    _active = numba_kernels if numba_kernels is not None else numpy_kernels
else:
    raise ValueError(f"NIHOPERM_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

BACKEND: str = _active.name
mul_vec = _active.mul_vec
pow_vec = _active.pow_vec
exp_table = _active.exp_table


def warmup() -> None:
    """Trigger JIT compilation of the active backend on tiny inputs."""
    a = np.array([3, 5], dtype=np.int64)
    mul_vec(a, a, 4, 0b0011)
    pow_vec(a, 7, 4, 0b0011)
    exp_table(4, 0b0011, 2)
