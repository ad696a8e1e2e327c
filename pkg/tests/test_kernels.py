"""Backend parity: the numba kernels and the numpy fallback must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from nihoperm import _kernels
from nihoperm import field as gf

needs_numba = pytest.mark.skipif(
    _kernels.numba_kernels is None, reason="numba not available"
)


def _random_elems(n, size, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, 1 << n, size).astype(np.int64)


@needs_numba
@pytest.mark.parametrize("n,red", [(4, 0b0011), (8, 0x1B), (13, 0x1B)])
def test_mul_vec_backends_agree(n, red):
    a = _random_elems(n, 4096, 1)
    b = _random_elems(n, 4096, 2)
    got_nb = _kernels.numba_kernels.mul_vec(a, b, n, red)
    got_np = _kernels.numpy_kernels.mul_vec(a, b, n, red)
    assert (got_nb == got_np).all()


@needs_numba
@pytest.mark.parametrize("e", [0, 1, 2, 7, 171, 254, 255])
def test_pow_vec_backends_agree(e):
    x = _random_elems(8, 2048, 3)
    got_nb = _kernels.numba_kernels.pow_vec(x, e, 8, 0x1B)
    got_np = _kernels.numpy_kernels.pow_vec(x, e, 8, 0x1B)
    assert (got_nb == got_np).all()


@needs_numba
@pytest.mark.parametrize("n", [2, 4, 8, 11])
def test_exp_table_backends_agree(n):
    ctx = gf.make_field(n)
    t_nb = _kernels.numba_kernels.exp_table(n, ctx.red, ctx.generator)
    t_np = _kernels.numpy_kernels.exp_table(n, ctx.red, ctx.generator)
    assert (t_nb == t_np).all()


def test_mul_vec_matches_scalar_multiply(f256):
    a = _random_elems(8, 512, 4)
    b = _random_elems(8, 512, 5)
    out = _kernels.mul_vec(a, b, 8, f256.red)
    for i in range(a.size):
        assert out[i] == gf.mul(f256, int(a[i]), int(b[i]))


def test_pow_vec_zero_conventions():
    x = np.array([0, 1, 3], dtype=np.int64)
    assert list(_kernels.pow_vec(x, 0, 4, 0b0011)) == [1, 1, 1]
    assert list(_kernels.pow_vec(x, 5, 4, 0b0011))[0] == 0


def test_exp_table_is_multiplicative_walk(f16):
    table = _kernels.exp_table(4, f16.red, f16.generator)
    assert table[0] == 1
    assert len(set(table.tolist())) == 15  # hits every nonzero element once
    for i in range(1, 15):
        assert table[i] == gf.mul(f16, int(table[i - 1]), f16.generator)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, NIHOPERM_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "import nihoperm; print(nihoperm.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_env_flag_rejects_garbage():
    env = dict(os.environ, NIHOPERM_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import nihoperm"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode != 0
    assert "NIHOPERM_BACKEND" in out.stderr
