import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planebranch.exact import KERNEL_BACKEND, _kernels_py, kernel_with_pivots, modular

try:
    from planebranch.exact import _kernels
except ImportError:  # extension not built
    _kernels = None

P = 2147483629

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")


def test_backend_reported():
    assert KERNEL_BACKEND in ("cython", "python")
    if _kernels is not None and not os.environ.get("PLANEBRANCH_PURE"):
        assert KERNEL_BACKEND == "cython"


def test_pure_fallback_forced_by_environment():
    code = "from planebranch.exact import KERNEL_BACKEND; print(KERNEL_BACKEND)"
    env = dict(os.environ, PLANEBRANCH_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2 ** 32), st.sampled_from([2, 3, 101, P]))
def test_compiled_and_numpy_rref_agree(m, n, seed, p):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(m, n), dtype=np.int64)
    if m > 2:
        A[-1] = A[0]
    B, C = A.copy(), A.copy()
    piv_py = _kernels_py.rref_mod(B, p)
    piv_cy = _kernels.rref_mod(C, p)
    assert list(piv_py) == list(piv_cy)
    assert np.array_equal(B, C)


def test_rref_mod_small_example():
    A = np.array([[2, 4, 1], [1, 2, 3]], dtype=np.int64)
    piv = _kernels_py.rref_mod(A, 7)
    assert list(piv) == [0, 2]
    assert A.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_rational_reconstruction():
    m = 1000003 * 1000033
    for q in (Fraction(3, 7), Fraction(-22, 9), Fraction(0), Fraction(5)):
        a = q.numerator * pow(q.denominator, -1, m) % m
        assert modular.rational_reconstruction(a, m) == q


rat_rows = st.integers(1, 7).flatmap(lambda n: st.lists(
    st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=5), min_size=n, max_size=n),
    min_size=1, max_size=7))


@given(rat_rows)
def test_modular_kernel_equals_fraction_kernel(rows):
    n = len(rows[0])
    rows = rows + [[a - b for a, b in zip(rows[0], rows[-1])]]
    assert kernel_with_pivots(rows, n, "modular") == kernel_with_pivots(rows, n, "fraction")


def test_modular_kernel_large_entries():
    big = 10 ** 30 + 7
    rows = [[Fraction(big, 3), 1, 0], [0, Fraction(1, big), 1]]
    assert kernel_with_pivots(rows, 3, "modular") == kernel_with_pivots(rows, 3, "fraction")


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        kernel_with_pivots([[1]], 1, "magic")
