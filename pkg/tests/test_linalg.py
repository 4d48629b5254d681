import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossmod import linalg
from crossmod.linalg import (
    IntMatrix,
    cokernel_structure,
    determinant,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integer,
)

shapes = st.tuples(st.integers(1, 8), st.integers(1, 8))
matrices = shapes.flatmap(
    lambda s: st.lists(st.lists(st.integers(-9, 9), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


def _np(M):
    return np.array(M.tolist(), dtype=object)


def check_decomposition(rows, backend=None):
    A = IntMatrix(rows)
    s = smith_normal_form(A, want_vinv=True, backend=backend)
    U, V, D, W = _np(s.U), _np(s.V), _np(s.D), _np(s.V_inverse)
    a = _np(A)
    assert (U.dot(a).dot(V) == D).all()
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    assert (V.dot(W) == np.eye(V.shape[0], dtype=object)).all()
    d = s.diagonal
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    m, n = A.shape
    off = [(i, j) for i in range(m) for j in range(n) if i != j or i >= len(d)]
    assert all(D[i, j] == 0 for i, j in off)
    return s


@settings(max_examples=500)
@given(matrices)
def test_snf_identities_random(rows):
    s = check_decomposition(rows)
    if len(rows) == len(rows[0]):
        det = determinant(IntMatrix(rows))
        prod = 1
        for x in s.diagonal:
            prod *= x
        assert abs(det) == (prod if s.rank == len(rows) else 0)


@settings(max_examples=100)
@given(matrices)
def test_backends_agree(rows):
    py = smith_normal_form(IntMatrix(rows), backend="python")
    auto = smith_normal_form(IntMatrix(rows))
    assert py.diagonal == auto.diagonal
    assert py.U.tolist() == auto.U.tolist() and py.V.tolist() == auto.V.tolist()


def test_examples():
    assert smith_normal_form(IntMatrix([[2, 4], [6, 8]])).diagonal == (2, 4)
    assert smith_normal_form(IntMatrix([[0, 0], [0, 0]])).diagonal == ()
    assert smith_normal_form(IntMatrix([[6]])).diagonal == (6,)
    assert smith_normal_form(IntMatrix([[2, 0], [0, 3]])).diagonal == (1, 6)


def test_big_entries_fall_back():
    big = 1 << 70
    s = check_decomposition([[big, 0], [0, 2 * big]])
    assert s.diagonal == (big, 2 * big)
    assert s.backend == "python"


def test_kernel_and_cokernel():
    A = IntMatrix([[1, 2, 3], [2, 4, 6]])
    assert rank(A) == 1
    K = kernel_basis(A)
    assert len(K) == 2
    for v in K:
        assert all(x == 0 for x in _np(A).dot(np.array(v, dtype=object)))
    c = cokernel_structure(IntMatrix([[2, 0], [0, 4], [0, 0]]))
    assert c.free_rank == 1 and c.torsion == (2, 4)


def test_solver():
    A = IntMatrix([[2, 0], [0, 3]])
    assert solve_integer(A, [4, 9]) == [2, 3]
    assert solve_integer(A, [1, 0]) is None


@given(matrices, st.lists(st.integers(-5, 5), min_size=8, max_size=8))
def test_solver_finds_preimages(rows, x):
    A = IntMatrix(rows)
    n = A.shape[1]
    b = _np(A).dot(np.array(x[:n], dtype=object))
    y = solve_integer(A, list(b))
    assert y is not None
    assert list(_np(A).dot(np.array(y, dtype=object))) == list(b)


def test_pure_python_switch():
    env = dict(os.environ, CROSSMOD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import crossmod.linalg as l; print(l.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(linalg.BACKEND != "compiled", reason="extension not built")
def test_compiled_backend_used():
    assert smith_normal_form(IntMatrix([[2, 1], [1, 2]])).backend == "compiled"
