"""Exact integer linear algebra: Smith normal form and what follows from it.

The elimination kernel is compiled (``_csmith``, int64 with overflow checks)
when the extension is available, with the pure-Python kernel used otherwise
and whenever int64 arithmetic would overflow.  Set ``CROSSMOD_PURE_PYTHON=1``
to force the fallback.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _pysmith

try:
    if os.environ.get("CROSSMOD_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _csmith
except ImportError:  # pragma: no cover - depends on the build
    _csmith = None

BACKEND = "compiled" if _csmith is not None else "python"

_I64_SAFE = 1 << 60


class IntMatrix:
    """Dense matrix of Python integers (immutable by convention)."""

    __slots__ = ("_a",)

    def __init__(self, data, shape: tuple[int, int] | None = None):
        if isinstance(data, IntMatrix):
            a = data._a
        else:
            a = np.array(data, dtype=object)
            if a.size == 0:
                a = np.zeros(shape if shape is not None else (0, 0), dtype=object)
            elif a.ndim == 1 and shape is None:
                a = a.reshape(1, -1)
            elif shape is not None:
                a = a.reshape(shape)
            if a.ndim != 2:
                raise ValueError("IntMatrix needs 2-dimensional data")
            a = np.vectorize(int, otypes=[object])(a) if a.size else a
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "IntMatrix":
        m = cls.__new__(cls)
        if a.dtype != object:
            a = a.astype(object)
            a = np.vectorize(int, otypes=[object])(a) if a.size else a
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        a = np.empty((rows, cols), dtype=object)
        a.fill(0)
        return cls._wrap(a)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m._a[i, i] = 1
        return m

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = cls.zeros(rows, cols)
        for i, v in enumerate(entries):
            m._a[i, i] = int(v)
        return m

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self._a]

    def to_int64(self) -> np.ndarray:
        if self._a.size and max(abs(int(v)) for v in self._a.flat) >= _I64_SAFE:
            raise OverflowError("entries too large for int64")
        return self._a.astype(np.int64)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._wrap(self._a.T.copy())

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if self.cols == 0:
                return IntMatrix.zeros(self.rows, other.cols)
            return IntMatrix._wrap(np.dot(self._a, other._a))
        v = np.array([int(x) for x in other], dtype=object)
        if self.cols != len(v):
            raise ValueError("vector length mismatch")
        if self.cols == 0:
            return [0] * self.rows
        return [int(x) for x in np.dot(self._a, v)]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix._wrap(self._a + other._a)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix._wrap(self._a - other._a)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(-self._a)

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix._wrap(self._a * int(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, tuple(self._a.flat)))

    def is_zero(self) -> bool:
        return not any(self._a.flat)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix._wrap(np.hstack([self._a, other._a]))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix._wrap(np.vstack([self._a, other._a]))

    def column(self, j: int) -> list[int]:
        return [int(v) for v in self._a[:, j]]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "cols": self.cols, "entries": self.tolist()})

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.rows
    if n != A.cols:
        raise ValueError("determinant of a non-square matrix")
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``D = U A V`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix | None
    D: IntMatrix
    V: IntMatrix | None
    diagonal: tuple[int, ...]
    V_inverse: IntMatrix | None = None
    backend: str = field(default="python", compare=False)

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _run_kernel(A, want_u, want_v, want_vinv, backend=None):
    """Run the elimination; returns (diag, U, V, W, backend) with list-of-list outputs."""
    if isinstance(A, np.ndarray) and A.dtype != object:
        m, n = A.shape
        arr64 = A.astype(np.int64, copy=False)
        big = None
    else:
        A = as_matrix(A)
        m, n = A.shape
        big = A
        arr64 = None
    use_c = _csmith is not None and backend != "python"
    if use_c and m and n:
        try:
            if arr64 is None:
                arr64 = big.to_int64()
            if arr64.size and int(np.abs(arr64).max()) >= _I64_SAFE:
                raise OverflowError
            d, U, V, W = _csmith.smith(np.ascontiguousarray(arr64), want_u, want_v, want_vinv)
            return [int(x) for x in d], U, V, W, "compiled"
        except OverflowError:
            pass
    rows = big.tolist() if big is not None else [[int(v) for v in row] for row in arr64]
    d, U, V, W = _pysmith.smith(rows, m, n, want_u, want_v, want_vinv)
    return d, U, V, W, "python"


def _mat(x, n):
    if x is None:
        return None
    if isinstance(x, np.ndarray):
        return IntMatrix._wrap(x) if x.size else IntMatrix.zeros(n, n)
    return IntMatrix(x, shape=(n, n)) if n else IntMatrix.zeros(0, 0)


def smith_normal_form(A, want_u: bool = True, want_v: bool = True, want_vinv: bool = False,
                      backend: str | None = None) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivoting picks the smallest non-zero absolute value (ties: lowest row,
    then column), which keeps the result deterministic.
    """
    shape = A.shape
    m, n = shape
    d, U, V, W, used = _run_kernel(A, want_u, want_v, want_vinv, backend)
    D = IntMatrix.diag(d, m, n)
    return SmithDecomposition(
        U=_mat(U, m) if want_u else None,
        D=D,
        V=_mat(V, n) if want_v else None,
        diagonal=tuple(d),
        V_inverse=_mat(W, n) if want_vinv else None,
        backend=used,
    )


def rank(A) -> int:
    return len(_run_kernel(A, False, False, False)[0])


def kernel_basis(A) -> list[list[int]]:
    """Basis of the integer kernel ``{v : A v = 0}`` (a saturated lattice)."""
    m, n = A.shape
    d, _, V, _, _ = _run_kernel(A, False, True, False)
    r = len(d)
    if n == 0:
        return []
    V = np.asarray(V, dtype=object) if not isinstance(V, np.ndarray) else V
    return [[int(V[i][j]) for i in range(n)] for j in range(r, n)]


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank + Z/t1 + ... + Z/tk`` with ``t1 | t2 | ... | tk`` and ``ti > 1``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion factors followed by a 0 for each free summand."""
        return self.torsion + (0,) * self.free_rank

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.torsion, 1)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "order": self.order}

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def structure_from_diagonal(diagonal: Iterable[int], rows: int) -> AbelianGroupStructure:
    diagonal = list(diagonal)
    return AbelianGroupStructure(rows - len(diagonal), tuple(d for d in diagonal if d > 1))


def cokernel_structure(A) -> AbelianGroupStructure:
    """Invariant factors of ``Z^rows / im(A)``."""
    m = A.shape[0]
    d = _run_kernel(A, False, False, False)[0] if A.shape[1] and m else []
    return structure_from_diagonal(d, m)


class IntegerSolver:
    """Cached decomposition for repeated solves ``A x = b`` over the integers."""

    def __init__(self, A):
        self.shape = A.shape
        m, n = self.shape
        d, U, V, _, _ = _run_kernel(A, True, True, False) if m and n else ([], None, None, None, None)
        self.diagonal = d
        self.U = np.array(U, dtype=object).reshape(m, m) if U is not None else np.eye(m, dtype=object) * 1
        self.V = np.array(V, dtype=object).reshape(n, n) if V is not None else np.eye(n, dtype=object) * 1
        if self.U.size:
            self.U = np.vectorize(int, otypes=[object])(self.U)
        if self.V.size:
            self.V = np.vectorize(int, otypes=[object])(self.V)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        m, n = self.shape
        if len(b) != m:
            raise ValueError("right-hand side has the wrong length")
        bb = np.array([int(x) for x in b], dtype=object)
        c = np.dot(self.U, bb) if m else bb
        r = len(self.diagonal)
        y = [0] * n
        for i in range(r):
            q, rem = divmod(int(c[i]), self.diagonal[i])
            if rem:
                return None
            y[i] = q
        if any(int(c[i]) for i in range(r, m)):
            return None
        if n == 0:
            return []
        return [int(v) for v in np.dot(self.V, np.array(y, dtype=object))]


def solve_integer(A, b: Sequence[int]) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or None if there is none."""
    return IntegerSolver(A).solve(b)

