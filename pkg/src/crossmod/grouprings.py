"""Integral group rings, Fox calculus and free resolutions over finite groups.

Maps between free left ``ZQ``-modules are stored as matrices whose column
``j`` holds the image of the ``j``-th basis element: ``f(b_j) = sum_i
a_ij b'_i``.  Composition therefore multiplies entries in the order
``(A o B)_ik = sum_j B_jk * A_ij``.  Expanding to integers, an entry ``a``
becomes the matrix of ``z -> z*a`` on ``ZQ`` in the basis of group
elements, which is the matrix of the module map and is compatible with
composition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .groups import FiniteGroup, SizeBoundExceeded, cyclic_group
from .linalg import IntMatrix
from .presentations import Presentation, WordMap
from .words import Word


class GroupRingElement:
    """An element of ``ZQ`` as a sparse coefficient map."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Mapping[int, int] | None = None):
        self.group = group
        self.coeffs = {int(g): int(c) for g, c in (coeffs or {}).items() if c}

    @classmethod
    def element(cls, group: FiniteGroup, g: int, c: int = 1) -> "GroupRingElement":
        return cls(group, {g: c})

    @classmethod
    def one(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group, {0: 1})

    @classmethod
    def norm(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group, {g: 1 for g in range(group.order)})

    def _same(self, other):
        if self.group is not other.group and self.group != other.group:
            raise ValueError("group ring elements over different groups")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._same(other)
        c = dict(self.coeffs)
        for g, v in other.coeffs.items():
            c[g] = c.get(g, 0) + v
        return GroupRingElement(self.group, c)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -v for g, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: v * other for g, v in self.coeffs.items()})
        self._same(other)
        t = self.group.table
        c: dict[int, int] = {}
        for g, a in self.coeffs.items():
            row = t[g]
            for h, b in other.coeffs.items():
                k = row[h]
                c[k] = c.get(k, 0) + a * b
        return GroupRingElement(self.group, c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    def vector(self) -> list[int]:
        v = [0] * self.group.order
        for g, c in self.coeffs.items():
            v[g] = c
        return v

    def right_multiplication_matrix(self) -> np.ndarray:
        """Integer matrix of ``z -> z * self`` on ``ZQ`` (columns indexed by basis elements)."""
        n = self.group.order
        t = self.group.table
        M = np.zeros((n, n), dtype=np.int64)
        for h, c in self.coeffs.items():
            for g in range(n):
                M[t[g][h], g] += c
        return M

    def left_multiplication_matrix(self) -> np.ndarray:
        n = self.group.order
        t = self.group.table
        M = np.zeros((n, n), dtype=np.int64)
        for h, c in self.coeffs.items():
            for g in range(n):
                M[t[h][g], g] += c
        return M

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{g}]" for g, c in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class ZQMatrix:
    """Sparse matrix over ``ZQ`` representing a map of free left modules."""

    group: FiniteGroup
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], GroupRingElement] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in self.entries.items() if not v.is_zero()}
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, ij) -> GroupRingElement:
        return self.entries.get(ij, GroupRingElement(self.group))

    def compose(self, other: "ZQMatrix") -> "ZQMatrix":
        """``self o other``."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch in composition")
        by_row: dict[int, list] = {}
        for (i, j), a in self.entries.items():
            by_row.setdefault(j, []).append((i, a))
        out: dict[tuple[int, int], GroupRingElement] = {}
        for (j, k), b in other.entries.items():
            for i, a in by_row.get(j, ()):
                prod = b * a
                key = (i, k)
                out[key] = out[key] + prod if key in out else prod
        return ZQMatrix(self.group, self.rows, other.cols, out)

    def __matmul__(self, other):
        return self.compose(other)

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, sorted(a.coeffs.items())] for (i, j), a in sorted(self.entries.items())],
        }


def zq_matrix_to_int(A: ZQMatrix) -> IntMatrix:
    """Block-expand to a ``(|Q| rows) x (|Q| cols)`` integer matrix."""
    return IntMatrix._wrap(zq_matrix_to_int64(A))


def zq_matrix_to_int64(A: ZQMatrix) -> np.ndarray:
    n = A.group.order
    M = np.zeros((A.rows * n, A.cols * n), dtype=np.int64)
    for (i, j), a in A.entries.items():
        M[i * n:(i + 1) * n, j * n:(j + 1) * n] = a.right_multiplication_matrix()
    return M


# ---------------------------------------------------------------- Fox calculus

def fox_derivative_free(w: Word, x: int) -> dict[Word, int]:
    """``dw/dx`` in the integral group ring of the free group."""
    out: dict[Word, int] = {}
    prefixes = w.prefixes()
    for i, (g, s) in enumerate(w.letters):
        if g != x:
            continue
        key = prefixes[i] if s > 0 else prefixes[i + 1]
        out[key] = out.get(key, 0) + s
    return {k: v for k, v in out.items() if v}


def fox_identity_holds(w: Word) -> bool:
    """Check ``w - 1 = sum_x (dw/dx)(x - 1)`` in ``ZF`` on reduced words."""
    A = w.alphabet
    total: dict[Word, int] = {}
    for x in range(len(A)):
        gen = A.generator(x)
        for u, c in fox_derivative_free(w, x).items():
            for key, v in ((u * gen, c), (u, -c)):
                total[key] = total.get(key, 0) + v
    total = {k: v for k, v in total.items() if v}
    expected: dict[Word, int] = {}
    if not w.is_identity():
        expected = {w: 1, A.identity(): -1}
    return total == expected


def fox_image(w: Word, x: int, wm: WordMap) -> GroupRingElement:
    """Image in ``ZQ`` of the Fox derivative ``dw/dx``, evaluated letter by letter."""
    Q = wm.group
    coeffs: dict[int, int] = {}
    cur = 0
    t, inv = Q.table, Q.inverses
    for g, s in w.letters:
        img = wm.images[g] if s > 0 else inv[wm.images[g]]
        nxt = t[cur][img]
        if g == x:
            key = cur if s > 0 else nxt
            coeffs[key] = coeffs.get(key, 0) + s
        cur = nxt
    return GroupRingElement(Q, coeffs)


def fox_vector(w: Word, wm: WordMap) -> list[int]:
    """Integer coordinates of ``sum_x [dw/dx] x`` in ``ZQ[X]`` (block per generator)."""
    out: list[int] = []
    for x in range(len(wm.alphabet)):
        out.extend(fox_image(w, x, wm).vector())
    return out


def fox_boundaries(p: Presentation, Q: FiniteGroup, wm: WordMap) -> tuple[ZQMatrix, ZQMatrix]:
    """``d2: ZQ[R] -> ZQ[X]`` (entry ``(x, r)`` is ``[r_x]``) and ``d1: ZQ[X] -> ZQ``."""
    if wm.group != Q:
        raise ValueError("word map does not evaluate into Q")
    nx, nr = len(p.alphabet), len(p.relators)
    d2 = {}
    for j, r in enumerate(p.relators):
        for x in range(nx):
            d2[(x, j)] = fox_image(r, x, wm)
    d1 = {(0, x): GroupRingElement.element(Q, wm.images[x]) - GroupRingElement.one(Q) for x in range(nx)}
    return ZQMatrix(Q, nx, nr, d2), ZQMatrix(Q, 1, nx, d1)


# ------------------------------------------------------------------- modules

@dataclass(frozen=True, eq=False)
class QModule:
    """A finitely generated abelian group ``Z^k / diag(factors)`` with a left ``Q``-action.

    ``invariant_factors[i] == 0`` marks a free coordinate; ``m > 1`` a ``Z/m``
    coordinate.  ``action[g]`` acts on coordinate columns.
    """

    group: FiniteGroup
    invariant_factors: tuple[int, ...]
    action: tuple[np.ndarray, ...]

    def __post_init__(self):
        k = len(self.invariant_factors)
        if any(d < 0 or d == 1 for d in self.invariant_factors):
            raise ValueError("factors must be 0 (free) or > 1")
        acts = tuple(self._reduce(np.asarray(a, dtype=object).reshape(k, k)) for a in self.action)
        if len(acts) != self.group.order:
            raise ValueError("one action matrix per group element")
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        object.__setattr__(self, "action", acts)

    def _reduce(self, M):
        M = np.array([[int(v) for v in row] for row in M], dtype=object).reshape(M.shape)
        for i, d in enumerate(self.invariant_factors):
            if d:
                M[i, :] = [int(v) % d for v in M[i, :]]
        return M

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @classmethod
    def trivial(cls, group: FiniteGroup, modulus: int = 0) -> "QModule":
        """``Z`` (modulus 0) or ``Z/m`` with trivial action."""
        one = np.ones((1, 1), dtype=object)
        return cls(group, (modulus,), tuple(one for _ in range(group.order)))

    @classmethod
    def trivial_abelian(cls, group: FiniteGroup, factors: Sequence[int]) -> "QModule":
        k = len(factors)
        eye = np.eye(k, dtype=np.int64)
        return cls(group, tuple(factors), tuple(eye for _ in range(group.order)))

    def reduce_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) % d if d else int(x) for x, d in zip(v, self.invariant_factors))

    def act(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce_vector(np.dot(self.action[g], np.array(list(v), dtype=object)))

    def ring_action(self, a: GroupRingElement) -> np.ndarray:
        k = self.rank
        M = np.zeros((k, k), dtype=object)
        for g, c in a.coeffs.items():
            M = M + c * self.action[g]
        return M

    @cached_property
    def ring_action_int64(self):
        return tuple(np.array(a, dtype=np.int64) for a in self.action)

    @cached_property
    def exponent(self) -> int:
        """lcm of the factors, or 0 when a free coordinate is present."""
        from math import lcm
        if any(d == 0 for d in self.invariant_factors):
            return 0
        return lcm(*self.invariant_factors) if self.invariant_factors else 1

    def check(self) -> list[str]:
        """Homomorphism and well-definedness failures of the action (empty when valid)."""
        out = []
        G = self.group
        k = self.rank
        if k and not np.array_equal(self.action[0], self._reduce(np.eye(k, dtype=np.int64))):
            out.append("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                lhs = self._reduce(np.dot(self.action[g], self.action[h]))
                if not np.array_equal(lhs, self.action[G.table[g][h]]):
                    out.append(f"action({g})*action({h}) != action({G.table[g][h]})")
        for g in range(G.order):
            for j, d in enumerate(self.invariant_factors):
                if not d:
                    continue
                col = [int(self.action[g][i, j]) * d for i in range(k)]
                if any(self.reduce_vector(col)):
                    out.append(f"action({g}) does not preserve the relation of coordinate {j}")
        return out

    def restrict(self, embedding: Sequence[int], subgroup_group: FiniteGroup) -> "QModule":
        return QModule(subgroup_group, self.invariant_factors, tuple(self.action[g] for g in embedding))


# --------------------------------------------------------------- resolutions

@dataclass(frozen=True)
class FreeResolutionSegment:
    """``B_n -> ... -> B_1 -> B_0 -> Z`` with ``boundaries[i-1] = d_i: B_i -> B_{i-1}``."""

    group: FiniteGroup
    ranks: tuple[int, ...]
    boundaries: tuple[ZQMatrix, ...]
    labels: tuple[tuple, ...] = ()

    @property
    def length(self) -> int:
        return len(self.boundaries)

    def augmentation_check(self) -> bool:
        d1 = self.boundaries[0] if self.boundaries else None
        if d1 is None:
            return True
        return all(a.augmentation() == 0 for a in d1.entries.values())

    def check(self) -> list[str]:
        out = []
        if not self.augmentation_check():
            out.append("augmentation o d1 != 0")
        for i in range(1, len(self.boundaries)):
            if not self.boundaries[i - 1].compose(self.boundaries[i]).is_zero():
                out.append(f"d{i} o d{i + 1} != 0")
        return out

    def to_json(self) -> dict:
        return {"ranks": list(self.ranks), "boundaries": [b.to_json() for b in self.boundaries]}


BAR_BOUNDS = {0: 64, 1: 64, 2: 64, 3: 24, 4: 8, 5: 6}


def bar_resolution(Q: FiniteGroup, n: int, bound: int | None = None) -> FreeResolutionSegment:
    """Normalized bar resolution up to ``B_n``; basis of ``B_i`` is non-identity ``i``-tuples."""
    if n < 0 or n > 5:
        raise ValueError("bar resolution degree must be in 0..5")
    limit = bound if bound is not None else BAR_BOUNDS.get(n, 4)
    if Q.order > limit:
        raise SizeBoundExceeded(f"bar resolution of degree {n} limited to |Q| <= {limit}")
    nonid = list(range(1, Q.order))
    tuples = [list(itertools.product(nonid, repeat=i)) for i in range(n + 1)]
    index = [{t: k for k, t in enumerate(ts)} for ts in tuples]
    one = GroupRingElement.one(Q)
    boundaries = []
    for i in range(1, n + 1):
        entries: dict[tuple[int, int], GroupRingElement] = {}

        def add(row, col, a):
            key = (row, col)
            entries[key] = entries[key] + a if key in entries else a

        for col, t in enumerate(tuples[i]):
            add(index[i - 1][t[1:]], col, GroupRingElement.element(Q, t[0]))
            for k in range(i - 1):
                prod = Q.table[t[k]][t[k + 1]]
                if prod:
                    face = t[:k] + (prod,) + t[k + 2:]
                    add(index[i - 1][face], col, one * (-1) ** (k + 1))
            add(index[i - 1][t[:-1]], col, one * (-1) ** i)
        boundaries.append(ZQMatrix(Q, len(tuples[i - 1]), len(tuples[i]), entries))
    return FreeResolutionSegment(Q, tuple(len(ts) for ts in tuples), tuple(boundaries), tuple(map(tuple, tuples)))


def periodic_resolution(n: int, length: int) -> FreeResolutionSegment:
    """Rank-one resolution of ``Z`` over ``C_n``: boundaries alternate ``x - 1`` and the norm."""
    if n < 2:
        raise ValueError("cyclic group order must be at least 2")
    if length < 0 or length > 5:
        raise ValueError("length must be in 0..5")
    Q = cyclic_group(n)
    x_minus_1 = GroupRingElement.element(Q, 1) - GroupRingElement.one(Q)
    norm = GroupRingElement.norm(Q)
    bounds = tuple(
        ZQMatrix(Q, 1, 1, {(0, 0): x_minus_1 if i % 2 == 1 else norm}) for i in range(1, length + 1)
    )
    return FreeResolutionSegment(Q, (1,) * (length + 1), bounds)
