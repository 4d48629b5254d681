"""Group cohomology ``H^n(Q, M)`` for finite ``Q`` via free resolutions.

Cochains are ``Hom_ZQ(B_n, M) = M^(rank B_n)`` laid out as flat integer
vectors: coordinate ``b * rank(M) + i`` is the ``i``-th coordinate of the
value on basis element ``b``.  For the normalized bar resolution the basis
elements are tuples of non-identity group elements, so a cochain is a
normalized function ``(Q \\ e)^n -> M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, GroupError, SizeBoundExceeded, Subgroup
from .grouprings import FreeResolutionSegment, QModule, bar_resolution, periodic_resolution
from .linalg import (
    AbelianGroupStructure,
    IntegerSolver,
    IntMatrix,
    _run_kernel,
    smith_normal_form,
)


class NotACocycle(ValueError):
    pass


def _symmetric_mod(v: np.ndarray, d: int) -> np.ndarray:
    """Residues in ``(-d/2, d/2]``; small entries keep elimination growth down."""
    r = v % d
    return np.where(r > d // 2, r - d, r)


class CochainComplex:
    """``Hom_ZQ(resolution, M)`` with integer coboundary matrices."""

    def __init__(self, resolution: FreeResolutionSegment, module: QModule):
        if resolution.group != module.group:
            raise ValueError("module and resolution are over different groups")
        self.resolution = resolution
        self.module = module
        self.group = module.group
        self._delta: dict[int, np.ndarray] = {}
        self._solvers: dict[int, IntegerSolver] = {}
        self._groups: dict[int, "CohomologyGroup"] = {}

    def dimension(self, n: int) -> int:
        return self.resolution.ranks[n] * self.module.rank

    def torsion_vector(self, n: int) -> list[int]:
        return list(self.module.invariant_factors) * self.resolution.ranks[n]

    def coboundary(self, n: int) -> np.ndarray:
        """Integer matrix of ``delta^n: C^n -> C^(n+1)`` (int64)."""
        if n in self._delta:
            return self._delta[n]
        if n < 0:
            raise ValueError("negative degree")
        if n + 1 > self.resolution.length:
            raise ValueError(f"resolution too short for delta^{n}")
        k = self.module.rank
        d = self.resolution.boundaries[n]  # d_{n+1}: B_{n+1} -> B_n
        M = np.zeros((d.cols * k, d.rows * k), dtype=np.int64)
        acts = self.module.ring_action_int64
        for (i, j), a in d.entries.items():
            block = np.zeros((k, k), dtype=np.int64)
            for g, c in a.coeffs.items():
                block += c * acts[g]
            M[j * k:(j + 1) * k, i * k:(i + 1) * k] += block
        facs = self.module.invariant_factors
        for r in range(M.shape[0]):
            dd = facs[r % k]
            if dd:
                M[r] = _symmetric_mod(M[r], dd)
        self._delta[n] = M
        return M

    def apply_coboundary(self, n: int, values: Sequence[int]) -> list[int]:
        M = self.coboundary(n)
        v = np.array([int(x) for x in values], dtype=object)
        out = np.dot(M.astype(object), v) if M.size else np.zeros(M.shape[0], dtype=object)
        tv = self.torsion_vector(n + 1)
        return [int(x) % t if t else int(x) for x, t in zip(out, tv)]

    def reduce(self, n: int, values: Sequence[int]) -> list[int]:
        return [int(x) % t if t else int(x) for x, t in zip(values, self.torsion_vector(n))]

    def is_cocycle(self, n: int, values: Sequence[int]) -> bool:
        return not any(self.apply_coboundary(n, values))

    def _boundary_solver(self, n: int) -> IntegerSolver:
        """Solver for ``[delta^(n-1) | torsion relations] y = c`` in ``C^n``."""
        if n not in self._solvers:
            N = self.dimension(n)
            parts = []
            if n >= 1:
                parts.append(self.coboundary(n - 1))
            tv = self.torsion_vector(n)
            tcols = [i for i, t in enumerate(tv) if t]
            T = np.zeros((N, len(tcols)), dtype=np.int64)
            for c, i in enumerate(tcols):
                T[i, c] = tv[i]
            parts.append(T)
            A = np.hstack(parts) if parts else np.zeros((N, 0), dtype=np.int64)
            self._solvers[n] = IntegerSolver(A)
        return self._solvers[n]

    def coboundary_preimage(self, n: int, values: Sequence[int]) -> list[int] | None:
        """Some ``b`` in ``C^(n-1)`` with ``delta b = values`` (mod torsion), or None."""
        sol = self._boundary_solver(n).solve([int(x) for x in values])
        if sol is None:
            return None
        if n == 0:
            return []
        return self.reduce(n - 1, sol[: self.dimension(n - 1)])

    def cohomology(self, n: int) -> "CohomologyGroup":
        if n not in self._groups:
            self._groups[n] = CohomologyGroup(self, n)
        return self._groups[n]


def _cocycle_lattice(cx: CochainComplex, n: int):
    """Basis columns of ``Z^n`` (inside ``Z^N``) and a coordinate map."""
    N = cx.dimension(n)
    delta = cx.coboundary(n)
    tv_next = cx.torsion_vector(n + 1)
    e = cx.module.exponent
    if N == 0:
        return np.zeros((0, 0), dtype=object), lambda x: []
    if e > 0 or all(t == 0 for t in tv_next):
        if e > 0:
            scale = np.array([e // t for t in tv_next], dtype=np.int64)
            A = delta * scale[:, None]
        else:
            A = delta
        d, _, V, W, _ = _run_kernel(A, False, True, True)
        V = np.array(V, dtype=object).reshape(N, N)
        W = np.array(W, dtype=object).reshape(N, N)
        r = len(d)
        if e > 0:
            f = [e // gcd(e, s) for s in d] + [1] * (N - r)
            keep = list(range(N))
        else:
            f = [1] * N
            keep = list(range(r, N))
        basis = V[:, keep] * np.array([f[i] for i in keep], dtype=object)[None, :]

        def coords(x):
            y = np.dot(W, np.array([int(v) for v in x], dtype=object))
            out = []
            for i in keep:
                q, rem = divmod(int(y[i]), f[i])
                if rem:
                    raise NotACocycle("vector is not in the cocycle lattice")
                out.append(q)
            if e == 0 and any(int(y[i]) for i in range(r)):
                raise NotACocycle("vector is not in the cocycle lattice")
            return out

        return basis, coords

    # Mixed free and torsion coefficients: project the kernel of [delta | T].
    tcols = [i for i, t in enumerate(tv_next) if t]
    T = np.zeros((delta.shape[0], len(tcols)), dtype=np.int64)
    for c, i in enumerate(tcols):
        T[i, c] = tv_next[i]
    from .linalg import kernel_basis

    K = kernel_basis(np.hstack([delta, T]))
    G = np.array([k[:N] for k in K], dtype=object).reshape(len(K), N)  # generators as rows
    d, _, _, W, _ = _run_kernel(G, False, False, True)
    W = np.array(W, dtype=object).reshape(N, N)
    basis = np.array([[int(W[i, j]) * d[i] for i in range(len(d))] for j in range(N)], dtype=object)
    basis = basis.reshape(N, len(d))
    solver = IntegerSolver(IntMatrix._wrap(basis))

    def coords(x):
        y = solver.solve([int(v) for v in x])
        if y is None:
            raise NotACocycle("vector is not in the cocycle lattice")
        return y

    return basis, coords


class CohomologyGroup:
    """``H^n`` as ``cocycles / (coboundaries + torsion relations)`` with coordinates."""

    def __init__(self, cx: CochainComplex, n: int):
        self.complex = cx
        self.degree = n
        N = cx.dimension(n)
        basis, coords = _cocycle_lattice(cx, n)
        self._basis = basis
        self._coords = coords
        r = basis.shape[1] if basis.size else 0
        gens = []
        if n >= 1:
            delta_prev = cx.coboundary(n - 1)
            gens.extend(delta_prev[:, j] for j in range(delta_prev.shape[1]))
        tv = cx.torsion_vector(n)
        for i, t in enumerate(tv):
            if t:
                v = np.zeros(N, dtype=object)
                v[i] = t
                gens.append(v)
        rel = np.zeros((r, len(gens)), dtype=object)
        for j, gvec in enumerate(gens):
            rel[:, j] = coords(gvec)
        self._r = r
        if r and len(gens):
            dcmp = smith_normal_form(IntMatrix._wrap(rel), want_u=True, want_v=False)
            diag = list(dcmp.diagonal)
            self._U = dcmp.U.array
        else:
            diag = []
            self._U = np.eye(r, dtype=object) * 1
        self._sigma = diag + [0] * (r - len(diag))
        self._visible = [i for i, s in enumerate(self._sigma) if s != 1]
        self.structure = AbelianGroupStructure(
            sum(1 for s in self._sigma if s == 0), tuple(s for s in self._sigma if s > 1)
        )

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Factors of the visible summands in coordinate order (0 for ``Z``)."""
        return tuple(self._sigma[i] for i in self._visible)

    @property
    def order(self) -> int | None:
        return self.structure.order

    def class_of_cocycle(self, values: Sequence[int]) -> tuple[int, ...]:
        cx = self.complex
        if not cx.is_cocycle(self.degree, values):
            raise NotACocycle("cochain is not a cocycle")
        y = self._coords(values)
        w = np.dot(self._U, np.array(y, dtype=object)) if self._r else []
        out = []
        for i in self._visible:
            s = self._sigma[i]
            out.append(int(w[i]) % s if s else int(w[i]))
        return tuple(out)

    @cached_property
    def _U_inverse(self):
        r = self._r
        if not r:
            return np.zeros((0, 0), dtype=object)
        dec = smith_normal_form(IntMatrix._wrap(self._U), want_u=True, want_v=True)
        # U' U V' = I  =>  U^-1 = V' U'
        return np.dot(dec.V.array, dec.U.array)

    def cocycle_of_class(self, coords: Sequence[int]) -> list[int]:
        if len(coords) != len(self._visible):
            raise ValueError("coordinate vector has the wrong length")
        w = np.zeros(self._r, dtype=object)
        for c, i in zip(coords, self._visible):
            w[i] = int(c)
        y = np.dot(self._U_inverse, w) if self._r else w
        x = np.dot(self._basis, y) if self._r else np.zeros(self.complex.dimension(self.degree), dtype=object)
        return self.complex.reduce(self.degree, [int(v) for v in x])

    def generators(self) -> list[list[int]]:
        """Representative cocycles of the coordinate generators."""
        k = len(self._visible)
        return [self.cocycle_of_class([1 if j == i else 0 for j in range(k)]) for i in range(k)]

    def element_order(self, coords: Sequence[int]) -> int | None:
        """Order of a class in ``H^n`` (None when infinite)."""
        order = 1
        from math import lcm
        for c, s in zip(coords, self.invariant_factors):
            if s == 0:
                if c:
                    return None
                continue
            order = lcm(order, s // gcd(s, c))
        return order


@dataclass(frozen=True, eq=False)
class Cochain:
    complex: CochainComplex
    degree: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = self.complex.reduce(self.degree, self.values)
        if len(vals) != self.complex.dimension(self.degree):
            raise ValueError("cochain has the wrong number of coordinates")
        object.__setattr__(self, "values", tuple(vals))

    @property
    def module(self) -> QModule:
        return self.complex.module

    def value(self, basis_index: int) -> tuple[int, ...]:
        k = self.complex.module.rank
        return self.values[basis_index * k:(basis_index + 1) * k]

    def value_at(self, *elements: int) -> tuple[int, ...]:
        """Value on a bar tuple; zero when an argument is the identity."""
        if any(g == 0 for g in elements):
            return (0,) * self.complex.module.rank
        labels = self.complex.resolution.labels[self.degree]
        return self.value(labels.index(tuple(elements)))

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.complex, self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, k: int) -> "Cochain":
        return Cochain(self.complex, self.degree, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def coboundary(self) -> "Cochain":
        return Cochain(self.complex, self.degree + 1, tuple(self.complex.apply_coboundary(self.degree, self.values)))

    def is_cocycle(self) -> bool:
        return self.complex.is_cocycle(self.degree, self.values)

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    degree: int
    module: QModule
    representative: Cochain
    coordinates: tuple[int, ...]
    group: CohomologyGroup

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    @property
    def order(self) -> int | None:
        return self.group.element_order(self.coordinates)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "invariant_factors": list(self.group.invariant_factors),
            "coordinates": list(self.coordinates),
            "order": self.order,
            "zero": self.is_zero(),
        }


COHOMOLOGY_BOUNDS = {0: 64, 1: 64, 2: 24, 3: 8, 4: 6}


def bar_complex(Q: FiniteGroup, M: QModule, n: int, bound: int | None = None) -> CochainComplex:
    """Cochain complex on the normalized bar resolution, long enough for ``H^n``."""
    limit = COHOMOLOGY_BOUNDS.get(n, 4) if bound is None else bound
    if Q.order > limit:
        raise SizeBoundExceeded(f"bar cohomology in degree {n} limited to |Q| <= {limit}")
    return CochainComplex(bar_resolution(Q, n + 1, bound=max(limit, Q.order)), M)


def _cyclic_powers(Q: FiniteGroup) -> list[int]:
    n = Q.order
    gens = [g for g in range(n) if Q.element_orders[g] == n]
    if n < 2 or not gens:
        raise GroupError("periodic resolution needs a cyclic group of order >= 2")
    return [Q.power(gens[0], i) for i in range(n)]


def periodic_complex(Q: FiniteGroup, M: QModule, n: int) -> CochainComplex:
    """Cochain complex on the periodic resolution (``Q`` must be cyclic of order >= 2)."""
    powers = _cyclic_powers(Q)
    res = periodic_resolution(Q.order, n + 1)
    transported = QModule(res.group, M.invariant_factors, tuple(M.action[p] for p in powers))
    return CochainComplex(res, transported)


def cohomology_group(Q: FiniteGroup, M: QModule, n: int, resolution: str = "auto") -> CohomologyGroup:
    """``H^n(Q, M)`` for ``n`` in ``0..4``.

    ``resolution`` is ``"bar"``, ``"periodic"`` (cyclic ``Q``) or ``"auto"``,
    which uses the periodic resolution for cyclic groups in degree 4.
    """
    if not 0 <= n <= 4:
        raise ValueError("degree must be in 0..4")
    if resolution == "auto":
        cyclic = Q.order >= 2 and max(Q.element_orders) == Q.order
        resolution = "periodic" if (cyclic and n >= 4) else "bar"
    if resolution == "periodic":
        return periodic_complex(Q, M, n).cohomology(n)
    if resolution != "bar":
        raise ValueError(f"unknown resolution {resolution!r}")
    return bar_complex(Q, M, n).cohomology(n)


def cohomology_class(cochain: Cochain) -> CohomologyClass:
    if not cochain.is_cocycle():
        raise NotACocycle("cochain is not a cocycle")
    H = cochain.complex.cohomology(cochain.degree)
    return CohomologyClass(cochain.degree, cochain.module, cochain, H.class_of_cocycle(cochain.values), H)


def is_coboundary(c: Cochain) -> Cochain | None:
    """A cochain ``b`` with ``delta b = c`` when ``c`` is a coboundary, else None."""
    if not c.is_cocycle():
        raise NotACocycle("input is not a cocycle")
    if c.degree == 0:
        return None if any(c.values) else Cochain(c.complex, 0, c.values)
    b = c.complex.coboundary_preimage(c.degree, c.values)
    if b is None:
        return None
    return Cochain(c.complex, c.degree - 1, tuple(b))


def class_order(c: Cochain, limit: int = 10_000) -> int | None:
    """Smallest ``k >= 1`` with ``k*c`` a coboundary (membership tests only)."""
    for k in range(1, limit + 1):
        if is_coboundary(c * k) is not None:
            return k
    return None


def bar_cochain(cx: CochainComplex, degree: int, function) -> Cochain:
    """Tabulate ``function(*tuple) -> coordinates`` over the bar basis."""
    labels = cx.resolution.labels[degree]
    vals: list[int] = []
    for t in labels:
        vals.extend(function(*t))
    return Cochain(cx, degree, tuple(vals))


def restrict_cochain(c: Cochain, sub: Subgroup) -> Cochain:
    """Restrict a bar cochain to a subgroup (new bar complex over the subgroup)."""
    cx = c.complex
    if not cx.resolution.labels:
        raise ValueError("restriction needs a bar-resolution cochain")
    M = cx.module.restrict(sub.embedding, sub.group)
    sub_cx = bar_complex(sub.group, M, c.degree, bound=max(sub.group.order, 1))
    emb = sub.embedding
    return bar_cochain(sub_cx, c.degree, lambda *t: c.value_at(*(emb[h] for h in t)))
