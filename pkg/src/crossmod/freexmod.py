"""The free crossed module on a presentation and its module of identities.

An element of the free crossed module ``C_R`` is kept as a formal product of
conjugated relators ``prod u_j r_j^(e_j) u_j^-1``.  It is never rewritten.
Two invariants are cached instead: the boundary, which is the reduced
product in the free group ``F``, and the image in the abelianization
``ZQ[R]``.  For a finite quotient ``Q`` these two together decide equality in
``C_R``: if the boundaries agree, then ``a b^-1`` lies in ``pi = ker d``, and
``pi`` embeds in ``ZQ[R]``.

Coordinates in ``ZQ[R]`` are integer vectors with entry ``r * |Q| + q`` for
the basis element ``q . r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .cohomology import Cochain, bar_complex, bar_cochain, cohomology_class, CohomologyClass
from .grouprings import QModule, fox_boundaries, fox_vector, zq_matrix_to_int64
from .groups import FiniteGroup, Subgroup, subgroup
from .linalg import AbelianGroupStructure, IntegerSolver, kernel_basis
from .presentations import Presentation, WordMap, todd_coxeter
from .words import Word, conjugate, parse_word

Factor = tuple[Word, int, int]  # (conjugator, relator index, sign)


class PresentationMismatch(ValueError):
    pass


class NotAnIdentity(ValueError):
    pass


class FreeCrossedModule:
    """``C_R -> F`` for a presentation whose group ``Q`` has been enumerated."""

    def __init__(self, presentation: Presentation, Q: FiniteGroup | None = None, wm: WordMap | None = None,
                 max_cosets: int | None = None):
        if Q is None or wm is None:
            Q, wm = todd_coxeter(presentation, max_cosets) if max_cosets else todd_coxeter(presentation)
        self.presentation = presentation
        self.group = Q
        self.word_map = wm

    @property
    def alphabet(self):
        return self.presentation.alphabet

    @property
    def ambient_rank(self) -> int:
        return self.group.order * len(self.presentation.relators)

    def element(self, factors: Iterable[tuple[Word | str, int | str, int]]) -> "FreeCrossedElement":
        out = []
        for u, r, s in factors:
            if isinstance(u, str):
                u = parse_word(self.alphabet, u)
            if s not in (1, -1):
                raise ValueError("factor signs must be +1 or -1")
            out.append((u, self.presentation.relator_index(r), int(s)))
        return FreeCrossedElement(self, tuple(out))

    def relator(self, r: int | str, sign: int = 1, conjugator: Word | str | None = None) -> "FreeCrossedElement":
        u = self.alphabet.identity() if conjugator is None else conjugator
        return self.element([(u, r, sign)])

    def identity(self) -> "FreeCrossedElement":
        return FreeCrossedElement(self, ())

    @cached_property
    def boundaries(self):
        return fox_boundaries(self.presentation, self.group, self.word_map)

    @cached_property
    def d2_matrix(self) -> np.ndarray:
        """Integer expansion of ``d2: ZQ[R] -> ZQ[X]``."""
        return zq_matrix_to_int64(self.boundaries[0])

    @cached_property
    def d1_matrix(self) -> np.ndarray:
        return zq_matrix_to_int64(self.boundaries[1])

    def left_action_matrix(self, q: int) -> np.ndarray:
        """``q .`` on ``ZQ[R]`` in integer coordinates."""
        n = self.group.order
        k = len(self.presentation.relators)
        M = np.zeros((n * k, n * k), dtype=np.int64)
        for r in range(k):
            for g in range(n):
                M[r * n + self.group.table[q][g], r * n + g] = 1
        return M


@dataclass(frozen=True, eq=False)
class FreeCrossedElement:
    parent: FreeCrossedModule
    factors: tuple[Factor, ...]

    @cached_property
    def boundary(self) -> Word:
        A = self.parent.alphabet
        out = A.identity()
        rels = self.parent.presentation.relators
        for u, r, s in self.factors:
            out = out * conjugate(u, rels[r] if s > 0 else ~rels[r])
        return out

    @cached_property
    def abelianization(self) -> tuple[int, ...]:
        n = self.parent.group.order
        v = [0] * self.parent.ambient_rank
        wm = self.parent.word_map
        for u, r, s in self.factors:
            v[r * n + wm(u)] += s
        return tuple(v)

    def _same(self, other: "FreeCrossedElement"):
        if self.parent is not other.parent and self.parent.presentation != other.parent.presentation:
            raise PresentationMismatch("elements of different free crossed modules")

    def __mul__(self, other: "FreeCrossedElement") -> "FreeCrossedElement":
        return fc_multiply(self, other)

    def __invert__(self) -> "FreeCrossedElement":
        return fc_invert(self)

    def __repr__(self):
        names = self.parent.presentation.names
        parts = []
        for u, r, s in self.factors:
            core = names[r] + ("" if s > 0 else "^-1")
            parts.append(core if u.is_identity() else f"^({u}){core}")
        return "FreeCrossedElement(" + " ".join(parts) + ")"


def fc_multiply(a: FreeCrossedElement, b: FreeCrossedElement) -> FreeCrossedElement:
    a._same(b)
    return FreeCrossedElement(a.parent, a.factors + b.factors)


def fc_invert(a: FreeCrossedElement) -> FreeCrossedElement:
    return FreeCrossedElement(a.parent, tuple((u, r, -s) for u, r, s in reversed(a.factors)))


def fc_act(g: Word | str, a: FreeCrossedElement) -> FreeCrossedElement:
    """``g . a``: prefix every conjugator by ``g``."""
    if isinstance(g, str):
        g = parse_word(a.parent.alphabet, g)
    if g.alphabet != a.parent.alphabet:
        raise PresentationMismatch("acting word over a different alphabet")
    return FreeCrossedElement(a.parent, tuple((g * u, r, s) for u, r, s in a.factors))


def fc_equal(a: FreeCrossedElement, b: FreeCrossedElement) -> bool:
    """Equality in ``C_R``: equal boundaries and equal images in ``ZQ[R]``."""
    a._same(b)
    return a.boundary == b.boundary and a.abelianization == b.abelianization


def peiffer_element(x: FreeCrossedElement, y: FreeCrossedElement) -> FreeCrossedElement:
    """``x y x^-1 (d(x).y)^-1``, trivial in ``C_R``."""
    return x * y * ~x * ~fc_act(x.boundary, y)


def verify_identity(e: FreeCrossedElement) -> bool:
    return e.boundary.is_identity()


# ------------------------------------------------------------ identity module

@dataclass(frozen=True, eq=False)
class IdentityModule:
    """``pi = ker d2`` inside ``ZQ[R]`` with a lattice basis and its ``Q``-action."""

    parent: FreeCrossedModule
    basis: np.ndarray  # ambient_rank x rank, columns are basis vectors
    structure: AbelianGroupStructure

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def _solver(self) -> IntegerSolver:
        return IntegerSolver(self.basis.astype(object))

    def coordinates(self, v: Sequence[int]) -> list[int]:
        if not self.rank:
            if any(v):
                raise NotAnIdentity("vector is not in ker d2")
            return []
        y = self._solver.solve([int(x) for x in v])
        if y is None:
            raise NotAnIdentity("vector is not in ker d2")
        return y

    @cached_property
    def action(self) -> tuple[np.ndarray, ...]:
        """Matrices of the ``Q``-action in the kernel basis."""
        mats = []
        for q in range(self.parent.group.order):
            L = self.parent.left_action_matrix(q)
            img = L.astype(object) @ self.basis.astype(object)
            cols = [self.coordinates(img[:, j]) for j in range(self.rank)]
            mats.append(np.array(cols, dtype=object).T.reshape(self.rank, self.rank))
        return tuple(mats)

    def as_qmodule(self) -> QModule:
        return QModule(self.parent.group, (0,) * self.rank, self.action)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "torsion": list(self.structure.torsion),
            "kernel_basis": [[int(x) for x in self.basis[:, j]] for j in range(self.rank)],
        }


def identity_module(fcm: FreeCrossedModule | Presentation, Q: FiniteGroup | None = None,
                    wm: WordMap | None = None) -> IdentityModule:
    if isinstance(fcm, Presentation):
        fcm = FreeCrossedModule(fcm, Q, wm)
    d2 = fcm.d2_matrix
    K = kernel_basis(d2)
    basis = np.array(K, dtype=object).T.reshape(fcm.ambient_rank, len(K))
    # a subgroup of a free abelian group is free
    return IdentityModule(fcm, basis, AbelianGroupStructure(len(K)))


def identity_class(e: FreeCrossedElement, m: IdentityModule) -> list[int]:
    """Coordinates of an identity among relations in the basis of ``pi``."""
    if not verify_identity(e):
        raise NotAnIdentity("element has non-trivial boundary")
    return m.coordinates(e.abelianization)


def cyclic_identities(fcm: FreeCrossedModule, r: int | str = 0) -> list[FreeCrossedElement]:
    """``i_1 = x.r r^-1`` and ``i_k = x^(k-1).i_1`` for a one-generator presentation of ``C_n``."""
    A = fcm.alphabet
    x = A.generator(0)
    n = fcm.group.order
    i1 = fcm.element([(x, r, 1), (A.identity(), r, -1)])
    return [fc_act(x ** k, i1) for k in range(n)]


# ------------------------------------------------------------ k-invariant

class PresentationKInvariant:
    """The class of ``pi -> C_R -> F -> Q`` in ``H^3(Q, pi)``, at cocycle level.

    The section is ``q -> normal word of q``.  For each pair we pick ``a(p, q)``
    in ``ZQ[R]`` with ``d2 a = Fox(s(p)s(q)s(pq)^-1)``.  Any such choice is
    the abelianized image of some ``c`` with ``d(c) = s(p)s(q)s(pq)^-1``,
    because two choices differ by an element of ``pi``.  The cocycle is
    ``z = p.a(q,w) + a(p,qw) - a(pq,w) - a(p,q)``, which lies in ``pi``.
    The crossed module is infinite, so its restriction to a subgroup is taken
    on the cocycle itself rather than through a pullback of groups.
    """

    def __init__(self, fcm: FreeCrossedModule, pi: IdentityModule | None = None):
        self.parent = fcm
        self.pi = pi if pi is not None else identity_module(fcm)
        self._solver = IntegerSolver(fcm.d2_matrix)
        self._a: dict[tuple[int, int], np.ndarray] = {}

    def section(self, q: int) -> Word:
        return self.parent.word_map.word_for(q)

    def correction(self, p: int, q: int) -> np.ndarray:
        key = (p, q)
        if key not in self._a:
            Q = self.parent.group
            w = self.section(p) * self.section(q) * ~self.section(Q.table[p][q])
            rhs = fox_vector(w, self.parent.word_map)
            sol = self._solver.solve(rhs)
            if sol is None:
                raise ArithmeticError("Fox vector of a relation word is not in the image of d2")
            self._a[key] = np.array(sol, dtype=object)
        return self._a[key]

    def value(self, p: int, q: int, w: int) -> list[int]:
        """``z(p, q, w)`` in the basis of ``pi``."""
        Q = self.parent.group
        t = Q.table
        L = self.parent.left_action_matrix(p).astype(object)
        z = L @ self.correction(q, w) + self.correction(p, t[q][w]) - self.correction(t[p][q], w) \
            - self.correction(p, q)
        return self.pi.coordinates(z)

    def cocycle(self, sub: Subgroup | Iterable[int] | None = None) -> Cochain:
        """The cocycle on ``Q`` or, given a subgroup, its restriction there."""
        Q = self.parent.group
        if sub is None:
            sub = subgroup(Q, range(Q.order))
        elif not isinstance(sub, Subgroup):
            sub = subgroup(Q, sub)
        M = self.pi.as_qmodule().restrict(sub.embedding, sub.group)
        cx = bar_complex(sub.group, M, 3, bound=max(sub.group.order, 1))
        emb = sub.embedding
        return bar_cochain(cx, 3, lambda a, b, c: self.value(emb[a], emb[b], emb[c]))

    def restricted_class(self, sub: Subgroup | Iterable[int]) -> CohomologyClass:
        return cohomology_class(self.cocycle(sub))
