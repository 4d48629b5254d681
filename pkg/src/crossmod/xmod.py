"""Finite crossed modules, crossed 2-fold extensions and characteristic classes.

A crossed module is a homomorphism ``d: C -> G`` with a left action of ``G``
on ``C`` such that ``d(g.c) = g d(c) g^-1`` and ``x y x^-1 = d(x).y``.  Its
kernel ``Z`` is central in ``C`` and becomes a module over ``Q = G/d(C)``;
the resulting exact sequence ``Z -> C -> G -> Q`` carries a class in
``H^3(Q, Z)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cohomology import CohomologyClass, Cochain, bar_complex, bar_cochain, cohomology_class
from .grouprings import QModule
from .groups import (
    AbelianCoordinates,
    FiniteGroup,
    GroupError,
    Subgroup,
    automorphism_permutations,
    compose_permutations,
    cyclic_group,
    is_homomorphism,
    permutation_group,
    pullback,
    quotient,
    subgroup,
)


@dataclass(frozen=True, eq=False)
class FiniteCrossedModule:
    C: FiniteGroup
    G: FiniteGroup
    boundary: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]  # action[g][c] = g.c
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(int(v) for v in self.boundary))
        object.__setattr__(self, "action", tuple(tuple(int(v) for v in row) for row in self.action))
        if len(self.boundary) != self.C.order:
            raise ValueError("boundary must list one image per element of C")
        if len(self.action) != self.G.order or any(len(r) != self.C.order for r in self.action):
            raise ValueError("action must be a |G| x |C| table")

    def act(self, g: int, c: int) -> int:
        return self.action[g][c]

    def kernel(self) -> tuple[int, ...]:
        return tuple(c for c in range(self.C.order) if self.boundary[c] == 0)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.boundary)))

    def check(self) -> list[str]:
        return check_crossed_module(self.C, self.G, self.boundary, self.action)

    def is_valid(self) -> bool:
        return not self.check()

    def to_json(self) -> dict:
        return {
            "C": self.C.to_json(),
            "G": self.G.to_json(),
            "boundary": list(self.boundary),
            "action": [list(r) for r in self.action],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteCrossedModule":
        return cls(
            FiniteGroup.from_json(data["C"]),
            FiniteGroup.from_json(data["G"]),
            tuple(data["boundary"]),
            tuple(tuple(r) for r in data["action"]),
        )


def check_crossed_module(
    C: FiniteGroup, G: FiniteGroup, boundary: Sequence[int], action: Sequence[Sequence[int]], limit: int = 20
) -> list[str]:
    """Every failed axiom instance (up to ``limit`` per axiom); empty when valid.

    Exhaustive over ``C x C`` and ``G x C``.
    """
    report: list[str] = []
    tc, tg = C.table, G.table
    nc, ng = C.order, G.order

    def record(kind, items):
        for k, item in enumerate(items):
            if k >= limit:
                report.append(f"{kind}: further failures omitted")
                break
            report.append(f"{kind}: {item}")

    record("boundary not a homomorphism", [
        (a, b) for a in range(nc) for b in range(nc) if boundary[tc[a][b]] != tg[boundary[a]][boundary[b]]
    ])
    record("action of identity not trivial", [c for c in range(nc) if action[0][c] != c])
    record("action not by homomorphisms", [
        (g, a, b) for g in range(ng) for a in range(nc) for b in range(nc)
        if action[g][tc[a][b]] != tc[action[g][a]][action[g][b]]
    ])
    record("action not compatible with products in G", [
        (g, h, c) for g in range(ng) for h in range(ng) for c in range(nc)
        if action[tg[g][h]][c] != action[g][action[h][c]]
    ])
    record("equivariance fails", [
        (g, c) for g in range(ng) for c in range(nc) if boundary[action[g][c]] != G.conj(g, boundary[c])
    ])
    record("Peiffer identity fails", [
        (x, y) for x in range(nc) for y in range(nc) if C.conj(x, y) != action[boundary[x]][y]
    ])
    return report


def inner_crossed_module(G: FiniteGroup, bound: int = 24) -> FiniteCrossedModule:
    """``G -> Aut(G)`` sending an element to its inner automorphism."""
    perms = automorphism_permutations(G, bound=bound)
    A = permutation_group(perms, name=f"Aut({G.name})" if G.name else "")
    index = {p: i for i, p in enumerate(perms)}
    boundary = tuple(index[tuple(G.conj(g, a) for a in range(G.order))] for g in range(G.order))
    return FiniteCrossedModule(G, A, boundary, tuple(perms), name=f"inner({G.name})")


def normal_inclusion(G: FiniteGroup, normal: Iterable[int]) -> FiniteCrossedModule:
    """A normal subgroup included in ``G``, acted on by conjugation."""
    sub = subgroup(G, normal)
    if not G.is_normal(sub.embedding):
        raise GroupError("subgroup is not normal")
    action = tuple(
        tuple(sub.index_of(G.conj(g, sub.embedding[c])) for c in range(sub.group.order)) for g in range(G.order)
    )
    return FiniteCrossedModule(sub.group, G, sub.embedding, action, name="inclusion")


def trivial_crossed_module(M: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]] | None = None
                           ) -> FiniteCrossedModule:
    """The zero map from an abelian group ``M`` to ``Q`` (trivial action by default)."""
    if not M.is_abelian():
        raise GroupError("the zero crossed module needs an abelian source")
    if action is None:
        action = tuple(tuple(range(M.order)) for _ in range(Q.order))
    return FiniteCrossedModule(M, Q, (0,) * M.order, tuple(action), name="zero")


def power_map_crossed_module(n: int, twisted: bool = True) -> FiniteCrossedModule:
    """``C_{n^2} -> C_{n^2}``, ``c -> c^n``.

    With ``twisted`` the generator ``v`` of the acting copy sends ``w`` to
    ``w^(n+1)``; this is the action carried over from the free crossed module
    on ``<x | x^n>`` (where ``x.r = u r``) and gives a class of order ``n``.
    With trivial action the section ``q -> v^q`` yields the zero cocycle.
    """
    m = n * n
    C = cyclic_group(m)
    if twisted:
        action = tuple(tuple((pow(n + 1, g, m) * c) % m for c in range(m)) for g in range(m))
    else:
        action = tuple(tuple(range(m)) for _ in range(m))
    return FiniteCrossedModule(C, C, tuple((n * c) % m for c in range(m)), action,
                               name=f"power{n}" + ("" if twisted else "-trivial"))


# --------------------------------------------------------- 2-fold extensions

@dataclass(frozen=True, eq=False)
class CrossedTwoFoldExtension:
    """``Z -> C -> G -> Q`` built from a crossed module."""

    crossed_module: FiniteCrossedModule
    Q: FiniteGroup
    projection: tuple[int, ...]  # G -> Q
    kernel: tuple[int, ...]  # Z as elements of C
    coordinates: AbelianCoordinates
    module: QModule

    @property
    def C(self) -> FiniteGroup:
        return self.crossed_module.C

    @property
    def G(self) -> FiniteGroup:
        return self.crossed_module.G

    def lift(self, q: int) -> list[int]:
        return [g for g in range(self.G.order) if self.projection[g] == q]

    def check(self) -> list[str]:
        cm = self.crossed_module
        out = []
        C, G = cm.C, cm.G
        if set(self.kernel) != {c for c in range(C.order) if cm.boundary[c] == 0}:
            out.append("Z is not the kernel of the boundary")
        if set(cm.boundary) != {g for g in range(G.order) if self.projection[g] == 0}:
            out.append("image of the boundary is not the kernel of the projection")
        if set(self.projection) != set(range(self.Q.order)):
            out.append("projection is not onto Q")
        if not is_homomorphism(G, self.Q, self.projection):
            out.append("projection is not a homomorphism")
        if not G.is_normal(cm.image()):
            out.append("image of the boundary is not normal")
        if any(C.table[z][c] != C.table[c][z] for z in self.kernel for c in range(C.order)):
            out.append("Z is not central in C")
        # induced action on Z must not depend on the lift
        for q in range(self.Q.order):
            images = {tuple(cm.action[g][z] for z in self.kernel) for g in self.lift(q)}
            if len(images) != 1:
                out.append(f"action of {q} on Z depends on the lift")
        out.extend(self.module.check())
        return out


def _module_on_kernel(cm: FiniteCrossedModule, Q: FiniteGroup, projection: Sequence[int],
                      coords: AbelianCoordinates) -> QModule:
    reps = {}
    for g in range(cm.G.order):
        reps.setdefault(projection[g], g)
    mats = tuple(
        np.array(coords.automorphism_matrix(lambda z, g=reps[q]: cm.action[g][z]), dtype=object).reshape(
            coords.rank, coords.rank)
        for q in range(Q.order)
    )
    return QModule(Q, coords.factors, mats)


def two_fold_extension(cm: FiniteCrossedModule, Q: FiniteGroup | None = None,
                       projection: Sequence[int] | None = None) -> CrossedTwoFoldExtension:
    """Assemble ``ker d -> C -> G -> G/d(C)``.

    ``Q`` and ``projection`` may be supplied to name the cokernel explicitly
    (used by pullbacks); otherwise the quotient ``G/d(C)`` is built.
    """
    if Q is None:
        quo = quotient(cm.G, cm.image())
        Q, projection = quo.group, quo.projection
    elif projection is None:
        raise ValueError("an explicit Q needs its projection")
    kernel = cm.kernel()
    coords = AbelianCoordinates(cm.C, kernel)
    module = _module_on_kernel(cm, Q, projection, coords)
    return CrossedTwoFoldExtension(cm, Q, tuple(projection), kernel, coords, module)


def _factor_data(ext: CrossedTwoFoldExtension, seed: int | None):
    """Section ``s`` (with ``s(e) = e``) and ``c`` with ``s(a)s(b) = d(c(a,b)) s(ab)``."""
    cm = ext.crossed_module
    G, Q = cm.G, ext.Q
    rng = random.Random(seed) if seed is not None else None
    section = [0] * Q.order
    for q in range(1, Q.order):
        lifts = ext.lift(q)
        section[q] = rng.choice(lifts) if rng else lifts[0]
    preimage: dict[int, list[int]] = {}
    for c in range(cm.C.order):
        preimage.setdefault(cm.boundary[c], []).append(c)
    c = {}
    for a in range(Q.order):
        for b in range(Q.order):
            if a == 0 or b == 0:
                c[a, b] = 0
                continue
            target = G.prod(section[a], section[b], G.inv(section[Q.table[a][b]]))
            options = preimage[target]
            c[a, b] = rng.choice(options) if rng else options[0]
    return section, c


def characteristic_cocycle(ext: CrossedTwoFoldExtension, seed: int | None = None) -> Cochain:
    """The normalized 3-cocycle ``z = s1.c(2,3) c(1,23) c(12,3)^-1 c(1,2)^-1`` in ``Z``."""
    cm = ext.crossed_module
    C, Q = cm.C, ext.Q
    section, c = _factor_data(ext, seed)
    t = Q.table
    cx = bar_complex(Q, ext.module, 3)
    kernel = set(ext.kernel)

    def value(a, b, d):
        z = C.prod(cm.action[section[a]][c[b, d]], c[a, t[b][d]], C.inv(c[t[a][b], d]), C.inv(c[a, b]))
        if z not in kernel:
            raise GroupError("3-cocycle value left the kernel; the input is not a crossed module")
        return ext.coordinates.coords(z)

    return bar_cochain(cx, 3, value)


def characteristic_class(cm: FiniteCrossedModule | CrossedTwoFoldExtension, seed: int | None = None
                         ) -> CohomologyClass:
    """Class in ``H^3(Q, Z)`` of a crossed module; ``seed`` re-randomizes the section."""
    ext = cm if isinstance(cm, CrossedTwoFoldExtension) else two_fold_extension(cm)
    return cohomology_class(characteristic_cocycle(ext, seed))


def restrict_extension(ext: CrossedTwoFoldExtension, sub: Subgroup | Iterable[int]) -> CrossedTwoFoldExtension:
    """Pull ``G -> Q`` back along ``Q' -> Q``; ``Z`` and ``C`` are unchanged."""
    if not isinstance(sub, Subgroup):
        sub = subgroup(ext.Q, sub)
    if sub.ambient != ext.Q:
        raise GroupError("subgroup of a different group")
    cm = ext.crossed_module
    pb = pullback(cm.G, ext.projection, sub.group, sub.embedding)
    boundary = tuple(pb.index_of(cm.boundary[c], 0) for c in range(cm.C.order))
    action = tuple(cm.action[g] for g, _ in pb.pairs)
    new = FiniteCrossedModule(cm.C, pb.group, boundary, action, name=f"{cm.name}|restricted")
    module = QModule(sub.group, ext.module.invariant_factors,
                     tuple(ext.module.action[q] for q in sub.embedding))
    return CrossedTwoFoldExtension(new, sub.group, pb.proj2, ext.kernel, ext.coordinates, module)
