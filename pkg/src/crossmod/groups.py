"""Finite groups given by multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity.  The helpers
here (subgroups, quotients, products, homomorphism extension, automorphism
search) are shared by the crossed-module and extension code.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence


class GroupError(ValueError):
    pass


class SizeBoundExceeded(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise GroupError("multiplication table must be square and non-empty")
        if t[0] != tuple(range(n)) or tuple(row[0] for row in t) != tuple(range(n)):
            raise GroupError("element 0 must be the identity")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, *elements: int) -> int:
        x = 0
        for a in elements:
            x = self.table[x][a]
        return x

    def conj(self, g: int, a: int) -> int:
        """``g a g^-1``."""
        return self.table[self.table[g][a]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order)))

    def generated(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {0}
        todo = [0]
        while todo:
            a = todo.pop()
            for g in gens:
                b = self.table[a][g]
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return tuple(sorted(seen))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set found greedily, preferring high element order."""
        gens: list[int] = []
        span = {0}
        candidates = sorted(range(1, self.order), key=lambda a: (-self.element_orders[a], a))
        for a in candidates:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = set(self.generated(gens))
        return tuple(gens)

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        s = set(elements)
        return 0 in s and all(self.table[a][self.inverses[b]] in s for a in s for b in s)

    def is_normal(self, elements: Iterable[int]) -> bool:
        s = set(elements)
        return self.is_subgroup(s) and all(self.conj(g, a) in s for g in range(self.order) for a in s)

    def check_axioms(self, exhaustive_limit: int = 200, samples: int = 20000, seed: int = 0) -> list[str]:
        """Return a list of violated group axioms (empty when the table is a group)."""
        problems = []
        n, t = self.order, self.table
        full = set(range(n))
        for a in range(n):
            if set(t[a]) != full:
                problems.append(f"row {a} is not a permutation")
            if {t[b][a] for b in range(n)} != full:
                problems.append(f"column {a} is not a permutation")
        if problems:
            return problems
        if n <= exhaustive_limit:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                problems.append(f"associativity fails at {(a, b, c)}")
                break
        return problems

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "FiniteGroup":
        g = cls(tuple(tuple(r) for r in data["table"]), name=name)
        if "order" in data and data["order"] != g.order:
            raise GroupError("order field disagrees with table")
        bad = g.check_axioms()
        if bad:
            raise GroupError("; ".join(bad[:3]))
        return g


def group_from_elements(elements: Sequence[Hashable], mul: Callable, name: str = "") -> FiniteGroup:
    """Build a table from concrete elements; ``elements[0]`` must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Elements ``(g, h)`` numbered ``g * |H| + h``."""
    m = H.order
    table = tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.order * m))
        for a in range(G.order * m)
    )
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return FiniteGroup(table, name=name)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as its own group plus the embedding (increasing indices)."""

    group: FiniteGroup
    embedding: tuple[int, ...]
    ambient: FiniteGroup

    def index_of(self, ambient_element: int) -> int:
        return self.embedding.index(ambient_element)


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    els = tuple(sorted(set(elements)))
    if not G.is_subgroup(els):
        raise GroupError("elements do not form a subgroup")
    pos = {a: i for i, a in enumerate(els)}
    table = tuple(tuple(pos[G.table[a][b]] for b in els) for a in els)
    return Subgroup(FiniteGroup(table), els, G)


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    projection: tuple[int, ...]
    representatives: tuple[int, ...]


def quotient(G: FiniteGroup, normal: Iterable[int]) -> Quotient:
    """``G/N`` with cosets numbered by their smallest element."""
    N = tuple(sorted(set(normal)))
    if not G.is_normal(N):
        raise GroupError("subgroup is not normal")
    proj = [-1] * G.order
    reps = []
    for g in range(G.order):
        if proj[g] < 0:
            k = len(reps)
            reps.append(g)
            for n in N:
                proj[G.table[g][n]] = k
    table = tuple(tuple(proj[G.table[a][b]] for b in reps) for a in reps)
    return Quotient(FiniteGroup(table), tuple(proj), tuple(reps))


@dataclass(frozen=True)
class Pullback:
    group: FiniteGroup
    pairs: tuple[tuple[int, int], ...]
    proj1: tuple[int, ...]
    proj2: tuple[int, ...]

    def index_of(self, a: int, b: int) -> int:
        return self._index[(a, b)]

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.pairs)}


def pullback(G1: FiniteGroup, f1: Sequence[int], G2: FiniteGroup, f2: Sequence[int]) -> Pullback:
    """The subgroup of ``G1 x G2`` of pairs with equal images, in lexicographic order."""
    by_image: dict[int, list[int]] = {}
    for b in range(G2.order):
        by_image.setdefault(f2[b], []).append(b)
    pairs = tuple((a, b) for a in range(G1.order) for b in by_image.get(f1[a], ()))
    index = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(index[(G1.table[a1][a2], G2.table[b1][b2])] for a2, b2 in pairs) for a1, b1 in pairs
    )
    return Pullback(FiniteGroup(table), pairs, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[G.table[a][b]] == H.table[f[a]][f[b]] for a in range(G.order) for b in range(G.order))


def extend_homomorphism(
    G: FiniteGroup, gens: Sequence[int], images: Sequence[int], H: FiniteGroup
) -> list[int] | None:
    """The homomorphism ``G -> H`` sending ``gens`` to ``images``, or None.

    ``gens`` must generate ``G``.  Every Cayley-graph edge ``a -> g a`` is
    checked, which suffices for the map to be a homomorphism.
    """
    f = [-1] * G.order
    f[0] = 0
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g, h in zip(gens, images):
            b = G.table[g][a]
            v = H.table[h][f[a]]
            if f[b] < 0:
                f[b] = v
                queue.append(b)
            elif f[b] != v:
                return None
    if min(f) < 0:
        raise GroupError("given elements do not generate the group")
    return f


def homomorphisms(
    G: FiniteGroup,
    H: FiniteGroup,
    candidates: Sequence[Iterable[int]] | None = None,
    injective: bool = False,
) -> Iterable[list[int]]:
    """All homomorphisms ``G -> H`` by backtracking over images of ``G.generators``.

    Images are pruned by element order before the closure check.
    """
    gens = G.generators
    if candidates is None:
        candidates = [
            [h for h in range(H.order) if G.element_orders[g] % H.element_orders[h] == 0] for g in gens
        ]
    if injective:
        candidates = [[h for h in c if H.element_orders[h] == G.element_orders[g]] for c, g in zip(candidates, gens)]
    for images in itertools.product(*candidates):
        f = extend_homomorphism(G, gens, images, H)
        if f is not None and (not injective or len(set(f)) == G.order):
            yield f


def automorphism_permutations(G: FiniteGroup, bound: int = 24) -> list[tuple[int, ...]]:
    """All automorphisms of ``G`` as permutation tuples, sorted with the identity first."""
    if G.order > bound:
        raise SizeBoundExceeded(f"automorphism search limited to order {bound}, got {G.order}")
    if G.order == 1:
        return [(0,)]
    auts = sorted(tuple(f) for f in homomorphisms(G, G, injective=True))
    return auts


def compose_permutations(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def permutation_group(perms: Sequence[tuple[int, ...]], name: str = "") -> FiniteGroup:
    """Group of permutations under composition; ``perms[0]`` must be the identity."""
    return group_from_elements(list(perms), compose_permutations, name=name)


def element_order_statistics(G: FiniteGroup) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for k in G.element_orders:
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> list[int] | None:
    if G.order != H.order or element_order_statistics(G) != element_order_statistics(H):
        return None
    for f in homomorphisms(G, H, injective=True):
        return f
    return None


class AbelianCoordinates:
    """Invariant-factor coordinates on an abelian subgroup ``A`` of ``G``.

    ``A`` is identified with ``Z/d1 + ... + Z/dk`` (``d1 | d2 | ...``, all
    ``> 1``).  Built by a Schreier-style walk from a generating set followed by
    a Smith decomposition of the relation lattice.
    """

    def __init__(self, G: FiniteGroup, elements: Iterable[int]):
        from .linalg import IntMatrix, smith_normal_form

        els = tuple(sorted(set(elements)))
        if not G.is_subgroup(els):
            raise GroupError("coordinates need a subgroup")
        if any(G.table[a][b] != G.table[b][a] for a in els for b in els):
            raise GroupError("coordinates need an abelian subgroup")
        self.group = G
        self.elements = els
        sub = subgroup(G, els)
        gens = [els[g] for g in sub.group.generators]
        k = len(gens)
        vec = {0: (0,) * k}
        queue = deque([0])
        relations = []
        while queue:
            a = queue.popleft()
            for i, g in enumerate(gens):
                b = G.table[a][g]
                step = tuple(v + (1 if j == i else 0) for j, v in enumerate(vec[a]))
                if b not in vec:
                    vec[b] = step
                    queue.append(b)
                else:
                    rel = tuple(s - t for s, t in zip(step, vec[b]))
                    if any(rel):
                        relations.append(rel)
        if k:
            R = IntMatrix([list(col) for col in zip(*relations)] if relations else [[0]] * k)
            dec = smith_normal_form(R, want_u=True, want_v=False)
            diag = list(dec.diagonal) + [0] * (k - len(dec.diagonal))
            U = dec.U.tolist()
        else:
            diag, U = [], []
        if any(d == 0 for d in diag):
            raise GroupError("relation lattice is not of full rank")
        keep = [i for i, d in enumerate(diag) if d > 1]
        self.factors = tuple(diag[i] for i in keep)
        self._coords: dict[int, tuple[int, ...]] = {}
        for a, v in vec.items():
            self._coords[a] = tuple(sum(U[i][j] * v[j] for j in range(k)) % diag[i] for i in keep)
        self._elements = {c: a for a, c in self._coords.items()}
        if len(self._elements) != len(els):
            raise GroupError("coordinate map is not injective")

    @property
    def rank(self) -> int:
        return len(self.factors)

    def coords(self, a: int) -> tuple[int, ...]:
        return self._coords[a]

    def element(self, coords: Sequence[int]) -> int:
        key = tuple(int(c) % d for c, d in zip(coords, self.factors))
        return self._elements[key]

    def basis(self) -> list[int]:
        return [self.element([1 if j == i else 0 for j in range(self.rank)]) for i in range(self.rank)]

    def automorphism_matrix(self, f: Sequence[int] | Callable[[int], int]) -> list[list[int]]:
        """Matrix (columns = images of basis elements) of an endomorphism of ``A``."""
        fn = f if callable(f) else (lambda a: f[a])
        cols = [self.coords(fn(b)) for b in self.basis()]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]
