"""The extension problem for finite groups.

An abstract kernel ``(N, Q, phi)`` is a homomorphism ``Q -> Out(N)``.  It is
stored through fixed coset representatives ``phi(q)`` in ``Aut(N)``.  The
kernel is realized by an extension exactly when the characteristic class of
the crossed module ``N -> G^phi = Aut(N) x_Out Q`` vanishes in ``H^3(Q, Z(N))``.
When it does, a witness ``b`` with ``delta b = z`` corrects the factor set.
The extensions are then acted on simply transitively by ``H^2(Q, Z(N))``.

Constructed groups use the convention below for ``E = N x Q``:

    (n1, q1)(n2, q2) = (n1 * alpha_q1(n2) * f(q1, q2), q1 q2)

The element ``(n, q)`` gets index ``q * |N| + n``.  ``f`` takes values in ``N``
with ``inn(f(p, q)) = alpha_p alpha_q alpha_pq^-1``, and it satisfies
``f(p, q) f(pq, w) = alpha_p(f(q, w)) f(p, qw)``.

``enumerate_extensions`` is an independent oracle.  It searches factor sets
directly and groups them by central gauge transformations, without using
any cohomology.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .cohomology import Cochain, CohomologyClass, cohomology_class, is_coboundary
from .grouprings import QModule
from .groups import (
    FiniteGroup,
    GroupError,
    SizeBoundExceeded,
    automorphism_permutations,
    compose_permutations,
    cyclic_group,
    direct_product,
    extend_homomorphism,
    group_from_elements,
    homomorphisms,
    is_homomorphism,
    permutation_group,
    pullback,
    quotient,
    subgroup,
)
from .presentations import enumerate_presentation
from .xmod import CrossedTwoFoldExtension, FiniteCrossedModule, characteristic_cocycle, two_fold_extension

log = logging.getLogger(__name__)


class NotExtendible(GroupError):
    pass


class SearchBudgetExceeded(GroupError):
    pass


# ------------------------------------------------------------ automorphisms

@dataclass(frozen=True, eq=False)
class AutData:
    N: FiniteGroup
    perms: tuple[tuple[int, ...], ...]
    Aut: FiniteGroup
    inner: tuple[int, ...]  # n -> index of conjugation by n
    Out: FiniteGroup
    out_projection: tuple[int, ...]  # Aut -> Out
    representatives: tuple[int, ...]  # Out -> lowest-index automorphism in the coset

    @cached_property
    def Inn(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.inner)))

    def apply(self, a: int, n: int) -> int:
        return self.perms[a][n]


_AUT_CACHE: dict[tuple, AutData] = {}


def automorphisms(N: FiniteGroup, bound: int = 24) -> AutData:
    key = (N.table, bound)
    if key in _AUT_CACHE:
        return _AUT_CACHE[key]
    perms = tuple(automorphism_permutations(N, bound=bound))
    Aut = permutation_group(perms)
    index = {p: i for i, p in enumerate(perms)}
    inner = tuple(index[tuple(N.conj(n, a) for a in range(N.order))] for n in range(N.order))
    quo = quotient(Aut, set(inner))
    data = AutData(N, perms, Aut, inner, quo.group, quo.projection, quo.representatives)
    _AUT_CACHE[key] = data
    return data


# ------------------------------------------------------------ kernels

@dataclass(frozen=True, eq=False)
class AbstractKernel:
    N: FiniteGroup
    Q: FiniteGroup
    phi: tuple[int, ...]  # q -> automorphism index (a coset representative)
    aut: AutData
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(a) for a in self.phi))
        if len(self.phi) != self.Q.order:
            raise ValueError("phi needs one automorphism per element of Q")
        if not is_homomorphism(self.Q, self.aut.Out, self.out_map):
            raise GroupError("phi does not induce a homomorphism Q -> Out(N)")

    @classmethod
    def from_out_map(cls, N: FiniteGroup, Q: FiniteGroup, out_map: Sequence[int], aut: AutData | None = None,
                     name: str = "") -> "AbstractKernel":
        aut = aut or automorphisms(N)
        return cls(N, Q, tuple(aut.representatives[o] for o in out_map), aut, name=name)

    @cached_property
    def out_map(self) -> tuple[int, ...]:
        return tuple(self.aut.out_projection[a] for a in self.phi)

    def alpha(self, q: int) -> tuple[int, ...]:
        return self.aut.perms[self.phi[q]]

    @property
    def encoding(self) -> tuple:
        return (self.N.order, self.Q.order, self.N.table, self.Q.table, self.out_map)

    def to_json(self) -> dict:
        return {"N": self.N.to_json(), "Q": self.Q.to_json(), "phi": list(self.phi)}

    @classmethod
    def from_json(cls, data: dict) -> "AbstractKernel":
        N = FiniteGroup.from_json(data["N"])
        Q = FiniteGroup.from_json(data["Q"])
        aut = automorphisms(N)
        phi = []
        # each entry is an index into aut.perms or the automorphism itself as a permutation
        for a in data["phi"]:
            if isinstance(a, list):
                if tuple(a) not in aut.perms:
                    raise ValueError(f"not an automorphism of N: {a}")
                a = aut.perms.index(tuple(a))
            if not 0 <= a < len(aut.perms):
                raise ValueError(f"automorphism index out of range: {a}")
            phi.append(a)
        return cls(N, Q, tuple(phi), aut)

    def __repr__(self):
        label = self.name or f"|N|={self.N.order}, |Q|={self.Q.order}"
        return f"<AbstractKernel {label} out={self.out_map}>"


def abstract_kernels(N: FiniteGroup, Q: FiniteGroup, name: str = "") -> list[AbstractKernel]:
    """Every homomorphism ``Q -> Out(N)`` as a kernel, sorted by encoding."""
    aut = automorphisms(N)
    if Q.order == 1:
        maps = [[0]]
    elif aut.Out.order == 1:
        maps = [[0] * Q.order]
    else:
        maps = list(homomorphisms(Q, aut.Out))
    maps = sorted({tuple(m) for m in maps})
    return [AbstractKernel.from_out_map(N, Q, m, aut, name=f"{name}#{i}" if name else "") for i, m in enumerate(maps)]


def _kernel_pullback(k: AbstractKernel):
    aut = k.aut
    pb = pullback(aut.Aut, aut.out_projection, k.Q, k.out_map)
    boundary = tuple(pb.index_of(aut.inner[n], 0) for n in range(k.N.order))
    action = tuple(aut.perms[a] for a, _ in pb.pairs)
    return FiniteCrossedModule(k.N, pb.group, boundary, action, name="kernel"), pb


def kernel_crossed_module(k: AbstractKernel) -> FiniteCrossedModule:
    """``N -> G^phi`` with ``G^phi`` the pullback of ``Aut(N) -> Out(N) <- Q``."""
    return _kernel_pullback(k)[0]


@dataclass
class _ObstructionData:
    extension: CrossedTwoFoldExtension
    section: list[int]
    factors: dict[tuple[int, int], int]
    cocycle: Cochain


_OBS_CACHE: dict[tuple, _ObstructionData] = {}


def _obstruction_data(k: AbstractKernel) -> _ObstructionData:
    key = (k.encoding, k.phi)
    if key in _OBS_CACHE:
        return _OBS_CACHE[key]
    cm, pb = _kernel_pullback(k)
    ext = two_fold_extension(cm, k.Q, pb.proj2)
    # the section q -> (phi(q), q) makes alpha equal to the fixed representatives
    section = [pb.index_of(k.phi[q], q) for q in range(k.Q.order)]
    preimage: dict[int, int] = {}
    for n in range(k.N.order):
        preimage.setdefault(cm.boundary[n], n)
    G, Q = cm.G, k.Q
    factors = {}
    for p in range(Q.order):
        for q in range(Q.order):
            target = G.prod(section[p], section[q], G.inv(section[Q.table[p][q]]))
            factors[p, q] = 0 if (p == 0 or q == 0) else preimage[target]
    z = _cocycle_from(ext, section, factors)
    data = _ObstructionData(ext, section, factors, z)
    _OBS_CACHE[key] = data
    return data


def _cocycle_from(ext, section, factors) -> Cochain:
    from .cohomology import bar_cochain, bar_complex

    cm = ext.crossed_module
    C, Q = cm.C, ext.Q
    t = Q.table
    cx = bar_complex(Q, ext.module, 3)

    def value(a, b, d):
        z = C.prod(cm.action[section[a]][factors[b, d]], factors[a, t[b][d]],
                   C.inv(factors[t[a][b], d]), C.inv(factors[a, b]))
        return ext.coordinates.coords(z)

    return bar_cochain(cx, 3, value)


def center_module(k: AbstractKernel) -> QModule:
    """``Z(N)`` with the ``Q``-action induced by ``phi``."""
    return _obstruction_data(k).extension.module


def obstruction(k: AbstractKernel) -> CohomologyClass:
    """Class in ``H^3(Q, Z(N))`` of the crossed module ``N -> G^phi``."""
    return cohomology_class(_obstruction_data(k).cocycle)


def is_extendible(k: AbstractKernel) -> bool:
    return obstruction(k).is_zero()


def second_cohomology(k: AbstractKernel):
    """``H^2(Q, Z(N))`` on the same cochain complex as the obstruction."""
    return _obstruction_data(k).cocycle.complex.cohomology(2)


# ------------------------------------------------------------ extensions

@dataclass(frozen=True, eq=False)
class Extension:
    """``N -> E -> Q`` with explicit injection and surjection tables."""

    N: FiniteGroup
    E: FiniteGroup
    Q: FiniteGroup
    inj: tuple[int, ...]
    surj: tuple[int, ...]

    def check(self) -> list[str]:
        out = []
        if len(set(self.inj)) != self.N.order:
            out.append("injection is not injective")
        if not is_homomorphism(self.N, self.E, self.inj):
            out.append("injection is not a homomorphism")
        if not is_homomorphism(self.E, self.Q, self.surj):
            out.append("surjection is not a homomorphism")
        if set(self.surj) != set(range(self.Q.order)):
            out.append("surjection is not onto")
        if set(self.inj) != {e for e in range(self.E.order) if self.surj[e] == 0}:
            out.append("image of N is not the kernel")
        if self.E.order != self.N.order * self.Q.order:
            out.append("order of E is not |N||Q|")
        return out

    @cached_property
    def _inj_inverse(self) -> dict[int, int]:
        return {e: n for n, e in enumerate(self.inj)}

    def conjugation_on_kernel(self, e: int) -> tuple[int, ...]:
        inv = self._inj_inverse
        return tuple(inv[self.E.conj(e, self.inj[n])] for n in range(self.N.order))

    def induced_out_map(self, aut: AutData | None = None) -> tuple[int, ...]:
        aut = aut or automorphisms(self.N)
        index = {p: i for i, p in enumerate(aut.perms)}
        lifts = {}
        for e in range(self.E.order):
            lifts.setdefault(self.surj[e], e)
        return tuple(aut.out_projection[index[self.conjugation_on_kernel(lifts[q])]] for q in range(self.Q.order))

    def induces(self, k: AbstractKernel) -> bool:
        return self.N == k.N and self.Q == k.Q and self.induced_out_map(k.aut) == k.out_map

    def to_json(self, with_groups: bool = False) -> dict:
        out = {"table": [list(r) for r in self.E.table], "inj": list(self.inj), "surj": list(self.surj)}
        if with_groups:
            out["N"] = self.N.to_json()
            out["Q"] = self.Q.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, N: FiniteGroup | None = None, Q: FiniteGroup | None = None) -> "Extension":
        N = N if N is not None else FiniteGroup.from_json(data["N"])
        Q = Q if Q is not None else FiniteGroup.from_json(data["Q"])
        E = FiniteGroup(tuple(tuple(r) for r in data["table"]))
        ext = cls(N, E, Q, tuple(data["inj"]), tuple(data["surj"]))
        problems = ext.check()
        if problems:
            raise GroupError("; ".join(problems))
        return ext


def extension_from_factor_set(N: FiniteGroup, Q: FiniteGroup, alpha: Sequence[Sequence[int]],
                              f: dict[tuple[int, int], int]) -> Extension:
    """Build ``E`` on ``N x Q`` with the multiplication rule in the module docstring."""
    n = N.order
    tn, tq = N.table, Q.table
    size = n * Q.order
    table = []
    for a in range(size):
        q1, n1 = divmod(a, n)
        al = alpha[q1]
        row = []
        for b in range(size):
            q2, n2 = divmod(b, n)
            m = tn[tn[n1][al[n2]]][f[q1, q2]]
            row.append(tq[q1][q2] * n + m)
        table.append(tuple(row))
    E = FiniteGroup(tuple(table))
    return Extension(N, E, Q, tuple(range(n)), tuple(a // n for a in range(size)))


def construct_extension(k: AbstractKernel, witness: Cochain | None = None, twist: Cochain | None = None,
                        check: bool = True) -> Extension:
    """Realize an extendible kernel.

    ``witness`` is a 2-cochain with ``delta(witness)`` equal to the obstruction
    cocycle. It is computed when omitted. ``twist`` is an optional
    2-cocycle in ``Z(N)`` that shifts the result by its class in ``H^2``.
    """
    data = _obstruction_data(k)
    z = data.cocycle
    if witness is None:
        witness = is_coboundary(z)
        if witness is None:
            raise NotExtendible("obstruction class is non-zero")
    if witness.complex is not z.complex or witness.degree != 2:
        raise ValueError("witness must be a 2-cochain on the obstruction's complex")
    if witness.coboundary().values != z.values:
        raise ValueError("witness is inconsistent: its coboundary is not the obstruction cocycle")
    if twist is not None:
        if twist.complex is not z.complex or twist.degree != 2 or not twist.is_cocycle():
            raise ValueError("twist must be a 2-cocycle on the obstruction's complex")
        witness = witness + twist
    ext = data.extension
    coords = ext.coordinates
    N, Q = k.N, k.Q
    f = {}
    for p in range(Q.order):
        for q in range(Q.order):
            b = coords.element(witness.value_at(p, q)) if p and q else 0
            f[p, q] = N.table[data.factors[p, q]][N.inv(b)]
    E = extension_from_factor_set(N, Q, [k.alpha(q) for q in range(Q.order)], f)
    if check:
        problems = E.check()
        if problems or not E.induces(k):
            raise GroupError("constructed extension failed its checks: " + "; ".join(problems or ["kernel"]))
    return E


def realize_all_classes(k: AbstractKernel) -> list[Extension]:
    """One extension per element of ``H^2(Q, Z(N))``, in coordinate order."""
    H = second_cohomology(k)
    z = _obstruction_data(k).cocycle
    witness = is_coboundary(z)
    if witness is None:
        raise NotExtendible("obstruction class is non-zero")
    if any(s == 0 for s in H.invariant_factors):
        raise GroupError("H^2 is infinite")
    out = []
    for coords in itertools.product(*(range(s) for s in H.invariant_factors)):
        twist = Cochain(z.complex, 2, tuple(H.cocycle_of_class(coords)))
        out.append(construct_extension(k, witness, twist))
    return out


def extension_from_normal_subgroup(E: FiniteGroup, inj: Sequence[int], N: FiniteGroup,
                                   Q: FiniteGroup | None = None) -> Extension:
    """``N -> E -> E/N``; ``inj`` must be an injective homomorphism onto a normal subgroup."""
    quo = quotient(E, inj)
    surj = quo.projection
    if Q is not None:
        iso = next(homomorphisms(quo.group, Q, injective=True), None)
        if iso is None or Q.order != quo.group.order:
            raise GroupError("quotient is not isomorphic to the given Q")
        surj = tuple(iso[s] for s in surj)
    else:
        Q = quo.group
    return Extension(N, E, Q, tuple(inj), tuple(surj))


# ------------------------------------------------------------ congruence

def congruent(E1: Extension, E2: Extension) -> bool:
    """Is there an isomorphism ``E1 -> E2`` commuting with the injections and surjections?"""
    return congruence(E1, E2) is not None


def congruence(E1: Extension, E2: Extension) -> list[int] | None:
    if E1.N != E2.N or E1.Q != E2.Q or E1.E.order != E2.E.order:
        return None
    gens = list(E1.E.generators)
    inj1 = {e: n for n, e in enumerate(E1.inj)}
    candidates = []
    for g in gens:
        if g in inj1:
            candidates.append([E2.inj[inj1[g]]])
        else:
            candidates.append([h for h in range(E2.E.order) if E2.surj[h] == E1.surj[g]
                               and E2.E.element_orders[h] == E1.E.element_orders[g]])
    for images in itertools.product(*candidates):
        f = extend_homomorphism(E1.E, gens, images, E2.E)
        if f is None or len(set(f)) != E1.E.order:
            continue
        if all(f[E1.inj[n]] == E2.inj[n] for n in range(E1.N.order)) and \
                all(E2.surj[f[e]] == E1.surj[e] for e in range(E1.E.order)):
            return f
    return None


# ------------------------------------------------------------ Baer action

def center_subgroup(N: FiniteGroup):
    return subgroup(N, N.center)


def baer_act(E1: Extension, e: Extension) -> Extension:
    """Act on ``E1`` (extension of ``Q`` by ``N``) by ``e`` (extension of ``Q`` by ``Z(N)``).

    Forms ``N x| (E1 x_Q E)`` and divides out the triples
    ``(y1 y2, j1(y1)^-1, j(y2)^-1)`` for ``y1`` in ``N``, ``y2`` in ``Z(N)``.
    """
    N, Q = E1.N, E1.Q
    Zs = center_subgroup(N)
    if e.N != Zs.group or e.Q != Q:
        raise ValueError("e must be an extension of the same Q by the centre of N")
    # module check: both extensions must induce the same Q-action on Z(N)
    for q in range(Q.order):
        x1 = E1.surj.index(q)
        x2 = e.surj.index(q)
        act1 = E1.conjugation_on_kernel(x1)
        act2 = e.conjugation_on_kernel(x2)
        if any(act1[Zs.embedding[z]] != Zs.embedding[act2[z]] for z in range(Zs.group.order)):
            raise ValueError("module mismatch: the actions on the centre differ")
    pb = pullback(E1.E, E1.surj, e.E, e.surj)
    P = pb.group
    tn = N.table
    conj = [E1.conjugation_on_kernel(a) for a, _ in pb.pairs]

    def mul(u, v):
        n1, p1 = u
        n2, p2 = v
        return (tn[n1][conj[p1][n2]], P.table[p1][p2])

    K = []
    for y1 in range(N.order):
        for y2 in range(Zs.group.order):
            zn = Zs.embedding[y2]
            a = E1.E.inv(E1.inj[y1])
            b = e.E.inv(e.inj[y2])
            K.append((tn[y1][zn], pb.index_of(a, b)))

    def canon(u):
        return min(mul(u, k) for k in K)

    reps = sorted({canon((n, p)) for n in range(N.order) for p in range(P.order)})
    ident = canon((0, 0))
    reps.remove(ident)
    reps.insert(0, ident)
    E2 = group_from_elements(reps, lambda u, v: canon(mul(u, v)))
    index = {r: i for i, r in enumerate(reps)}
    inj = tuple(index[canon((n, 0))] for n in range(N.order))
    surj = tuple(E1.surj[pb.pairs[p][0]] for _, p in reps)
    return Extension(N, E2, Q, inj, surj)


def split_extension(N: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]]) -> Extension:
    """``N x| Q`` for an action given as automorphism tables ``action[q][n]``."""
    f = {(p, q): 0 for p in range(Q.order) for q in range(Q.order)}
    return extension_from_factor_set(N, Q, action, f)


# ------------------------------------------------------------ factor-set oracle

@dataclass(frozen=True)
class FactorSetClass:
    """A congruence class found by the oracle: a representative factor set and its orbit size."""

    factor_set: tuple[int, ...]  # f(p, q) for p, q non-identity, row-major
    orbit_size: int


def _factor_set_search(k: AbstractKernel, budget: int):
    N, Q = k.N, k.Q
    tn, tq = N.table, Q.table
    aut = k.aut
    alpha = [k.alpha(q) for q in range(Q.order)]
    inv_perm = [tuple(sorted(range(N.order), key=lambda i: a[i])) for a in alpha]
    inner_of = {}
    for n in range(N.order):
        inner_of.setdefault(aut.perms[aut.inner[n]], []).append(n)
    nonid = list(range(1, Q.order))
    pairs = [(p, q) for p in nonid for q in nonid]
    options = {}
    for p, q in pairs:
        target = compose_permutations(compose_permutations(alpha[p], alpha[q]), inv_perm[tq[p][q]])
        options[p, q] = inner_of.get(target, [])
    size = 1
    for v in options.values():
        size *= max(len(v), 1)
    if size > budget:
        raise SearchBudgetExceeded(f"factor-set search space {size} exceeds budget {budget}")
    order = {pq: i for i, pq in enumerate(pairs)}
    triples_at: dict[int, list] = {i: [] for i in range(len(pairs))}
    for p in nonid:
        for q in nonid:
            for w in nonid:
                needed = [(p, q), (tq[p][q], w), (q, w), (p, tq[q][w])]
                last = max(order[x] for x in needed if x[0] and x[1])
                triples_at[last].append((p, q, w))
    f = {(p, q): 0 for p in range(Q.order) for q in range(Q.order) if p == 0 or q == 0}
    solutions = []

    def ok(p, q, w):
        lhs = tn[f[p, q]][f[tq[p][q], w]]
        rhs = tn[alpha[p][f[q, w]]][f[p, tq[q][w]]]
        return lhs == rhs

    def rec(i):
        if i == len(pairs):
            solutions.append(tuple(f[pq] for pq in pairs))
            return
        pq = pairs[i]
        for n in options[pq]:
            f[pq] = n
            if all(ok(*t) for t in triples_at[i]):
                rec(i + 1)
        f.pop(pq, None)

    rec(0)
    return pairs, solutions, alpha


def enumerate_extensions(k: AbstractKernel, budget: int = 1 << 32) -> list[FactorSetClass]:
    """All congruence classes of extensions realizing ``k``, by direct search.

    With ``alpha`` fixed to ``phi``, every realizing extension has a section
    inducing exactly ``alpha``. Its factor set then satisfies the inner
    automorphism and associativity conditions. Two such factor sets give
    congruent extensions iff they differ by ``h_p alpha_p(h_q) f h_pq^-1``
    for some normalized ``h: Q -> Z(N)``.
    """
    N, Q = k.N, k.Q
    pairs, solutions, alpha = _factor_set_search(k, budget)
    if not solutions:
        return []
    tn, tq = N.table, Q.table
    center = N.center
    nonid = list(range(1, Q.order))
    gauges = list(itertools.product(center, repeat=len(nonid)))
    seen: set[tuple[int, ...]] = set()
    classes = []
    inv = N.inverses
    for sol in solutions:
        if sol in seen:
            continue
        f = dict(zip(pairs, sol))
        orbit = set()
        for hv in gauges:
            h = {0: 0, **dict(zip(nonid, hv))}
            g = tuple(
                tn[tn[tn[h[p]][alpha[p][h[q]]]][f[p, q]]][inv[h[tq[p][q]]]] for p, q in pairs
            )
            orbit.add(g)
        seen |= orbit
        classes.append(FactorSetClass(sol, len(orbit)))
    return classes


def oracle_extension(k: AbstractKernel, cls: FactorSetClass) -> Extension:
    N, Q = k.N, k.Q
    nonid = range(1, Q.order)
    pairs = [(p, q) for p in nonid for q in nonid]
    f = {(p, q): 0 for p in range(Q.order) for q in range(Q.order)}
    f.update(dict(zip(pairs, cls.factor_set)))
    return extension_from_factor_set(N, Q, [k.alpha(q) for q in range(Q.order)], f)


# ------------------------------------------------------------ small groups and kernel search

def _from_presentation(text: str, name: str) -> FiniteGroup:
    _, G, _ = enumerate_presentation(text)
    return FiniteGroup(G.table, name=name)


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """Groups of order ``<= max_order`` (at most 8) up to isomorphism, in a fixed order."""
    if max_order > 8:
        raise SizeBoundExceeded("the built-in library stops at order 8")
    C = cyclic_group
    lib = [
        FiniteGroup(C(1).table, name="C1"),
        C(2), C(3), C(4), FiniteGroup(direct_product(C(2), C(2)).table, name="K4"),
        C(5), C(6), _from_presentation("<x,y | x^3, y^2, x*y*x*y>", "S3"), C(7), C(8),
        FiniteGroup(direct_product(C(2), C(4)).table, name="C2xC4"),
        FiniteGroup(direct_product(C(2), direct_product(C(2), C(2))).table, name="C2^3"),
        _from_presentation("<a,b | a^4, b^2, a*b*a*b>", "D4"),
        _from_presentation("<a,b | a^4, a^2*b^-2, a*b*a*b^-1>", "Q8"),
    ]
    return [G for G in lib if G.order <= max_order]


@dataclass
class KernelRecord:
    kernel: AbstractKernel
    extendible: bool
    obstruction_order: int | None
    oracle_classes: int
    h2_order: int | None

    @property
    def agrees(self) -> bool:
        if self.extendible != (self.oracle_classes > 0):
            return False
        return not self.extendible or self.oracle_classes == self.h2_order

    def to_json(self) -> dict:
        return {
            "N": self.kernel.N.name,
            "Q": self.kernel.Q.name,
            "out_map": list(self.kernel.out_map),
            "extendible": self.extendible,
            "obstruction_order": self.obstruction_order,
            "oracle_classes": self.oracle_classes,
            "h2_order": self.h2_order,
            "agrees": self.agrees,
        }


def examine_kernel(k: AbstractKernel, budget: int = 1 << 32) -> KernelRecord:
    cls = obstruction(k)
    ext = cls.is_zero()
    classes = enumerate_extensions(k, budget)
    h2 = second_cohomology(k).order if ext else None
    return KernelRecord(k, ext, cls.order, len(classes), h2)


def order_16_groups() -> list[FiniteGroup]:
    """The non-abelian groups of order 16 (abelian kernels are always extendible)."""
    C2 = cyclic_group(2)
    D4 = _from_presentation("<a,b | a^4, b^2, a*b*a*b>", "D4")
    Q8 = _from_presentation("<a,b | a^4, a^2*b^-2, a*b*a*b^-1>", "Q8")
    return [
        _from_presentation("<a,b | a^8, b^2, a*b*a*b>", "D8"),
        _from_presentation("<a,b | a^8, b^2, b*a*b^-1*a^-3>", "SD16"),
        _from_presentation("<a,b | a^8, a^4*b^-2, b*a*b^-1*a>", "Q16"),
        _from_presentation("<a,b | a^8, b^2, b*a*b^-1*a^-5>", "M16"),
        _from_presentation("<a,b | a^4, b^4, b*a*b^-1*a>", "C4:C4"),
        _from_presentation("<a,b,c | a^2, b^2, c^4, a*b*a*b, c*a*c^-1*b^-1, c*b*c^-1*a^-1>", "C2^2:C4"),
        _from_presentation("<a,b,c | a^4, b^2, a*b*a*b, c^2*a^-2, c*a*c^-1*a^-1, c*b*c^-1*b^-1>", "C4oD4"),
        FiniteGroup(direct_product(D4, C2).table, name="D4xC2"),
        FiniteGroup(direct_product(Q8, C2).table, name="Q8xC2"),
    ]


def kernel_survey(max_n: int = 6, max_q: int = 4, budget: int = 1 << 32,
                  kernel_groups: Sequence[FiniteGroup] | None = None,
                  oracle: bool = True) -> Iterable[KernelRecord]:
    """Every kernel with ``|N| <= max_n`` (or ``N`` in ``kernel_groups``) and ``|Q| <= max_q``.

    Ordered by ``|N| |Q|``, then by encoding.  With ``oracle=False`` only the
    obstruction is computed (``oracle_classes`` is then -1).
    """
    pool = []
    Ns = small_groups(max_n) if kernel_groups is None else list(kernel_groups)
    for Ng in Ns:
        for Qg in small_groups(max_q):
            for k in abstract_kernels(Ng, Qg, name=f"{Ng.name}<-{Qg.name}"):
                pool.append(k)
    pool.sort(key=lambda k: (k.N.order * k.Q.order, k.encoding))
    for k in pool:
        if oracle:
            yield examine_kernel(k, budget)
        else:
            cls = obstruction(k)
            yield KernelRecord(k, cls.is_zero(), cls.order, -1, None)


def find_non_extendible(max_n: int = 8, max_q: int = 4, budget: int = 1 << 32,
                        kernel_groups: Sequence[FiniteGroup] | None = None) -> KernelRecord | None:
    """First kernel in survey order with non-zero obstruction, or None when there is none.

    The returned record carries the oracle count, so a hit is certified by
    both a non-zero class and an empty factor-set enumeration.
    """
    for rec in kernel_survey(max_n, max_q, budget, kernel_groups, oracle=False):
        if not rec.extendible:
            log.info("non-extendible kernel found: %s", rec.kernel)
            return examine_kernel(rec.kernel, budget)
    return None
