"""Cellular chains of the universal cover of a presentation complex, and DOT export.

The universal cover of the 2-complex of ``<X; R>`` has one cell per
``(element of Q, cell of the complex)``.  Its boundary maps are the integer
expansions of the Fox matrices ``d2`` and ``d1``.  The cover is simply
connected, so ``H1 = 0``.  ``H2`` is ``pi_2`` and has the same rank as the
module of identities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from .grouprings import fox_boundaries, zq_matrix_to_int64
from .linalg import AbelianGroupStructure, cokernel_structure, smith_normal_form
from .presentations import CayleyGraph, Presentation, WordMap, todd_coxeter


@dataclass(frozen=True, eq=False)
class CoverChainComplex:
    ranks: tuple[int, int, int]  # C0, C1, C2
    d1: np.ndarray  # C1 -> C0
    d2: np.ndarray  # C2 -> C1

    def check(self) -> bool:
        return not np.any(self.d1 @ self.d2)


@dataclass(frozen=True)
class HomologyReport:
    h0: AbelianGroupStructure
    h1: AbelianGroupStructure
    h2: AbelianGroupStructure
    chi: int

    def to_json(self) -> dict:
        return {"chi": self.chi, "h0": self.h0.to_json(), "h1": self.h1.to_json(), "h2": self.h2.to_json()}


def cover_complex(p: Presentation, Q: FiniteGroup | None = None, wm: WordMap | None = None) -> CoverChainComplex:
    if Q is None or wm is None:
        Q, wm = todd_coxeter(p)
    d2, d1 = fox_boundaries(p, Q, wm)
    n = Q.order
    return CoverChainComplex((n, n * len(p.alphabet), n * len(p.relators)),
                             zq_matrix_to_int64(d1), zq_matrix_to_int64(d2))


def cover_homology(c: CoverChainComplex) -> HomologyReport:
    if not c.check():
        raise ArithmeticError("d1 d2 != 0 in the cover complex")
    c0, c1, c2 = c.ranks
    r1 = smith_normal_form(c.d1, want_u=False, want_v=False).rank if c.d1.size else 0
    s2 = smith_normal_form(c.d2, want_u=False, want_v=False) if c.d2.size else None
    r2 = s2.rank if s2 else 0
    torsion = tuple(d for d in (s2.diagonal if s2 else ()) if d > 1)
    h0 = cokernel_structure(c.d1) if c.d1.size else AbelianGroupStructure(c0)
    h1 = AbelianGroupStructure(c1 - r1 - r2, torsion)
    h2 = AbelianGroupStructure(c2 - r2)
    return HomologyReport(h0, h1, h2, c0 - c1 + c2)


def export_dot(g: CayleyGraph, name: str = "cayley") -> str:
    """DOT digraph with nodes in index order and edges ``y -> x*y`` labelled by generator."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  {v} [label="{v}"];')
    for src, tgt, gen in sorted(g.edges):
        lines.append(f'  {src} -> {tgt} [label="{g.labels[gen]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
