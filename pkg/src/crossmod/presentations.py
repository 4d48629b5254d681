"""Group presentations, Todd-Coxeter enumeration and Cayley graphs."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .groups import FiniteGroup, GroupError
from .words import Alphabet, Word, format_word, parse_word

DEFAULT_MAX_COSETS = 10_000

S3_PRESENTATION = "<x,y | r = x^3, s = y^2, t = x*y*x*y>"

# Small finite presentations used by the consistency checks.
CORPUS: dict[str, str] = {
    "S3": S3_PRESENTATION,
    **{f"C{n}": f"<x | x^{n}>" for n in range(1, 9)},
    "K4": "<a,b | a^2, b^2, a*b*a^-1*b^-1>",
    "C2xC4": "<a,b | a^2, b^4, a*b*a^-1*b^-1>",
    "D4": "<a,b | a^4, b^2, a*b*a*b>",
    "Q8": "<a,b | a^4, a^2*b^-2, a*b*a*b^-1>",
    "A4": "<a,b | a^2, b^3, a*b*a*b*a*b>",
    "S3_redundant": "<x,y | x^3, y^2, x*y*x*y, y*x*y*x>",
}


class PresentationSyntaxError(SyntaxError):
    pass


class CosetLimitExceeded(GroupError):
    """Raised when enumeration needs more cosets than allowed (possibly an infinite group)."""


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.relators) != len(self.names):
            raise ValueError("one name per relator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"relator names must be distinct: {self.names}")
        for name, r in zip(self.names, self.relators):
            if r.alphabet != self.alphabet:
                raise ValueError("relator over a different alphabet")
            if r.is_identity():
                raise ValueError(f"relator {name} reduces to the empty word")

    def relator(self, name: str) -> Word:
        return self.relators[self.relator_index(name)]

    def relator_index(self, name: str | int) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown relator {name!r}") from None

    def __str__(self):
        rels = ", ".join(f"{n} = {format_word(r)}" for n, r in zip(self.names, self.relators))
        return f"<{','.join(self.alphabet.names)} | {rels}>"


_PRES = re.compile(r"\s*<(?P<gens>[^|;>]*)[|;](?P<rels>[^>]*)>\s*\Z")
_NAMED = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*=(.*)\Z", re.S)


def parse_presentation(text: str) -> Presentation:
    """Parse ``<x,y | x^3, y^2, x*y*x*y>``; relators may be named as ``r = x^3``.

    Unnamed relators are called ``r1, r2, ...`` by position.
    """
    m = _PRES.match(text)
    if not m:
        i = text.find("<")
        raise PresentationSyntaxError(
            f"expected '< gens | relators >' (problem near position {max(i, 0)}): {text!r}"
        )
    gens = [g.strip() for g in m.group("gens").split(",") if g.strip()]
    try:
        alphabet = Alphabet(tuple(gens))
    except ValueError as exc:
        raise PresentationSyntaxError(f"{exc} at position {m.start('gens')}") from None
    relators, names = [], []
    offset = m.start("rels")
    body = m.group("rels")
    for k, chunk in enumerate(body.split(",")):
        start = offset
        offset += len(chunk) + 1
        if not chunk.strip():
            if body.strip():
                raise PresentationSyntaxError(f"empty relator at position {start}")
            continue
        nm = _NAMED.match(chunk)
        name, wtext = (nm.group(1), nm.group(2)) if nm else (f"r{k + 1}", chunk)
        try:
            w = parse_word(alphabet, wtext)
        except SyntaxError as exc:
            raise PresentationSyntaxError(f"{exc} (relator starting at position {start})") from None
        except KeyError as exc:
            raise PresentationSyntaxError(f"{exc.args[0]} (relator starting at position {start})") from None
        relators.append(w)
        names.append(name)
    try:
        return Presentation(alphabet, tuple(relators), tuple(names))
    except ValueError as exc:
        raise PresentationSyntaxError(str(exc)) from None


@dataclass(frozen=True)
class WordMap:
    """The epimorphism from the free group onto an enumerated finite group."""

    group: FiniteGroup
    alphabet: Alphabet
    images: tuple[int, ...]
    normal_words: tuple[Word, ...]

    def __call__(self, w: Word) -> int:
        return self.evaluate(w)

    def evaluate(self, w: Word) -> int:
        if w.alphabet != self.alphabet:
            raise ValueError("word over a different alphabet")
        t = self.group.table
        inv = self.group.inverses
        x = 0
        for g, s in w.letters:
            x = t[x][self.images[g] if s > 0 else inv[self.images[g]]]
        return x

    def word_for(self, element: int) -> Word:
        return self.normal_words[element]


class _CosetTable:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.rows: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1

    @staticmethod
    def col(letter):
        g, s = letter
        return 2 * g + (0 if s > 0 else 1)

    @staticmethod
    def inv(c):
        return c ^ 1

    def define(self, c, x):
        if self.live >= self.max_cosets:
            raise CosetLimitExceeded(
                f"coset enumeration exceeded {self.max_cosets} cosets (group may be infinite)"
            )
        n = len(self.rows)
        self.rows.append([None] * self.ncols)
        self.parent.append(n)
        self.live += 1
        self.rows[c][x] = n
        self.rows[n][x ^ 1] = c
        return n

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _merge(self, a, b, queue):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a, b):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.rows[e][x]
                if f is None:
                    continue
                self.rows[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.rows[e1][x] is not None:
                    self._merge(f1, self.rows[e1][x], queue)
                elif self.rows[f1][x ^ 1] is not None:
                    self._merge(e1, self.rows[f1][x ^ 1], queue)
                else:
                    self.rows[e1][x] = f1
                    self.rows[f1][x ^ 1] = e1

    def scan_and_fill(self, c, word):
        rows = self.rows
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] is not None:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][word[j] ^ 1] is not None:
                b = rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]] = b
                rows[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def alive(self, c):
        return self.parent[c] == c


def todd_coxeter(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> tuple[FiniteGroup, WordMap]:
    """Enumerate cosets of the trivial subgroup (HLT strategy).

    Elements are renumbered in breadth-first order from the identity, with
    generator columns visited as ``x, x^-1, y, y^-1, ...``.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ngens = len(p.alphabet)
    ct = _CosetTable(ngens, max_cosets)
    rels = [[ct.col(l) for l in r.letters] for r in p.relators]
    c = 0
    while c < len(ct.rows):
        for r in rels:
            if not ct.alive(c):
                break
            ct.scan_and_fill(c, r)
        if ct.alive(c):
            for x in range(ct.ncols):
                if ct.rows[c][x] is None:
                    ct.define(c, x)
        c += 1

    # Breadth-first renumbering of the live cosets.
    order = [0]
    number = {0: 0}
    parent_step: list[tuple[int, int] | None] = [None]
    q = deque([0])
    while q:
        a = q.popleft()
        for x in range(ct.ncols):
            b = ct.rows[a][x]
            if b is None:
                raise GroupError("incomplete coset table")
            b = ct.rep(b)
            if b not in number:
                number[b] = len(order)
                order.append(b)
                parent_step.append((number[a], x))
                q.append(b)
    n = len(order)
    act = [[number[ct.rep(ct.rows[a][x])] for x in range(ct.ncols)] for a in order]

    # Normal-form words and the multiplication table mult[a][b] = w_a * w_b.
    words: list[tuple] = [()]
    for k in range(1, n):
        par, x = parent_step[k]
        words.append(words[par] + ((x // 2, 1 if x % 2 == 0 else -1),))
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        row = mult[a]
        row[0] = a
        for b in range(1, n):
            par, x = parent_step[b]
            row[b] = act[row[par]][x]
    G = FiniteGroup(tuple(tuple(r) for r in mult))
    images = tuple(act[0][2 * g] for g in range(ngens))
    wm = WordMap(G, p.alphabet, images, tuple(Word(p.alphabet, w) for w in words))
    for name, r in zip(p.names, p.relators):
        if wm(r) != 0:
            raise GroupError(f"relator {name} does not evaluate to the identity")
    return G, wm


def enumerate_presentation(text_or_p, max_cosets: int = DEFAULT_MAX_COSETS):
    p = parse_presentation(text_or_p) if isinstance(text_or_p, str) else text_or_p
    G, wm = todd_coxeter(p, max_cosets)
    return p, G, wm


@dataclass(frozen=True)
class CayleyGraph:
    order: int
    edges: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...]

    @property
    def vertices(self) -> range:
        return range(self.order)


def cayley_graph(Q: FiniteGroup, wm: WordMap) -> CayleyGraph:
    """One edge ``y -> x*y`` for each generator ``x`` and element ``y``."""
    if wm.group != Q:
        raise ValueError("word map does not evaluate into this group")
    edges = tuple(
        (y, Q.table[wm.images[g]][y], g) for y in range(Q.order) for g in range(len(wm.alphabet))
    )
    return CayleyGraph(Q.order, edges, wm.alphabet.names)


def graph_free_rank(g: CayleyGraph) -> int:
    """Rank of the (free) fundamental group of a connected graph."""
    return len(g.edges) - g.order + 1
