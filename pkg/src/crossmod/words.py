"""Free group arithmetic on reduced words.

A word is a tuple of ``(generator index, sign)`` letters that is kept freely
reduced at all times, so equality of elements of the free group is equality
of the letter tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_FACTOR = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?\d+))?\s*\Z")


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("alphabet must contain at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not _NAME.match(name):
                raise ValueError(f"invalid generator name {name!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> "Word":
        return parse_word(self, text)

    def generator(self, i: int) -> "Word":
        return Word(self, ((i, 1),))

    def identity(self) -> "Word":
        return Word(self, ())


def reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Free reduction by a single stack pass."""
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(s)) for g, s in self.letters)
        n = len(self.alphabet)
        for g, s in letters:
            if not 0 <= g < n or s not in (1, -1):
                raise ValueError(f"bad letter {(g, s)}")
        object.__setattr__(self, "letters", reduce_letters(letters))

    def _check(self, other: "Word"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("words over different alphabets")

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else inverse(self)
        return Word(self.alphabet, base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return True

    def is_identity(self) -> bool:
        return not self.letters

    def prefixes(self) -> list["Word"]:
        """Words ``w[:i]`` for ``i = 0..len(w)``."""
        return [Word(self.alphabet, self.letters[:i]) for i in range(len(self.letters) + 1)]

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def multiply(a: Word, b: Word) -> Word:
    a._check(b)
    return Word(a.alphabet, a.letters + b.letters)


def inverse(w: Word) -> Word:
    return Word(w.alphabet, tuple((g, -s) for g, s in reversed(w.letters)))


def conjugate(g: Word, w: Word) -> Word:
    """``g w g^-1``."""
    g._check(w)
    return Word(w.alphabet, g.letters + w.letters + inverse(g).letters)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse ``x*y^-1*x^3``; ``1`` and ``e`` (if not a generator) denote the identity."""
    text = text.strip()
    if text in ("", "1") or (text == "e" and "e" not in alphabet.names):
        return alphabet.identity()
    letters: list[Letter] = []
    pos = 0
    for chunk in text.split("*"):
        m = _FACTOR.match(chunk)
        if not m:
            raise SyntaxError(f"cannot parse word factor {chunk.strip()!r} at position {pos}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in alphabet.names:
            raise KeyError(f"unknown generator {name!r} at position {pos}")
        g = alphabet.index(name)
        letters.extend([(g, 1 if exp > 0 else -1)] * abs(exp))
        pos += len(chunk) + 1
    return Word(alphabet, tuple(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    i = 0
    L = w.letters
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        g, s = L[i]
        k = (j - i) * s
        name = w.alphabet.names[g]
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return "*".join(parts)


def words_up_to(alphabet: Alphabet, length: int) -> list[Word]:
    """All reduced words of length at most ``length`` (shortlex order)."""
    out = [alphabet.identity()]
    layer: list[tuple[Letter, ...]] = [()]
    letters = [(g, s) for g in range(len(alphabet)) for s in (1, -1)]
    for _ in range(length):
        nxt = []
        for w in layer:
            for g, s in letters:
                if w and w[-1] == (g, -s):
                    continue
                nxt.append(w + ((g, s),))
        out.extend(Word(alphabet, w) for w in nxt)
        layer = nxt
    return out


def product(words: Sequence[Word], alphabet: Alphabet | None = None) -> Word:
    if not words:
        if alphabet is None:
            raise ValueError("empty product needs an alphabet")
        return alphabet.identity()
    letters: list[Letter] = []
    for w in words:
        words[0]._check(w)
        letters.extend(w.letters)
    return Word(words[0].alphabet, tuple(letters))
