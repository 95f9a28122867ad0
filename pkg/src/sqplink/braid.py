"""Braid words, band factorizations and braid closures."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import DiagramError, LinkDiagram

_BRAID_RE = re.compile(r"^\s*(\d+)\s*:(.*)$", re.S)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators; letter ``i`` is sigma_i, ``-i`` its inverse."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0:
                raise DiagramError("generator index 0 is not allowed")
            if abs(x) > self.strands - 1:
                raise DiagramError(
                    f"generator {x} out of range for {self.strands} strands")

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> list[int]:
        """perm[k] = final position of the strand starting at position k (0-based)."""
        pos = list(range(self.strands))  # pos[strand] = current position
        where = list(range(self.strands))  # where[position] = strand
        for x in self.letters:
            i = abs(x) - 1
            a, b = where[i], where[i + 1]
            where[i], where[i + 1] = b, a
            pos[a], pos[b] = i + 1, i
        return pos

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for k in range(self.strands):
            if not seen[k]:
                cycles += 1
                while not seen[k]:
                    seen[k] = True
                    k = perm[k]
        return cycles

    def __str__(self):
        return f"{self.strands}: " + " ".join(str(x) for x in self.letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"<strands>: i1 i2 ..."`` (signed, nonzero generator indices)."""
    m = _BRAID_RE.match(text)
    if not m:
        raise DiagramError(f"not a braid word: {text!r}")
    body = m.group(2).replace(",", " ").split()
    try:
        letters = tuple(int(s) for s in body)
    except ValueError:
        raise DiagramError(f"non-integer letter in braid word {text!r}") from None
    return BraidWord(int(m.group(1)), letters)


@dataclass(frozen=True)
class BandFactorization:
    """Product of band generators; ``(i, j)`` with j = i+1 is sigma_i, and
    j >= i+2 is (sigma_i ... sigma_{j-2}) sigma_{j-1} (sigma_i ... sigma_{j-2})^-1."""

    strands: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(i), int(j)) for i, j in self.factors))
        for i, j in self.factors:
            if not 1 <= i < j <= self.strands:
                raise DiagramError(f"band ({i}, {j}) invalid for {self.strands} strands")


def band_word(i: int, j: int) -> list[int]:
    prefix = list(range(i, j - 1))
    return prefix + [j - 1] + [-x for x in reversed(prefix)]


def expand_band_factorization(f: BandFactorization) -> BraidWord:
    letters: list[int] = []
    for i, j in f.factors:
        letters.extend(band_word(i, j))
    return BraidWord(f.strands, tuple(letters))


def self_linking_of_braid(w: BraidWord) -> int:
    """Self-linking number of the transverse closure: writhe minus strand count."""
    return w.exponent_sum() - w.strands


def braid_closure(w: BraidWord) -> LinkDiagram:
    """PD code of the closed braid.

    Strands run upward; sigma_i is the positive crossing in which the strand
    at position i passes over the strand at position i+1.
    """
    counter = iter(range(1, 10**9))
    start = [next(counter) for _ in range(w.strands)]
    current = list(start)
    crossings = []
    for x in w.letters:
        i = abs(x) - 1
        sw, se = current[i], current[i + 1]
        nw, ne = next(counter), next(counter)
        if x > 0:
            crossings.append([se, ne, nw, sw])
        else:
            crossings.append([sw, se, ne, nw])
        current[i], current[i + 1] = nw, ne
    # closing strands identify the top label at each position with the bottom one
    rename = {top: bot for top, bot in zip(current, start) if top != bot}
    free = sum(1 for top, bot in zip(current, start) if top == bot)
    crossings = [[rename.get(a, a) for a in c] for c in crossings]
    if not crossings:
        return LinkDiagram((), free)
    hint = tuple(3 if x > 0 else 1 for x in w.letters)
    d = LinkDiagram(tuple(tuple(c) for c in crossings), free, hint=hint)
    return d.relabelled()
