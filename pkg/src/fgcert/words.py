"""Freely reduced words over a finite generator alphabet.

Conventions used throughout the package:

* commutator(a, b) = a * b * a^-1 * b^-1, so that commutator(y, x) is
  the word y x y^-1 x^-1 (the opposite convention [a,b] = a^-1 b^-1 a b
  is also common; we do NOT use it),
* conjugation is right conjugation: a.conjugated_by(t) = t^-1 a t,
* the empty word prints as "1".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class WordError(ValueError):
    """Raised for malformed words, parse failures and alphabet mismatches."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered tuple of distinct generator names."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise WordError("alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise WordError(f"generator names not distinct: {self.names}")
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise WordError(f"bad generator name: {name!r}")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise WordError(f"unknown generator {name!r}") from None

    def generator(self, i: int, exponent: int = 1) -> "Word":
        return Word(self, ((i, exponent),)) if exponent else Word(self, ())

    def generators(self) -> list["Word"]:
        return [self.generator(i) for i in range(self.rank)]

    def identity(self) -> "Word":
        return Word(self, ())


def alphabet(*names: str) -> Alphabet:
    return Alphabet(tuple(names))


def _reduce(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word, stored in run-length (syllable) form.

    ``syllables`` is a sequence of (generator index, nonzero exponent)
    pairs with distinct adjacent generator indices.  Instances are
    immutable and hashable; all operations return new words.
    """

    alphabet: Alphabet
    syllables: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for gen, exp in self.syllables:
            if exp == 0:
                raise WordError("zero exponent in syllable")
            if not 0 <= gen < self.alphabet.rank:
                raise WordError(f"generator index {gen} out of range")
            if gen == prev:
                raise WordError("word not freely reduced")
            prev = gen

    @staticmethod
    def from_syllables(alpha: Alphabet, syllables: Iterable[tuple[int, int]]) -> "Word":
        return Word(alpha, _reduce(syllables))

    def _check(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise WordError("alphabet mismatch")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.alphabet, _reduce(self.syllables + other.syllables))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.alphabet.identity()
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple((g, -e) for g, e in reversed(self.syllables)))

    def conjugated_by(self, t: "Word") -> "Word":
        """Right conjugation t^-1 * self * t."""
        self._check(t)
        return t.inverse() * self * t

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        """Number of letters of the reduced word."""
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> list[tuple[int, int]]:
        """The word as a list of (generator, +1/-1) letters."""
        out = []
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            out.extend([(gen, sign)] * abs(exp))
        return out

    def exponent_sums(self) -> tuple[int, ...]:
        """Abelianized image: total exponent of each generator."""
        sums = [0] * self.alphabet.rank
        for gen, exp in self.syllables:
            sums[gen] += exp
        return tuple(sums)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for gen, exp in self.syllables:
            name = self.alphabet.names[gen]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({self})"


def commutator(a: Word, b: Word) -> Word:
    """commutator(a, b) = a b a^-1 b^-1, so commutator(y, x) = y x y^-1 x^-1."""
    return a * b * a.inverse() * b.inverse()


_TOKEN_RE = re.compile(r"\s*(?:(\*)|([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?|(1)|(\S))")


def parse_word(text: str, alpha: Alphabet) -> Word:
    """Parse ``name(^int)?`` terms separated by whitespace or ``*``.

    The lone string "1" denotes the empty word.  Syntax errors report
    the offending position.
    """
    if text.strip() == "1":
        return alpha.identity()
    syllables: list[tuple[int, int]] = []
    pos = 0
    saw_term = False
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(5):
            raise WordError(f"syntax error at position {m.start(5)}: {m.group(5)!r}")
        if m.group(4):
            raise WordError(f"'1' only denotes the empty word on its own (position {m.start(4)})")
        if m.group(2):
            name = m.group(2)
            exp = int(m.group(3)) if m.group(3) is not None else 1
            if exp == 0:
                raise WordError(f"zero exponent at position {m.start(2)}")
            syllables.append((alpha.index(name), exp))
            saw_term = True
        pos = m.end()
    if not saw_term:
        raise WordError(f"empty word text: {text!r}")
    return Word.from_syllables(alpha, syllables)


def random_word(rng, alpha: Alphabet, max_length: int) -> Word:
    """A random freely reduced word of length <= max_length."""
    length = rng.randint(0, max_length)
    letters: list[tuple[int, int]] = []
    for _ in range(length):
        while True:
            gen = rng.randrange(alpha.rank)
            sign = rng.choice((1, -1))
            if letters and letters[-1] == (gen, -sign):
                continue
            break
        letters.append((gen, sign))
    return Word.from_syllables(alpha, letters)
