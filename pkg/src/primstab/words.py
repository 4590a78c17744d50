"""Freely and cyclically reduced words over a fixed free basis.

Letters are nonzero integers: ``k`` is the k-th generator, ``-k`` its
inverse.  Words serialize as ASCII with ``a..z`` for generators 1..26 and
``A..Z`` for their inverses, so ``"abAB"`` means a b a^-1 b^-1.  Letters are
ordered 1 < -1 < 2 < -2 < ...; cyclic words are stored as the least rotation
in that order, which makes conjugacy-class representatives unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidLetter, RankMismatch, WordParseError


def letter_key(letter: int) -> int:
    """Rank of a letter in the order 1 < -1 < 2 < -2 < ..."""
    return 2 * abs(letter) - (1 if letter > 0 else 0)


def check_letter(letter: int, rank: int) -> None:
    if letter == 0 or abs(letter) > rank:
        raise InvalidLetter("letter %r out of range for rank %d" % (letter, rank))


def _reduce_list(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return out


def _least_rotation_index(letters: Sequence[int]) -> int:
    n = len(letters)
    if n <= 1:
        return 0
    keys = [letter_key(v) for v in letters]
    low = min(keys)
    doubled = keys + keys
    best = -1
    for i in range(n):
        if keys[i] != low:
            continue
        if best < 0 or doubled[i:i + n] < doubled[best:best + n]:
            best = i
    return best


def _cyclic_core(letters: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split a reduced word into (cyclically reduced core, conjugating prefix)."""
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return list(letters[i:j]), list(letters[:i])


def _canonical_cycle(letters: Sequence[int]) -> tuple[tuple[int, ...], int]:
    k = _least_rotation_index(letters)
    return tuple(letters[k:]) + tuple(letters[:k]), k


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the identity is the empty word."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidLetter("rank must be a positive integer, got %r" % (self.rank,))
        object.__setattr__(self, "letters", tuple(self.letters))
        for v in self.letters:
            check_letter(v, self.rank)
        for u, v in zip(self.letters, self.letters[1:]):
            if u == -v:
                raise ValueError("word is not freely reduced: %r" % (self.letters,))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __repr__(self) -> str:
        return "Word(%r, rank=%d)" % (str(self), self.rank)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced conjugacy-class representative.

    Stored as the least rotation, so equal classes compare equal.  The length
    of ``letters`` is the minimal combinatorial length of the class.
    """

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidLetter("rank must be a positive integer, got %r" % (self.rank,))
        letters = tuple(self.letters)
        for v in letters:
            check_letter(v, self.rank)
        n = len(letters)
        for i in range(n):
            if n > 1 and letters[i] == -letters[(i + 1) % n]:
                raise ValueError("word is not cyclically reduced: %r" % (letters,))
        canon, _ = _canonical_cycle(letters)
        object.__setattr__(self, "letters", canon)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __repr__(self) -> str:
        return "CyclicWord(%r, rank=%d)" % (str(self), self.rank)

    def to_word(self) -> Word:
        return Word(self.rank, self.letters)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(letter_key(v) for v in self.letters)


def reduce(letters: Iterable[int], rank: int) -> Word:
    """Freely reduce a letter sequence.  Idempotent."""
    letters = list(letters)
    for v in letters:
        check_letter(v, rank)
    return Word(rank, tuple(_reduce_list(letters)))


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-v for v in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise RankMismatch("cannot concatenate rank %d and rank %d words" % (u.rank, v.rank))
    return Word(u.rank, tuple(_reduce_list(u.letters + v.letters)))


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    out = Word(w.rank)
    for _ in range(n):
        out = concat(out, w)
    return out


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split w = conjugator * core * conjugator^-1 with a canonical cyclic core."""
    core, prefix = _cyclic_core(w.letters)
    k = _least_rotation_index(core)
    cyc = CyclicWord(w.rank, tuple(core[k:] + core[:k]))
    conj = Word(w.rank, tuple(prefix + core[:k]))
    return cyc, conj


def cyclic_length(w: Word) -> int:
    """Minimal combinatorial length in the conjugacy class of w."""
    core, _ = _cyclic_core(w.letters)
    return len(core)


def format_letters(letters: Iterable[int]) -> str:
    out = []
    for v in letters:
        if not 1 <= abs(v) <= 26:
            raise ValueError("letter %r has no ASCII form (only ranks up to 26 do)" % (v,))
        out.append(chr(ord("a") + v - 1) if v > 0 else chr(ord("A") - v - 1))
    return "".join(out)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse an ASCII word and freely reduce it.

    The rank defaults to the largest generator index that occurs (1 for the
    empty string).  Characters outside a-z / A-Z are rejected.
    """
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise WordParseError("invalid character %r in word %r" % (ch, text))
    if rank is None:
        rank = max((abs(v) for v in letters), default=1)
    return reduce(letters, rank)
