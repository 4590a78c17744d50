"""Whitehead graphs, Whitehead moves, primitivity, and blocking certificates.

The letter graph of a word has the 2n letters as vertices and one edge
{x, y^-1} for every adjacent pair xy; the closed variant also counts the
wrap-around pair of the cyclic word.  A word whose closed graph is connected
and cutpoint-free is never primitive (Whitehead's lemma), and a word whose
open graph is connected and cutpoint-free occurs in no cyclically reduced
primitive word, which is the certificate computed here.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    ClosedOnNonCyclicallyReduced,
    NotCoprime,
    RankMismatch,
    RankTooLarge,
)
from .words import (
    CyclicWord,
    Word,
    _canonical_cycle,
    _cyclic_core,
    _least_rotation_index,
    check_letter,
    cyclic_reduce,
    letter_key,
)

DEFAULT_RANK_CAP = 4

CONNECTED_NO_CUTPOINT = "CONNECTED_NO_CUTPOINT"
DISCONNECTED = "DISCONNECTED"
HAS_CUTPOINT = "HAS_CUTPOINT"
TOO_SHORT = "TOO_SHORT"


def all_letters(rank: int) -> list[int]:
    """The 2n letters in canonical order 1, -1, 2, -2, ..."""
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return out


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if letter_key(u) <= letter_key(v) else (v, u)


class WhiteheadGraph:
    """Multigraph on the 2n letters with multiplicity-counted unordered edges."""

    def __init__(self, rank: int, edges: Iterable[tuple[int, int]] = ()):
        self.rank = rank
        multiplicity: Counter = Counter()
        for u, v in edges:
            check_letter(u, rank)
            check_letter(v, rank)
            multiplicity[_edge(u, v)] += 1
        self.edge_multiplicity = dict(multiplicity)

    @property
    def vertices(self) -> list[int]:
        return all_letters(self.rank)

    def edge_count(self) -> int:
        return sum(self.edge_multiplicity.values())

    def multiplicity(self, u: int, v: int) -> int:
        return self.edge_multiplicity.get(_edge(u, v), 0)

    def degree(self, v: int) -> int:
        total = 0
        for (a, b), m in self.edge_multiplicity.items():
            if a == v:
                total += m
            if b == v:
                total += m
        return total

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for (u, v), m in self.edge_multiplicity.items():
            g.add_edge(u, v, multiplicity=m)
        return g

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WhiteheadGraph)
            and self.rank == other.rank
            and self.edge_multiplicity == other.edge_multiplicity
        )

    def __repr__(self) -> str:
        return "WhiteheadGraph(rank=%d, edges=%r)" % (self.rank, self.edge_multiplicity)


def whitehead_graph(w: Word | CyclicWord, closed: bool = False) -> WhiteheadGraph:
    """Letter graph of w; ``closed`` also counts the wrap-around pair.

    The closed graph is only defined for cyclically reduced words.
    """
    letters = w.letters
    if closed:
        core, _ = _cyclic_core(letters)
        if len(core) != len(letters):
            raise ClosedOnNonCyclicallyReduced(
                "closed graph requested for non-cyclically-reduced word %r" % (str(w),)
            )
    pairs = list(zip(letters, letters[1:]))
    if closed and len(letters) >= 1:
        pairs.append((letters[-1], letters[0]))
    return WhiteheadGraph(w.rank, ((x, -y) for x, y in pairs))


def is_connected(g: WhiteheadGraph) -> bool:
    """Connectivity on all 2n vertices; isolated vertices disconnect."""
    return nx.is_connected(g.to_networkx())


def has_cutpoint(g: WhiteheadGraph) -> bool:
    """Whether removing some vertex increases the number of components.

    Tested on the subgraph spanned by vertices with at least one edge, so
    isolated vertices never count as (or create) cutpoints.
    """
    graph = g.to_networkx()
    support = [v for v in graph if graph.degree(v) > 0]
    if not support:
        return False
    sub = graph.subgraph(support)
    return any(True for _ in nx.articulation_points(sub))


@dataclass(frozen=True)
class BlockingCertificate:
    word: Word
    certified: bool
    reason: str


def blocking_certificate(w: Word) -> BlockingCertificate:
    """Certify that w occurs in no cyclically reduced primitive word.

    Certified exactly when the open letter graph of w is connected on all 2n
    vertices and has no cutpoint.  A failed certificate says nothing: some
    power of w may still certify.
    """
    if len(w) == 0:
        return BlockingCertificate(w, False, TOO_SHORT)
    g = whitehead_graph(w, closed=False)
    if not is_connected(g):
        return BlockingCertificate(w, False, DISCONNECTED)
    if has_cutpoint(g):
        return BlockingCertificate(w, False, HAS_CUTPOINT)
    return BlockingCertificate(w, True, CONNECTED_NO_CUTPOINT)


class WhiteheadAutomorphism:
    """An automorphism of the free group given by its generator images."""

    def __init__(self, rank: int, images: Sequence[Word], label: str = ""):
        if len(images) != rank:
            raise RankMismatch("need %d generator images, got %d" % (rank, len(images)))
        for img in images:
            if img.rank != rank:
                raise RankMismatch("image %r has rank %d, expected %d" % (str(img), img.rank, rank))
        self.rank = rank
        self.images = tuple(images)
        self.label = label or ", ".join(
            "%s->%s" % (Word(rank, (i + 1,)), img) for i, img in enumerate(images)
        )
        # raw (positive image, inverse image) pairs for the hot loops
        self._pos = tuple(img.letters for img in self.images)
        self._neg = tuple(tuple(-v for v in reversed(img.letters)) for img in self.images)

    def __repr__(self) -> str:
        return "WhiteheadAutomorphism(%s)" % self.label

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WhiteheadAutomorphism)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.images))

    @classmethod
    def identity(cls, rank: int) -> "WhiteheadAutomorphism":
        return cls(rank, [Word(rank, (i,)) for i in range(1, rank + 1)])

    @classmethod
    def letter_permutation(cls, rank: int, mapping: dict[int, int]) -> "WhiteheadAutomorphism":
        """First-kind move: a signed permutation of the letters.

        ``mapping`` sends each generator index to a letter; the absolute
        values must form a permutation of 1..rank.
        """
        if sorted(abs(mapping.get(i, 0)) for i in range(1, rank + 1)) != list(range(1, rank + 1)):
            raise ValueError("mapping %r is not a signed permutation of 1..%d" % (mapping, rank))
        return cls(rank, [Word(rank, (mapping[i],)) for i in range(1, rank + 1)])

    @classmethod
    def multiplier_move(cls, rank: int, multiplier: int, members: Iterable[int]) -> "WhiteheadAutomorphism":
        """Second-kind move with multiplier letter a and letter set A.

        A is {a} together with ``members``; the inverse of a may not belong.
        A generator x outside {a, a^-1} maps to x*a if only x is in A, to
        a^-1*x if only x^-1 is in A, to a^-1*x*a if both are, and is fixed
        otherwise; a itself is fixed.
        """
        check_letter(multiplier, rank)
        members = set(members)
        if multiplier in members or -multiplier in members:
            raise ValueError("members may not contain the multiplier or its inverse")
        for v in members:
            check_letter(v, rank)
        a = multiplier
        images = []
        for i in range(1, rank + 1):
            if i == abs(a):
                images.append(Word(rank, (i,)))
                continue
            in_a = i in members
            inv_in_a = -i in members
            if in_a and not inv_in_a:
                images.append(Word(rank, (i, a)))
            elif inv_in_a and not in_a:
                images.append(Word(rank, (-a, i)))
            elif in_a and inv_in_a:
                images.append(Word(rank, (-a, i, a)))
            else:
                images.append(Word(rank, (i,)))
        move = cls(rank, images)
        move._move_data = (a, tuple(sorted(members, key=letter_key)))
        return move

    def inverse_move(self) -> "WhiteheadAutomorphism":
        """Inverse of a second-kind move: same members, inverted multiplier."""
        kind = getattr(self, "_move_data", None)
        if kind is None:
            raise ValueError("inverse_move is only defined for multiplier moves")
        a, members = kind
        return WhiteheadAutomorphism.multiplier_move(self.rank, -a, members)


def _apply_raw(phi: WhiteheadAutomorphism, letters: Sequence[int]) -> list[int]:
    out: list[int] = []
    pos, neg = phi._pos, phi._neg
    for v in letters:
        img = pos[v - 1] if v > 0 else neg[-v - 1]
        for u in img:
            if out and out[-1] == -u:
                out.pop()
            else:
                out.append(u)
    return out


def apply_automorphism(phi: WhiteheadAutomorphism, w: Word) -> Word:
    if phi.rank != w.rank:
        raise RankMismatch("automorphism rank %d vs word rank %d" % (phi.rank, w.rank))
    return Word(w.rank, tuple(_apply_raw(phi, w.letters)))


@lru_cache(maxsize=None)
def _move_pool(rank: int) -> tuple[WhiteheadAutomorphism, ...]:
    """All non-identity second-kind moves, in a fixed enumeration order."""
    letters = all_letters(rank)
    moves = []
    for a in letters:
        others = [x for x in letters if abs(x) != abs(a)]
        for mask in range(1, 1 << len(others)):
            members = [others[k] for k in range(len(others)) if mask >> k & 1]
            moves.append(WhiteheadAutomorphism.multiplier_move(rank, a, members))
    return tuple(moves)


def _check_rank_cap(rank: int, rank_cap: int) -> None:
    if rank > rank_cap:
        raise RankTooLarge(
            "rank %d exceeds the move-search cap %d (the pool has 2n*2^(2n-2) moves)"
            % (rank, rank_cap)
        )


def _minimize_raw(rank: int, core: tuple[int, ...]) -> tuple[tuple[int, ...], list[WhiteheadAutomorphism]]:
    moves = _move_pool(rank)
    trace: list[WhiteheadAutomorphism] = []
    while True:
        n = len(core)
        for phi in moves:
            image = _apply_raw(phi, core)
            new_core, _ = _cyclic_core(image)
            if len(new_core) < n:
                core, _ = _canonical_cycle(new_core)
                trace.append(phi)
                break
        else:
            return core, trace


def whitehead_minimize(
    w: Word | CyclicWord, rank_cap: int = DEFAULT_RANK_CAP
) -> tuple[CyclicWord, list[WhiteheadAutomorphism]]:
    """Greedily shorten the conjugacy class of w with second-kind moves.

    Applies the first length-reducing move in a fixed enumeration order until
    none reduces.  Peak reduction guarantees the terminal length is minimal
    over the whole automorphism orbit, so the terminal word has length 1
    exactly when w is primitive.
    """
    _check_rank_cap(w.rank, rank_cap)
    if isinstance(w, CyclicWord):
        start = w.letters
    else:
        start = cyclic_reduce(w)[0].letters
    core, trace = _minimize_raw(w.rank, start)
    return CyclicWord(w.rank, core), trace


def exponent_vector(w: Word | CyclicWord) -> tuple[int, ...]:
    counts = [0] * w.rank
    for v in w.letters:
        counts[abs(v) - 1] += 1 if v > 0 else -1
    return tuple(counts)


def _exponent_gcd(letters: Sequence[int], rank: int) -> int:
    counts = [0] * rank
    for v in letters:
        counts[abs(v) - 1] += 1 if v > 0 else -1
    g = 0
    for c in counts:
        g = math.gcd(g, abs(c))
    return g


def is_primitive(w: Word | CyclicWord, rank_cap: int = DEFAULT_RANK_CAP) -> bool:
    """Whether w belongs to some free basis.

    Invariant under conjugation, inversion, and automorphisms.  The empty
    word is not primitive.  A coprimality check on the exponent vector (a
    necessary condition, preserved by automorphisms) short-circuits most
    negatives before the move search runs.
    """
    _check_rank_cap(w.rank, rank_cap)
    if isinstance(w, CyclicWord):
        core = w.letters
    else:
        core = cyclic_reduce(w)[0].letters
    if not core:
        return False
    if _exponent_gcd(core, w.rank) != 1:
        return False
    terminal, _ = _minimize_raw(w.rank, core)
    return len(terminal) == 1


def _canonical_classes(rank: int, max_len: int):
    """Canonical least-rotation cyclically reduced letter tuples, lengths 1..max_len."""
    letters = all_letters(rank)
    low_key = letter_key(letters[0])
    for length in range(1, max_len + 1):
        stack: list[int] = []

        def emit(prefix: list[int]):
            if len(prefix) == length:
                if length == 1 or prefix[0] != -prefix[-1]:
                    if _least_rotation_index(prefix) == 0:
                        yield tuple(prefix)
                return
            for v in letters:
                if prefix and v == -prefix[-1]:
                    continue
                # a canonical rotation must start at a least letter
                if prefix and letter_key(v) < letter_key(prefix[0]):
                    continue
                prefix.append(v)
                yield from emit(prefix)
                prefix.pop()

        yield from emit(stack)


@lru_cache(maxsize=None)
def _primitive_classes(rank: int, max_len: int, rank_cap: int) -> tuple[CyclicWord, ...]:
    _check_rank_cap(rank, rank_cap)
    found = []
    for core in _canonical_classes(rank, max_len):
        if _exponent_gcd(core, rank) != 1:
            continue
        terminal, _ = _minimize_raw(rank, core)
        if len(terminal) == 1:
            found.append(CyclicWord(rank, core))
    found.sort(key=CyclicWord.sort_key)
    return tuple(found)


def enumerate_primitive_classes(
    rank: int, max_len: int, rank_cap: int = DEFAULT_RANK_CAP
) -> tuple[CyclicWord, ...]:
    """All conjugacy classes of primitive elements with length at most max_len.

    Classes and their inverses are listed separately; the output is sorted
    lexicographically in the letter order and is complete and duplicate-free.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    return _primitive_classes(rank, max_len, rank_cap)


def _positive_slope_letters(p: int, q: int) -> list[int]:
    """Mediant-recursion word for slope p/q with p, q >= 0 coprime.

    Base words are a at 0/1 and b at 1/0; the word at a mediant is the
    concatenation of the words at its lower and upper parents.
    """
    if (p, q) == (0, 1):
        return [1]
    if (p, q) == (1, 0):
        return [2]
    lp, lq, lw = 0, 1, [1]
    rp, rq, rw = 1, 0, [2]
    while True:
        mp, mq = lp + rp, lq + rq
        mw = lw + rw
        if (mp, mq) == (p, q):
            return mw
        if p * mq < mp * q:
            rp, rq, rw = mp, mq, mw
        else:
            lp, lq, lw = mp, mq, mw


def primitive_of_slope(p: int, q: int) -> CyclicWord:
    """The rank-2 primitive class indexed by the slope p/q.

    Convention: slope 0/1 is a, slope 1/0 is b, and the class at a Farey
    mediant is the concatenation of the classes at its parents, so the
    exponent vector of the result is (q, p).  Negative slopes are reached by
    inverting b (for p < 0) and by inverting the whole word (for q < 0).
    """
    if (p, q) == (0, 0) or math.gcd(abs(p), abs(q)) != 1:
        raise NotCoprime("slope coordinates (%d, %d) must be coprime and nonzero" % (p, q))
    invert_all = q < 0 or (q == 0 and p < 0)
    if invert_all:
        p, q = -p, -q
    flip_b = p < 0
    letters = _positive_slope_letters(abs(p), q)
    if flip_b:
        letters = [v if v == 1 else -2 for v in letters]
    if invert_all:
        letters = [-v for v in reversed(letters)]
    return CyclicWord(2, tuple(letters))
