"""Finite evidence scans for primitive stability.

The scans tabulate translation length over cyclic length for every primitive
conjugacy class up to a length bound.  A non-loxodromic primitive image is a
genuine obstruction; the absence of one is evidence only, since the true
condition quantifies over all primitive classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadSubset, ParseError, RankMismatch
from .moebius import (
    IsometryClass,
    MoebiusMap,
    Representation,
    UhsPoint,
    act_uhs,
    classify,
    evaluate,
    translation_length,
    uhs_distance,
)
from .whitehead import DEFAULT_RANK_CAP, WhiteheadAutomorphism, enumerate_primitive_classes
from .words import CyclicWord, Word, parse_word

NO_OBSTRUCTION = "NO_OBSTRUCTION"
FAILURE = "FAILURE"


@dataclass(frozen=True)
class SpectrumEntry:
    cls: CyclicWord
    length: int
    trans_len: float
    ratio: float
    kind: IsometryClass


@dataclass(frozen=True)
class PsReport:
    max_len: int
    entries: tuple[SpectrumEntry, ...]
    min_ratio: float
    max_ratio: float
    failures: tuple[CyclicWord, ...]
    verdict: str


def primitive_length_spectrum(
    rep: Representation, max_len: int, rank_cap: int = DEFAULT_RANK_CAP
) -> tuple[SpectrumEntry, ...]:
    """One entry per primitive class with cyclic length at most max_len."""
    entries = []
    for cls in enumerate_primitive_classes(rep.rank, max_len, rank_cap):
        m = evaluate(rep, cls)
        kind = classify(m)
        trans_len = translation_length(m) if kind == IsometryClass.LOXODROMIC else 0.0
        entries.append(SpectrumEntry(cls, len(cls), trans_len, trans_len / len(cls), kind))
    return tuple(entries)


def ps_scan(
    rep: Representation, max_len: int, rank_cap: int = DEFAULT_RANK_CAP
) -> PsReport:
    """Scan the primitive spectrum for obstructions to primitive stability.

    FAILURE lists every primitive class whose image is not loxodromic; such a
    class rules the representation out.  NO_OBSTRUCTION reports the observed
    ratio range and is evidence at this max_len, not a certificate.
    """
    entries = primitive_length_spectrum(rep, max_len, rank_cap)
    failures = tuple(e.cls for e in entries if e.kind != IsometryClass.LOXODROMIC)
    ratios = [e.ratio for e in entries]
    min_ratio = min(ratios) if ratios else 0.0
    max_ratio = max(ratios) if ratios else 0.0
    base = UhsPoint(0.0, 1.0)
    displacement = max(uhs_distance(base, act_uhs(g, base)) for g in rep.images)
    if max_ratio > displacement + 1e-6:
        raise ArithmeticError(
            "ratio %r exceeds the basepoint displacement bound %r" % (max_ratio, displacement)
        )
    verdict = FAILURE if failures else NO_OBSTRUCTION
    return PsReport(max_len, entries, min_ratio, max_ratio, failures, verdict)


def restrict(rep: Representation, subset) -> Representation:
    """Restriction to the free factor spanned by the 1-based generator indices."""
    indices = list(subset)
    if not indices:
        raise BadSubset("subset must be nonempty")
    if len(set(indices)) != len(indices):
        raise BadSubset("subset %r has repeated indices" % (indices,))
    if any(not 1 <= i <= rep.rank for i in indices):
        raise BadSubset("subset %r is out of range for rank %d" % (indices, rep.rank))
    if len(indices) >= rep.rank:
        raise BadSubset("subset must be a proper subset of the generators")
    return Representation(len(indices), tuple(rep.images[i - 1] for i in indices))


def precompose(rep: Representation, phi: WhiteheadAutomorphism) -> Representation:
    """The representation with generator images evaluated on phi's images."""
    if rep.rank != phi.rank:
        raise RankMismatch("representation rank %d vs automorphism rank %d" % (rep.rank, phi.rank))
    return Representation(rep.rank, tuple(evaluate(rep, img) for img in phi.images))


def orbit_growth_probe(
    rep: Representation,
    w: Word | CyclicWord,
    periods: int,
    basepoint: UhsPoint | None = None,
) -> tuple[float, list[float]]:
    """Displacement growth of a periodic orbit under powers of a word.

    Computes d(p0, w^m p0) for m = 0..periods and fits distance = slope * m
    by least squares through the origin.  For loxodromic images the slope
    approaches the translation length; sublinear growth flags parabolics.
    """
    if periods < 2:
        raise ValueError("periods must be at least 2")
    base = basepoint if basepoint is not None else UhsPoint(0.0, 1.0)
    step = evaluate(rep, w)
    acc = MoebiusMap.identity()
    dists = [0.0]
    for _ in range(periods):
        acc = acc.mul(step)
        dists.append(uhs_distance(base, act_uhs(acc, base)))
    num = sum(m * d for m, d in enumerate(dists))
    den = sum(m * m for m in range(periods + 1))
    slope = num / den
    residuals = [d - slope * m for m, d in enumerate(dists)]
    return slope, residuals


def _entry_to_json(e: SpectrumEntry) -> dict:
    return {
        "cls": str(e.cls),
        "length": e.length,
        "trans_len": e.trans_len,
        "ratio": e.ratio,
        "kind": e.kind.value,
    }


def ps_report_to_json(report: PsReport, rank: int) -> dict:
    return {
        "verdict": report.verdict,
        "min_ratio": report.min_ratio,
        "max_ratio": report.max_ratio,
        "failures": [str(w) for w in report.failures],
        "entries": [_entry_to_json(e) for e in report.entries],
        "max_len": report.max_len,
        "rank": rank,
    }


def ps_report_from_json(obj) -> PsReport:
    try:
        rank = obj["rank"]
        entries = tuple(
            SpectrumEntry(
                cls=CyclicWord(rank, parse_word(e["cls"], rank).letters),
                length=e["length"],
                trans_len=e["trans_len"],
                ratio=e["ratio"],
                kind=IsometryClass(e["kind"]),
            )
            for e in obj["entries"]
        )
        failures = tuple(CyclicWord(rank, parse_word(s, rank).letters) for s in obj["failures"])
        return PsReport(
            max_len=obj["max_len"],
            entries=entries,
            min_ratio=obj["min_ratio"],
            max_ratio=obj["max_ratio"],
            failures=failures,
            verdict=obj["verdict"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed scan report: %s" % (exc,)) from exc
