import math
import random

import pytest

import primstab as ps
from primstab.errors import BadSubset

from helpers import (
    random_automorphism,
    random_representation,
    random_sl2,
    random_word,
    schottky_example,
    word_matrix,
)


def diag_rep():
    return ps.Representation(2, (ps.MoebiusMap(2, 0, 0, 0.5), ps.MoebiusMap(1, -1, -1, 2)))


def entry_for(entries, text):
    for e in entries:
        if str(e.cls) == text:
            return e
    raise AssertionError("no entry for %r" % (text,))


def test_spectrum_entry_for_diagonal_generator():
    entries = ps.primitive_length_spectrum(diag_rep(), 1)
    e = entry_for(entries, "a")
    assert e.length == 1
    assert abs(e.trans_len - 2 * math.log(2)) <= 1e-12
    assert abs(e.ratio - 2 * math.log(2)) <= 1e-12
    assert e.kind == ps.IsometryClass.LOXODROMIC


def test_spectrum_entry_for_parabolic_generator():
    rep = ps.Representation(2, (ps.MoebiusMap(1, 1, 0, 1), ps.MoebiusMap(1, -1, -1, 2)))
    entries = ps.primitive_length_spectrum(rep, 1)
    e = entry_for(entries, "a")
    assert e.ratio == 0.0 and e.trans_len == 0.0
    assert e.kind == ps.IsometryClass.PARABOLIC


def test_spectrum_matches_bare_matrix_recomputation():
    rng = random.Random(40)
    rep = random_representation(rng, 2, scale=0.8)
    entries = ps.primitive_length_spectrum(rep, 3)
    assert len(entries) == len(ps.enumerate_primitive_classes(2, 3))
    for e in entries:
        oracle = word_matrix(rep, e.cls.letters)
        trace = oracle[0][0] + oracle[1][1]
        lam = (trace + (trace * trace - 4) ** 0.5) / 2
        mod = abs(lam)
        if mod < 1:
            mod = 1 / mod
        expected = 2 * math.log(mod)
        if e.kind == ps.IsometryClass.LOXODROMIC:
            assert abs(e.trans_len - expected) <= 1e-8
            assert abs(e.ratio - expected / e.length) <= 1e-8
        else:
            assert expected <= 1e-6


def test_ps_scan_schottky_has_no_obstruction():
    rep, pairs = schottky_example()
    assert ps.schottky_check(rep, pairs).valid
    report = ps.ps_scan(rep, 6)
    assert report.verdict == ps.NO_OBSTRUCTION
    assert report.failures == ()
    assert report.min_ratio > 0
    assert report.min_ratio == min(e.ratio for e in report.entries)
    assert report.max_ratio == max(e.ratio for e in report.entries)


def test_ps_scan_elliptic_generator_fails_with_witness():
    theta = 1.0
    rot = ps.MoebiusMap(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta))
    rep, _ = schottky_example()
    broken = ps.Representation(2, (rot, rep.images[1]))
    report = ps.ps_scan(broken, 3)
    assert report.verdict == ps.FAILURE
    assert "a" in {str(w) for w in report.failures}


def test_ps_scan_ratio_bounded_by_basepoint_displacement():
    rng = random.Random(41)
    base = ps.UhsPoint(0, 1)
    for _ in range(10):
        rep = random_representation(rng, 2)
        report = ps.ps_scan(rep, 4)
        bound = max(ps.uhs_distance(base, ps.act_uhs(g, base)) for g in rep.images)
        assert report.max_ratio <= bound + 1e-6


def test_ps_scan_conjugation_invariance():
    rng = random.Random(42)
    rep = random_representation(rng, 2)
    u = random_sl2(rng)
    conj = ps.Representation(2, tuple(u.mul(g).mul(u.inverse()) for g in rep.images))
    r1 = ps.ps_scan(rep, 4)
    r2 = ps.ps_scan(conj, 4)
    for e1, e2 in zip(r1.entries, r2.entries):
        assert e1.cls == e2.cls
        assert abs(e1.ratio - e2.ratio) <= 1e-8


def test_precomposition_identity():
    # the entry of rep∘phi at class [w] equals the entry of rep at class [phi(w)]
    rng = random.Random(43)
    rep = random_representation(rng, 2)
    for _ in range(10):
        phi = random_automorphism(rng, 2)
        pre = ps.precompose(rep, phi)
        spectrum = {e.cls: e for e in ps.primitive_length_spectrum(rep, 8)}
        for e in ps.primitive_length_spectrum(pre, 2):
            image_class, _ = ps.cyclic_reduce(
                ps.apply_automorphism(phi, e.cls.to_word())
            )
            mate = spectrum.get(image_class)
            if mate is not None:
                assert abs(e.trans_len - mate.trans_len) <= 1e-8


def test_restrict_examples():
    rng = random.Random(44)
    rep = random_representation(rng, 3)
    sub = ps.restrict(rep, [1, 2])
    assert sub.rank == 2
    assert sub.images == rep.images[:2]
    single = ps.restrict(rep, [3])
    assert single.images == (rep.images[2],)


def test_restrict_to_one_generator_reproduces_its_classification():
    rep, _ = schottky_example()
    report = ps.ps_scan(ps.restrict(rep, [1]), 3)
    assert report.verdict == ps.NO_OBSTRUCTION
    assert [str(e.cls) for e in report.entries] == ["a", "A"]
    assert {e.kind for e in report.entries} == {ps.classify(rep.images[0])}


def test_restrict_errors():
    rng = random.Random(45)
    rep = random_representation(rng, 3)
    for bad in ([], [1, 2, 3], [0], [4], [1, 1]):
        with pytest.raises(BadSubset):
            ps.restrict(rep, bad)


def test_probe_identity_rep():
    rep = ps.Representation(2, (ps.MoebiusMap.identity(), ps.MoebiusMap.identity()))
    slope, residuals = ps.orbit_growth_probe(rep, ps.parse_word("ab"), 10)
    assert slope == 0.0
    assert all(r == 0.0 for r in residuals)


def test_probe_diagonal_exact():
    slope, residuals = ps.orbit_growth_probe(diag_rep(), ps.parse_word("a", 2), 50)
    assert abs(slope - 2 * math.log(2)) <= 1e-3
    assert max(abs(r) for r in residuals) <= 1e-9


def test_probe_parabolic_sublinear():
    rep = ps.Representation(2, (ps.MoebiusMap(1, 1, 0, 1), ps.MoebiusMap(1, -1, -1, 2)))
    word = ps.parse_word("a", 2)
    slope50, _ = ps.orbit_growth_probe(rep, word, 50)
    slope25, _ = ps.orbit_growth_probe(rep, word, 25)
    # oracle: distances along the orbit are arccosh(1 + m^2/2)
    for periods, got in ((25, slope25), (50, slope50)):
        dists = [math.acosh(1 + m * m / 2) for m in range(periods + 1)]
        expected = sum(m * d for m, d in enumerate(dists)) / sum(
            m * m for m in range(periods + 1)
        )
        assert abs(got - expected) <= 1e-9
    assert slope50 < slope25  # sublinear growth: the fitted rate keeps falling
    assert slope50 < 0.21


def test_probe_slope_matches_translation_length_from_axis():
    rng = random.Random(46)
    rep, _ = schottky_example()
    found = 0
    while found < 10:
        w = random_word(rng, 2, rng.randint(1, 5))
        m = ps.evaluate(rep, w)
        if ps.classify(m) != ps.IsometryClass.LOXODROMIC:
            continue
        found += 1
        slope, _ = ps.orbit_growth_probe(rep, w, 50, ps.axis_point(m))
        assert abs(slope - ps.translation_length(m)) <= 1e-3


def test_probe_requires_two_periods():
    with pytest.raises(ValueError):
        ps.orbit_growth_probe(diag_rep(), ps.parse_word("a", 2), 1)


def test_report_json_round_trip():
    rep, _ = schottky_example()
    report = ps.ps_scan(rep, 4)
    doc = ps.ps_report_to_json(report, rep.rank)
    assert set(doc) >= {"verdict", "min_ratio", "max_ratio", "failures", "entries"}
    back = ps.ps_report_from_json(doc)
    assert back == report


def test_report_json_round_trip_with_failures():
    theta = 1.0
    rot = ps.MoebiusMap(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta))
    rep, _ = schottky_example()
    broken = ps.Representation(2, (rot, rep.images[1]))
    report = ps.ps_scan(broken, 2)
    back = ps.ps_report_from_json(ps.ps_report_to_json(report, 2))
    assert back == report
