import cmath
import math
import random

import pytest

import primstab as ps
from primstab.errors import (
    DegenerateMatrix,
    DeterminantError,
    ImageIsLine,
    ParseError,
    RankMismatch,
)

from helpers import (
    mat_mul,
    mat_of,
    random_loxodromic,
    random_near_identity_representation,
    random_representation,
    random_sl2,
    random_word,
    schottky_example,
    word_matrix,
)


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def test_constructor_rejects_non_unit_determinant():
    with pytest.raises(DeterminantError):
        ps.MoebiusMap(1, 0, 0, 2)


def test_constructor_rejects_non_finite():
    with pytest.raises(DegenerateMatrix):
        ps.MoebiusMap(float("inf"), 0, 0, 1)


def test_from_matrix_normalizes():
    m = ps.MoebiusMap.from_matrix(2, 0, 0, 2)
    assert close(m.a * m.d - m.b * m.c, 1.0)
    with pytest.raises(DegenerateMatrix):
        ps.MoebiusMap.from_matrix(1, 1, 1, 1)


def test_evaluate_single_letter_and_identity():
    rng = random.Random(20)
    rep = random_representation(rng, 2)
    assert ps.evaluate(rep, ps.parse_word("a", 2)) == rep.images[0]
    assert ps.evaluate(rep, ps.parse_word("aA", 2)).entry_distance(ps.MoebiusMap.identity()) == 0


def test_evaluate_frozen_product():
    rep = ps.Representation(2, (ps.MoebiusMap(1, 1, 1, 2), ps.MoebiusMap(1, -1, -1, 2)))
    m = ps.evaluate(rep, ps.parse_word("ab"))
    assert (m.a, m.b, m.c, m.d) == (0, 1, -1, 3)


def test_evaluate_rank_mismatch():
    rng = random.Random(21)
    rep = random_representation(rng, 2)
    with pytest.raises(RankMismatch):
        ps.evaluate(rep, ps.parse_word("c"))


def test_evaluate_matches_bare_matrix_oracle():
    rng = random.Random(22)
    for _ in range(30):
        rep = random_representation(rng, 2, scale=0.8)
        w = random_word(rng, 2, rng.randint(0, 12))
        m = ps.evaluate(rep, w)
        oracle = word_matrix(rep, w.letters)
        got = mat_of(m)
        for i in range(2):
            for j in range(2):
                assert close(got[i][j], oracle[i][j], 1e-8 * max(1.0, abs(oracle[i][j])))


def test_evaluate_determinant_stays_unit_on_long_words():
    # near-identity generators keep 50-fold products at a scale where the
    # computed determinant is actually meaningful
    rng = random.Random(23)
    for _ in range(20):
        rep = random_near_identity_representation(rng, 2)
        w = random_word(rng, 2, 50)
        m = ps.evaluate(rep, w)
        scale = max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))
        assert scale < 1e3
        assert close(m.a * m.d - m.b * m.c, 1.0, 1e-6)


def test_classify_examples():
    assert ps.classify(ps.MoebiusMap(1, 1, 0, 1)) == ps.IsometryClass.PARABOLIC
    assert ps.classify(ps.MoebiusMap(2, 0, 0, 0.5)) == ps.IsometryClass.LOXODROMIC
    theta = math.acos(0.5)
    rot = ps.MoebiusMap(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta))
    assert close(rot.trace(), 1.0)
    assert ps.classify(rot) == ps.IsometryClass.ELLIPTIC
    assert ps.classify(ps.MoebiusMap.identity()) == ps.IsometryClass.IDENTITY
    assert ps.classify(-ps.MoebiusMap.identity()) == ps.IsometryClass.IDENTITY


def test_classify_sign_and_conjugation_robust():
    rng = random.Random(24)
    for _ in range(50):
        m = random_sl2(rng)
        assert ps.classify(m) == ps.classify(-m)
        u = random_sl2(rng)
        assert ps.classify(u.mul(m).mul(u.inverse())) == ps.classify(m)


def test_translation_length_examples():
    assert abs(ps.translation_length(ps.MoebiusMap(2, 0, 0, 0.5)) - 2 * math.log(2)) <= 1e-12
    assert ps.translation_length(ps.MoebiusMap(1, 1, 0, 1)) == 0.0


def test_translation_length_conjugation_invariant():
    rng = random.Random(25)
    for _ in range(50):
        m = random_sl2(rng)
        u = random_sl2(rng)
        conj = u.mul(m).mul(u.inverse())
        assert close(ps.translation_length(conj), ps.translation_length(m), 1e-9)
        assert close(ps.translation_length(-m), ps.translation_length(m), 1e-12)


def test_translation_length_power_linearity():
    rng = random.Random(26)
    for _ in range(20):
        m = random_loxodromic(rng)
        length = ps.translation_length(m)
        acc = m
        for k in range(2, 6):
            acc = acc.mul(m)
            assert close(ps.translation_length(acc), k * length, 1e-6)


def test_trace_identity_against_oracle():
    rng = random.Random(27)
    for _ in range(200):
        m = random_sl2(rng)
        n = random_sl2(rng)
        lhs = m.mul(n).trace() + m.mul(n.inverse()).trace()
        # oracle: bare list arithmetic, no renormalization
        prod = mat_mul(mat_of(m), mat_of(n))
        assert close(lhs, m.trace() * n.trace(), 1e-9)
        assert close(prod[0][0] + prod[1][1], m.mul(n).trace(), 1e-9)


def test_act_uhs_examples():
    p = ps.UhsPoint(0.25 + 0.5j, 1.5)
    assert ps.act_uhs(ps.MoebiusMap.identity(), p) == p
    moved = ps.act_uhs(ps.MoebiusMap(2, 0, 0, 0.5), ps.UhsPoint(0, 1))
    assert close(moved.z, 0) and close(moved.t, 4.0)
    moved = ps.act_uhs(ps.MoebiusMap(1, 1, 0, 1), ps.UhsPoint(0, 1))
    assert close(moved.z, 1.0) and close(moved.t, 1.0)


def test_act_uhs_is_isometry():
    rng = random.Random(28)
    for _ in range(100):
        m = random_sl2(rng)
        p = ps.UhsPoint(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.1, 3))
        q = ps.UhsPoint(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.1, 3))
        d_before = ps.uhs_distance(p, q)
        d_after = ps.uhs_distance(ps.act_uhs(m, p), ps.act_uhs(m, q))
        assert close(d_after, d_before, 1e-9)


def test_uhs_distance_examples():
    assert close(ps.uhs_distance(ps.UhsPoint(0, 1), ps.UhsPoint(0, math.e)), 1.0, 1e-12)
    p = ps.UhsPoint(1 + 2j, 0.7)
    assert ps.uhs_distance(p, p) == 0.0
    q = ps.UhsPoint(-1, 2.0)
    assert close(ps.uhs_distance(p, q), ps.uhs_distance(q, p), 1e-15)


def test_axis_point_is_translated_by_exactly_the_length():
    rng = random.Random(29)
    for _ in range(30):
        m = random_loxodromic(rng)
        base = ps.axis_point(m)
        length = ps.translation_length(m)
        assert close(ps.uhs_distance(base, ps.act_uhs(m, base)), length, 1e-8)


def test_image_circle_identity_and_translation():
    disk = ps.SphereDisk(0, 1.0)
    same = ps.image_circle(ps.MoebiusMap.identity(), disk)
    assert close(same.center, 0) and close(same.radius, 1.0) and same.interior == ps.DiskSide.INSIDE
    moved = ps.image_circle(ps.MoebiusMap(1, 1, 0, 1), disk)
    assert close(moved.center, 1.0) and close(moved.radius, 1.0)
    assert moved.interior == ps.DiskSide.INSIDE


def test_image_circle_inversion_example():
    # z -> -1/z maps the disk |z-3| <= 1 onto |z+3/8| <= 1/8
    m = ps.MoebiusMap(0, -1, 1, 0)
    img = ps.image_circle(m, ps.SphereDisk(3, 1))
    assert close(img.center, -0.375) and close(img.radius, 0.125)
    assert img.interior == ps.DiskSide.INSIDE


def test_image_circle_pole_inside_flips_side():
    # pole at 0 lies inside |z| <= 2, so the image contains infinity
    m = ps.MoebiusMap(0, -1, 1, 0)
    img = ps.image_circle(m, ps.SphereDisk(0, 2))
    assert img.interior == ps.DiskSide.OUTSIDE
    assert close(img.center, 0) and close(img.radius, 0.5)


def test_image_circle_line_detection():
    m = ps.MoebiusMap(0, -1, 1, 0)  # pole at 0
    with pytest.raises(ImageIsLine):
        ps.image_circle(m, ps.SphereDisk(1, 1))


def test_image_circle_sample_points_land_on_image():
    rng = random.Random(30)
    checked = 0
    while checked < 50:
        m = random_sl2(rng)
        center = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        radius = rng.uniform(0.2, 1.5)
        disk = ps.SphereDisk(center, radius)
        try:
            img = ps.image_circle(m, disk, tol=1e-6)
        except ImageIsLine:
            continue
        checked += 1
        for k in range(16):
            z = center + radius * cmath.exp(2j * math.pi * k / 16)
            assert abs(abs(m.apply(z) - img.center) - img.radius) <= 1e-8


def test_schottky_example_is_valid():
    rep, pairs = schottky_example()
    verdict = ps.schottky_check(rep, pairs)
    assert verdict.valid and verdict.reason is None


def test_schottky_overlapping_disks():
    rep, pairs = schottky_example()
    bad = [(ps.SphereDisk(0, 1.0), ps.SphereDisk(1.0, 1.0)), pairs[1]]
    verdict = ps.schottky_check(rep, bad)
    assert not verdict.valid and verdict.reason == "DISJOINTNESS"


def test_schottky_identity_generator_fails_pairing():
    _, pairs = schottky_example()
    rep = ps.Representation(2, (ps.MoebiusMap.identity(), ps.MoebiusMap.identity()))
    verdict = ps.schottky_check(rep, pairs)
    assert not verdict.valid and verdict.reason == "PAIRING"


def test_schottky_two_outside_disks_never_disjoint():
    rep, pairs = schottky_example()
    bad = [(ps.SphereDisk(0, 1.0, ps.DiskSide.OUTSIDE), ps.SphereDisk(9, 1.0, ps.DiskSide.OUTSIDE)),
           pairs[1]]
    verdict = ps.schottky_check(rep, bad)
    assert not verdict.valid and verdict.reason == "DISJOINTNESS"


def test_fricke_traces_frozen_example():
    rep = ps.Representation(2, (ps.MoebiusMap(1, 1, 1, 2), ps.MoebiusMap(1, -1, -1, 2)))
    x, y, z, kappa = ps.fricke_traces(rep)
    assert (x, y, z, kappa) == (3, 3, 3, -2)


def test_fricke_traces_identity_rep():
    rep = ps.Representation(2, (ps.MoebiusMap.identity(), ps.MoebiusMap.identity()))
    assert ps.fricke_traces(rep) == (2, 2, 2, 2)


def test_fricke_identity_random():
    rng = random.Random(31)
    for _ in range(100):
        rep = random_representation(rng, 2)
        x, y, z, kappa = ps.fricke_traces(rep)
        assert close(x * x + y * y + z * z - x * y * z - 2, kappa, 1e-9)


def test_fricke_requires_rank_2():
    rng = random.Random(32)
    with pytest.raises(RankMismatch):
        ps.fricke_traces(random_representation(rng, 3))


def test_representation_json_round_trip():
    rng = random.Random(33)
    rep = random_representation(rng, 3)
    doc = ps.representation_to_json(rep)
    back = ps.representation_from_json(doc)
    assert back.rank == rep.rank
    for m, n in zip(back.images, rep.images):
        assert m.entry_distance(n) <= 1e-12


def test_representation_json_errors():
    with pytest.raises(ParseError):
        ps.representation_from_json({"generators": []})
    with pytest.raises(ParseError):
        ps.representation_from_json({"rank": 1})
    with pytest.raises(ParseError):
        ps.representation_from_json([1, 2, 3])
    bad_det = {
        "rank": 1,
        "generators": [[[0.9, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]],
    }
    with pytest.raises(DeterminantError):
        ps.representation_from_json(bad_det)


def test_representation_json_renormalizes_small_drift():
    drift = 1 + 3e-7
    doc = {
        "rank": 1,
        "generators": [[[drift, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]],
    }
    rep = ps.representation_from_json(doc)
    m = rep.images[0]
    assert abs(m.a * m.d - m.b * m.c - 1.0) <= 1e-12
