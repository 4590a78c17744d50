"""Shared builders for the test suite: seeded random matrices, words, and the
reference ping-pong representation used across modules."""

import primstab as ps


def random_complex(rng, scale=1.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_sl2(rng, scale=1.0):
    """A random determinant-1 matrix with moderate entries."""
    while True:
        a = random_complex(rng, scale)
        if abs(a) > 0.3:
            break
    b = random_complex(rng, scale)
    c = random_complex(rng, scale)
    return ps.MoebiusMap(a, b, c, (1.0 + b * c) / a)


def random_loxodromic(rng, scale=1.0):
    while True:
        m = random_sl2(rng, scale)
        if ps.classify(m) == ps.IsometryClass.LOXODROMIC:
            length = ps.translation_length(m)
            if 0.05 < length < 4.0:
                return m


def random_representation(rng, rank, scale=1.0):
    return ps.Representation(rank, tuple(random_sl2(rng, scale) for _ in range(rank)))


def random_near_identity_representation(rng, rank, eps=0.05):
    """Generators so close to the identity that 50-fold products stay small."""
    images = []
    for _ in range(rank):
        a = 1.0 + random_complex(rng, eps)
        b = random_complex(rng, eps)
        c = random_complex(rng, eps)
        images.append(ps.MoebiusMap(a, b, c, (1.0 + b * c) / a))
    return ps.Representation(rank, tuple(images))


def random_reduced_letters(rng, rank, length):
    alphabet = [v for i in range(1, rank + 1) for v in (i, -i)]
    letters = []
    while len(letters) < length:
        v = rng.choice(alphabet)
        if letters and v == -letters[-1]:
            continue
        letters.append(v)
    return tuple(letters)


def random_word(rng, rank, length):
    return ps.Word(rank, random_reduced_letters(rng, rank, length))


def random_automorphism(rng, rank):
    """A random composition-free Whitehead move of either kind."""
    if rng.random() < 0.5:
        perm = list(range(1, rank + 1))
        rng.shuffle(perm)
        mapping = {i: perm[i - 1] * rng.choice([1, -1]) for i in range(1, rank + 1)}
        return ps.WhiteheadAutomorphism.letter_permutation(rank, mapping)
    alphabet = [v for i in range(1, rank + 1) for v in (i, -i)]
    a = rng.choice(alphabet)
    others = [v for v in alphabet if abs(v) != abs(a)]
    members = [v for v in others if rng.random() < 0.5]
    return ps.WhiteheadAutomorphism.multiplier_move(rank, a, members)


def schottky_example():
    """The conjugated ping-pong pair: a scales by 9 about 0/inf, b = S a S^-1.

    Returns (representation, disk pairs) that pass the ping-pong check.
    """
    ga = ps.MoebiusMap(3.0, 0.0, 0.0, 1.0 / 3.0)
    s = ps.MoebiusMap.from_matrix(-1.0, 1.0, 1.0, 1.0)  # 0 -> 1, inf -> -1
    gb = s.mul(ga).mul(s.inverse())
    da = ps.SphereDisk(0.0, 1.0 / 3.0, ps.DiskSide.INSIDE)
    dpa = ps.SphereDisk(0.0, 3.0, ps.DiskSide.OUTSIDE)
    db = ps.image_circle(s, da)
    dpb = ps.image_circle(s, dpa)
    rep = ps.Representation(2, (ga, gb))
    return rep, [(da, dpa), (db, dpb)]


def mat_mul(m1, m2):
    """Plain 2x2 complex multiply on nested lists; the independent oracle."""
    (a1, b1), (c1, d1) = m1
    (a2, b2), (c2, d2) = m2
    return [[a1 * a2 + b1 * c2, a1 * b2 + b1 * d2],
            [c1 * a2 + d1 * c2, c1 * b2 + d1 * d2]]


def mat_of(m):
    return [[m.a, m.b], [m.c, m.d]]


def mat_inv(m1):
    (a, b), (c, d) = m1
    return [[d, -b], [-c, a]]


def word_matrix(rep, letters):
    """Evaluate a word by bare list arithmetic, bypassing MoebiusMap.mul."""
    out = [[1.0 + 0j, 0j], [0j, 1.0 + 0j]]
    for v in letters:
        g = mat_of(rep.images[abs(v) - 1])
        if v < 0:
            g = mat_inv(g)
        out = mat_mul(out, g)
    return out
