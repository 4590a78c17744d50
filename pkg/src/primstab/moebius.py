"""SL(2,C) lifts of Moebius maps and their hyperbolic geometry.

Maps are stored as determinant-1 complex 2x2 matrices; everything consumed
projectively (classification, translation length, disk hauling) is robust
under the lift sign.  Products rescale by 1/sqrt(det) so long words keep
determinant 1 to working precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import (
    DegenerateAction,
    DegenerateMatrix,
    DeterminantError,
    ImageIsLine,
    ParseError,
    RankMismatch,
)
from .words import CyclicWord, Word

_DET_TOL = 1e-9


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _scale_sq(a: complex, b: complex, c: complex, d: complex) -> float:
    try:
        return abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    except OverflowError:
        return math.inf


class IsometryClass(str, Enum):
    IDENTITY = "IDENTITY"
    ELLIPTIC = "ELLIPTIC"
    PARABOLIC = "PARABOLIC"
    LOXODROMIC = "LOXODROMIC"


@dataclass(frozen=True)
class MoebiusMap:
    """A determinant-1 lift of a Moebius transformation z -> (az+b)/(cz+d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            value = complex(getattr(self, name))
            if not _finite(value):
                raise DegenerateMatrix("entry %s = %r is not finite" % (name, value))
            object.__setattr__(self, name, value)
        det = self.a * self.d - self.b * self.c
        # ad - bc cancels catastrophically once entries are large (error grows
        # like eps * |entries|^2), so the tolerance follows the entry scale
        tol = max(_DET_TOL, 1e-12 * _scale_sq(self.a, self.b, self.c, self.d))
        try:
            err = abs(det - 1.0)
        except OverflowError:
            err = math.inf
        if err > tol:
            raise DeterminantError("determinant %r is not 1 within %g" % (det, tol))

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_matrix(cls, a: complex, b: complex, c: complex, d: complex) -> "MoebiusMap":
        """Rescale an arbitrary nonsingular matrix to determinant 1."""
        det = a * d - b * c
        if abs(det) < 1e-30:
            raise DegenerateMatrix("matrix with determinant %r cannot be normalized" % (det,))
        s = 1.0 / cmath.sqrt(det)
        return cls(a * s, b * s, c * s, d * s)

    def mul(self, other: "MoebiusMap") -> "MoebiusMap":
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        if _scale_sq(a, b, c, d) < 1e9:
            # rescale by 1/sqrt(det) while the computed det is trustworthy;
            # past that scale the rescaling would only inject cancellation noise
            s = 1.0 / cmath.sqrt(a * d - b * c)
            a, b, c, d = a * s, b * s, c * s, d * s
        return MoebiusMap(a, b, c, d)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return self.mul(other)

    def __neg__(self) -> "MoebiusMap":
        return MoebiusMap(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def trace(self) -> complex:
        return self.a + self.d

    def apply(self, z: complex) -> complex:
        """Action on the complex plane; rejects the pole itself."""
        denom = self.c * z + self.d
        if abs(denom) < 1e-300:
            raise DegenerateAction("point %r is the pole of the map" % (z,))
        return (self.a * z + self.b) / denom

    def entry_distance(self, other: "MoebiusMap") -> float:
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )


@dataclass(frozen=True)
class Representation:
    """An assignment of one determinant-1 matrix to each free generator."""

    rank: int
    images: tuple[MoebiusMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.rank:
            raise RankMismatch(
                "rank %d needs %d generator images, got %d"
                % (self.rank, self.rank, len(self.images))
            )
        for m in self.images:
            if not isinstance(m, MoebiusMap):
                raise TypeError("generator images must be MoebiusMap, got %r" % (m,))

    def image_of_letter(self, letter: int) -> MoebiusMap:
        return self.images[letter - 1] if letter > 0 else self.images[-letter - 1].inverse()


def evaluate(rep: Representation, w: Word | CyclicWord) -> MoebiusMap:
    """The matrix of a word: the ordered product of generator images."""
    if rep.rank != w.rank:
        raise RankMismatch("representation rank %d vs word rank %d" % (rep.rank, w.rank))
    m = MoebiusMap.identity()
    for v in w.letters:
        m = m.mul(rep.image_of_letter(v))
    return m


def classify(m: MoebiusMap, tol: float = 1e-9) -> IsometryClass:
    """Isometry type of a map, with an explicit tolerance.

    Identity means some lift sign is entrywise within tol of the identity;
    parabolic means trace within tol of +-2; elliptic means real trace
    strictly inside (-2, 2); everything else is loxodromic.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    ident = MoebiusMap.identity()
    if m.entry_distance(ident) <= tol or (-m).entry_distance(ident) <= tol:
        return IsometryClass.IDENTITY
    t = m.trace()
    if abs(t - 2.0) <= tol or abs(t + 2.0) <= tol:
        return IsometryClass.PARABOLIC
    if abs(t.imag) <= tol and abs(t.real) < 2.0:
        return IsometryClass.ELLIPTIC
    return IsometryClass.LOXODROMIC


def translation_length(m: MoebiusMap) -> float:
    """Hyperbolic translation length: 2 ln|lam| for the eigenvalue with |lam| >= 1.

    Zero for elliptic, parabolic, and identity maps; invariant under the lift
    sign and under conjugation.
    """
    t = m.trace()
    lam = (t + cmath.sqrt(t * t - 4.0)) / 2.0
    mod = abs(lam)
    if mod < 1.0:
        if mod == 0.0:
            raise DegenerateMatrix("eigenvalue 0 is impossible for a det-1 matrix")
        mod = 1.0 / mod
    return 2.0 * math.log(mod)


@dataclass(frozen=True)
class UhsPoint:
    """A point (z, t) of the upper-half-space model, t > 0."""

    z: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))
        if not (_finite(self.z) and math.isfinite(self.t) and self.t > 0):
            raise ValueError("invalid upper-half-space point (%r, %r)" % (self.z, self.t))


def act_uhs(m: MoebiusMap, p: UhsPoint) -> UhsPoint:
    """Poincare extension of the map to upper half space.

    With q = c z + d and S = |q|^2 + |c|^2 t^2:
    z' = ((a z + b) conj(q) + a conj(c) t^2) / S and t' = t / S.
    """
    q = m.c * p.z + m.d
    s = abs(q) ** 2 + abs(m.c) ** 2 * p.t ** 2
    if not (s > 0 and math.isfinite(s)):
        raise DegenerateAction("degenerate denominator %r acting on %r" % (s, p))
    z = ((m.a * p.z + m.b) * q.conjugate() + m.a * m.c.conjugate() * p.t ** 2) / s
    return UhsPoint(z, p.t / s)


def uhs_distance(p: UhsPoint, q: UhsPoint) -> float:
    """Hyperbolic distance arccosh(1 + (|z1-z2|^2 + (t1-t2)^2) / (2 t1 t2)).

    Long orbits reach heights near the float ceiling, where the squares in
    the direct formula overflow; those fall back to a log-domain evaluation
    of the equivalent form 2 asinh(sqrt(num) / (2 sqrt(t1 t2))).
    """
    dz = p.z - q.z
    try:
        u = abs(dz)
    except OverflowError:
        u = abs(dz.real) + abs(dz.imag)
    v = p.t - q.t
    num = u * u + v * v
    if math.isfinite(num):
        arg = 1.0 + num / (2.0 * p.t * q.t)
        if math.isfinite(arg):
            return math.acosh(max(1.0, arg))
    m = max(u, abs(v))
    ratio = math.hypot(u / m, v / m)
    log_r = math.log(m) + math.log(ratio / 2.0) - 0.5 * (math.log(p.t) + math.log(q.t))
    if log_r > 300.0:
        return 2.0 * (log_r + math.log(2.0))
    return 2.0 * math.asinh(math.exp(log_r))


def axis_point(m: MoebiusMap, tol: float = 1e-9) -> UhsPoint:
    """A point on the axis of a loxodromic map (the summit of the axis).

    On the axis the displacement of every power is exactly the translation
    length, which makes axis points the right basepoints for growth probes.
    """
    if classify(m, tol) != IsometryClass.LOXODROMIC:
        raise ValueError("only loxodromic maps have an axis")
    if abs(m.c) <= tol:
        fixed = m.b / (m.d - m.a)
        return UhsPoint(fixed, 1.0)
    t = m.trace()
    s = cmath.sqrt(t * t - 4.0)
    z_plus = (m.a - m.d + s) / (2.0 * m.c)
    z_minus = (m.a - m.d - s) / (2.0 * m.c)
    return UhsPoint((z_plus + z_minus) / 2.0, abs(z_plus - z_minus) / 2.0)


class DiskSide(str, Enum):
    INSIDE = "INSIDE"
    OUTSIDE = "OUTSIDE"


@dataclass(frozen=True)
class SphereDisk:
    """A round disk on the sphere bounded by a Euclidean circle in C.

    ``interior`` says which side of the circle the disk occupies; OUTSIDE
    disks contain the point at infinity.
    """

    center: complex
    radius: float
    interior: DiskSide = DiskSide.INSIDE

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "interior", DiskSide(self.interior))
        if not (_finite(self.center) and math.isfinite(self.radius) and self.radius > 0):
            raise ValueError("invalid disk (%r, %r)" % (self.center, self.radius))

    def contains(self, z: complex) -> bool:
        dist = abs(z - self.center)
        return dist <= self.radius if self.interior == DiskSide.INSIDE else dist >= self.radius

    def complement(self) -> "SphereDisk":
        flipped = DiskSide.OUTSIDE if self.interior == DiskSide.INSIDE else DiskSide.INSIDE
        return SphereDisk(self.center, self.radius, flipped)


def image_circle(m: MoebiusMap, disk: SphereDisk, tol: float = 1e-9) -> SphereDisk:
    """Image of a round disk under a Moebius map, interior side included.

    Raises ImageIsLine when the boundary circle passes within tol of the pole
    of the map, in which case the image is a line, not a circle.
    """
    if m.c == 0:
        factor = m.a / m.d
        center = (m.a * disk.center + m.b) / m.d
        return SphereDisk(center, abs(factor) * disk.radius, disk.interior)
    pole = -m.d / m.c
    u0 = disk.center - pole
    if abs(abs(u0) - disk.radius) <= tol:
        raise ImageIsLine("circle at %r radius %r passes through the pole %r"
                          % (disk.center, disk.radius, pole))
    denom = abs(u0) ** 2 - disk.radius ** 2
    # m(z) = a/c - (1/c^2) / (z - pole); 1/(z - pole) sends the circle to the
    # circle of center conj(u0)/denom and radius r/|denom|
    w0 = u0.conjugate() / denom
    center = m.a / m.c - w0 / (m.c * m.c)
    radius = (disk.radius / abs(denom)) / abs(m.c) ** 2
    pole_interior = (abs(u0) < disk.radius) == (disk.interior == DiskSide.INSIDE)
    side = DiskSide.OUTSIDE if pole_interior else DiskSide.INSIDE
    return SphereDisk(center, radius, side)


@dataclass(frozen=True)
class SchottkyVerdict:
    valid: bool
    reason: str | None = None
    detail: str = ""

    DISJOINTNESS = "DISJOINTNESS"
    PAIRING = "PAIRING"
    DEGENERATE = "DEGENERATE"


def _disks_disjoint(d1: SphereDisk, d2: SphereDisk, tol: float) -> bool:
    in1 = d1.interior == DiskSide.INSIDE
    in2 = d2.interior == DiskSide.INSIDE
    gap = abs(d1.center - d2.center)
    if in1 and in2:
        return gap > d1.radius + d2.radius + tol
    if not in1 and not in2:
        return False  # both contain infinity
    inner, outer = (d1, d2) if in1 else (d2, d1)
    return gap + inner.radius < outer.radius - tol


def schottky_check(
    rep: Representation,
    pairs: Sequence[tuple[SphereDisk, SphereDisk]],
    tol: float = 1e-9,
) -> SchottkyVerdict:
    """Verify a ping-pong disk pairing for the generators.

    Valid when the 2n closed disks are pairwise disjoint and each generator
    carries its first disk onto the closed complement of its second.  A valid
    pairing makes the group free and discrete, hence the representation is
    primitive-stable; this is the one scan in the package that certifies
    rather than merely collects evidence.
    """
    if len(pairs) != rep.rank:
        raise RankMismatch("need %d disk pairs, got %d" % (rep.rank, len(pairs)))
    disks = [d for pair in pairs for d in pair]
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if not _disks_disjoint(disks[i], disks[j], tol):
                return SchottkyVerdict(
                    False, SchottkyVerdict.DISJOINTNESS,
                    "disks %d and %d are not disjoint" % (i, j),
                )
    for i, (dom, ran) in enumerate(pairs):
        try:
            img = image_circle(rep.images[i], dom, tol)
        except ImageIsLine as exc:
            return SchottkyVerdict(False, SchottkyVerdict.DEGENERATE, str(exc))
        want = ran.complement()
        if (
            abs(img.center - want.center) > tol
            or abs(img.radius - want.radius) > tol
            or img.interior != want.interior
        ):
            return SchottkyVerdict(
                False, SchottkyVerdict.PAIRING,
                "generator %d sends its disk to %r, expected %r" % (i + 1, img, want),
            )
    return SchottkyVerdict(True)


def fricke_traces(rep: Representation) -> tuple[complex, complex, complex, complex]:
    """Traces (x, y, z, kappa) of (a, b, ab, [a,b]) for a rank-2 representation.

    The commutator trace kappa satisfies x^2 + y^2 + z^2 - xyz - 2 = kappa;
    the computed value is checked against that identity to 1e-8.
    """
    if rep.rank != 2:
        raise RankMismatch("Fricke traces need rank 2, got %d" % (rep.rank,))
    ma, mb = rep.images
    x = ma.trace()
    y = mb.trace()
    mab = ma.mul(mb)
    z = mab.trace()
    kappa = mab.mul(ma.inverse()).mul(mb.inverse()).trace()
    residual = abs(x * x + y * y + z * z - x * y * z - 2.0 - kappa)
    if residual > 1e-8:
        raise ArithmeticError("trace identity residual %g exceeds 1e-8" % (residual,))
    return x, y, z, kappa


def _complex_from_json(value) -> complex:
    if not (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise ParseError("expected [re, im], got %r" % (value,))
    return complex(value[0], value[1])


def _complex_to_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def representation_to_json(rep: Representation) -> dict:
    return {
        "rank": rep.rank,
        "generators": [
            [_complex_to_json(m.a), _complex_to_json(m.b),
             _complex_to_json(m.c), _complex_to_json(m.d)]
            for m in rep.images
        ],
    }


def representation_from_json(obj) -> Representation:
    """Build a representation from {"rank": n, "generators": [[a,b,c,d], ...]}.

    Entries are [re, im] pairs, row-major.  Each matrix must have determinant
    within 1e-6 of 1 and is renormalized to determinant 1 exactly.
    """
    if not isinstance(obj, dict):
        raise ParseError("representation document must be an object, got %r" % (type(obj).__name__,))
    if "rank" not in obj:
        raise ParseError("representation document is missing the 'rank' field")
    if "generators" not in obj:
        raise ParseError("representation document is missing the 'generators' field")
    rank = obj["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ParseError("'rank' must be a positive integer, got %r" % (rank,))
    gens = obj["generators"]
    if not isinstance(gens, list) or len(gens) != rank:
        raise ParseError("'generators' must list %d matrices" % (rank,))
    images = []
    for g in gens:
        if not isinstance(g, list) or len(g) != 4:
            raise ParseError("each generator must be four [re, im] entries, got %r" % (g,))
        a, b, c, d = (_complex_from_json(e) for e in g)
        det = a * d - b * c
        if abs(det - 1.0) > 1e-6:
            raise DeterminantError("generator determinant %r is not 1 within 1e-6" % (det,))
        images.append(MoebiusMap.from_matrix(a, b, c, d))
    return Representation(rank, tuple(images))
