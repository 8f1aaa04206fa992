"""Concrete matrix model of the group and its compact subgroups.

The ambient group is (GL2(E2) x E4^x) intersected with SL8(F); an element
is a pair (2x2 matrix over E2, nonzero scalar of E4).  The eight-by-eight
determinant-one condition is the exact identity

    N_{E2/F}(det g2) * N_{E4/F}(g4) = 1,

so the eight-dimensional matrices are never materialised.  The standard
Iwahori is a,d units, b integral, c in the maximal ideal, with the E4
component a unit.  Two compact subgroups are modelled: the full stabiliser
(Iwahori pattern + determinant identity) and the parahoric, which adds the
residue condition (det g2 mod p) * (g4 mod p)**2 = 1.

The torus character rho sends a diagonal (x, y, z) to eta(N_{E2/F}(y));
its inflation to the compact group reads the lower-right entry.  Named
elements: the unit-determinant reflection s, its affine partner s', the
central-direction torus element z with E4 part pi4**(-2), the sign element
eps = (-1, 1, 1), and the unipotents u(x), l(c).

`iwahori_decompose` factors any invertible element as k1 * m * k2 with k1,
k2 Iwahori (unipotent, so they land in both compact subgroups) and m
monomial; pivots prefer the diagonal, then row order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .residue import UnitI, sgn
from .tower import E2, E4, F, LaurentElem, Tower

STABILIZER = "stabilizer"
PARAHORIC = "parahoric"
VARIANTS = (STABILIZER, PARAHORIC)


class MembershipError(ValueError):
    """An element was used where a subgroup membership precondition fails."""


@dataclass(frozen=True)
class GroupElem:
    """(2x2 matrix over E2, unit-scale element of E4)."""

    a: LaurentElem
    b: LaurentElem
    c: LaurentElem
    d: LaurentElem
    g4: LaurentElem

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.g4 * other.g4,
        )

    def det2(self) -> LaurentElem:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "GroupElem":
        det = self.det2()
        return GroupElem(
            self.d / det, -(self.b / det), -(self.c / det), self.a / det, self.g4.inverse()
        )

    def __pow__(self, n: int) -> "GroupElem":
        base = self if n >= 0 else self.inverse()
        m = abs(n)
        out = identity(self.a.tower)
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def is_diagonal(self) -> bool:
        return self.b.is_zero and self.c.is_zero

    def to_torus(self) -> "TorusElem":
        if not self.is_diagonal():
            raise ValueError("not a diagonal element")
        return TorusElem(self.a, self.d, self.g4)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElem):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
            and self.g4 == other.g4
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"[[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]] x {self.g4!r}"


@dataclass(frozen=True)
class TorusElem:
    """Diagonal element (x, y, z) of the maximal torus."""

    x: LaurentElem
    y: LaurentElem
    z: LaurentElem

    def to_group(self) -> GroupElem:
        tw = self.x.tower
        return GroupElem(self.x, tw.zero(E2), tw.zero(E2), self.y, self.z)

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        return TorusElem(self.x * other.x, self.y * other.y, self.z * other.z)

    def inverse(self) -> "TorusElem":
        return TorusElem(self.x.inverse(), self.y.inverse(), self.z.inverse())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.z == other.z

    __hash__ = None


def commutator(g: GroupElem, h: GroupElem) -> GroupElem:
    return g * h * g.inverse() * h.inverse()


# -- named elements --------------------------------------------------------------


def identity(tower: Tower) -> GroupElem:
    got = tower.cache.get("identity_elem")
    if got is None:
        one2, zero2 = tower.one(E2), tower.zero(E2)
        got = GroupElem(one2, zero2, zero2, one2, tower.one(E4))
        tower.cache["identity_elem"] = got
    return got


def elem_s(tower: Tower) -> GroupElem:
    """((0, 1), (-1, 0)) x 1: the finite reflection."""
    z2 = tower.zero(E2)
    return GroupElem(z2, tower.one(E2), -tower.one(E2), z2, tower.one(E4))


def elem_s_prime(tower: Tower) -> GroupElem:
    """((0, pi2**-1), (-pi2, 0)) x 1: the affine reflection."""
    z2 = tower.zero(E2)
    pi2 = tower.uniformizer(E2)
    return GroupElem(z2, pi2 ** -1, -pi2, z2, tower.one(E4))


def elem_z(tower: Tower) -> GroupElem:
    """(diag(zeta*pi2, pi2), pi4**-2): the central-direction translation."""
    pi2 = tower.uniformizer(E2)
    return torus(tower, tower.constant(E2, tower.field.zeta) * pi2, pi2, tower.uniformizer(E4) ** -2).to_group()


def elem_eps(tower: Tower) -> GroupElem:
    """(-1, 1, 1): stabiliser-only torus element of order two."""
    return torus(tower, -tower.one(E2), tower.one(E2), tower.one(E4)).to_group()


def torus(tower: Tower, x: LaurentElem, y: LaurentElem, z: LaurentElem) -> TorusElem:
    return TorusElem(x, y, z)


def upper_u(tower: Tower, x) -> GroupElem:
    """u(x) = ((1, x), (0, 1)) x 1; x a Laurent element of E2 or a residue encoding."""
    if not isinstance(x, LaurentElem):
        x = tower.constant(E2, x)
    z2 = tower.zero(E2)
    return GroupElem(tower.one(E2), x, z2, tower.one(E2), tower.one(E4))


def lower_l(tower: Tower, c) -> GroupElem:
    """l(c) = ((1, 0), (c, 1)) x 1."""
    if not isinstance(c, LaurentElem):
        c = tower.constant(E2, c)
    z2 = tower.zero(E2)
    return GroupElem(tower.one(E2), z2, c, tower.one(E2), tower.one(E4))


# -- memberships ------------------------------------------------------------------


def in_g0(g: GroupElem) -> bool:
    """Determinant-one condition: N(det g2) * N(g4) = 1."""
    tw = g.a.tower
    det = g.det2()
    if det.is_zero or g.g4.is_zero:
        return False
    return det.norm_to_F() * g.g4.norm_to_F() == tw.one(F)


def in_iwahori(g: GroupElem) -> bool:
    return (
        g.a.is_unit()
        and g.d.is_unit()
        and g.b.is_integral()
        and g.c.in_maximal_ideal()
        and g.g4.is_unit()
    )


def _residue_condition(g: GroupElem) -> bool:
    tw = g.a.tower
    det = g.det2()
    lhs = tw.field.mul(det.unit_residue(), tw.field.pow(g.g4.unit_residue(), 2))
    return lhs == 1


def in_K0(g: GroupElem, variant: str) -> bool:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not (in_iwahori(g) and in_g0(g)):
        return False
    if variant == PARAHORIC:
        return _residue_condition(g)
    return True


def in_KM0(tt: TorusElem, variant: str) -> bool:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    tw = tt.x.tower
    if not (tt.x.is_unit() and tt.y.is_unit() and tt.z.is_unit()):
        return False
    if variant == PARAHORIC:
        # cheap residue condition first
        xy = tw.field.mul(tt.x.unit_residue(), tt.y.unit_residue())
        if tw.field.mul(xy, tw.field.pow(tt.z.unit_residue(), 2)) != 1:
            return False
    return (tt.x * tt.y).norm_to_F() * tt.z.norm_to_F() == tw.one(F)


# -- characters ---------------------------------------------------------------------


def rho_M0(tt: TorusElem) -> UnitI:
    """eta(N_{E2/F}(y)) on torus elements of the compact part."""
    if not in_KM0(tt, STABILIZER):
        raise MembershipError("torus element is outside the compact part")
    return tt.y.norm_to_F().eta()


def rho0(g: GroupElem, variant: str = STABILIZER) -> UnitI:
    """The depth-zero character of the compact subgroup: eta(N(d))."""
    if not in_K0(g, variant):
        raise MembershipError("element is outside the compact subgroup")
    return g.d.norm_to_F().eta()


# -- Iwahori factorisation ------------------------------------------------------------


@dataclass(frozen=True)
class MonomialData:
    """Monomial middle factor: diag(first, second) or antidiag (0 first; second 0),
    together with the E4 component."""

    kind: str  # "diag" | "anti"
    first: LaurentElem
    second: LaurentElem
    g4: LaurentElem

    def as_group(self) -> GroupElem:
        tw = self.first.tower
        z2 = tw.zero(E2)
        if self.kind == "diag":
            return GroupElem(self.first, z2, z2, self.second, self.g4)
        return GroupElem(z2, self.first, self.second, z2, self.g4)


@dataclass(frozen=True)
class Decomposition:
    k1: GroupElem
    monomial: MonomialData
    k2: GroupElem


def _ordn(x: LaurentElem):
    return None if x.is_zero else x.ord_norm()


def _leq(u, v) -> bool:
    # extended comparison with None = +infinity
    if u is None:
        return v is None
    return v is None or u <= v


def _lt(u, v) -> bool:
    if u is None:
        return False
    return v is None or u < v


def _pivot_case(g: GroupElem) -> int:
    """Pivot preference (1,1), (2,2), (1,2), (2,1); exactly one case fits
    every invertible matrix's valuation pattern."""
    va, vb, vc, vd = _ordn(g.a), _ordn(g.b), _ordn(g.c), _ordn(g.d)
    if _leq(va, vb) and _leq(va, vd) and _lt(va, vc):
        return 0
    if _leq(vd, vb) and _leq(vd, va) and _lt(vd, vc):
        return 1
    if _lt(vb, va) and _lt(vb, vd):
        return 2
    if _leq(vc, va) and _leq(vc, vd):
        return 3
    raise ValueError("matrix is singular or has undecidable pivot valuations")


def monomial_part(g: GroupElem) -> MonomialData:
    """The monomial middle factor of the Iwahori factorisation of g."""
    case = _pivot_case(g)
    if case == 0:
        return MonomialData("diag", g.a, g.d - g.c * g.b / g.a, g.g4)
    if case == 1:
        return MonomialData("diag", g.a - g.b * g.c / g.d, g.d, g.g4)
    if case == 2:
        return MonomialData("anti", g.b, g.c - g.d * g.a / g.b, g.g4)
    return MonomialData("anti", g.b - g.a * g.d / g.c, g.c, g.g4)


def iwahori_decompose(g: GroupElem) -> Decomposition:
    """Factor g = k1 * m * k2 with k1, k2 unipotent Iwahori and m monomial.

    The unipotent factors have determinant 1 and trivial E4 part, so they
    lie in both compact subgroups.
    """
    tw = g.a.tower
    one4 = tw.one(E4)
    z2 = tw.zero(E2)
    one2 = tw.one(E2)
    case = _pivot_case(g)

    if case == 0:
        # g = l(c/a) * diag(a, d - cb/a) * u(b/a)
        k1 = GroupElem(one2, z2, g.c / g.a, one2, one4)
        k2 = GroupElem(one2, g.b / g.a, z2, one2, one4)
        mono = MonomialData("diag", g.a, g.d - g.c * g.b / g.a, g.g4)
        return Decomposition(k1, mono, k2)

    if case == 1:
        # g = u(b/d) * diag(a - bc/d, d) * l(c/d)
        k1 = GroupElem(one2, g.b / g.d, z2, one2, one4)
        k2 = GroupElem(one2, z2, g.c / g.d, one2, one4)
        mono = MonomialData("diag", g.a - g.b * g.c / g.d, g.d, g.g4)
        return Decomposition(k1, mono, k2)

    if case == 2:
        # g = l(d/b) * antidiag(b, c - da/b) * l(a/b)
        k1 = GroupElem(one2, z2, g.d / g.b, one2, one4)
        k2 = GroupElem(one2, z2, g.a / g.b, one2, one4)
        mono = MonomialData("anti", g.b, g.c - g.d * g.a / g.b, g.g4)
        return Decomposition(k1, mono, k2)

    # g = u(a/c) * antidiag(b - ad/c, c) * u(d/c)
    k1 = GroupElem(one2, g.a / g.c, z2, one2, one4)
    k2 = GroupElem(one2, g.d / g.c, z2, one2, one4)
    mono = MonomialData("anti", g.b - g.a * g.d / g.c, g.c, g.g4)
    return Decomposition(k1, mono, k2)


# -- the sign-character triviality check ------------------------------------------------


def sign_character_trivial(field, variant: str) -> bool:
    """Exhaust residue triples allowed by the compact-torus constraints and
    check that the quadratic character of x*y is trivially 1 on all of them.

    The torus constraints force (xy)**2 * z**4 = 1 at the residue level
    (plus xy * z**2 = 1 for the parahoric), so xy = +-z**(-2) is always a
    square because -1 is a square when 4 | q - 1.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    one = 1
    for xr in range(1, field.q):
        for yr in range(1, field.q):
            xy = field.mul(xr, yr)
            xy2 = field.mul(xy, xy)
            for zr in range(1, field.q):
                z2 = field.mul(zr, zr)
                if field.mul(xy2, field.mul(z2, z2)) != one:
                    continue
                if variant == PARAHORIC and field.mul(xy, z2) != one:
                    continue
                if sgn(field, xy).exp != 0:
                    return False
    return True


# -- random members (exact constructions, used by property checks) ----------------------


def random_KM0(tower: Tower, variant: str, rng: random.Random) -> TorusElem:
    """A random element of the compact torus.

    Built from pieces whose norm condition holds exactly by construction:
    a unit pair (u, u**-1, 1), Galois-quotient twists w/sigma(w) and
    v/sigma(v) (norm one on the nose), and a constant triple
    (zeta^a, zeta^b, zeta^c) solving 2(a+b) + 4c = 0 mod q-1.  The choice
    of c mod (q-1)/4 steers the parahoric residue condition.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    fld = tower.field
    from .tower import random_unit

    u = random_unit(tower, E2, rng, depth=4)
    w = random_unit(tower, E2, rng, depth=3)
    v = random_unit(tower, E4, rng, depth=3)
    a = rng.randrange(fld.q - 1)
    b = rng.randrange(fld.q - 1)
    if (a + b) % 2:
        b = (b + 1) % (fld.q - 1)
    s = a + b
    quarter = (fld.q - 1) // 4
    c = (-(s // 2)) % quarter
    # s + 2c mod (q-1) is 0 or (q-1)/2 depending on the shift below
    if (s + 2 * c) % (fld.q - 1) != 0:
        c += quarter
    if variant == STABILIZER and rng.randrange(2):
        c += quarter  # flips into the sign coset, stabiliser only
    x = u * (w / w.galois(1)) * tower.constant(E2, fld.pow(fld.zeta, a))
    y = u.inverse() * tower.constant(E2, fld.pow(fld.zeta, b))
    z = (v / v.galois(1)) * tower.constant(E4, fld.pow(fld.zeta, c))
    tt = TorusElem(x, y, z)
    if not in_KM0(tt, variant):
        raise AssertionError("random compact-torus construction failed its membership")
    return tt


def random_K0(tower: Tower, variant: str, rng: random.Random) -> GroupElem:
    """A random element of the compact subgroup: a product of unipotents and
    compact-torus members, each an exact member.

    A draw is rejected and retried when a matrix entry cancels below window
    certainty (a rare genuine zero under inexact factors), so the sampler
    never manufactures an uncertified value.
    """
    from .tower import PrecisionExhausted

    for _ in range(64):
        try:
            g = identity(tower)
            for _ in range(rng.randrange(2, 5)):
                kind = rng.randrange(3)
                if kind == 0:
                    x = tower.from_coeffs(
                        E2,
                        rng.randrange(0, 3),
                        [rng.randrange(1, tower.q)] + [rng.randrange(tower.q) for _ in range(3)],
                    )
                    g = g * upper_u(tower, x)
                elif kind == 1:
                    c = tower.from_coeffs(
                        E2,
                        rng.randrange(1, 4),
                        [rng.randrange(1, tower.q)] + [rng.randrange(tower.q) for _ in range(3)],
                    )
                    g = g * lower_l(tower, c)
                else:
                    g = g * random_KM0(tower, variant, rng).to_group()
        except PrecisionExhausted:
            continue
        if not in_K0(g, variant):
            raise AssertionError("random compact-subgroup construction failed its membership")
        return g
    raise AssertionError("compact-subgroup sampling kept cancelling below window certainty")
