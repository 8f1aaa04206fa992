"""The extended affine Weyl group attached to the compact torus character.

Elements are normal forms (word, zexp, ebit): a reduced alternating word
in the two reflections s, s' (infinite dihedral, s**2 = s'**2 = 1, no
other relation), an integer power of the central translation z, and a
sign bit for the order-two element eps.  The sign bit is meaningful only
for the parahoric variant; in the stabiliser variant eps lifts into the
compact torus and its class is trivial.

`lift` sends a normal form to the canonical matrix representative:
letter lifts in word order, times the z-lift to the zexp, times the
eps-lift to the ebit.  `h_M0` reads the valuation triple
(ord x, ord y, ord z) of a torus element; on the compact-quotient level it
identifies the torus part of the group with the integer lattice
{n1 + n2 + n3 = 0, n3 even}, which `lattice_check` verifies against the
span of (1, 1, -2) and (1, -1, 0) via Hermite normal forms and against
the norm-condition criterion by exact evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groupmodel import (
    PARAHORIC,
    GroupElem,
    TorusElem,
    commutator,
    elem_eps,
    elem_s,
    elem_s_prime,
    elem_z,
    identity,
    in_KM0,
)
from .residue import sgn
from .tower import E2, E4, Tower

S = "s"
SP = "s'"


def _reduce(word) -> tuple[str, ...]:
    out: list[str] = []
    for letter in word:
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class WeylElem:
    word: tuple[str, ...] = ()
    zexp: int = 0
    ebit: int = 0

    def __post_init__(self):
        if any(l not in (S, SP) for l in self.word):
            raise ValueError(f"bad letters in {self.word!r}")
        if _reduce(self.word) != self.word:
            raise ValueError(f"word {self.word!r} is not reduced")
        if self.ebit not in (0, 1):
            raise ValueError("ebit must be 0 or 1")

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return WeylElem(
            _reduce(self.word + other.word),
            self.zexp + other.zexp,
            (self.ebit + other.ebit) % 2,
        )

    def inverse(self) -> "WeylElem":
        return WeylElem(tuple(reversed(self.word)), -self.zexp, self.ebit)

    def __pow__(self, n: int) -> "WeylElem":
        base = self if n >= 0 else self.inverse()
        out = W_ID
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.word and self.zexp == 0 and self.ebit == 0

    def __str__(self) -> str:
        parts = list(self.word)
        if self.zexp == 1:
            parts.append("z")
        elif self.zexp:
            parts.append(f"z^{self.zexp}")
        if self.ebit:
            parts.append("e")
        return ".".join(parts) if parts else "1"

    def sort_key(self):
        return (len(self.word), self.word, self.zexp, self.ebit)


W_ID = WeylElem()
W_S = WeylElem((S,))
W_SP = WeylElem((SP,))
W_Z = WeylElem((), 1)
W_EPS = WeylElem((), 0, 1)


def plength(w: WeylElem) -> int:
    """Reduced word length; blind to the central part."""
    return len(w.word)


def translation_power(n: int) -> WeylElem:
    """(s s')**n as a normal form."""
    if n >= 0:
        return WeylElem((S, SP) * n)
    return WeylElem((SP, S) * (-n))


def lift(tower: Tower, w: WeylElem) -> GroupElem:
    """Canonical matrix representative; memoised per tower."""
    cache = tower.cache.setdefault("weyl_lift", {})
    got = cache.get(w)
    if got is None:
        letters = {S: elem_s(tower), SP: elem_s_prime(tower)}
        got = identity(tower)
        for letter in w.word:
            got = got * letters[letter]
        got = got * elem_z(tower) ** w.zexp
        if w.ebit:
            got = got * elem_eps(tower)
        cache[w] = got
    return got


def lift_inverse(tower: Tower, w: WeylElem) -> GroupElem:
    """Memoised inverse of the canonical representative."""
    cache = tower.cache.setdefault("weyl_lift_inv", {})
    got = cache.get(w)
    if got is None:
        got = lift(tower, w).inverse()
        cache[w] = got
    return got


def h_M0(tt: TorusElem) -> tuple[int, int, int]:
    """(ord x, ord y, ord z) in each field's own uniformizer units."""
    return (tt.x.ord_norm(), tt.y.ord_norm(), tt.z.ord_norm())


# -- integer-lattice verification -------------------------------------------------


def hermite_normal_form(vectors) -> tuple[tuple[int, ...], ...]:
    """Canonical row-style HNF basis of the lattice spanned by the rows."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return ()
    ncols = len(rows[0])
    basis: list[list[int]] = []
    for vec in rows:
        vec = vec[:]
        for row in basis:
            j = next(k for k, x in enumerate(row) if x)
            if vec[j]:
                # gcd-reduce vec against the pivot row
                a, b = row[j], vec[j]
                x, y, g = _xgcd(a, b)
                new_row = [x * r + y * v for r, v in zip(row, vec)]
                vec = [(a // g) * v - (b // g) * r for r, v in zip(row, vec)]
                row[:] = new_row
        if any(vec):
            basis.append(vec)
            basis.sort(key=lambda r: next(k for k, x in enumerate(r) if x))
    # canonicalise: positive pivots, entries above a pivot reduced mod it
    for i, row in enumerate(basis):
        j = next(k for k, x in enumerate(row) if x)
        if row[j] < 0:
            basis[i] = [-x for x in row]
    for i in reversed(range(len(basis))):
        j = next(k for k, x in enumerate(basis[i]) if x)
        for i2 in range(i):
            q = basis[i2][j] // basis[i][j]
            if q:
                basis[i2] = [a - q * b for a, b in zip(basis[i2], basis[i])]
    return tuple(tuple(r) for r in basis)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


def congruence_lattice_members(bound: int):
    """All triples with |n_i| <= bound, zero sum and even last entry."""
    rng = range(-bound, bound + 1)
    return [
        (n1, n2, n3)
        for n1 in rng
        for n2 in rng
        for n3 in rng
        if n1 + n2 + n3 == 0 and n3 % 2 == 0
    ]


def norm_condition_holds(tower: Tower, n: tuple[int, int, int]) -> bool:
    """Exact evaluation: is N(pi2**(n1+n2)) * N(pi4**n3) a unit whose residue
    is an even power of the primitive root?"""
    n1, n2, n3 = n
    value = (tower.uniformizer(E2) ** (n1 + n2)).norm_to_F() * (
        tower.uniformizer(E4) ** n3
    ).norm_to_F()
    if value.ord_norm() != 0:
        return False
    return sgn(tower.field, value.unit_residue()).exp == 0


def lattice_check(tower: Tower, bound: int = 4) -> bool:
    """HNF equality of the congruence lattice with <(1,1,-2), (1,-1,0)>, plus
    the equivalence of membership with the exact norm condition on a box."""
    span = hermite_normal_form([(1, 1, -2), (1, -1, 0)])
    congruence = hermite_normal_form(congruence_lattice_members(2))
    if span != congruence:
        return False
    for n1 in range(-bound, bound + 1):
        for n2 in range(-bound, bound + 1):
            for n3 in range(-bound, bound + 1):
                member = (n1 + n2 + n3 == 0) and n3 % 2 == 0
                if member != norm_condition_holds(tower, (n1, n2, n3)):
                    return False
    return True


# -- group-structure verification ----------------------------------------------------


def group_structure_check(tower: Tower, variant: str, order_bound: int = 50) -> bool:
    """Matrix-level verification of the presentation.

    Checks: the letter lifts square into the compact torus; z and (for the
    parahoric) eps are central modulo the compact torus with eps of order
    two outside it; the translations (ss')**n and z**n stay non-trivial for
    1 <= n <= order_bound, certified by their valuation triples (which
    prove non-triviality for every n by linearity).
    """
    s_t = elem_s(tower)
    sp_t = elem_s_prime(tower)
    z_t = elem_z(tower)
    for letter in (s_t, sp_t):
        sq = letter * letter
        if not (sq.is_diagonal() and in_KM0(sq.to_torus(), variant)):
            return False
    # z central: its commutator with each letter lands in the compact torus
    for letter in (s_t, sp_t):
        com = commutator(letter, z_t)
        if not (com.is_diagonal() and in_KM0(com.to_torus(), variant)):
            return False
    if variant == PARAHORIC:
        eps_t = elem_eps(tower)
        if in_KM0(eps_t.to_torus(), PARAHORIC):
            return False  # eps must be non-trivial in the parahoric quotient
        if not in_KM0((eps_t * eps_t).to_torus(), PARAHORIC):
            return False  # but its square is trivial
        for letter in (s_t, sp_t, z_t):
            com = commutator(letter, eps_t)
            if not (com.is_diagonal() and in_KM0(com.to_torus(), PARAHORIC)):
                return False
    trans = s_t * sp_t
    acc = identity(tower)
    accz = identity(tower)
    for n in range(1, order_bound + 1):
        acc = acc * trans
        accz = accz * z_t
        if h_M0(acc.to_torus()) != (n, -n, 0):
            return False
        if h_M0(accz.to_torus()) != (n, n, -2 * n):
            return False
    return True


def window_elements(
    max_word: int, max_z: int, include_eps: bool
) -> list[WeylElem]:
    """All normal forms with word length <= max_word and |zexp| <= max_z,
    sorted deterministically."""
    words: list[tuple[str, ...]] = [()]
    for length in range(1, max_word + 1):
        for start in (S, SP):
            w = tuple((S, SP)[(i + (start == SP)) % 2] for i in range(length))
            words.append(w)
    out = []
    for w in words:
        for zz in range(-max_z, max_z + 1):
            for eb in (0, 1) if include_eps else (0,):
                out.append(WeylElem(w, zz, eb))
    return sorted(out, key=WeylElem.sort_key)
