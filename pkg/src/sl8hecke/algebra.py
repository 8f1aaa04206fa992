"""Generic kernel: parameterised Hecke algebras, twisted group algebras,
and their crossed products; instantiated on the computed 2-cocycle.

The Hecke factor is the standard presentation over a Coxeter system: basis
T_w indexed by reduced words, with T_s T_w = T_{sw} when the length grows
and T_s T_w = q_s T_{sw} + (q_s - 1) T_w when it drops.  Word reduction is
implemented for systems of rank at most two (which includes the infinite
dihedral system the example needs, and every finite dihedral type for
exercising the kernel).

The twisted factor is the algebra with basis e_g over a group, multiplied
by e_g e_h = mu(g, h) e_{gh} for a 2-cocycle mu; associativity is exactly
the cocycle identity.  The crossed product interleaves the two through a
declared action of the group on the Coxeter letters (a right action:
(e_g x T_w) (e_h x T_v) = mu(g,h) e_{gh} x T_{h^-1(w)} T_v).

The example instantiation has trivial Coxeter part, so the crossed
product degenerates to the twisted group algebra of the extended Weyl
group with the lift cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable

from .hecke import CocycleTable
from .residue import COEFF_ONE, COEFF_ZERO, HeckeCoeff
from .weyl import WeylElem


class CoxeterError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    """Generators plus the order m(s, t) of each product st (None = infinity).

    Only ranks 0, 1, 2 are supported; the reduction rules of higher ranks
    are out of scope for this kernel.
    """

    generators: tuple[str, ...]
    braid_order: int | None = None  # rank-2 only

    def __post_init__(self):
        if len(self.generators) > 2:
            raise CoxeterError("only Coxeter systems of rank <= 2 are supported")
        if len(set(self.generators)) != len(self.generators):
            raise CoxeterError("duplicate generators")
        if self.braid_order is not None and self.braid_order < 2:
            raise CoxeterError("braid order must be >= 2 or None for infinity")

    def reduce(self, word) -> tuple[str, ...]:
        """Canonical reduced form of a word in the generators."""
        for letter in word:
            if letter not in self.generators:
                raise CoxeterError(f"unknown generator {letter!r}")
        out: list[str] = []
        for letter in word:
            if out and out[-1] == letter:
                out.pop()
            else:
                out.append(letter)
        m = self.braid_order
        if m is None or len(self.generators) < 2:
            return tuple(out)
        # dihedral of order 2m: fold alternating words longer than m, and
        # canonicalise the unique longest element
        while len(out) > m:
            head = out[:m]
            flipped = [self.generators[1 - self.generators.index(l)] for l in head]
            rest = out[m:]
            out = flipped + rest
            reduced: list[str] = []
            for letter in out:
                if reduced and reduced[-1] == letter:
                    reduced.pop()
                else:
                    reduced.append(letter)
            out = reduced
        if len(out) == m and out and out[0] != self.generators[0]:
            out = [self.generators[1 - self.generators.index(l)] for l in out]
        return tuple(out)

    def length(self, word) -> int:
        return len(self.reduce(word))

    def left_mul(self, s: str, word: tuple[str, ...]) -> tuple[str, ...]:
        return self.reduce((s,) + word)


@dataclass
class GenericHeckeElem:
    """Finite linear combination of basis elements T_w, keys reduced words."""

    system: CoxeterSystem
    terms: dict[tuple[str, ...], HeckeCoeff] = field(default_factory=dict)

    def __post_init__(self):
        for w in self.terms:
            if self.system.reduce(w) != w:
                raise CoxeterError(f"non-reduced key {w!r}")

    @staticmethod
    def basis(system: CoxeterSystem, word=()) -> "GenericHeckeElem":
        return GenericHeckeElem(system, {system.reduce(tuple(word)): COEFF_ONE})

    def __add__(self, other: "GenericHeckeElem") -> "GenericHeckeElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, COEFF_ZERO) + c
        return GenericHeckeElem(self.system, {w: c for w, c in out.items() if not c.is_zero()})

    def scaled(self, c: HeckeCoeff) -> "GenericHeckeElem":
        if c.is_zero():
            return GenericHeckeElem(self.system, {})
        return GenericHeckeElem(self.system, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GenericHeckeElem)
            and self.system == other.system
            and self.terms == other.terms
        )


def hecke_mul(
    a: GenericHeckeElem, b: GenericHeckeElem, params: dict[str, HeckeCoeff]
) -> GenericHeckeElem:
    """Product in the parameterised Hecke algebra, bilinear over the bases."""
    system = a.system
    if system != b.system:
        raise CoxeterError("mismatched Coxeter systems")
    if (
        system.braid_order is not None
        and system.braid_order % 2 == 1
        and len({params[s] for s in system.generators}) > 1
    ):
        # odd braid order makes the generators conjugate: the parameter
        # function must be constant or the presentation is not associative
        raise CoxeterError("odd braid order requires equal parameters")
    out: dict[tuple[str, ...], HeckeCoeff] = {}
    for v, cv in a.terms.items():
        for w, cw in b.terms.items():
            for word, c in _basis_product(system, v, w, params).items():
                key_coeff = out.get(word, COEFF_ZERO) + cv * cw * c
                out[word] = key_coeff
    return GenericHeckeElem(system, {w: c for w, c in out.items() if not c.is_zero()})


def _basis_product(
    system: CoxeterSystem, v: tuple[str, ...], w: tuple[str, ...], params: dict[str, HeckeCoeff]
) -> dict[tuple[str, ...], HeckeCoeff]:
    """T_v * T_w as a dict, by letterwise left multiplication."""
    acc = {w: COEFF_ONE}
    for s in reversed(v):
        q_s = params[s]
        nxt: dict[tuple[str, ...], HeckeCoeff] = {}
        for word, c in acc.items():
            grew = system.length((s,) + word) > len(word)
            if grew:
                key = system.left_mul(s, word)
                nxt[key] = nxt.get(key, COEFF_ZERO) + c
            else:
                key = system.left_mul(s, word)
                nxt[key] = nxt.get(key, COEFF_ZERO) + q_s * c
                nxt[word] = nxt.get(word, COEFF_ZERO) + (q_s - COEFF_ONE) * c
        acc = {k: c for k, c in nxt.items() if not c.is_zero()}
    return acc


# ---------------------------------------------------------------------------------
# twisted group algebras


class TwistedGroupAlgebra:
    """Group algebra twisted by a 2-cocycle: e_g e_h = mu(g, h) e_{gh}.

    ``group_mul``/``group_inv`` act on hashable element keys; ``cocycle``
    returns a HeckeCoeff.  Elements of different algebra handles never mix.
    """

    def __init__(
        self,
        group_mul: Callable[[Hashable, Hashable], Hashable],
        cocycle: Callable[[Hashable, Hashable], HeckeCoeff],
        identity_key: Hashable,
    ):
        self.group_mul = group_mul
        self.cocycle = cocycle
        self.identity_key = identity_key

    def element(self, terms: dict) -> "TwistedElem":
        return TwistedElem(self, dict(terms))

    def basis(self, g) -> "TwistedElem":
        return TwistedElem(self, {g: COEFF_ONE})


@dataclass
class TwistedElem:
    algebra: TwistedGroupAlgebra
    terms: dict

    def __add__(self, other: "TwistedElem") -> "TwistedElem":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, COEFF_ZERO) + c
        return TwistedElem(self.algebra, {g: c for g, c in out.items() if not c.is_zero()})

    def _check(self, other: "TwistedElem") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("elements of different twisted algebras")

    def scaled(self, c: HeckeCoeff) -> "TwistedElem":
        return TwistedElem(self.algebra, {g: c * v for g, v in self.terms.items() if not (c * v).is_zero()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwistedElem)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )


def twisted_mul(a: TwistedElem, b: TwistedElem) -> TwistedElem:
    a._check(b)
    alg = a.algebra
    out: dict = {}
    for g, cg in a.terms.items():
        for h, ch in b.terms.items():
            key = alg.group_mul(g, h)
            out[key] = out.get(key, COEFF_ZERO) + cg * ch * alg.cocycle(g, h)
    return TwistedElem(alg, {g: c for g, c in out.items() if not c.is_zero()})


# ---------------------------------------------------------------------------------
# crossed products


class CrossedProductAlgebra:
    """Twisted group algebra acting on a Hecke factor.

    ``action(g, letter)`` gives the image of a Coxeter letter under g (a
    length-preserving automorphism); the trivial action is the default.
    """

    def __init__(
        self,
        twisted: TwistedGroupAlgebra,
        system: CoxeterSystem,
        params: dict[str, HeckeCoeff],
        action: Callable[[Hashable, str], str] | None = None,
        inverse: Callable[[Hashable], Hashable] | None = None,
    ):
        self.twisted = twisted
        self.system = system
        self.params = params
        self.action = action or (lambda g, letter: letter)
        self.inverse = inverse or (lambda g: g)

    def basis(self, g, word=()) -> "CrossedElem":
        return CrossedElem(self, {(g, self.system.reduce(tuple(word))): COEFF_ONE})

    def act_on_word(self, g, word: tuple[str, ...]) -> tuple[str, ...]:
        return self.system.reduce(tuple(self.action(g, letter) for letter in word))


@dataclass
class CrossedElem:
    algebra: CrossedProductAlgebra
    terms: dict

    def __add__(self, other: "CrossedElem") -> "CrossedElem":
        if self.algebra is not other.algebra:
            raise ValueError("elements of different crossed products")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, COEFF_ZERO) + c
        return CrossedElem(self.algebra, {k: c for k, c in out.items() if not c.is_zero()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrossedElem)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )


def crossed_mul(a: CrossedElem, b: CrossedElem) -> CrossedElem:
    if a.algebra is not b.algebra:
        raise ValueError("elements of different crossed products")
    alg = a.algebra
    out: dict = {}
    for (g, w), c1 in a.terms.items():
        for (h, v), c2 in b.terms.items():
            scalar = c1 * c2 * alg.twisted.cocycle(g, h)
            moved = alg.act_on_word(alg.inverse(h), w)
            hecke_part = _basis_product(alg.system, moved, v, alg.params)
            gh = alg.twisted.group_mul(g, h)
            for word, c in hecke_part.items():
                key = (gh, word)
                out[key] = out.get(key, COEFF_ZERO) + scalar * c
    return CrossedElem(alg, {k: c for k, c in out.items() if not c.is_zero()})


# ---------------------------------------------------------------------------------
# the example instantiation


TRIVIAL_SYSTEM = CoxeterSystem(())


def build_example_algebra(table: CocycleTable) -> CrossedProductAlgebra:
    """The crossed product with trivial Coxeter factor over the extended Weyl
    group with the computed lift cocycle: the twisted group algebra."""
    twisted = TwistedGroupAlgebra(
        group_mul=lambda u, v: u * v,
        cocycle=lambda u, v: table.mu(u, v).as_coeff(),
        identity_key=WeylElem(),
    )
    return CrossedProductAlgebra(twisted, TRIVIAL_SYSTEM, {})


def structure_constant(alg: CrossedProductAlgebra, u: WeylElem, v: WeylElem) -> tuple[WeylElem, HeckeCoeff]:
    """e_u e_v = coeff * e_{uv}; returns (uv, coeff)."""
    prod = crossed_mul(alg.basis(u), alg.basis(v))
    ((key, coeff),) = prod.terms.items()
    g, word = key
    if word != ():
        raise AssertionError("example algebra has trivial Hecke factor")
    return g, coeff


def structure_constant_rows(alg: CrossedProductAlgebra, elements) -> list[tuple[str, str, str, int, int]]:
    """CSV rows (u, v, uv, re, im) over the given window elements."""
    rows = []
    for u in elements:
        for v in elements:
            uv, coeff = structure_constant(alg, u, v)
            rows.append((str(u), str(v), str(uv), coeff.re, coeff.im))
    return rows
