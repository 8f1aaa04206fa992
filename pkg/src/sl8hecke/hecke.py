"""Hecke-algebra computations for the depth-zero pair, and the 2-cocycle.

Everything here runs over a :class:`HeckeContext`, which fixes the tower,
the compact-subgroup variant, and the verification window (maximal word
length and central exponent).  The main computations:

  * ``coset_reps(w)``: an exact transversal of K/(K cap wKw^-1).  For the
    finite reflection these are the q upper unipotents u(x) over residue
    representatives, for the affine reflection the q lower unipotents
    l(pi2*c); longer reduced words take products of conjugated letter
    transversals.  Transversals are validated by pairwise coset
    disjointness (sampled above the configured budget).

  * ``classify(g)``: the double-coset label of g, obtained by Iwahori
    factorisation, reading the valuation triple of the monomial part, and
    fixing the sign bit so that the discrepancy against the canonical lift
    lands in the compact torus.  The discrepancy membership is asserted on
    every call; a failure would mean a wrong label.

  * ``convolve_at(w1, w2, g)``: the finite convolution sum
    sum_h phi_{w1}(h) phi_{w2}(h^-1 g) over h in the left cosets of
    K w1 K, evaluated exactly in Gaussian integers.

  * ``double_coset_product(w1, w2)``: the set of double cosets in
    K w1 K w2 K, enumerated as classify(lift(w1) * r * lift(w2)) over the
    middle transversal r of K/(K cap w2 K w2^-1).

  * :class:`CocycleTable`: mu(w1, w2) = rho(lift(w1 w2)^-1 lift(w1)
    lift(w2)), the obstruction to the lift family being multiplicative.
    The commutator pairing beta(u, v) = mu(u,v)/mu(v,u) on commuting pairs
    is invariant under changing the lift family by compact-torus factors,
    so beta != 1 certifies that the cohomology class of mu is non-trivial
    and that the torus character admits no extension to its normaliser.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groupmodel import (
    PARAHORIC,
    STABILIZER,
    Decomposition,
    GroupElem,
    MonomialData,
    TorusElem,
    commutator,
    identity,
    in_K0,
    in_KM0,
    iwahori_decompose,
    lower_l,
    monomial_part,
    random_KM0,
    rho0,
    rho_M0,
    upper_u,
)
from .residue import COEFF_ZERO, HeckeCoeff, UNIT_ONE, UnitI
from .tower import E2, Tower
from .weyl import (
    S,
    W_ID,
    W_S,
    W_Z,
    WeylElem,
    lift,
    lift_inverse,
    plength,
    translation_power,
    window_elements,
)


@dataclass(frozen=True)
class HeckeBasisFn:
    """The basis function supported on the double coset of w, with value
    `scale` at the canonical lift and the two-sided character equivariance
    phi(k1 g k2) = rho(k1) phi(g) rho(k2)."""

    w: "WeylElem"
    scale: HeckeCoeff = HeckeCoeff(1, 0)

    def __call__(self, ctx: "HeckeContext", g: GroupElem) -> HeckeCoeff:
        return ctx.phi(self.w, g, self.scale)


class WindowExceeded(ValueError):
    """A Weyl element fell outside the verification window."""


class ClassificationError(RuntimeError):
    """The double-coset label could not be established."""


class TransversalError(RuntimeError):
    """A coset transversal failed its disjointness validation."""


_DISJOINTNESS_PAIR_BUDGET = 20000


class HeckeContext:
    """Session state: tower + variant + window, with memoised transversals."""

    def __init__(
        self,
        tower: Tower,
        variant: str = STABILIZER,
        window_words: int = 4,
        window_z: int = 2,
        rng: random.Random | None = None,
    ):
        if variant not in (STABILIZER, PARAHORIC):
            raise ValueError(f"unknown variant {variant!r}")
        self.tower = tower
        self.variant = variant
        self.window_words = window_words
        self.window_z = window_z
        self.rng = rng or random.Random(0)
        self._reps: dict[tuple[str, ...], list[tuple[GroupElem, GroupElem]]] = {}
        self._conv_left: dict[WeylElem, list[tuple[GroupElem, HeckeCoeff]]] = {}
        self._mid: dict[WeylElem, list[GroupElem]] = {}

    # -- window -------------------------------------------------------------

    def require_window(self, w: WeylElem) -> None:
        if plength(w) > self.window_words or abs(w.zexp) > self.window_z:
            raise WindowExceeded(f"{w} outside window (words<={self.window_words}, |z|<={self.window_z})")

    def window(self, max_word: int | None = None, max_z: int | None = None) -> list[WeylElem]:
        return window_elements(
            self.window_words if max_word is None else max_word,
            self.window_z if max_z is None else max_z,
            include_eps=(self.variant == PARAHORIC),
        )

    def lift(self, w: WeylElem) -> GroupElem:
        return lift(self.tower, w)

    def lift_inverse(self, w: WeylElem) -> GroupElem:
        return lift_inverse(self.tower, w)

    # -- transversals ----------------------------------------------------------

    def _letter_reps(self, letter: str) -> list[tuple[GroupElem, GroupElem]]:
        tw = self.tower
        out = []
        if letter == S:
            for enc in range(tw.q):
                x = tw.constant(E2, enc)
                out.append((upper_u(tw, x), upper_u(tw, -x)))
        else:
            pi2 = tw.uniformizer(E2)
            for enc in range(tw.q):
                c = pi2 * tw.constant(E2, enc)
                out.append((lower_l(tw, c), lower_l(tw, -c)))
        return out

    def coset_reps(self, w: WeylElem) -> list[GroupElem]:
        return [r for r, _ in self.coset_reps_with_inverses(w)]

    def coset_reps_with_inverses(self, w: WeylElem) -> list[tuple[GroupElem, GroupElem]]:
        """Transversal of K/(K cap wKw^-1); depends only on the word part."""
        self.require_window(w)
        key = w.word
        got = self._reps.get(key)
        if got is not None:
            return got
        tw = self.tower
        if not key:
            got = [(identity(tw), identity(tw))]
        else:
            head, tail = key[0], key[1:]
            head_lift = self.lift(WeylElem((head,)))
            head_lift_inv = head_lift.inverse()
            inner = self.coset_reps_with_inverses(WeylElem(tail))
            got = []
            for t1, t1i in self._letter_reps(head):
                for t2, t2i in inner:
                    conj = head_lift * t2 * head_lift_inv
                    conj_inv = head_lift * t2i * head_lift_inv
                    got.append((t1 * conj, conj_inv * t1i))
        self._validate_transversal(w, got)
        self._reps[key] = got
        return got

    def _validate_transversal(self, w: WeylElem, reps) -> None:
        """Every representative must lie in K and distinct ones in distinct
        cosets of K cap wKw^-1; pairwise when affordable, sampled beyond."""
        w_lift = self.lift(WeylElem(w.word))
        w_lift_inv = self.lift_inverse(WeylElem(w.word))
        for r, r_inv in reps:
            if not in_K0(r, self.variant):
                raise TransversalError(f"non-member representative for {w}")
        n = len(reps)
        total = n * (n - 1) // 2
        if total <= _DISJOINTNESS_PAIR_BUDGET:
            pairs = ((i, j) for i in range(n) for j in range(i + 1, n))
        else:
            pairs = (
                tuple(sorted(self.rng.sample(range(n), 2)))
                for _ in range(_DISJOINTNESS_PAIR_BUDGET)
            )
        for i, j in pairs:
            d = reps[i][1] * reps[j][0]
            if in_K0(d, self.variant) and in_K0(w_lift_inv * d * w_lift, self.variant):
                raise TransversalError(f"duplicate coset in transversal of {w}")

    # -- classification -----------------------------------------------------------

    def _label_of_monomial(self, mono: MonomialData) -> tuple[WeylElem, GroupElem]:
        """Name the double coset of a monomial element and return the
        compact-torus discrepancy against the canonical lift."""
        if mono.kind == "anti":
            x, y = mono.first, -mono.second
            tail_s = True
        else:
            x, y = mono.first, mono.second
            tail_s = False
        n1, n2, n3 = x.ord_norm(), y.ord_norm(), mono.g4.ord_norm()
        if n3 % 2 or n1 + n2 + n3 != 0:
            raise ClassificationError(f"valuation triple {(n1, n2, n3)} outside the group image")
        zexp = -n3 // 2
        b = n1 - zexp
        if n2 != zexp - b:
            raise ClassificationError(f"inconsistent valuation triple {(n1, n2, n3)}")
        core = translation_power(b)
        if tail_s:
            core = core * W_S
        mono_group = mono.as_group()
        for ebit in (0, 1) if self.variant == PARAHORIC else (0,):
            cand = WeylElem(core.word, zexp, ebit)
            disc = self.lift_inverse(cand) * mono_group
            if not disc.is_diagonal():
                raise ClassificationError("discrepancy is not diagonal")
            if in_KM0(disc.to_torus(), self.variant):
                return cand, disc
        raise ClassificationError("no sign bit matches the discrepancy")

    def _label(self, g: GroupElem) -> WeylElem:
        return self._label_of_monomial(monomial_part(g))[0]

    def _analyze(self, g: GroupElem) -> tuple[WeylElem, Decomposition, GroupElem]:
        """Full factorisation with the double-coset label and the discrepancy."""
        dec = iwahori_decompose(g)
        cand, disc = self._label_of_monomial(dec.monomial)
        return cand, dec, disc

    def classify(self, g: GroupElem) -> WeylElem:
        """Double-coset label of g; raises WindowExceeded outside the window."""
        w = self._label(g)
        self.require_window(w)
        return w

    # -- basis functions and convolution ----------------------------------------------

    def phi(self, w: WeylElem, g: GroupElem, scale: HeckeCoeff = UNIT_ONE.as_coeff()) -> HeckeCoeff:
        """Value at g of the basis function supported on the double coset of w,
        normalised to `scale` at the canonical lift."""
        try:
            label, dec, disc = self._analyze(g)
        except ClassificationError:
            return COEFF_ZERO
        if label != w:
            return COEFF_ZERO
        # disc * k2 is a torus element times a unipotent: no additive
        # cancellation can occur in this product
        val = rho0(dec.k1, self.variant) * rho0(disc * dec.k2, self.variant)
        return scale * val.as_coeff()

    def _left_values(self, w: WeylElem) -> list[tuple[GroupElem, HeckeCoeff]]:
        # (r^-1, phi_w(r * lift(w))) per transversal element, memoised
        got = self._conv_left.get(w)
        if got is None:
            w_lift = self.lift(w)
            got = [
                (r_inv, self.phi(w, r * w_lift))
                for r, r_inv in self.coset_reps_with_inverses(w)
            ]
            self._conv_left[w] = got
        return got

    def convolve_at(self, w1: WeylElem, w2: WeylElem, g: GroupElem) -> HeckeCoeff:
        """(phi_{w1} * phi_{w2})(g), an exact Gaussian integer."""
        self.require_window(w1)
        self.require_window(w2)
        w1_lift_inv = self.lift_inverse(w1)
        total = COEFF_ZERO
        for r_inv, first in self._left_values(w1):
            if first.is_zero():
                continue
            second = self.phi(w2, w1_lift_inv * (r_inv * g))
            if not second.is_zero():
                total = total + first * second
        return total

    def _middle_products(self, w2: WeylElem) -> list[GroupElem]:
        # r * lift(w2) over the transversal of w2, memoised
        got = self._mid.get(w2)
        if got is None:
            w2_lift = self.lift(w2)
            got = [r * w2_lift for r in self.coset_reps(w2)]
            self._mid[w2] = got
        return got

    def double_coset_product(self, w1: WeylElem, w2: WeylElem) -> frozenset[WeylElem]:
        """The set of double cosets meeting (K w1 K)(K w2 K)."""
        self.require_window(w1)
        self.require_window(w2)
        w1_lift = self.lift(w1)
        out = set()
        for rw2 in self._middle_products(w2):
            out.add(self._label(w1_lift * rw2))
        return frozenset(out)

    # -- the length-zero verification ---------------------------------------------------

    def omega_check(self, max_word: int = 2, max_z: int = 1, details: list | None = None) -> bool:
        """Every window pair multiplies into a single line of the algebra.

        For pairs with additive word length the double-coset product must be
        the single coset of the product; for the others the convolution must
        vanish at every extraneous double coset.  In particular this checks
        the two quadratic-relation collapses (phi_s * phi_s)(lift(s)) = 0
        and likewise for the affine reflection.
        """
        window = self.window(max_word, max_z)
        ok = True
        for w1 in window:
            for w2 in window:
                entry = self._omega_pair(w1, w2)
                if details is not None:
                    details.append(entry)
                ok = ok and entry["pass"]
        return ok

    def _omega_pair(self, w1: WeylElem, w2: WeylElem) -> dict:
        product = w1 * w2
        cosets = self.double_coset_product(w1, w2)
        additive = plength(product) == plength(w1) + plength(w2)
        entry = {
            "w1": str(w1),
            "w2": str(w2),
            "additive": additive,
            "cosets": sorted(str(c) for c in cosets),
        }
        if additive:
            entry["pass"] = cosets == {product}
            return entry
        if product not in cosets:
            entry["pass"] = False
            return entry
        extraneous = [v for v in cosets if v != product]
        vanishing = {}
        for v in extraneous:
            value = self.convolve_at(w1, w2, self.lift(v))
            vanishing[str(v)] = repr(value)
            if not value.is_zero():
                entry["pass"] = False
                entry["vanishing"] = vanishing
                return entry
        entry["pass"] = True
        entry["vanishing"] = vanishing
        return entry


# ---------------------------------------------------------------------------------
# the 2-cocycle


class CocycleTable:
    """mu-values of a lift family: the canonical lifts, optionally perturbed
    by compact-torus factors (the identity keeps its lift, so mu is
    normalised)."""

    def __init__(self, ctx: HeckeContext, perturbation: dict[WeylElem, TorusElem] | None = None):
        self.ctx = ctx
        self.perturbation = dict(perturbation or {})
        self.perturbation.pop(W_ID, None)
        self._mu: dict[tuple[WeylElem, WeylElem], UnitI] = {}

    def family_lift(self, w: WeylElem) -> GroupElem:
        base = self.ctx.lift(w)
        k = self.perturbation.get(w)
        return base * k.to_group() if k is not None else base

    def family_lift_inverse(self, w: WeylElem) -> GroupElem:
        k = self.perturbation.get(w)
        if k is None:
            return self.ctx.lift_inverse(w)
        return k.inverse().to_group() * self.ctx.lift_inverse(w)

    def mu(self, w1: WeylElem, w2: WeylElem) -> UnitI:
        """rho of the discrepancy lift(w1 w2)^-1 lift(w1) lift(w2)."""
        key = (w1, w2)
        got = self._mu.get(key)
        if got is None:
            disc = (
                self.family_lift_inverse(w1 * w2)
                * self.family_lift(w1)
                * self.family_lift(w2)
            )
            if not disc.is_diagonal():
                raise ClassificationError("lift discrepancy is not diagonal")
            tt = disc.to_torus()
            if not in_KM0(tt, self.ctx.variant):
                raise ClassificationError("lift discrepancy left the compact torus")
            got = rho_M0(tt)
            self._mu[key] = got
        return got

    def beta(self, u: WeylElem, v: WeylElem) -> UnitI:
        """mu(u,v)/mu(v,u) on commuting pairs; equal to rho of the commutator
        of the lifts, hence independent of the lift family."""
        if u * v != v * u:
            raise ValueError(f"{u} and {v} do not commute")
        ratio = self.mu(u, v) * self.mu(v, u).inverse()
        com = commutator(self.family_lift(u), self.family_lift(v))
        if not com.is_diagonal():
            raise ClassificationError("commutator of lifts is not diagonal")
        direct = rho_M0(com.to_torus())
        if ratio != direct:
            raise ClassificationError("mu-ratio disagrees with the commutator value")
        return direct

    def cocycle_identity_holds(self, u: WeylElem, v: WeylElem, w: WeylElem) -> bool:
        return self.mu(u, v) * self.mu(u * v, w) == self.mu(v, w) * self.mu(u, v * w)


@dataclass(frozen=True)
class Certificate:
    """Outcome of the non-triviality search."""

    nontrivial: bool
    pair: tuple[WeylElem, WeylElem] | None
    value: UnitI | None

    @property
    def extension_obstructed(self) -> bool:
        # a character extension would kill every commutator of lifts,
        # forcing beta = 1 on commuting pairs
        return self.nontrivial


def nontriviality_certificate(table: CocycleTable) -> Certificate:
    """A commuting pair with beta != 1, certifying a non-trivial cohomology
    class (beta is invariant under coboundaries)."""
    candidates = [(W_S, W_Z)]
    for u in table.ctx.window(2, 1):
        for v in table.ctx.window(2, 1):
            if (u, v) not in candidates:
                candidates.append((u, v))
    for u, v in candidates:
        if u * v != v * u:
            continue
        value = table.beta(u, v)
        if value != UNIT_ONE:
            return Certificate(True, (u, v), value)
    return Certificate(False, None, None)


def perturbed_table(ctx: HeckeContext, rng: random.Random) -> CocycleTable:
    """A lift family twisted by random compact-torus factors on the window."""
    perturbation = {}
    for w in ctx.window():
        if not w.is_identity():
            perturbation[w] = random_KM0(ctx.tower, ctx.variant, rng)
    return CocycleTable(ctx, perturbation)


# -- module-level operation surface -------------------------------------------------


def coset_reps(ctx: HeckeContext, w: WeylElem) -> list[GroupElem]:
    return ctx.coset_reps(w)


def classify_double_coset(ctx: HeckeContext, g: GroupElem) -> WeylElem:
    return ctx.classify(g)


def convolve_at(ctx: HeckeContext, w1: WeylElem, w2: WeylElem, g: GroupElem) -> HeckeCoeff:
    return ctx.convolve_at(w1, w2, g)


def double_coset_product(ctx: HeckeContext, w1: WeylElem, w2: WeylElem) -> frozenset[WeylElem]:
    return ctx.double_coset_product(w1, w2)


def mu(table: CocycleTable, w1: WeylElem, w2: WeylElem) -> UnitI:
    return table.mu(w1, w2)


def beta(table: CocycleTable, u: WeylElem, v: WeylElem) -> UnitI:
    return table.beta(u, v)


def omega_check(ctx: HeckeContext, **kwargs) -> bool:
    return ctx.omega_check(**kwargs)


def multiplicative_family_search(ctx: HeckeContext, rng: random.Random, trials: int = 40) -> int:
    """Count families (out of `trials` random ones) that are multiplicative on
    the length-additive pairs (s, z) and (z, s).

    beta(s, z) = -1 forces mu(s,z) != 1 or mu(z,s) != 1 in every family, so
    the count must be 0: no choice of representatives multiplies cleanly on
    length-additive pairs.
    """
    hits = 0
    for _ in range(trials):
        table = perturbed_table(ctx, rng)
        if table.mu(W_S, W_Z) == UNIT_ONE and table.mu(W_Z, W_S) == UNIT_ONE:
            hits += 1
    return hits
