"""Acceptance criteria for the verification package.

Every check below is an exact identity (Gaussian-integer or Laurent-window
equality, no numeric tolerance).  Criteria run at q = 5 and q = 13 (plus
q = 17 for the character sum) at relative precision 40, for both compact
subgroup variants where applicable.  Each test prints one line naming the
criterion it certifies.
"""

import random
import time

import pytest

from sl8hecke.algebra import (
    CoxeterSystem,
    GenericHeckeElem,
    TwistedGroupAlgebra,
    build_example_algebra,
    crossed_mul,
    hecke_mul,
    twisted_mul,
)
from sl8hecke.generic import LEVEL_HALF, LEVEL_QUARTER, check_ge0_witness, check_ge1
from sl8hecke.groupmodel import (
    PARAHORIC,
    STABILIZER,
    commutator,
    elem_s,
    elem_z,
    sign_character_trivial,
    in_KM0,
    iwahori_decompose,
    random_K0,
    random_KM0,
    rho0,
    rho_M0,
    torus,
)
from sl8hecke.hecke import (
    CocycleTable,
    HeckeContext,
    multiplicative_family_search,
    nontriviality_certificate,
    perturbed_table,
)
from sl8hecke.residue import (
    COEFF_ZERO,
    HeckeCoeff,
    UNIT_MINUS_ONE,
    char_sum_eta_squares,
    make_field,
)
from sl8hecke.tower import E2, E4, Tower, norm_unit_image_check
from sl8hecke.weyl import (
    W_ID,
    W_S,
    W_SP,
    W_Z,
    group_structure_check,
    h_M0,
    lattice_check,
    lift,
    plength,
    translation_power,
)

QS = (5, 13)
VARIANTS = (STABILIZER, PARAHORIC)


@pytest.fixture(scope="module")
def towers():
    return {q: Tower(make_field(q), 40) for q in QS}


@pytest.fixture(scope="module")
def contexts(towers):
    return {
        (q, v): HeckeContext(towers[q], v, rng=random.Random(0))
        for q in QS
        for v in VARIANTS
    }


def _announce(n, text, t0):
    print(f"PASS criterion {n}: {text} ({time.time() - t0:.2f}s)")


def test_c01_commutator_identity(towers):
    t0 = time.time()
    for q in QS:
        tw = towers[q]
        fld = tw.field
        com = commutator(elem_s(tw), elem_z(tw))
        expected = torus(
            tw,
            tw.constant(E2, fld.inv(fld.zeta)),
            tw.constant(E2, fld.zeta),
            tw.one(E4),
        )
        assert com.is_diagonal()
        assert com.to_torus() == expected
        assert rho_M0(com.to_torus()) == UNIT_MINUS_ONE
        for variant in VARIANTS:
            assert in_KM0(com.to_torus(), variant)
    _announce(1, "commutator of the lifts is (zeta^-1, zeta, 1) with character -1", t0)


def test_c02_cocycle_nontriviality_certificate(contexts):
    t0 = time.time()
    for (q, variant), ctx in contexts.items():
        cert = nontriviality_certificate(CocycleTable(ctx))
        assert cert.nontrivial and cert.value == UNIT_MINUS_ONE
        assert cert.pair == (W_S, W_Z)
        rng = random.Random(q * 1000 + hash(variant) % 97)
        for _ in range(20):
            table = perturbed_table(ctx, rng)
            assert table.beta(W_S, W_Z) == UNIT_MINUS_ONE
    _announce(2, "beta(s, z) = -1, stable under 20 random lift families per variant", t0)


def test_c03_convolution_vanishing(contexts):
    t0 = time.time()
    for (q, variant), ctx in contexts.items():
        assert ctx.convolve_at(W_S, W_S, ctx.lift(W_S)) == COEFF_ZERO
        assert ctx.convolve_at(W_SP, W_SP, ctx.lift(W_SP)) == COEFF_ZERO
        assert ctx.convolve_at(W_S, W_S, ctx.lift(W_ID)) == HeckeCoeff(q, 0)
        assert len(ctx.coset_reps(W_S)) == q
    _announce(3, "self-convolutions vanish at the reflections and give q at 1", t0)


def test_c04_double_coset_structure(contexts):
    t0 = time.time()
    for (q, variant), ctx in contexts.items():
        assert ctx.double_coset_product(W_S, W_S) == frozenset({W_ID, W_S})
    # the full window check is exact and runs at desk scale for q = 5
    for variant in VARIANTS:
        ctx = contexts[(5, variant)]
        details = []
        assert ctx.omega_check(details=details)
        additive = [e for e in details if e["additive"]]
        assert additive and all(len(e["cosets"]) == 1 for e in additive)
    _announce(4, "double-coset products collapse to single lines (length-zero group)", t0)


def test_c05_lattice_identity(towers):
    t0 = time.time()
    for q in QS:
        assert lattice_check(towers[q], bound=4)
    _announce(5, "valuation-lattice identity and norm-condition equivalence", t0)


def test_c06_genericity_valuations(towers):
    t0 = time.time()
    for q in QS:
        tw = towers[q]
        quarter = check_ge1(tw, LEVEL_QUARTER)
        half = check_ge1(tw, LEVEL_HALF)
        assert len(quarter.valuations) == 12 and quarter.passed
        assert len(half.valuations) == 40 and half.passed
        assert check_ge0_witness(tw, LEVEL_QUARTER) == 0
        assert check_ge0_witness(tw, LEVEL_HALF) == 0
    _announce(6, "all 12 + 40 coroot pairings at exact depths, witnesses at 0", t0)


def test_c07_character_norm_identities(towers):
    t0 = time.time()
    for q in QS:
        tw = towers[q]
        rng = random.Random(q)
        assert norm_unit_image_check(tw, E2, rng=rng, samples=100)
        assert norm_unit_image_check(tw, E4, rng=rng, samples=100)
    for q in (5, 13, 17):
        assert char_sum_eta_squares(make_field(q)) == COEFF_ZERO
    _announce(7, "unit-norm character triviality and vanishing character sums", t0)


def test_c08_sign_character_triviality(towers):
    t0 = time.time()
    for q in QS:
        for variant in VARIANTS:
            assert sign_character_trivial(towers[q].field, variant)
    _announce(8, "the quadratic sign character is trivial on all residue triples", t0)


def test_c09_group_structure(towers):
    t0 = time.time()
    for q in QS:
        tw = towers[q]
        for variant in VARIANTS:
            assert group_structure_check(tw, variant, order_bound=50)
        trans = translation_power(1)
        acc = lift(tw, W_ID)
        step = lift(tw, trans)
        for n in range(1, 51):
            acc = acc * step
            assert h_M0(acc.to_torus()) == (n, -n, 0)
    _announce(9, "presentation checks and valuation-certified infinite order to n=50", t0)


def test_c10_property_suites(towers, contexts):
    t0 = time.time()
    tw = towers[5]
    rng = random.Random(2024)
    for variant in VARIANTS:
        ctx = contexts[(5, variant)]
        table = CocycleTable(ctx)
        window = ctx.window()
        for _ in range(500):
            u, v, w = (rng.choice(window) for _ in range(3))
            assert table.cocycle_identity_holds(u, v, w)
    # associativity of the three algebra products, 100 seeded triples each
    system = CoxeterSystem(("s", "t"))
    params = {"s": HeckeCoeff(3, 1), "t": HeckeCoeff(-2, 2)}
    words = [(), ("s",), ("t",), ("s", "t"), ("t", "s")]
    for _ in range(100):
        a, b, c = (GenericHeckeElem.basis(system, rng.choice(words)) for _ in range(3))
        assert hecke_mul(hecke_mul(a, b, params), c, params) == hecke_mul(
            a, hecke_mul(b, c, params), params
        )
    ctx = contexts[(5, STABILIZER)]
    table = CocycleTable(ctx)
    twisted = TwistedGroupAlgebra(
        lambda u, v: u * v, lambda u, v: table.mu(u, v).as_coeff(), W_ID
    )
    window = ctx.window(2, 1)
    for _ in range(100):
        a, b, c = (twisted.basis(rng.choice(window)) for _ in range(3))
        assert twisted_mul(twisted_mul(a, b), c) == twisted_mul(a, twisted_mul(b, c))
    example = build_example_algebra(table)
    pool = [example.basis(rng.choice(window)) for _ in range(8)]
    for _ in range(100):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert crossed_mul(crossed_mul(a, b), c) == crossed_mul(a, crossed_mul(b, c))
    # per-module homomorphism and roundtrip invariants
    for variant in VARIANTS:
        for _ in range(50):
            g = random_K0(tw, variant, rng)
            h = random_K0(tw, variant, rng)
            assert rho0(g * h, variant) == rho0(g, variant) * rho0(h, variant)
        for _ in range(20):
            tt = random_KM0(tw, variant, rng)
            assert rho0(tt.to_group(), variant) == rho_M0(tt)
    for _ in range(20):
        a, b = (rng.choice(window) for _ in range(2))
        disc = lift(tw, a * b).inverse() * lift(tw, a) * lift(tw, b)
        assert disc.is_diagonal() and in_KM0(disc.to_torus(), STABILIZER)
        assert plength(a * b) <= plength(a) + plength(b)
    for _ in range(20):
        g = random_K0(tw, STABILIZER, rng) * lift(tw, rng.choice(window)) * random_K0(
            tw, STABILIZER, rng
        )
        dec = iwahori_decompose(g)
        assert dec.k1 * dec.monomial.as_group() * dec.k2 == g
    _announce(10, "cocycle identity (500 triples), associativity (3 x 100), module invariants", t0)


def test_c11_no_multiplicative_lift_family(contexts):
    t0 = time.time()
    for variant in VARIANTS:
        ctx = contexts[(5, variant)]
        rng = random.Random(40)
        assert multiplicative_family_search(ctx, rng, trials=40) == 0
    _announce(11, "no sampled lift family is multiplicative through (s, z): 40 trials, 0 hits", t0)
