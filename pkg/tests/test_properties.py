"""The randomized/exhaustive Hopf-structure property suite: coassociativity,
counit, comodule axiom, and the algebra-map property of the three maps.
Everything is exact; seeds are fixed."""

import random

import pytest

from g2lift import engine, lifting, presentations, structure
from g2lift.engine import AlgebraElement, counit_left, counit_right, expand_leg
from g2lift.rootdata import NROOTS, RANK, ROOT_NAMES, BraidingConfig
from g2lift.scalars import PAR_ZERO


def merge32(f, gen):
    out = {}
    for k, v in gen:
        prev = out.get(k)
        s = f.add(prev, v) if prev is not None else v
        if f.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


@pytest.mark.parametrize("N,a", [(5, 0), (7, 3), (9, 0)])
def test_coassociativity_all_root_powers(N, a):
    H = presentations.build("prenichols", BraidingConfig(N, a))
    D = structure.coproduct_map(H)
    f = H.field
    for root in ROOT_NAMES:
        r = RANK[root]
        n = H.config.n_alpha_by_rank[r]
        for k in range(1, n + 1):
            t = D.letter_power(r, k)
            left = expand_leg(D, t, "left")
            right = expand_leg(D, t, "right")
            assert left == right, (root, k)


@pytest.mark.parametrize("N,a", [(5, 0), (7, 3), (9, 0)])
def test_counit_both_sides(N, a):
    H = presentations.build("prenichols", BraidingConfig(N, a))
    D = structure.coproduct_map(H)
    for root in ROOT_NAMES:
        r = RANK[root]
        n = H.config.n_alpha_by_rank[r]
        for k in range(1, n + 1):
            t = D.letter_power(r, k)
            e = [0] * NROOTS
            e[r] = k
            mono = H.monomial(e)
            assert counit_left(t) == mono
            assert counit_right(t) == mono


def test_comodule_axiom_on_generators_and_sections(degenerate_session):
    ses = degenerate_session
    A, H = ses.cleft, ses.prenichols
    secs, rho = ses.sections()
    D = structure.coproduct_map(H)
    targets = [A.letter(name) for name in ROOT_NAMES]
    targets += [secs[root] for root in ROOT_NAMES]
    for y in targets:
        t = rho.apply(y)
        lhs = expand_leg(rho, t, "left")   # (rho (x) id) rho
        rhs = expand_leg(D, t, "right")    # (id (x) Delta) rho
        assert lhs == rhs


def rand_monomial(alg, rng, dmax):
    e = [0] * NROOTS
    for _ in range(24):
        r = rng.randrange(NROOTS)
        if alg.bounded and e[r] + 1 >= alg.config.n_alpha_by_rank[r]:
            continue
        e[r] += 1
        d = engine.deg(tuple(e))
        if d[0] > dmax[0] or d[1] > dmax[1]:
            e[r] -= 1
    return AlgebraElement(alg, {tuple(e) + (rng.randint(0, 2), rng.randint(0, 2))
                                + PAR_ZERO: alg.field.one})


def test_delta_is_algebra_map_random_pairs():
    H = presentations.build("prenichols", BraidingConfig(7, 3))
    D = structure.coproduct_map(H)
    rng = random.Random(1234)
    for _ in range(200):
        u = rand_monomial(H, rng, (8, 6))
        v = rand_monomial(H, rng, (8, 6))
        assert D.apply(u * v) == D.apply(u) * D.apply(v)


def test_rho_delta_are_algebra_maps_random_pairs(degenerate_session):
    ses = degenerate_session
    secs, rho = ses.sections()
    dm = ses.delta()
    rng = random.Random(99)
    for _ in range(200):
        u = rand_monomial(ses.cleft, rng, (7, 5))
        v = rand_monomial(ses.cleft, rng, (7, 5))
        assert rho.apply(u * v) == rho.apply(u) * rho.apply(v)
    for _ in range(60):
        u = rand_monomial(ses.cleft, rng, (6, 4))
        v = rand_monomial(ses.cleft, rng, (6, 4))
        assert dm.apply(u * v) == dm.apply(u) * dm.apply(v)


def test_deformed_bracket_identities_hold_in_engine(degenerate_session):
    """Every identity of the three bracket tables holds as a normal-form
    identity: [x_g, x_d]_c computed by multiplication equals the stored
    tail, for the plain, cleft and lift presentations."""
    ses = degenerate_session
    algebras = [ses.prenichols, ses.cleft, ses.lift]
    for N, a in ((5, 0), (9, 0)):
        algebras.append(presentations.build("prenichols", BraidingConfig(N, a)))
    for alg in algebras:
        letters = {n: alg.letter(n) for n in ROOT_NAMES}
        for (i, j), tail in alg.bracket.items():
            got = engine.qbracket(letters[ROOT_NAMES[i]], letters[ROOT_NAMES[j]])
            assert got.terms == tail, (alg.kind, ROOT_NAMES[i], ROOT_NAMES[j])
