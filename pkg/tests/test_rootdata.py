import random

import pytest

from g2lift.errors import InadmissibleParameter
from g2lift.rootdata import (BRACKET_DEF, NROOTS, RANK, ROOT_DEGREES,
                             BraidingConfig, DeformationParams, admissibility,
                             admissible_params)


def test_root_degrees_and_order():
    assert ROOT_DEGREES == ((1, 0), (3, 1), (2, 1), (3, 2), (1, 1), (0, 1))
    assert list(RANK) == ["1", "1112", "112", "beta", "12", "2"]


def test_shirshov_consistent_with_addition():
    for name, (a, b) in BRACKET_DEF.items():
        da, db, d = (ROOT_DEGREES[RANK[a]], ROOT_DEGREES[RANK[b]],
                     ROOT_DEGREES[RANK[name]])
        assert (da[0] + db[0], da[1] + db[1]) == d


def test_n_alpha():
    c7 = BraidingConfig(7, 3)
    assert c7.n_alpha("2") == 7 and c7.n_alpha("1") == 7
    c9 = BraidingConfig(9, 0)
    assert c9.n_alpha("2") == 3
    assert c9.n_alpha("1") == 9
    assert c9.n_alpha("12") == 9 and c9.n_alpha("beta") == 3


def test_bicharacter_values():
    cfg = BraidingConfig(7, 3)
    f = cfg.field
    # (alpha1, alpha2) -> q12
    assert cfg.bicharacter((1, 0), (0, 1)) == f.qpow(cfg.q12_exp)
    # biadditivity in the first slot on random triples
    rng = random.Random(7)
    for _ in range(50):
        u = (rng.randint(0, 9), rng.randint(0, 9))
        v = (rng.randint(0, 9), rng.randint(0, 9))
        w = (rng.randint(0, 9), rng.randint(0, 9))
        uv = (u[0] + v[0], u[1] + v[1])
        assert cfg.bichar_exp(uv, w) == (
            cfg.bichar_exp(u, w) + cfg.bichar_exp(v, w)) % cfg.N
    # zero slot
    assert cfg.bicharacter((0, 0), (5, 3)) == f.one
    # (beta, beta) at N=7, a=3: exponent 9 + 3*6 + 6*(-6 mod 7 -> 1) + 12
    assert cfg.bichar_exp((3, 2), (3, 2)) == (9 + 18 + 6 + 12) % 7


def test_degenerate_flag():
    assert BraidingConfig(7, 3).is_degenerate
    assert BraidingConfig(7, 10).is_degenerate
    assert not BraidingConfig(7, 1).is_degenerate
    assert not BraidingConfig(5, 3).is_degenerate


def test_admissibility_degenerate():
    cfg = BraidingConfig(7, 3)
    report = admissibility(DeformationParams.degenerate(), cfg)
    assert report["l1"] and report["l2"]


def test_admissibility_rejects_lambda_off_degenerate():
    cfg = BraidingConfig(5, 0)
    with pytest.raises(InadmissibleParameter):
        admissibility(DeformationParams(lam=(True, False)), cfg)


def test_admissibility_mu_all_on_at_coprime():
    cfg = BraidingConfig(5, 0)
    report = admissibility(DeformationParams.generic(), cfg)
    assert all(report[f"mu_{name}"] for name in RANK)


def test_admissible_params_divisible():
    # at N=9, a=1 the short-root mu's (N_alpha = M = 3) are forced to zero
    p = admissible_params(BraidingConfig(9, 1))
    assert p.mu[RANK["1"]] and p.mu[RANK["12"]] and p.mu[RANK["112"]]
    assert not p.mu[RANK["2"]]
    assert not p.mu[RANK["1112"]]
    assert not p.mu[RANK["beta"]]
    p0 = admissible_params(BraidingConfig(9, 0))
    assert all(p0.mu)
