import pytest

from g2lift import engine, presentations
from g2lift.errors import InadmissibleParameter
from g2lift.presentations import (build, check_local_confluence,
                                  generic_bracket_table, hilbert_series,
                                  jacobi_cross_check, truncation_product_dims)
from g2lift.rootdata import NROOTS, RANK, BraidingConfig, DeformationParams


@pytest.mark.parametrize("N,a", [(5, 0), (5, 3), (7, 0), (7, 3), (9, 0), (9, 1)])
def test_prenichols_confluence(N, a):
    alg = build("prenichols", BraidingConfig(N, a))
    rep = check_local_confluence(alg)
    assert rep.all_resolved
    assert len(rep.entries) == 20
    assert not jacobi_cross_check(alg)


@pytest.mark.parametrize("N,a", [(5, 0), (7, 3), (9, 0)])
def test_nichols_confluence_with_powers(N, a):
    alg = build("nichols", BraidingConfig(N, a))
    rep = check_local_confluence(alg)
    assert rep.all_resolved
    # 20 triples + 6 per root (self, smaller, larger partners)
    assert len(rep.entries) == 20 + 6 * NROOTS


def test_deformed_tables_confluent_and_consistent(degenerate_session):
    ses = degenerate_session
    for alg in (ses.cleft, ses.lift):
        assert check_local_confluence(alg).all_resolved
        assert not jacobi_cross_check(alg)


def test_cleft_mu_confluence(degenerate_session):
    rep = check_local_confluence(degenerate_session.cleft_mu)
    assert rep.all_resolved


def test_lambda_zero_specializes_to_generic_table():
    cfg = BraidingConfig(7, 3)
    plain = generic_bracket_table(cfg)
    for kind in ("cleft-lambda", "lift-lambda"):
        off = build(kind, cfg, DeformationParams.none())
        assert off.bracket == plain


def test_lambda_requires_degenerate_braiding():
    with pytest.raises(InadmissibleParameter):
        build("cleft-lambda", BraidingConfig(5, 0),
              DeformationParams(lam=(True, True)))


def test_negative_control_corrupted_rule():
    cfg = BraidingConfig(7, 3)
    alg = build("cleft-lambda", cfg, DeformationParams(lam=(True, True)))
    bad = {k: dict(v) for k, v in alg.bracket.items()}
    pair = (RANK["112"], RANK["2"])
    key = next(iter(bad[pair]))
    bad[pair][key] = cfg.field.add(bad[pair][key], cfg.field.one)
    corrupted = presentations.Presentation(
        "cleft-lambda", cfg, alg.params, bad, {})
    rep = check_local_confluence(corrupted)
    assert not rep.all_resolved


def test_hilbert_series_dimensions():
    c7 = BraidingConfig(7, 3)
    n7 = build("nichols", c7)
    dims = hilbert_series(n7, (60, 36))  # full basis: exponents <= 6
    assert dims[(0, 0)] == 1
    assert sum(dims.values()) == 7 ** 6  # product of the six bounds
    assert dims == truncation_product_dims(c7, (60, 36))

    c9 = BraidingConfig(9, 0)
    n9 = build("nichols", c9)
    dims9 = hilbert_series(n9, (44, 24))
    assert sum(dims9.values()) == 9 ** 3 * 3 ** 3

    # pre-Nichols counts dominate the truncation coefficient-wise
    pre = build("prenichols", c7)
    free_dims = hilbert_series(pre, (8, 6))
    trunc = truncation_product_dims(c7, (8, 6))
    assert all(free_dims[k] >= v for k, v in trunc.items())
    # and agree strictly below the first power bound
    assert all(free_dims[k] == v for k, v in trunc.items()
               if k[0] + k[1] < 7)


def test_power_tail_injection_requires_data():
    with pytest.raises(ValueError):
        build("cleft-lambda-mu", BraidingConfig(7, 3),
              DeformationParams.degenerate())
