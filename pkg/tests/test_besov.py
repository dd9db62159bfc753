from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lzkit.bandlimited import FamilySpec
from lzkit.besov import (
    BesovParams,
    besov_norm,
    block_norms,
    block_weight,
    build_partition,
    embedding_ratio,
    embedding_shift,
    phi,
    phi0,
    psi,
    verify_embedding,
)
from lzkit.spaces import INF, HypothesisError, LogPair, TrivialSpaceError

F = Fraction


def test_partition_sums_to_one():
    P = build_partition(-12, 12)
    r = np.geomspace(2.0**-10, 2.0**10, 50001)
    assert np.max(np.abs(P.dyadic_sum(r) - 1)) < 1e-12
    assert np.max(np.abs(P.total(r) - 1)) < 1e-12


def test_psi_is_one_below_unit_frequency():
    r = np.linspace(0, 1, 1001)
    for k in range(1, 6):
        assert np.all(phi(k, r) == 0)
    assert np.all(psi(r) == 1)


def test_phi0_support():
    assert phi0(np.array([0.5, 2.0, 0.3, 2.5])).tolist() == [0, 0, 0, 0]
    inside = np.linspace(0.51, 1.99, 300)
    assert np.all(phi0(inside) > 0)


def test_blocks_overlap_only_with_neighbours():
    r = np.geomspace(2.0**-6, 2.0**8, 20001)
    for k in range(-4, 6):
        for j in range(k + 2, k + 6):
            assert np.all(phi(k, r) * phi(j, r) == 0)


def test_build_partition_checks_grid():
    g = np.geomspace(0.1, 100, 400)
    P = build_partition(0, 5, g)
    assert P.phi0_samples.shape == g.shape
    with pytest.raises(ValueError):
        build_partition(0, 8, g)
    with pytest.raises(ValueError):
        build_partition(0, 3, np.array([0.4, 0.6, 20.0]))
    with pytest.raises(ValueError):
        build_partition(3, 1)


def _random(R=20.0, seed=1, inner=0.0):
    fam = FamilySpec("random", grid_points=256, inner=inner)
    return fam.member(R, seed)


def test_zero_function():
    f = _random().scaled(0.0)
    assert besov_norm(f, BesovParams(1, 2, 2, (2, 2))) == 0.0


def test_blocks_vanish_beyond_radius():
    f = _random(20.0)
    norms = block_norms(f, (2, 2), kmax=9)
    top = max(norms.values())
    for k, v in norms.items():
        if k != "psi" and 2.0 ** (k - 1) > 20.0:
            assert v <= 1e-12 * top


def test_norm_invariant_under_larger_kmax():
    f = _random(20.0)
    bp = BesovParams(0.5, -1, 1.5, (3, 2, (1, -1)))
    a = besov_norm(f, bp)
    b = besov_norm(f, bp, kmax=10)
    assert b == pytest.approx(a, rel=1e-10)


def test_sup_summation():
    f = _random(20.0)
    bp = BesovParams(1, 1, INF, (2, 2))
    norms = block_norms(f, (2, 2))
    expected = norms["psi"] + max(block_weight(k, bp, False) * v for k, v in norms.items() if k != "psi")
    assert besov_norm(f, bp) == pytest.approx(expected, rel=1e-15)


def test_homogeneous_needs_annulus():
    with pytest.raises(ValueError):
        besov_norm(_random(), BesovParams(0, (0, 0), 2, (2, 2)), homogeneous=True)
    f = _random(16.0, inner=0.25)
    assert besov_norm(f, BesovParams(0, (0, 0), 2, (2, 2)), homogeneous=True) > 0


def test_trivial_base_rejected():
    with pytest.raises(TrivialSpaceError):
        BesovParams(0, 0, 2, (INF, INF, (1, 0)))


@given(st.floats(-5, 5))
def test_weight_scales_agree(gamma):
    # (1+k)^gamma against l^(gamma, gamma)(2^k) for k <= 64
    r = [block_weight(k, BesovParams(0, gamma), False) / block_weight(k, BesovParams(0, LogPair(gamma, gamma)), True) for k in range(1, 65)]
    assert max(r) / min(r) < 3


def test_shift_c21():
    out = embedding_shift("C21", (1, 1), (2, 2), 1, BesovParams(0, 0))
    assert (out.sigma, out.gamma) == (F(1, 2), 0)
    assert out.base.p == 1


def test_shift_c26_example():
    tgt = BesovParams(0, 0, 2, (2, 1, (1, 0)))
    with pytest.raises(HypothesisError) as e:
        embedding_shift("C26", (2, 2), (2, 1, (1, 0)), 1, tgt)
    assert e.value.condition == "alpha_inf + 1/b < beta_inf + 1/c"
    out = embedding_shift("C26", (2, 2), (2, 1, (1, 0)), 1, tgt, check=False)
    assert out.gamma == F(3, 2)
    ok = embedding_shift("C26", (2, 2), (2, 1, (1, -1)), 1, BesovParams(0, 0, 2, (2, 1, (1, -1))))
    assert ok.gamma == F(3, 2)


def test_shift_identity():
    bp = BesovParams(1, 2, 2, (2, 2, (1, 1)))
    out = embedding_shift("C28", (2, 2, (1, 1)), (2, 2, (1, 1)), 1, bp)
    assert (out.sigma, out.gamma) == (1, 2)


@pytest.mark.parametrize(
    "cor, src, tgt, gamma, sigma_out, gamma_out",
    [
        ("C22", (1, 1), (2, 2, (1, 0)), (0, 0), F(1, 2), LogPair(0, 1)),
        ("C23", (2, 2), (INF, 1, (-2, 1)), 0, F(1, 2), -1),
        ("C24", (2, 2), (INF, 1, (-2, 1)), (1, 1), F(1, 2), LogPair(3, 0)),
        ("C25", (2, 2), (INF, 2, (-1, -1)), (0, 0), F(1, 2), LogPair(0, F(-1, 2))),
        ("C27", (2, 2), (2, 1, (1, -1)), (0, 0), 0, LogPair(F(-1, 2), F(3, 2))),
        ("C28", (2, 1), (2, 2, (1, -1)), 0, 0, 1),
        ("C29", (2, 1), (2, 2, (0, -1)), (0, 0), 0, LogPair(-1, 0)),
    ],
)
def test_shift_arithmetic(cor, src, tgt, gamma, sigma_out, gamma_out):
    out = embedding_shift(cor, src, tgt, 1, BesovParams(0, gamma, 2, tgt))
    assert out.sigma == sigma_out
    assert out.gamma == gamma_out


def test_shift_c23_flags_zero():
    with pytest.raises(HypothesisError) as e:
        embedding_shift("C23", (2, 2), (INF, 1, (-2, -1)), 1, BesovParams(0, 0, 2, (INF, 1, (-2, -1))))
    assert e.value.condition == "alpha_inf + 1/b != 0"


def test_shift_source_class():
    with pytest.raises(HypothesisError) as e:
        embedding_shift("C21", (F(1, 2), 1), (2, 2), 1, BesovParams(0, 0))
    assert e.value.condition == "(q,c,B) in F"


def test_shift_uses_c_le_b_for_equal_exponents():
    # b = 1 < c = 2 is outside the underlying same-exponent embedding
    with pytest.raises(HypothesisError) as e:
        embedding_shift("C28", (2, 2), (2, 1, (1, -1)), 1, BesovParams(0, 0, 2, (2, 1, (1, -1))))
    assert e.value.condition == "c <= b"


def test_shift_dimension():
    out = embedding_shift("C21", (1, 1), (INF, INF), 2, BesovParams(F(1, 3), 0, 2, (INF, INF)))
    assert out.sigma == F(7, 3)


def test_embedding_ratio_zero_and_homogeneous():
    tgt = BesovParams(0, 0, 2, (2, 2))
    src = embedding_shift("C21", (1, 1), (2, 2), 1, tgt)
    f = _random(16.0, seed=4)
    _, _, r = embedding_ratio(f, tgt, src, False)
    _, _, r0 = embedding_ratio(f.scaled(0.0), tgt, src, False)
    _, _, rc = embedding_ratio(f.scaled(37.5), tgt, src, False)
    assert r0 == 0.0
    assert rc == pytest.approx(r, rel=1e-12)


def test_verify_embedding_small():
    fam = FamilySpec("random", grid_points=256)
    rep = verify_embedding("C21", fam, 2, 0, (1, 1), (2, 2), BesovParams(0, 0, 2), omegas=(2.0, 8.0, 32.0))
    assert len(rep.rows) == 6
    assert rep.spread < 10
    assert rep.source.sigma == F(1, 2)


def test_verify_embedding_homogeneous():
    fam = FamilySpec("random", grid_points=256, inner=0.25)
    rep = verify_embedding("C22", fam, 2, 0, (1, 1), (2, 2), BesovParams(0, (0, 0), 2), omegas=(4.0, 16.0, 64.0))
    assert all(r.ratio > 0 for r in rep.rows)
    assert rep.spread < 10
