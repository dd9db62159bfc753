import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzkit.spaces import (
    INF,
    HypothesisError,
    InterpSpec,
    LogPair,
    SpaceParams,
    as_exponent,
    broken_log_eval,
    broken_loglog_eval,
    conjugate,
    interp_params,
    nontrivial,
)

exps = st.floats(-4, 4, allow_nan=False)
pairs = st.builds(LogPair, exps, exps)
ts = st.floats(1e-8, 1e8)


def test_broken_log_examples():
    assert broken_log_eval(LogPair(2, 5), 1.0) == 1.0
    assert broken_log_eval(LogPair(0, 1), math.e) == pytest.approx(2.0, rel=1e-15)
    assert broken_log_eval(LogPair(2, 5), 1 / math.e) == pytest.approx(4.0, rel=1e-15)


def test_broken_log_rejects_nonpositive():
    with pytest.raises(ValueError):
        broken_log_eval(LogPair(1, 1), 0.0)


def test_loglog_branch_follows_t():
    # l(l(t)) is evaluated with the branch of t, not of l(t)
    t = 1e-3
    ll = 1 + abs(math.log(1 + abs(math.log(t))))
    assert broken_loglog_eval(LogPair(2, 0), t) == pytest.approx(ll**2)
    assert broken_loglog_eval(LogPair(0, 2), t) == 1.0


def test_pair_ops():
    A = LogPair(1, -2)
    assert A.tilde() == LogPair(-2, 1)
    assert A + 1 == LogPair(2, -1)
    assert A.add_scalar(1) == LogPair(2, -1)
    assert A.scale(3) == LogPair(3, -6)


def test_logpair_rejects_infinite():
    with pytest.raises(ValueError):
        LogPair(math.inf, 0)
    with pytest.raises(ValueError):
        LogPair(0, math.nan)


@given(pairs, ts)
def test_tilde_reflects_argument(A, t):
    assert broken_log_eval(A.tilde(), 1 / t) == pytest.approx(broken_log_eval(A, t), rel=1e-12)


@given(pairs, pairs, ts)
def test_multiplicative(A, B, t):
    assert broken_log_eval(A + B, t) == pytest.approx(broken_log_eval(A, t) * broken_log_eval(B, t), rel=1e-12)


@given(pairs, st.floats(-3, 3), ts)
def test_scaling(A, k, t):
    assert broken_log_eval(A.scale(k), t) == pytest.approx(broken_log_eval(A, t) ** k, rel=1e-11)


@given(pairs, st.floats(-5, 5))
def test_tilde_involution_and_shift(A, s):
    assert A.tilde().tilde() == A
    assert ((A + s) - s).close_to(A)


def test_nontrivial_examples():
    assert nontrivial(SpaceParams(2, 3, LogPair(7, 7)))
    assert nontrivial(SpaceParams(INF, 2, LogPair(-1, 0)))
    assert not nontrivial(SpaceParams(INF, INF, LogPair(1, 0)))
    assert nontrivial(SpaceParams(INF, INF, LogPair(0, 5)))


def _nontrivial_table(p, b, a0):
    # direct truth table over the three admissible cases
    if p != INF:
        return True
    if b != INF:
        return a0 + 1 / b < 0
    return a0 == 0


def test_nontrivial_truth_table():
    grid_p = [Fraction(1, 2), 1, 3, INF]
    grid_b = [Fraction(1, 2), 1, 2, 5, INF]
    grid_a = [Fraction(-3), Fraction(-2), Fraction(-1), Fraction(-1, 2), 0, Fraction(1, 2), 1, 2, 3, Fraction(-1, 5)]
    n = 0
    for p in grid_p:
        for b in grid_b:
            for a0 in grid_a:
                assert nontrivial(SpaceParams(p, b, LogPair(a0, 1))) == _nontrivial_table(p, b, a0), (p, b, a0)
                n += 1
    assert n == 200


def test_boundary_alpha_equal_minus_inv_b_is_trivial():
    assert not nontrivial(SpaceParams(INF, 2, LogPair(Fraction(-1, 2), 0)))


def test_space_validation():
    with pytest.raises(ValueError):
        SpaceParams(0, 1)
    with pytest.raises(ValueError):
        SpaceParams(1, -2)


def test_exponents_stay_exact():
    s = SpaceParams(3, "4/3", (1, "1/2"))
    assert s.b == Fraction(4, 3)
    assert s.A.alpha_inf == Fraction(1, 2)
    assert s.inv_p == Fraction(1, 3)
    assert as_exponent("inf") == INF
    assert isinstance(as_exponent(0.5), float)


@pytest.mark.parametrize("p, expected", [(1, INF), (2, 2), (Fraction(4, 3), 4), (INF, 1)])
def test_conjugate(p, expected):
    assert conjugate(p) == expected


def test_conjugate_rejects_small():
    with pytest.raises(ValueError):
        conjugate(Fraction(1, 2))


def test_interp_midpoint():
    s0 = SpaceParams(1, 1, LogPair(1, 0))
    s1 = SpaceParams(3, 3, LogPair(0, 1))
    r = interp_params(Fraction(1, 2), s0, s1)
    assert r.p == Fraction(3, 2)
    assert r.A == LogPair(Fraction(1, 2), Fraction(1, 2))


def test_interp_with_linf_endpoint():
    s0 = SpaceParams(2, 2, LogPair(3, 0))
    r = interp_params(Fraction(1, 3), s0, SpaceParams(INF, INF))
    assert r.p == 3
    assert r.A == LogPair(2, 0)


def test_interp_zero_logs():
    r = interp_params(0.25, SpaceParams(1, 1), SpaceParams(4, 2))
    assert r.A.is_zero()
    assert float(r.inv_p) == pytest.approx(0.75 + 0.25 / 4)


def test_interp_limiting_form():
    s0 = SpaceParams(2, 2)
    r = interp_params(1, s0, SpaceParams(INF, INF), A=LogPair(-1, 0), b=2)
    assert r == SpaceParams(INF, 2, LogPair(-1, 0))
    with pytest.raises(HypothesisError):
        interp_params(1, s0, SpaceParams(INF, INF), A=LogPair(0, 0), b=2)


@pytest.mark.parametrize(
    "theta, s0, s1",
    [
        (Fraction(1, 2), SpaceParams(2, 2), SpaceParams(2, 3)),
        (Fraction(1, 2), SpaceParams(2, 2), SpaceParams(INF, 2)),
        (Fraction(0), SpaceParams(1, 1), SpaceParams(2, 2)),
    ],
)
def test_interp_inadmissible(theta, s0, s1):
    with pytest.raises(HypothesisError):
        interp_params(theta, s0, s1)


@given(
    st.fractions(Fraction(1, 20), Fraction(19, 20)),
    st.fractions(Fraction(1, 4), 8),
    st.fractions(Fraction(1, 4), 8),
    st.tuples(*[st.integers(-3, 3)] * 6),
)
@settings(max_examples=200)
def test_interp_exact_and_affine(theta, p0, p1, a):
    if p0 == p1:
        return
    s0 = SpaceParams(p0, 1, LogPair(a[0], a[1]))
    s1 = SpaceParams(p1, 1, LogPair(a[2], a[3]))
    A = LogPair(a[4], a[5])
    r = interp_params(theta, s0, s1, A)
    assert isinstance(r.p, Fraction)
    assert 1 / r.p == (1 - theta) / p0 + theta / p1
    assert r.A == A + s0.A * (1 - theta) + s1.A * theta


def test_interp_spec_admissible_cases():
    assert InterpSpec(Fraction(1, 2), 3).admissible()
    assert InterpSpec(0, 2, LogPair(0, -1)).admissible()
    assert not InterpSpec(0, 2, LogPair(0, 0)).admissible()
    assert InterpSpec(1, INF, LogPair(0, 7)).admissible()
    assert not InterpSpec(1, INF, LogPair(1, 0)).admissible()


def test_broken_log_vectorised():
    t = np.array([0.1, 1.0, 10.0])
    out = broken_log_eval(LogPair(1, 2), t)
    assert out.shape == (3,)
    assert out[1] == 1.0
