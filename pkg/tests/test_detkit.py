import dataclasses
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nikishin import cli, detkit, mop_solver
from nikishin.detkit import DiscreteMeasure, FunctionFamily, OrderedTuple
from nikishin.errors import (CoincidentPoints, IndexConditionViolated, KindMismatch,
                             NotOrdered, ShapeMismatch, SizeMismatch, TooManyAtoms)
from nikishin.measure_core import BranchCut, RealMeasure, Interval, sqrt_branch
from nikishin.precision import ctx, mpf

from conftest import real_system

ONE = lambda x: 1  # noqa: E731
IDENT = lambda x: x  # noqa: E731


# Chebyshev determinants

def test_constant_family():
    assert detkit.chebyshev_det(FunctionFamily([ONE]), OrderedTuple([0.3])) == 1


def test_vandermonde_two():
    assert detkit.chebyshev_det(FunctionFamily([ONE, IDENT]), OrderedTuple([0, 1])) == 1


def test_swap_negates():
    fam = FunctionFamily([ONE, IDENT, lambda x: x ** 3])
    pts = [mpf("0.1"), mpf("0.4"), mpf("0.9")]
    d = detkit.chebyshev_det(fam, OrderedTuple(pts))
    vals = [[f(x) for x in [pts[1], pts[0], pts[2]]] for f in fam.entries]
    assert abs(ctx.det(ctx.matrix(vals)) + d) < 1e-45


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        detkit.chebyshev_det(FunctionFamily([ONE, IDENT]), OrderedTuple([0.5]))


def test_unordered_tuple_rejected():
    with pytest.raises(NotOrdered):
        OrderedTuple([0.5, 0.2])


def test_circle_tuple_order_follows_branch():
    branch = BranchCut(mpf(3))
    # angle 0.5 reduces to 0.5 + 2 pi, after angle 4
    OrderedTuple([ctx.expj(4), ctx.expj(mpf("0.5"))], branch)
    with pytest.raises(NotOrdered):
        OrderedTuple([ctx.expj(mpf("0.5")), ctx.expj(4)], branch)


def test_scaled_det_sign_matches():
    fam = FunctionFamily([ONE, IDENT, lambda x: x * x])
    tup = OrderedTuple([0.1, 0.5, 0.7])
    a, b = detkit.chebyshev_det(fam, tup), detkit.scaled_chebyshev_det(fam, tup)
    assert a * b > 0


# families

def test_at_family_rl_polynomial():
    system = real_system(0)
    fam = detkit.at_family_rl(system, (2,))
    assert fam.labels == ("1", "x^1")
    assert fam.entries[1](mpf("0.3")) == mpf("0.3")


def test_at_family_rl_chain(rl2):
    fam = detkit.at_family_rl(rl2, (1, 1))
    assert fam.labels == ("1", "1*w2")
    x = mpf("0.5")
    assert abs(fam.entries[1](x) - ctx.log(mpf("2.5") / mpf("1.5"))) < 1e-45


def test_at_family_rl_values(rl2):
    fam = detkit.at_family_rl(rl2, (2, 1))
    x = mpf("0.5")
    sigma2 = rl2.generators.sigmas[1]
    assert fam.entries[0](x) == 1
    assert fam.entries[1](x) == x
    assert abs(fam.entries[2](x) - sigma2.cauchy(x)) < 1e-45


def test_at_family_kind(rl2, uc2):
    with pytest.raises(KindMismatch):
        detkit.at_family_uc(rl2, (1, 1))
    with pytest.raises(KindMismatch):
        detkit.at_family_rl(uc2, (1, 1))


def test_at_family_uc_single(uc1):
    assert detkit.at_family_uc(uc1, (1,)).labels == ("z^(0/2)*w1",)


def test_at_family_uc_odd(uc1):
    fam = detkit.at_family_uc(uc1, (3,))
    assert fam.labels == ("z^(-2/2)*w1", "z^(0/2)*w1", "z^(2/2)*w1")
    z = ctx.expj(mpf("0.7"))
    assert abs(fam.entries[0](z) - 1 / z) < 1e-45
    assert abs(fam.entries[2](z) - z) < 1e-45


def test_at_family_uc_even_uses_branch(uc1):
    fam = detkit.at_family_uc(uc1, (2,))
    z = ctx.expj(mpf("0.7"))
    s = sqrt_branch(z, uc1.branch)
    assert abs(fam.entries[0](z) - 1 / s) < 1e-45
    assert abs(fam.entries[1](z) - s) < 1e-45


# Andreief identity

def test_andreief_mass_one():
    mu = DiscreteMeasure([(0, 0.5), (1, 0.5)])
    assert detkit.andreief_lhs(np.empty((0, 1)), [ONE], [ONE], mu) == pytest.approx(1.0)


def test_andreief_hand_example():
    mu = DiscreteMeasure([(0, 0.5), (1, 0.5)])
    args = ([[1, 1]], [ONE], [ONE, IDENT], mu)
    assert detkit.andreief_lhs(*args) == pytest.approx(-0.5, abs=1e-15)
    assert detkit.andreief_rhs(*args) == pytest.approx(-0.5, abs=1e-15)


def test_andreief_row_scaling():
    rng = np.random.default_rng(2)
    A, f, g, mu = cli.random_andreief_instance(rng)
    while len(A) == 0:
        A, f, g, mu = cli.random_andreief_instance(rng)
    B = np.array(A, float)
    B[0] *= 3
    assert detkit.andreief_lhs(B, f, g, mu) == pytest.approx(3 * detkit.andreief_lhs(A, f, g, mu),
                                                             rel=1e-12, abs=1e-14)


def test_andreief_gram_positive():
    mu = DiscreteMeasure([(0.1, 1), (0.4, 2), (0.8, 0.5), (0.9, 1)])
    f = [ONE, IDENT, lambda x: x ** 2]
    A = np.empty((0, 3))
    lhs = detkit.andreief_lhs(A, f, f, mu)
    assert lhs > 0
    assert detkit.andreief_rhs(A, f, f, mu) == pytest.approx(lhs, rel=1e-12)


def test_andreief_transposition_negates():
    mu = DiscreteMeasure([(0.1, 1), (0.4, 2), (0.8, 0.5)])
    f = [ONE, IDENT]
    g = [ONE, IDENT, lambda x: x ** 2]
    A = [[0.3, -1, 2]]
    a = detkit.andreief_rhs(A, f, g, mu)
    b = detkit.andreief_rhs(A, list(reversed(f)), g, mu)
    assert b == pytest.approx(-a, rel=1e-13)


def test_andreief_two_summation_routes():
    rng = np.random.default_rng(11)
    for _ in range(20):
        A, f, g, mu = cli.random_andreief_instance(rng, max_n=4, max_atoms=5)
        a = detkit.andreief_rhs(A, f, g, mu, method="subsets")
        b = detkit.andreief_rhs(A, f, g, mu, method="tuples")
        assert a == pytest.approx(b, rel=1e-12, abs=1e-14)


def test_andreief_against_continuous_measure():
    mu = RealMeasure(Interval(0, 1), order=20)
    f = [ONE, IDENT]
    g = [ONE, IDENT, lambda x: x ** 2]
    # rows (1, 1/2, 1/3), (1/2, 1/3, 1/4) under A = (0, 0, 1)
    expected = 1 / 3 - 1 / 4
    assert detkit.andreief_lhs([[0, 0, 1]], f, g, mu) == pytest.approx(expected, rel=1e-14)


def test_andreief_guards():
    mu = DiscreteMeasure([(x, 1) for x in range(13)])
    with pytest.raises(TooManyAtoms):
        detkit.andreief_rhs(np.empty((0, 1)), [ONE], [ONE], mu)
    with pytest.raises(ShapeMismatch):
        detkit.andreief_lhs([[1, 2, 3]], [ONE], [ONE, IDENT], DiscreteMeasure([(0, 1)]))
    with pytest.raises(ValueError):
        DiscreteMeasure([(0, 1), (1, -1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_andreief_property(seed):
    assert cli.andreief_deviation(np.random.default_rng(seed)) <= 1e-12


# Cauchy-Vandermonde

def test_cv_hand_example():
    M = detkit.cauchy_vandermonde_matrix([0, 1], [2], 1, 1)
    assert M.tolist() == [[1, 1], [-0.5, -1]]
    assert detkit.cauchy_vandermonde_closed([0, 1], [2], 1, 1) == pytest.approx(-0.5)
    assert np.linalg.det(M) == pytest.approx(-0.5)


def test_cv_reduces_to_vandermonde():
    t = [0.1, 0.3, 0.6, 0.7]
    expected = np.prod([t[k] - t[j] for j, k in itertools.combinations(range(4), 2)])
    assert detkit.cauchy_vandermonde_closed(t, [], 4, 0) == pytest.approx(expected)


def test_cv_dense_oracle_size_six():
    rng = np.random.default_rng(4)
    t, z = np.sort(rng.uniform(0, 1, 6)), np.sort(rng.uniform(2, 3, 3))
    dense = ctx.det(detkit.cauchy_vandermonde_matrix(t, z, 3, 3, exact=True))
    closed = detkit.cauchy_vandermonde_closed(t, z, 3, 3)
    assert abs(closed - dense) <= 1e-10 * abs(dense)


def test_cv_guards():
    with pytest.raises(CoincidentPoints):
        detkit.cauchy_vandermonde_closed([0, 2], [2], 1, 1)
    with pytest.raises(SizeMismatch):
        detkit.cauchy_vandermonde_closed([0, 1, 3], [2], 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_cv_property(seed):
    assert cli.cv_deviation(np.random.default_rng(seed)) <= 1e-10


# sign checks

def test_sign_r1_vandermonde():
    rep = detkit.sign_check_rl(real_system(0), (4,), 50, 0)
    assert rep.constant and rep.sign == 1


def test_sign_r2(rl2):
    assert detkit.sign_check_rl(rl2, (2, 2), 100, 0).constant


@pytest.mark.parametrize("n", [(1, 1, 1), (3, 3, 2), (2, 3, 3), (4, 2, 1), (3, 3, 3), (5, 3, 1)])
def test_sign_r3_theorem_indices(rl3, n):
    assert detkit.sign_check_rl(rl3, n, 30, 1).constant


def test_sign_change_detected(rl2):
    # {1, (x - 1/2)**2} is not a Chebyshev system on [0, 1]
    fake = dataclasses.replace(rl2, rn_chain=(rl2.rn_chain[0], lambda x: (x - mpf(1) / 2) ** 2))
    rep = detkit.sign_check_rl(fake, (1, 1), 50, 0)
    assert rep.verdict == "SIGN_CHANGE" and rep.sign == 0


def test_degenerate_detected(rl2):
    fake = dataclasses.replace(rl2, rn_chain=(rl2.rn_chain[0], lambda x: mpf(1)))
    assert detkit.sign_check_rl(fake, (1, 1), 10, 0).verdict == "DEGENERATE"


@pytest.mark.parametrize("n", [(3, 3, 3), (4, 3, 2), (9, 0, 0)])
def test_sign_full_degree(rl3, n):
    assert detkit.sign_check_rl(rl3, n, 100, 0).constant


def test_sign_index_guard(rl2):
    with pytest.raises(IndexConditionViolated):
        detkit.sign_check_rl(rl2, (0, 3), 10, 0)


def test_sign_deterministic(rl2):
    a = detkit.sign_check_rl(rl2, (2, 1), 20, 9)
    b = detkit.sign_check_rl(rl2, (2, 1), 20, np.random.default_rng(9))
    assert a == b


def test_merging_points_shrink_U(rl2):
    fam = detkit.at_family_rl(rl2, (2, 2))
    rng = np.random.default_rng(0)
    typical = [abs(detkit.chebyshev_det(fam, detkit.random_ordered_tuple(
        rl2.first_support, 4, rng))) for _ in range(30)]
    pts = [mpf("0.1"), mpf("0.4"), mpf("0.4") + mpf("1e-4"), mpf("0.8")]
    close = abs(detkit.chebyshev_det(fam, OrderedTuple(pts)))
    assert close < 1e-2 * float(np.median([float(v) for v in typical]))


# phase checks

def test_phase_r1_single(uc1):
    rep = detkit.phase_check_uc(uc1, (1,), 30, 0)
    assert rep.confirmed and rep.l_mod4 == 0


def test_phase_r1_three(uc1):
    rep = detkit.phase_check_uc(uc1, (3,), 50, 0)
    k1 = 2
    assert rep.confirmed and rep.l_mod4 == ((2 * k1 - 1) * (k1 - 1)) % 4


@pytest.mark.parametrize("n", [(1, 1), (2, 2), (4, 2), (4, 4), (7, 1), (5, 3)])
def test_phase_same_parity(uc2, n):
    rep = detkit.phase_check_uc(uc2, n, 100, 0)
    assert rep.confirmed and rep.l_mod4 is not None
    assert mop_solver.normality(uc2, n, solve=False).is_normal


def test_phase_deterministic(uc2):
    assert detkit.phase_check_uc(uc2, (1, 1), 10, 3) == detkit.phase_check_uc(uc2, (1, 1), 10, 3)


def test_chord_identity(uc2):
    rng = np.random.default_rng(0)
    branch = uc2.branch
    for _ in range(100):
        zk, zj = detkit.random_ordered_tuple(uc2.first_support, 2, rng, branch).points
        lhs = zj - zk
        rhs = 1j * sqrt_branch(zj, branch) * sqrt_branch(zk, branch) * abs(zj - zk)
        assert abs(lhs - rhs) < 1e-40
