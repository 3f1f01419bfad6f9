from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nikishin import Arc, CircleMeasure, Interval, RealMeasure, WeightSpec, spectral
from nikishin.errors import (LossOfPositivity, ModulusViolation, OrderExceeded, TooShort,
                             TruncationTooSmall)
from nikishin.precision import ctx, mpf
from nikishin.spectral import JacobiCoeffs, VerblunskyCoeffs

UNIT_MOMENTS = [Fraction(1, k + 1) for k in range(41)]


def as_mp(fracs):
    return [mpf(f.numerator) / f.denominator for f in fracs]


@pytest.fixture(scope="module")
def unit():
    return RealMeasure(Interval(0, 1))


@pytest.fixture(scope="module")
def cosine():
    return CircleMeasure(Arc.full_circle(), WeightSpec.cosine(1))


@pytest.fixture(scope="module")
def unit_coeffs():
    return spectral.jacobi_from_moments(as_mp(UNIT_MOMENTS), 10)


# Jacobi coefficients

def test_unit_first_coefficients(unit_coeffs):
    # P_1 = x - 1/2; a_1**2 = <P_1, P_1> / <1, 1> = 1/12
    assert abs(unit_coeffs.b[0] - mpf(1) / 2) < 1e-45
    assert abs(unit_coeffs.a[0] ** 2 - mpf(1) / 12) < 1e-45


def test_unit_legendre_recurrence(unit_coeffs):
    # shifted Legendre: b_n = 1/2, a_n**2 = n**2 / (4 (4 n**2 - 1))
    for n, (a, b) in enumerate(zip(unit_coeffs.a, unit_coeffs.b), start=1):
        assert abs(b - mpf(1) / 2) < 1e-40
        assert abs(a ** 2 - mpf(n * n) / (4 * (4 * n * n - 1))) < 1e-40


def test_symmetric_measure_has_zero_b():
    coeffs = spectral.jacobi_from_measure(RealMeasure(Interval(-1, 1)), 12)
    assert max(abs(b) for b in coeffs.b) < 1e-45


def test_two_routes_agree(unit, unit_coeffs):
    by_measure = spectral.jacobi_from_measure(unit, 10)
    # the moment route loses digits to the Hilbert-like conditioning
    for x, y in zip(by_measure.a + by_measure.b, unit_coeffs.a + unit_coeffs.b):
        assert abs(x - y) < 1e-30


def test_normalisation_by_mass():
    mu = RealMeasure(Interval(0, 1), WeightSpec.polynomial([3]))
    coeffs = spectral.jacobi_from_measure(mu, 3)
    assert abs(coeffs.a[0] ** 2 - mpf(1) / 12) < 1e-45


def test_jacobi_needs_enough_moments():
    with pytest.raises(OrderExceeded):
        spectral.jacobi_from_moments(as_mp(UNIT_MOMENTS[:5]), 3)


def test_jacobi_loss_of_positivity():
    # x**2 moments of a two-point measure cannot carry three coefficient pairs
    with pytest.raises(LossOfPositivity):
        spectral.jacobi_from_moments([1, 0, 1, 0, 1, 0, 1], 3)


def test_jacobi_coeffs_reject_nonpositive_a():
    with pytest.raises(LossOfPositivity):
        JacobiCoeffs((1, 0), (0, 0))


# stripping

def test_strip_constant_sequence():
    c = JacobiCoeffs((mpf("0.5"),) * 4, (mpf(0),) * 4)
    s = spectral.strip_jacobi(c)
    assert s.a == c.a[1:] and s.b == c.b[1:]


def test_strip_starts_at_second(unit_coeffs):
    s = spectral.strip_jacobi(unit_coeffs)
    assert s.b[0] == unit_coeffs.b[1] and s.a[0] == unit_coeffs.a[1]


def test_double_strip(unit_coeffs):
    twice = spectral.strip_jacobi(spectral.strip_jacobi(unit_coeffs))
    assert twice.a == unit_coeffs.a[2:] and twice.b == unit_coeffs.b[2:]


def test_strip_too_short():
    with pytest.raises(TooShort):
        spectral.strip_jacobi(JacobiCoeffs((1,), (0,)))


def test_moments_from_jacobi_low_orders(unit_coeffs):
    c = spectral.moments_from_jacobi(unit_coeffs, 1)
    assert c[0] == 1
    assert c[1] == unit_coeffs.b[0]


def test_jacobi_round_trip(unit_coeffs):
    back = spectral.moments_from_jacobi(unit_coeffs, 10)
    for k in range(11):
        assert abs(back[k] - mpf(1) / (k + 1)) < 1e-9


def test_moments_from_jacobi_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        spectral.moments_from_jacobi(JacobiCoeffs((1, 1), (0, 0)), 10)


def test_gauss_rule_integrates_polynomials(unit_coeffs):
    nodes, weights = spectral.gauss_rule(unit_coeffs)
    for k in range(2 * len(nodes)):
        val = ctx.fsum(w * x ** k for x, w in zip(nodes, weights))
        assert abs(val - mpf(1) / (k + 1)) < 1e-40


def test_stripped_m_function_equals_gauss_sum(unit_coeffs):
    nodes, weights = spectral.gauss_rule(unit_coeffs)
    z = ctx.mpc("0.3", "0.4")
    direct = ctx.fsum(w / (x - z) for x, w in zip(nodes, weights))
    assert abs(spectral.stripped_m_function(unit_coeffs, z) - direct) < 1e-40


@pytest.mark.parametrize("z", [2, 1j, -0.5 + 0.5j, 0.5 - 0.6j])
def test_stripping_residual_small(unit, z):
    assert spectral.stripping_residual(unit, z) <= 1e-9


def test_stripping_residual_conjugate_symmetric(unit):
    z = 0.3 + 0.8j
    a = spectral.stripping_residual(unit, z)
    b = spectral.stripping_residual(unit, z.conjugate())
    assert a == pytest.approx(b, abs=1e-40)


def test_stripping_residual_polynomial_weight():
    mu = RealMeasure(Interval(-1, 2), WeightSpec.polynomial([1, 0, 1]))
    rng = np.random.default_rng(3)
    coeffs = spectral.jacobi_from_measure(mu, 40)
    for _ in range(10):
        z = complex(rng.uniform(-2, 3), rng.choice([-1, 1]) * rng.uniform(0.5, 2))
        assert spectral.stripping_residual(mu, z, coeffs=coeffs) <= 1e-9


# Verblunsky coefficients

def test_lebesgue_alphas_vanish():
    mu = CircleMeasure(Arc.full_circle())
    al = spectral.verblunsky_from_moments([mu.moment(k) for k in range(9)], 8)
    assert max(abs(a) for a in al.alpha) < 1e-45


def test_cosine_alpha0(cosine):
    al = spectral.verblunsky_from_moments([cosine.moment(k) for k in range(9)], 8)
    assert abs(al.alpha[0] - mpf(1) / 2) < 1e-45


def test_symmetric_weight_real_alphas():
    mu = CircleMeasure(Arc(-1, 1), WeightSpec.cosine(mpf("0.5")))
    al = spectral.verblunsky_from_moments([mu.moment(k) for k in range(11)], 10)
    assert max(abs(ctx.im(a)) for a in al.alpha) < 1e-40
    assert all(abs(a) < 1 for a in al.alpha)


def test_verblunsky_moduli_below_one():
    mu = CircleMeasure(Arc(mpf("0.3"), mpf("1.3")))
    al = spectral.verblunsky_from_moments([mu.moment(k) for k in range(11)], 10)
    assert all(abs(a) < 1 for a in al.alpha)


def test_modulus_violation_guard():
    with pytest.raises(ModulusViolation):
        VerblunskyCoeffs((mpf(1),))


def test_opuc_orthogonality(cosine):
    al = spectral.verblunsky_from_moments([cosine.moment(k) for k in range(6)], 5)
    phi = spectral.opuc_from_verblunsky(al, 5)
    # <Phi_5, z**j> = int Phi_5(z) z**(-j) dmu = sum p_k c_{k-j}
    for j in range(5):
        val = ctx.fsum(p * cosine.moment(k - j) for k, p in enumerate(phi))
        assert abs(val) < 1e-40


def test_aleksandrov_flip_basics(cosine):
    assert spectral.aleksandrov_flip((0, 0, 0)).alpha == (0, 0, 0)
    al = spectral.verblunsky_from_moments([cosine.moment(k) for k in range(9)], 8)
    flipped = spectral.aleksandrov_flip(al)
    assert abs(flipped.alpha[0] + mpf(1) / 2) < 1e-45
    assert spectral.aleksandrov_flip(flipped).alpha == al.alpha
    assert all(abs(abs(x) - abs(y)) == 0 for x, y in zip(al.alpha, flipped.alpha))


def test_cmv_unitary_five_diagonal():
    al = [mpf("0.3"), ctx.mpc("0.1", "-0.4"), mpf("-0.2"), ctx.mpc(0, "0.5"), 0, 0, 0, 1]
    C = spectral.cmv_matrix(al, 8).matrix
    # a unimodular last coefficient closes the truncation into a unitary matrix
    assert ctx.mnorm(C * C.H - ctx.eye(8), 1) < 1e-45
    for i in range(8):
        for j in range(8):
            if abs(i - j) > 2:
                assert C[i, j] == 0


def test_lebesgue_moments_from_zero_alphas():
    c = spectral.moments_from_verblunsky([0] * 6, 6)
    assert c[0] == 1 and all(x == 0 for x in c[1:])


def test_verblunsky_round_trip(cosine):
    mom = [cosine.moment(k) for k in range(11)]
    back = spectral.moments_from_verblunsky(spectral.verblunsky_from_moments(mom, 10), 10)
    assert max(abs(x - y) for x, y in zip(mom, back)) <= 1e-9


def test_verblunsky_round_trip_on_arc():
    mu = CircleMeasure(Arc(mpf("0.3"), mpf("1.3")), WeightSpec.cosine(mpf("0.5")))
    mom = [mu.moment(k) / mu.mass for k in range(11)]
    back = spectral.moments_from_verblunsky(spectral.verblunsky_from_moments(mom, 10), 10)
    assert max(abs(x - y) for x, y in zip(mom, back)) <= 1e-9
    # c_{-k} = conj(c_k) holds for the reconstructed sequence as for the measure
    assert all(abs(mu.moment(-k) / mu.mass - ctx.conj(back[k])) <= 1e-9 for k in range(11))


def test_moments_from_verblunsky_guard():
    with pytest.raises(TruncationTooSmall):
        spectral.moments_from_verblunsky([0, 0], 5)


# reciprocal series

def test_reciprocal_lebesgue():
    assert spectral.reciprocal_F_check(CircleMeasure(Arc.full_circle()), 8) < 1e-45


def test_reciprocal_cosine(cosine):
    assert spectral.reciprocal_F_check(cosine, 8) <= 1e-9


def test_reciprocal_order_zero(cosine):
    assert spectral.reciprocal_F_check(cosine, 0) == 0.0


def test_reciprocal_order_guard(cosine):
    with pytest.raises(OrderExceeded):
        spectral.reciprocal_F_check(cosine, cosine.max_order + 1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9)), min_size=1,
                max_size=6))
def test_flip_round_trip_property(pairs):
    al = [ctx.mpc(x, y) for x, y in pairs if x * x + y * y < 0.81]
    if not al:
        return
    K = len(al)
    c = spectral.moments_from_verblunsky(al, K)
    back = spectral.verblunsky_from_moments(c, K)
    assert max(abs(x - y) for x, y in zip(al, back.alpha)) < 1e-30
    flipped = spectral.aleksandrov_flip(back)
    assert all(abs(abs(x) - abs(y)) < 1e-40 for x, y in zip(al, flipped.alpha))
