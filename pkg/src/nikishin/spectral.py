"""Jacobi and Verblunsky coefficients at the level of moments.

Real line: monic recurrence ``x P_n = P_{n+1} + b_{n+1} P_n + a_n**2 P_{n-1}``
with coefficients indexed from one, so that ``b_1`` is the mean and ``a_1**2``
the variance of the normalised measure. Unit circle: Szego recursion
``Phi_{n+1}(z) = z Phi_n(z) - conj(alpha_n) Phi_n^*(z)`` with moments
``c_k = int z**k dmu``.
"""

import math
from dataclasses import dataclass

from .errors import (LossOfPositivity, ModulusViolation, OrderExceeded,
                     TooCloseToSupport, TooShort, TruncationTooSmall)
from .measure_core import DEFAULT_CLEARANCE
from .precision import ctx

__all__ = [
    "JacobiCoeffs", "VerblunskyCoeffs", "OperatorTruncation",
    "jacobi_from_moments", "jacobi_from_measure", "strip_jacobi",
    "jacobi_matrix", "moments_from_jacobi", "gauss_rule", "stripped_m_function",
    "stripping_residual", "verblunsky_from_moments", "aleksandrov_flip",
    "cmv_matrix", "moments_from_verblunsky", "opuc_from_verblunsky",
    "reciprocal_F_check",
]


@dataclass(frozen=True)
class JacobiCoeffs:
    """Recurrence coefficients ``a = (a_1, ..., a_N)`` and ``b = (b_1, ..., b_N)``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(ctx.mpf(x) for x in self.a)
        b = tuple(ctx.mpf(x) for x in self.b)
        if len(a) != len(b):
            raise ValueError("a and b must have the same length")
        if any(x <= 0 for x in a):
            raise LossOfPositivity("Jacobi off-diagonal coefficients must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def count(self):
        return len(self.a)


@dataclass(frozen=True)
class VerblunskyCoeffs:
    """Coefficients ``alpha_0, ..., alpha_{N-1}`` of modulus below one."""

    alpha: tuple

    def __post_init__(self):
        al = tuple(ctx.mpc(x) for x in self.alpha)
        for n, x in enumerate(al):
            if abs(x) >= 1:
                raise ModulusViolation(f"|alpha_{n}| = {float(abs(x))} >= 1")
        object.__setattr__(self, "alpha", al)

    @property
    def count(self):
        return len(self.alpha)


@dataclass(frozen=True)
class OperatorTruncation:
    """Leading ``size x size`` block of a Jacobi or CMV operator."""

    size: int
    matrix: object


# ---------------------------------------------------------------------------
# real line

def jacobi_from_moments(moments, N):
    """First ``N`` coefficient pairs from moments ``c_0, ..., c_{2N}``.

    Uses the modified Chebyshev recursion on the moment functional, so only
    inner products of moments enter. The measure is normalised by ``c_0``.

    Raises
    ------
    LossOfPositivity
        If some ``a_n**2`` comes out non-positive (moments too noisy for
        the requested depth).
    """
    N = int(N)
    mom = [ctx.mpf(m) for m in moments]
    if len(mom) < 2 * N + 1:
        raise OrderExceeded(f"need moments up to order {2 * N}, got {len(mom) - 1}")
    c0 = mom[0]
    mom = [m / c0 for m in mom]
    # sig[l] holds <P_k, x**l>; prev holds <P_{k-1}, x**l>
    prev = [ctx.mpf(0)] * (2 * N + 1)
    sig = mom[:]
    alpha = [sig[1] / sig[0]]
    beta = [sig[0]]
    for k in range(1, N + 1):
        new = [ctx.mpf(0)] * (2 * N + 1)
        for l in range(k, 2 * N - k + 1):
            new[l] = sig[l + 1] - alpha[k - 1] * sig[l] - beta[k - 1] * prev[l]
        if new[k] <= 0:
            raise LossOfPositivity(f"a_{k}**2 = {float(new[k] / sig[k - 1]):.3g} <= 0")
        beta.append(new[k] / sig[k - 1])
        if k < N:
            alpha.append(new[k + 1] / new[k] - sig[k] / sig[k - 1])
        prev, sig = sig, new
    return JacobiCoeffs(tuple(ctx.sqrt(x) for x in beta[1:]), tuple(alpha))


def jacobi_from_measure(mu, N):
    """First ``N`` coefficient pairs of ``mu / mass`` by the Stieltjes procedure.

    Works directly on the quadrature discretisation of ``mu``, which is
    better conditioned than going through monomial moments.
    """
    N = int(N)
    x = list(mu.nodes)
    w = [m / mu.mass for m in mu.masses]
    if N >= len(x):
        raise TooShort("depth exceeds the number of quadrature nodes")
    p_prev = [ctx.mpf(0)] * len(x)
    p = [ctx.mpf(1)] * len(x)
    norm_prev = None
    a, b = [], []
    for k in range(N + 1):
        wp = [wi * pi for wi, pi in zip(w, p)]
        norm = ctx.fdot(wp, p)
        if norm <= 0:
            raise LossOfPositivity(f"norm of P_{k} is not positive")
        if k > 0:
            a.append(ctx.sqrt(norm / norm_prev))
        if k == N:
            break
        alpha = ctx.fdot(wp, [xi * pi for xi, pi in zip(x, p)]) / norm
        b.append(alpha)
        beta = norm / norm_prev if k > 0 else ctx.mpf(0)
        p, p_prev = [(xi - alpha) * pi - beta * qi
                     for xi, pi, qi in zip(x, p, p_prev)], p
        norm_prev = norm
    return JacobiCoeffs(tuple(a), tuple(b))


def strip_jacobi(coeffs):
    """Drop ``(a_1, b_1)``: coefficients of the once-stripped measure."""
    if coeffs.count < 2:
        raise TooShort("stripping needs at least two coefficient pairs")
    return JacobiCoeffs(coeffs.a[1:], coeffs.b[1:])


def jacobi_matrix(coeffs, size=None):
    """Truncated tridiagonal matrix with ``b`` on the diagonal and ``a`` beside it."""
    size = coeffs.count if size is None else int(size)
    if size > coeffs.count or size < 1:
        raise TruncationTooSmall(f"cannot form a {size} x {size} truncation")
    J = ctx.zeros(size, size)
    for i in range(size):
        J[i, i] = coeffs.b[i]
        if i + 1 < size:
            J[i, i + 1] = J[i + 1, i] = coeffs.a[i]
    return OperatorTruncation(size, J)


def moments_from_jacobi(coeffs, K):
    """Moments ``c_0..c_K`` of the normalised measure as ``(J**k)[0, 0]``.

    Only truncations of size ``K // 2 + 1`` are needed for exactness.
    """
    K = int(K)
    size = K // 2 + 1
    if coeffs.count < size:
        raise TruncationTooSmall(f"need {size} coefficient pairs for order {K}")
    J = jacobi_matrix(coeffs, size).matrix
    v = ctx.zeros(size, 1)
    v[0] = 1
    out = []
    for _ in range(K + 1):
        out.append(v[0])
        v = J * v
    return out


def gauss_rule(coeffs):
    """Nodes and weights of the eigen-measure of the full truncation."""
    J = jacobi_matrix(coeffs).matrix
    E, Q = ctx.eigsy(J)
    order = sorted(range(coeffs.count), key=lambda i: E[i])
    return [E[i] for i in order], [Q[0, i] ** 2 for i in order]


def stripped_m_function(coeffs, z):
    """m-function of the spectral measure of the finite Jacobi matrix of ``coeffs``.

    Evaluated as the terminating continued fraction
    ``1 / (b_1 - z - a_1**2 / (b_2 - z - ...))``, which equals the Gauss rule
    sum ``sum w_i / (x_i - z)`` without the eigendecomposition.
    """
    z = ctx.mpc(z)
    a, b = coeffs.a, coeffs.b
    n = len(b)
    tail = 1 / (b[n - 1] - z)
    for i in range(n - 2, -1, -1):
        tail = 1 / (b[i] - z - a[i] ** 2 * tail)
    return tail


def stripping_residual(mu, z, depth=40, clearance=DEFAULT_CLEARANCE, coeffs=None):
    """Defect of ``1 / m(z) = b_1 - z - a_1**2 m_1(z)`` for the normalised measure.

    ``m`` is the m-function of ``mu / mass`` by quadrature and ``m_1`` that
    of the once-stripped measure, evaluated from its Jacobi coefficients.

    Returns
    -------
    float
    """
    z = ctx.mpc(z)
    if mu.support.distance(z) < clearance:
        raise TooCloseToSupport(f"point {complex(z)} too close to the support")
    if coeffs is None:
        coeffs = jacobi_from_measure(mu, depth)
    m = mu.cauchy(z) / mu.mass
    m1 = stripped_m_function(strip_jacobi(coeffs), z)
    return float(abs(1 / m - (coeffs.b[0] - z - coeffs.a[0] ** 2 * m1)))


# ---------------------------------------------------------------------------
# unit circle

def _conj_rev(p):
    return [ctx.conj(c) for c in reversed(p)]


def verblunsky_from_moments(moments, N):
    """``alpha_0..alpha_{N-1}`` from ``c_0..c_N`` by the Szego recursion.

    ``conj(alpha_n) = int z Phi_n dmu / int Phi_n^* dmu``, which makes
    ``Phi_{n+1}`` orthogonal to the constants.
    """
    N = int(N)
    c = [ctx.mpc(x) for x in moments]
    if len(c) < N + 1:
        raise OrderExceeded(f"need moments up to order {N}")
    phi = [ctx.mpc(1)]
    alphas = []
    for n in range(N):
        star = _conj_rev(phi)
        num = ctx.fsum(p * c[k + 1] for k, p in enumerate(phi))
        den = ctx.fsum(p * c[k] for k, p in enumerate(star))
        abar = num / den
        alpha = ctx.conj(abar)
        if abs(alpha) >= 1:
            raise ModulusViolation(f"|alpha_{n}| = {float(abs(alpha))} >= 1")
        alphas.append(alpha)
        phi = [ctx.mpc(0)] + phi
        phi = [p - abar * s for p, s in zip(phi, star + [ctx.mpc(0)])]
    return VerblunskyCoeffs(tuple(alphas))


def opuc_from_verblunsky(alphas, n):
    """Coefficients (lowest first) of the monic ``Phi_n``."""
    al = alphas.alpha if isinstance(alphas, VerblunskyCoeffs) else tuple(alphas)
    phi = [ctx.mpc(1)]
    for k in range(int(n)):
        star = _conj_rev(phi)
        phi = [ctx.mpc(0)] + phi
        phi = [p - ctx.conj(al[k]) * s for p, s in zip(phi, star + [ctx.mpc(0)])]
    return phi


def aleksandrov_flip(alphas):
    """``alpha_n -> -alpha_n``: coefficients of the measure with ``F = 1 / F_mu``."""
    al = alphas.alpha if isinstance(alphas, VerblunskyCoeffs) else tuple(alphas)
    return VerblunskyCoeffs(tuple(-x for x in al))


def cmv_matrix(alphas, size):
    """Truncated CMV matrix ``L M`` built from ``Theta_j = [[conj a, rho], [rho, -a]]``.

    Coefficients past the given ones are taken as zero.
    """
    al = list(alphas.alpha if isinstance(alphas, VerblunskyCoeffs) else alphas)
    size = int(size)
    al += [ctx.mpc(0)] * max(0, size - len(al))

    # L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ...
    L = ctx.zeros(size, size)
    M = ctx.zeros(size, size)
    M[0, 0] = 1
    for j in range(0, size, 2):
        _put_theta(L, j, al[j], size)
    for j in range(1, size, 2):
        _put_theta(M, j, al[j], size)
    return OperatorTruncation(size, L * M)


def _put_theta(A, j, a, size):
    a = ctx.mpc(a)
    rho = ctx.sqrt(1 - abs(a) ** 2)
    A[j, j] = ctx.conj(a)
    if j + 1 < size:
        A[j, j + 1] = rho
        A[j + 1, j] = rho
        A[j + 1, j + 1] = -a


def moments_from_verblunsky(alphas, K):
    """Moments ``c_0..c_K`` of the probability measure as ``(C**k)[0, 0]``.

    ``c_k`` depends only on ``alpha_0..alpha_{k-1}``, so ``K`` coefficients
    suffice; the CMV truncation is padded to size ``2K + 2``.
    """
    al = alphas.alpha if isinstance(alphas, VerblunskyCoeffs) else tuple(alphas)
    K = int(K)
    if len(al) < K:
        raise TruncationTooSmall(f"need {K} Verblunsky coefficients for order {K}")
    size = 2 * K + 2
    C = cmv_matrix(al, size).matrix
    v = ctx.zeros(size, 1)
    v[0] = 1
    out = []
    for _ in range(K + 1):
        out.append(ctx.mpc(v[0]))
        v = C * v
    return out


def reciprocal_F_check(mu, order):
    """Largest coefficient of ``F_mu * F_flip - 1`` through ``z**order``.

    ``F_mu = 1 + 2 sum c_{-k} z**k`` for the normalised measure; ``F_flip``
    is the same series for the measure with Verblunsky coefficients
    ``-alpha_n``.
    """
    order = int(order)
    if order > mu.max_order:
        raise OrderExceeded(f"order {order} beyond table order {mu.max_order}")
    if order == 0:
        return 0.0
    c = [mu.moment(k) / mu.mass for k in range(order + 1)]
    f = [ctx.mpc(1)] + [2 * ctx.conj(ck) for ck in c[1:]]
    flipped = aleksandrov_flip(verblunsky_from_moments(c, order))
    d = moments_from_verblunsky(flipped, order)
    g = [ctx.mpc(1)] + [2 * ctx.conj(dk) for dk in d[1:]]
    dev = 0
    for n in range(order + 1):
        s = ctx.fsum(f[i] * g[n - i] for i in range(n + 1)) - (1 if n == 0 else 0)
        dev = max(dev, abs(s))
    return float(dev)
