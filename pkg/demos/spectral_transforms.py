"""Jacobi and Verblunsky coefficients behind the measure exchange.

On the real line a Nikishin pair is reordered by stripping the first row of
a Jacobi matrix; on the circle by negating the Verblunsky coefficients,
which inverts the Caratheodory function.

Run with ``python3 demos/spectral_transforms.py``.
"""

import numpy as np

from nikishin import Arc, CircleMeasure, Interval, RealMeasure, spectral
from nikishin.precision import ctx, mpf

# uniform measure on [0, 1]: b_n = 1/2, a_1**2 = 1/12
mu = RealMeasure(Interval(0, 1))
by_moments = spectral.jacobi_from_moments([mu.moment(k) for k in range(21)], 10)
by_stieltjes = spectral.jacobi_from_measure(mu, 10)
print("b:", [float(b) for b in by_stieltjes.b[:4]])
print("a**2:", [float(a ** 2) for a in by_stieltjes.a[:4]])
gap = max(abs(x - y) for x, y in zip(by_moments.a + by_moments.b, by_stieltjes.a + by_stieltjes.b))
print(f"moment route vs Stieltjes route: {float(gap):.1e}")

# 1/m(z) = b_1 - z - a_1**2 m_1(z) away from the support
for z in [mpf(2), ctx.mpc(0.5, 0.5), mpf(-1)]:
    print(f"stripping defect at z = {complex(z)}: {spectral.stripping_residual(mu, z):.1e}")

# circle: the full-circle Lebesgue measure has all alpha_n = 0
nu = CircleMeasure(Arc(mpf(0), 2 * ctx.pi))
print("Lebesgue max |alpha_n|:", max(abs(complex(a)) for a in
                           spectral.verblunsky_from_moments([nu.moment(k) for k in range(5)], 4).alpha))

# an arc measure: alphas, their negation, and the series identity F * F_flip = 1
arc = CircleMeasure(Arc(mpf("0.3"), mpf("1.3")))
al = spectral.verblunsky_from_moments([arc.moment(k) / arc.mass for k in range(9)], 8)
print("|alpha_n| on the arc:", np.round([abs(complex(a)) for a in al.alpha], 4))
print(f"F * F_flip - 1 through z**8: {spectral.reciprocal_F_check(arc, 8):.1e}")

# a CMV truncation whose last coefficient is unimodular is unitary
alphas = list(al.alpha[:5]) + [ctx.mpc(1)]
C = spectral.cmv_matrix(alphas, 6).matrix
defect = ctx.mnorm(C.H * C - ctx.eye(6), 1)
print(f"CMV unitarity defect: {float(defect):.1e}")
