"""Sign-definite measures on intervals and arcs.

Every measure is discretised once by a Gauss-Legendre rule in extended
precision. Its moments are tabulated at construction and the Cauchy
(m-function) and Caratheodory transforms are evaluated by the same rule.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import (OrderExceeded, SignIndefinite, TooCloseToSupport,
                     UnsupportedWeight, ZeroArgument)
from .precision import ctx, is_mp, mpf

DEFAULT_ORDER = 200
DEFAULT_MAX_ORDER = 48
DEFAULT_CLEARANCE = 1e-8

__all__ = [
    "Interval", "Arc", "BranchCut", "WeightKind", "WeightSpec",
    "QuadratureRule", "RealMeasure", "CircleMeasure", "build_quadrature",
    "moment_real", "moment_circle", "m_function_real", "caratheodory",
    "m_function_circle", "sqrt_branch", "CauchyFactor", "CaratheodoryFactor",
    "DEFAULT_ORDER", "DEFAULT_MAX_ORDER", "DEFAULT_CLEARANCE",
]


# ---------------------------------------------------------------------------
# geometry

@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` of the real line."""

    lo: object
    hi: object

    def __post_init__(self):
        lo, hi = mpf(self.lo), mpf(self.hi)
        if not (ctx.isfinite(lo) and ctx.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if not lo < hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, x):
        return self.lo <= x <= self.hi

    def distance(self, z):
        """Euclidean distance from the complex point ``z`` to the interval."""
        z = ctx.mpc(z)
        x = min(max(z.real, self.lo), self.hi)
        return abs(z - x)

    def gap(self, other):
        """Signed gap to another interval (negative when interiors overlap)."""
        return max(self.lo, other.lo) - min(self.hi, other.hi)


@dataclass(frozen=True)
class Arc:
    """Arc ``{exp(i t) : alpha <= t <= beta}`` of the unit circle."""

    alpha: object
    beta: object

    def __post_init__(self):
        a, b = mpf(self.alpha), mpf(self.beta)
        length = b - a
        if not 0 < length <= 2 * ctx.pi + ctx.mpf(10) ** (-ctx.dps + 5):
            raise ValueError("arc must satisfy 0 < beta - alpha <= 2 pi")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def full_circle(cls, alpha=0):
        """The whole circle, ``[alpha, alpha + 2 pi]``, at working precision."""
        alpha = mpf(alpha)
        return cls(alpha, alpha + 2 * ctx.pi)

    @property
    def length(self):
        return self.beta - self.alpha

    @property
    def is_full(self):
        return self.length >= 2 * ctx.pi - ctx.mpf(10) ** (-ctx.dps + 5)

    def offset(self, theta):
        """Angle ``theta`` reduced into ``[alpha, alpha + 2 pi)``, minus alpha."""
        return ctx.fmod(mpf(theta) - self.alpha, 2 * ctx.pi) % (2 * ctx.pi)

    def contains_angle(self, theta):
        return self.offset(theta) <= self.length

    def distance(self, z):
        """Euclidean distance from the complex point ``z`` to the arc."""
        z = ctx.mpc(z)
        r = abs(z)
        if r == 0:
            return ctx.mpf(1)
        if self.is_full or self.contains_angle(ctx.arg(z)):
            return abs(r - 1)
        return min(abs(z - ctx.expjpi(self.alpha / ctx.pi)),
                   abs(z - ctx.expjpi(self.beta / ctx.pi)))

    def angular_gap(self, other):
        """Smallest angular distance between two arcs (0 if they meet)."""
        if self.interiors_overlap(other):
            return ctx.mpf(0)
        d1 = (other.alpha - self.beta) % (2 * ctx.pi)
        d2 = (self.alpha - other.beta) % (2 * ctx.pi)
        return min(d1, d2)

    def interiors_overlap(self, other):
        d = (other.alpha - self.alpha) % (2 * ctx.pi)
        return d < self.length or d + other.length > 2 * ctx.pi


@dataclass(frozen=True)
class BranchCut:
    """Branch of the square root with arguments taken in ``[t0, t0 + 2 pi)``."""

    t0: object

    def __post_init__(self):
        t0 = mpf(self.t0)
        if not ctx.isfinite(t0):
            raise ValueError("branch direction must be finite")
        object.__setattr__(self, "t0", t0)

    def reduce(self, theta):
        """Representative of ``theta`` in ``[t0, t0 + 2 pi)``."""
        return self.t0 + (mpf(theta) - self.t0) % (2 * ctx.pi)

    def arg(self, z):
        return self.reduce(ctx.arg(ctx.mpc(z)))


def sqrt_branch(z, branch):
    """Square root with the argument taken in ``[t0, t0 + 2 pi)``.

    Parameters
    ----------
    z : complex
        Nonzero argument. mpmath input gives mpmath output.
    branch : BranchCut or float
        Branch direction ``t0``.

    Returns
    -------
    complex
        ``|z|**0.5 * exp(i arg(z) / 2)``.
    """
    if not isinstance(branch, BranchCut):
        branch = BranchCut(branch)
    w = ctx.mpc(z)
    if w == 0:
        raise ZeroArgument("square root branch evaluated at 0")
    val = ctx.sqrt(abs(w)) * ctx.expj(branch.arg(w) / 2)
    return val if is_mp(z) else complex(val)


# ---------------------------------------------------------------------------
# weights and quadrature

class WeightKind(str, Enum):
    UNIFORM = "uniform"
    POLYNOMIAL = "polynomial"
    COSINE = "cosine"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightSpec:
    """Catalog weight with a sign.

    On an interval the density is ``w(x) dx``; on an arc it is
    ``w(theta) dtheta / (2 pi)``, so that the uniform weight on the full
    circle is a probability measure.

    Parameters
    ----------
    kind : WeightKind
        ``uniform`` (w = 1), ``polynomial`` (w = sum coeffs[k] x**k),
        ``cosine`` (w = 1 + amplitude cos theta) or ``custom`` (monotone
        cubic interpolation of a table).
    coeffs : tuple
        Polynomial coefficients, lowest degree first.
    amplitude : float
        Cosine amplitude, ``|amplitude| <= 1``.
    table : tuple of (x, w) pairs
        Tabulated nonnegative weight for ``custom``.
    sign : {1, -1}
    """

    kind: WeightKind = WeightKind.UNIFORM
    coeffs: tuple = ()
    amplitude: float = 0.0
    table: tuple = ()
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", WeightKind(self.kind))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind is WeightKind.POLYNOMIAL and not self.coeffs:
            raise UnsupportedWeight("polynomial weight needs coefficients")
        if self.kind is WeightKind.COSINE and abs(float(self.amplitude)) > 1:
            raise UnsupportedWeight("cosine amplitude must satisfy |a| <= 1")
        if self.kind is WeightKind.CUSTOM:
            tab = tuple((float(x), float(w)) for x, w in self.table)
            if len(tab) < 2:
                raise UnsupportedWeight("custom weight needs at least two samples")
            xs = [x for x, _ in tab]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise UnsupportedWeight("custom weight abscissae must increase")
            if any(w < 0 for _, w in tab):
                raise UnsupportedWeight("custom weight values must be nonnegative")
            object.__setattr__(self, "table", tab)

    @classmethod
    def uniform(cls, sign=1):
        return cls(WeightKind.UNIFORM, sign=sign)

    @classmethod
    def polynomial(cls, coeffs, sign=1):
        return cls(WeightKind.POLYNOMIAL, coeffs=tuple(coeffs), sign=sign)

    @classmethod
    def cosine(cls, amplitude, sign=1):
        return cls(WeightKind.COSINE, amplitude=amplitude, sign=sign)

    @classmethod
    def custom(cls, xs, ws, sign=1):
        return cls(WeightKind.CUSTOM, table=tuple(zip(xs, ws)), sign=sign)

    def magnitude(self, x):
        """Unsigned weight value at ``x`` (a real or an angle)."""
        if self.kind is WeightKind.UNIFORM:
            return ctx.mpf(1)
        if self.kind is WeightKind.POLYNOMIAL:
            return ctx.polyval([mpf(c) for c in reversed(self.coeffs)], x)
        if self.kind is WeightKind.COSINE:
            return 1 + mpf(self.amplitude) * ctx.cos(x)
        return ctx.mpf(float(_pchip(self.table)(float(x))))


@lru_cache(maxsize=64)
def _pchip(table):
    from scipy.interpolate import PchipInterpolator

    xs, ws = zip(*table)
    return PchipInterpolator(np.array(xs), np.array(ws), extrapolate=True)


@lru_cache(maxsize=32)
def _gauss_legendre(order, dps):
    """Gauss-Legendre nodes and weights on [-1, 1] at ``dps`` digits.

    Double-precision nodes from numpy are polished by Newton steps on the
    Legendre three-term recurrence.
    """
    with ctx.workdps(dps + 10):
        if order == 1:
            return (ctx.mpf(0),), (ctx.mpf(2),)
        guess, _ = np.polynomial.legendre.leggauss(order)
        half = (order + 1) // 2
        nodes, weights = [], []
        # each Newton step doubles the ~15 correct digits of the guess
        steps = max(1, math.ceil(math.log2((dps + 10) / 14.0)))
        for x0 in guess[order - half:]:
            x = ctx.mpf(float(x0))
            for _ in range(steps):
                p, dp = _legendre_and_derivative(order, x)
                x -= p / dp
            _, dp = _legendre_and_derivative(order, x)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
        # nodes are ascending and nonnegative; mirror them
        mirror = len(nodes) - (1 if order % 2 else 0)
        all_nodes = [-x for x in reversed(nodes[len(nodes) - mirror:])] + nodes
        all_weights = list(reversed(weights[len(weights) - mirror:])) + weights
        if order % 2:
            all_nodes[half - 1] = ctx.mpf(0)
    return tuple(+x for x in all_nodes), tuple(+w for w in all_weights)


def _legendre_and_derivative(n, x):
    p0, p1 = ctx.mpf(1), x
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1, n * (x * p1 - p0) / (x * x - 1)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights with the (unsigned) weight folded in.

    ``nodes`` are abscissae on an interval or angles on an arc. Both tuples
    hold working-precision reals; :meth:`as_arrays` gives float copies.
    """

    order: int
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        if self.order < 1 or len(self.nodes) != self.order or len(self.weights) != self.order:
            raise ValueError("quadrature rule size does not match its order")
        if any(w < 0 for w in self.weights):
            raise ValueError("quadrature weights must be nonnegative")

    def as_arrays(self):
        return (np.array([float(x) for x in self.nodes]),
                np.array([float(w) for w in self.weights]))

    def integrate(self, f):
        """Apply the rule to a function of the node parameter."""
        return ctx.fdot(self.weights, [f(x) for x in self.nodes])


def build_quadrature(support, weight, order=DEFAULT_ORDER):
    """Gauss-Legendre rule mapped to an interval or arc, weight folded in.

    Parameters
    ----------
    support : Interval or Arc
    weight : WeightSpec
    order : int
        Number of nodes; the rule is exact for polynomial integrands of
        degree ``2 * order - 1`` times the weight.

    Returns
    -------
    QuadratureRule
    """
    order = int(order)
    if order < 1:
        raise ValueError("quadrature order must be positive")
    if weight.kind is WeightKind.CUSTOM and len(weight.table) < order:
        raise UnsupportedWeight(
            f"custom tabulation has {len(weight.table)} samples, fewer than order {order}")
    x, w = _gauss_legendre(order, ctx.dps)
    if isinstance(support, Arc):
        lo, hi, scale = support.alpha, support.beta, 1 / (2 * ctx.pi)
    else:
        lo, hi, scale = support.lo, support.hi, ctx.mpf(1)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    nodes = tuple(mid + half * t for t in x)
    vals = [weight.magnitude(t) for t in nodes]
    if any(v < 0 for v in vals) or all(v == 0 for v in vals):
        raise UnsupportedWeight("weight is not sign-definite on its support")
    weights = tuple(half * wi * v * scale for wi, v in zip(w, vals))
    return QuadratureRule(order, nodes, weights)


# ---------------------------------------------------------------------------
# measures

def _check_sign(masses):
    pos = any(m > 0 for m in masses)
    neg = any(m < 0 for m in masses)
    if pos and neg:
        raise SignIndefinite("measure changes sign on its support")
    if not (pos or neg):
        raise SignIndefinite("measure has zero mass")
    return 1 if pos else -1


@dataclass(frozen=True, eq=False)
class RealMeasure:
    """Sign-definite measure ``sign * w(x) * extra(x) dx`` on an interval.

    Parameters
    ----------
    support : Interval
    weight : WeightSpec, optional
        Uniform by default.
    quad : QuadratureRule, optional
        Built from ``support`` and ``weight`` with ``order`` nodes if absent.
    extra_factor : callable, optional
        Real function multiplying the weight (bracket measures).
    order : int
        Quadrature order used when ``quad`` is not given.
    max_order : int
        Moments ``0..max_order`` are tabulated eagerly.
    lazy : bool
        Whether moments past the table are computed on demand.
    """

    support: Interval
    weight: WeightSpec = WeightSpec()
    quad: QuadratureRule = None
    extra_factor: object = None
    order: int = DEFAULT_ORDER
    max_order: int = DEFAULT_MAX_ORDER
    lazy: bool = True
    masses: tuple = field(init=False, repr=False)
    moments: tuple = field(init=False, repr=False)
    dps: int = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.support, Interval):
            object.__setattr__(self, "support", Interval(*self.support))
        if self.quad is None:
            object.__setattr__(self, "quad",
                               build_quadrature(self.support, self.weight, self.order))
        object.__setattr__(self, "dps", ctx.dps)
        nodes = self.quad.nodes
        masses = [self.weight.sign * w for w in self.quad.weights]
        if self.extra_factor is not None:
            fac = _factor_values(self.extra_factor, nodes, circle=False)
            masses = [m * f for m, f in zip(masses, fac)]
        self.__dict__["_sign"] = _check_sign(masses)
        object.__setattr__(self, "masses", tuple(masses))
        object.__setattr__(self, "moments", self._moment_range(0, self.max_order))

    @property
    def sign(self):
        """Sign of the measure (+1 or -1)."""
        return self.__dict__["_sign"]

    @property
    def nodes(self):
        return self.quad.nodes

    @property
    def mass(self):
        return self.moments[0]

    def _moment_range(self, k0, k1):
        out = []
        pw = [m * x ** k0 for m, x in zip(self.masses, self.nodes)]
        for _ in range(k0, k1 + 1):
            out.append(ctx.fsum(pw))
            pw = [p * x for p, x in zip(pw, self.nodes)]
        return tuple(out)

    def moment(self, k):
        """``int x**k dmu`` at working precision."""
        k = int(k)
        if k < 0:
            raise ValueError("real-line moments need k >= 0")
        if k <= self.max_order:
            return self.moments[k]
        if not self.lazy:
            raise OrderExceeded(f"moment {k} beyond table order {self.max_order}")
        return ctx.fdot(self.masses, [x ** k for x in self.nodes])

    def cauchy(self, z, j=0):
        """``int t**j dmu(t) / (t - z)`` at working precision (no clearance check)."""
        if j:
            return ctx.fdot(self.masses, [x ** j / (x - z) for x in self.nodes])
        return ctx.fdot(self.masses, [1 / (x - z) for x in self.nodes])

    def integrate(self, f):
        """``int f dmu`` by the measure's quadrature."""
        return ctx.fdot(self.masses, [f(x) for x in self.nodes])

    def abs_integrate(self, f):
        """``int |f| d|mu|``."""
        return ctx.fdot([abs(m) for m in self.masses], [abs(f(x)) for x in self.nodes])


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    """Sign-definite measure ``sign * w(theta) * extra(z) dtheta / (2 pi)`` on an arc.

    Moments ``c_k = int z**k dmu`` are tabulated for integer and half-integer
    ``k`` with ``|k| <= max_order``; half-integer powers use ``branch``.

    Parameters
    ----------
    support : Arc
    weight : WeightSpec, optional
    quad : QuadratureRule, optional
    extra_factor : callable, optional
        Function of ``z`` that is real on the arc. If it has an ``at_angle``
        method that is used on the quadrature nodes instead.
    branch : BranchCut, optional
        Defaults to the middle of the complement of the arc.
    """

    support: Arc
    weight: WeightSpec = WeightSpec()
    quad: QuadratureRule = None
    extra_factor: object = None
    branch: BranchCut = None
    order: int = DEFAULT_ORDER
    max_order: int = DEFAULT_MAX_ORDER
    lazy: bool = True
    masses: tuple = field(init=False, repr=False)
    points: tuple = field(init=False, repr=False)
    dps: int = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.support, Arc):
            object.__setattr__(self, "support", Arc(*self.support))
        if self.branch is None:
            object.__setattr__(self, "branch", default_branch([self.support]))
        elif not isinstance(self.branch, BranchCut):
            object.__setattr__(self, "branch", BranchCut(self.branch))
        if self.quad is None:
            object.__setattr__(self, "quad",
                               build_quadrature(self.support, self.weight, self.order))
        object.__setattr__(self, "dps", ctx.dps)
        thetas = self.quad.nodes
        masses = [self.weight.sign * w for w in self.quad.weights]
        if self.extra_factor is not None:
            fac = _factor_values(self.extra_factor, thetas, circle=True)
            masses = [m * f for m, f in zip(masses, fac)]
        self.__dict__["_sign"] = _check_sign(masses)
        object.__setattr__(self, "masses", tuple(masses))
        object.__setattr__(self, "points", tuple(ctx.expj(t) for t in thetas))
        self.__dict__["_cos_sin"] = (tuple(ctx.cos(t) for t in thetas),
                                     tuple(ctx.sin(t) for t in thetas))
        half = tuple(ctx.expj(self.branch.reduce(t) / 2) for t in thetas)
        self.__dict__["_half_points"] = half
        self.__dict__["_table"] = self._half_range(2 * self.max_order)

    @property
    def sign(self):
        return self.__dict__["_sign"]

    @property
    def nodes(self):
        return self.quad.nodes

    @property
    def mass(self):
        return self.__dict__["_table"][0].real

    @property
    def half_points(self):
        """``z**(1/2)`` at the nodes, on the measure's branch."""
        return self.__dict__["_half_points"]

    def _half_range(self, hmax):
        out = []
        pw = [ctx.mpc(m) for m in self.masses]
        s = self.__dict__["_half_points"]
        for _ in range(hmax + 1):
            out.append(ctx.fsum(pw))
            pw = [p * si for p, si in zip(pw, s)]
        return tuple(out)

    def moment_half(self, h):
        """``int z**(h/2) dmu`` for an integer ``h`` (doubled exponent)."""
        h = int(h)
        table = self.__dict__["_table"]
        if abs(h) < len(table):
            val = table[abs(h)]
        elif not self.lazy:
            raise OrderExceeded(f"moment {h}/2 beyond table order {self.max_order}")
        else:
            s = self.__dict__["_half_points"]
            val = ctx.fdot(self.masses, [si ** abs(h) for si in s])
        return val if h >= 0 else ctx.conj(val)

    def moment(self, k):
        """``int z**k dmu`` for integer ``k``."""
        return self.moment_half(2 * int(k))

    def caratheodory(self, z):
        """``int (w + z) / (w - z) dmu(w)`` at working precision."""
        return ctx.fdot(self.masses, [(w + z) / (w - z) for w in self.points])

    def icaratheodory_at_angle(self, theta):
        """``i F(exp(i theta))`` as a real number, for ``theta`` off the arc.

        On the circle ``(w + z) / (w - z) = -i cot((arg w - arg z) / 2)``.
        """
        c, s = ctx.cos(theta), ctx.sin(theta)
        wc, ws = self.__dict__["_cos_sin"]
        # with d = arg w - theta, cot(d / 2) = sin d / (1 - cos d)
        vals = [(b * c - a * s) / (1 - a * c - b * s) for a, b in zip(wc, ws)]
        return ctx.fdot(self.masses, vals)

    def integrate(self, f):
        """``int f(z) dmu(z)`` by the measure's quadrature."""
        return ctx.fdot(self.masses, [f(z) for z in self.points])

    def abs_integrate(self, f):
        return ctx.fdot([abs(m) for m in self.masses], [abs(f(z)) for z in self.points])


def default_branch(arcs):
    """Branch direction in the middle of the largest gap left by ``arcs``."""
    two_pi = 2 * ctx.pi
    if len(arcs) == 1:
        a = arcs[0]
        if a.is_full:
            return BranchCut(a.alpha)
        return BranchCut(a.beta + (two_pi - a.length) / 2)
    segs = sorted(((a.alpha % two_pi), (a.alpha % two_pi) + a.length) for a in arcs)
    # merge the covered pieces on [s0, s0 + 2 pi)
    s0 = segs[0][0]
    merged = []
    for lo, hi in segs:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    best, best_len = None, ctx.mpf(0)
    for i, (lo, hi) in enumerate(merged):
        nxt = merged[i + 1][0] if i + 1 < len(merged) else s0 + two_pi
        if nxt - hi > best_len:
            best, best_len = hi + (nxt - hi) / 2, nxt - hi
    if best is None:
        raise ValueError("arcs cover the whole circle; no branch direction is available")
    return BranchCut(best)


# ---------------------------------------------------------------------------
# transform factors used by brackets

class CauchyFactor:
    """Callable ``x -> m_mu(x) = int dmu(t) / (t - x)`` for a real measure."""

    def __init__(self, mu):
        self.mu = mu

    def __call__(self, x):
        return self.mu.cauchy(x)

    def __repr__(self):
        return f"CauchyFactor({self.mu.support})"


class CaratheodoryFactor:
    """Callable ``z -> i F_mu(z)``, real on the circle off the support."""

    def __init__(self, mu, reciprocal=False):
        self.mu = mu
        self.reciprocal = reciprocal

    def __call__(self, z):
        val = 1j * self.mu.caratheodory(z)
        return 1 / val if self.reciprocal else val

    def at_angle(self, theta):
        val = self.mu.icaratheodory_at_angle(theta)
        return 1 / val if self.reciprocal else val

    def __repr__(self):
        kind = "1/(iF)" if self.reciprocal else "iF"
        return f"CaratheodoryFactor({kind}, {self.mu.support})"


REALNESS_TOL = 1e-10


def _factor_values(f, nodes, circle):
    from .errors import NonRealFactor

    if circle and hasattr(f, "at_angle"):
        return [f.at_angle(t) for t in nodes]
    args = [ctx.expj(t) for t in nodes] if circle else nodes
    out = []
    for x in args:
        v = f(x)
        if isinstance(v, (complex, ctx.mpc)):
            v = ctx.mpc(v)
            if abs(v.imag) > REALNESS_TOL * max(1, abs(v.real)):
                raise NonRealFactor(f"factor has imaginary part {float(v.imag):.3g}")
            v = v.real
        out.append(ctx.mpf(v))
    return out


# ---------------------------------------------------------------------------
# public scalar operations

def moment_real(mu, k):
    """Moment ``int x**k dmu(x)`` of a real-line measure.

    Parameters
    ----------
    mu : RealMeasure
    k : int
        Nonnegative order.

    Returns
    -------
    float

    Examples
    --------
    >>> moment_real(RealMeasure(Interval(0, 1)), 3)
    0.25
    """
    return float(mu.moment(k))


def moment_circle(mu, k):
    """Moment ``int z**k dmu(z)`` of a circle measure, as a Python complex."""
    return complex(mu.moment(k))


def _clear(support, z, clearance):
    if support.distance(z) < clearance:
        raise TooCloseToSupport(f"point {complex(z)} within {clearance} of the support")


def m_function_real(mu, j, z, clearance=DEFAULT_CLEARANCE):
    """Weighted Cauchy transform ``int t**j dmu(t) / (t - z)``.

    ``j = 0`` gives the m-function of ``mu``.
    """
    z = ctx.mpc(z)
    _clear(mu.support, z, clearance)
    return complex(mu.cauchy(z, int(j)))


def caratheodory(mu, z, clearance=DEFAULT_CLEARANCE):
    """Caratheodory function ``int (w + z) / (w - z) dmu(w)``."""
    z = ctx.mpc(z)
    _clear(mu.support, z, clearance)
    return complex(mu.caratheodory(z))


def m_function_circle(mu, z, clearance=DEFAULT_CLEARANCE):
    """Circle m-function ``int dmu(w) / (z - w)``.

    Evaluated as ``(c0 - F(z)) / (2 z)``, with ``c0`` the total mass; for a
    probability measure this is ``(1 - F(z)) / (2 z)``.
    """
    z = ctx.mpc(z)
    if z == 0:
        raise ZeroArgument("circle m-function is evaluated at z != 0")
    _clear(mu.support, z, clearance)
    return complex((mu.mass - mu.caratheodory(z)) / (2 * z))
