"""Nikishin systems on the real line and on the unit circle.

A system is generated by measures ``sigma_1, ..., sigma_r`` on supports with
pairwise disjoint consecutive interiors. Its measures are the nested
brackets ``mu_1 = sigma_1``, ``mu_2 = <sigma_1, sigma_2>``,
``mu_3 = <sigma_1, <sigma_2, sigma_3>>`` and so on, where on the real line
``<s1, s2> = m_{s2}(x) ds1(x)`` and on the circle ``<s1, s2> = i F_{s2}(z) ds1(z)``.
"""

from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import (BranchInsideSupport, FVanishes, NonIntegrable,
                     OverlappingSupports, WrongArity)
from .measure_core import (Arc, BranchCut, CaratheodoryFactor, CauchyFactor,
                           CircleMeasure, Interval, QuadratureRule, RealMeasure,
                           WeightSpec, default_branch)
from .precision import ctx

MIN_GAP = 1e-6
F_THRESHOLD = 1e-6

__all__ = [
    "SystemKind", "GeneratorChainRL", "GeneratorChainUC", "NikishinSystem",
    "FReport", "bracket_rl", "bracket_uc", "build_system",
    "check_F_nonvanishing", "flip_r2_rl", "flip_r2_uc",
]


class SystemKind(str, Enum):
    REAL_LINE = "real"
    CIRCLE = "circle"


def _check_intervals(a, b, touching_ok):
    gap = a.gap(b)
    if gap < 0:
        raise OverlappingSupports(f"[{a.lo}, {a.hi}] and [{b.lo}, {b.hi}] overlap")
    if gap < MIN_GAP and not touching_ok:
        raise NonIntegrable(
            f"supports are {float(gap):.3g} apart; pass touching_ok=True to allow this")


def _check_arcs(a, b, touching_ok):
    if a.interiors_overlap(b):
        raise OverlappingSupports("arcs have overlapping interiors")
    if a.angular_gap(b) < MIN_GAP and not touching_ok:
        raise NonIntegrable("arcs touch; pass touching_ok=True to allow this")


def bracket_rl(sigma1, sigma2, touching_ok=False):
    """The measure ``m_{sigma2}(x) dsigma1(x)``.

    Parameters
    ----------
    sigma1, sigma2 : RealMeasure
        Measures with disjoint supports.
    touching_ok : bool
        Allow supports closer than ``MIN_GAP``; the caller asserts that the
        bracket is still a finite measure.

    Returns
    -------
    RealMeasure
        Same support, weight and rule as ``sigma1``. Its sign is
        ``sigma1.sign * sigma2.sign`` when ``sigma1`` lies left of
        ``sigma2`` and the opposite otherwise.
    """
    _check_intervals(sigma1.support, sigma2.support, touching_ok)
    return _with_factor(sigma1, CauchyFactor(sigma2))


def bracket_uc(sigma1, sigma2, touching_ok=False):
    """The measure ``i F_{sigma2}(z) dsigma1(z)`` on the arc of ``sigma1``.

    Raises
    ------
    NonRealFactor
        If ``i F_{sigma2}`` is not real on the arc of ``sigma1``.
    """
    _check_arcs(sigma1.support, sigma2.support, touching_ok)
    return _with_factor(sigma1, CaratheodoryFactor(sigma2))


class _ProductFactor:
    def __init__(self, *factors):
        self.factors = factors

    def __call__(self, x):
        out = 1
        for f in self.factors:
            out = out * f(x)
        return out

    def at_angle(self, theta):
        out = 1
        for f in self.factors:
            out = out * (f.at_angle(theta) if hasattr(f, "at_angle") else f(ctx.expj(theta)))
        return out


def _with_factor(sigma, factor):
    if sigma.extra_factor is not None:
        factor = _ProductFactor(sigma.extra_factor, factor)
    return replace(sigma, extra_factor=factor)


@dataclass(frozen=True, eq=False)
class GeneratorChainRL:
    """Generating measures ``sigma_j`` on intervals ``Delta_j``."""

    sigmas: tuple
    touching_ok: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        if not self.sigmas:
            raise ValueError("a generator chain needs at least one measure")
        for s in self.sigmas:
            if not isinstance(s, RealMeasure):
                raise TypeError("real-line chains take RealMeasure generators")
        for a, b in zip(self.sigmas, self.sigmas[1:]):
            _check_intervals(a.support, b.support, self.touching_ok)

    @property
    def intervals(self):
        return tuple(s.support for s in self.sigmas)


@dataclass(frozen=True, eq=False)
class GeneratorChainUC:
    """Generating measures ``sigma_j`` on arcs ``Gamma_j`` with a common branch.

    The branch defaults to the middle of the largest gap left by the arcs;
    all generators are re-based on it.
    """

    sigmas: tuple
    branch: BranchCut = None
    touching_ok: bool = False

    def __post_init__(self):
        sigmas = tuple(self.sigmas)
        if not sigmas:
            raise ValueError("a generator chain needs at least one measure")
        for s in sigmas:
            if not isinstance(s, CircleMeasure):
                raise TypeError("circle chains take CircleMeasure generators")
        for a, b in zip(sigmas, sigmas[1:]):
            _check_arcs(a.support, b.support, self.touching_ok)
        arcs = [s.support for s in sigmas]
        branch = self.branch
        if branch is None:
            branch = default_branch(arcs)
        elif not isinstance(branch, BranchCut):
            branch = BranchCut(branch)
        for a in arcs:
            if not a.is_full and a.contains_angle(branch.t0):
                raise BranchInsideSupport(f"t0 = {float(branch.t0)} lies on an arc")
        sigmas = tuple(s if s.branch == branch else replace(s, branch=branch)
                       for s in sigmas)
        object.__setattr__(self, "sigmas", sigmas)
        object.__setattr__(self, "branch", branch)

    @property
    def arcs(self):
        return tuple(s.support for s in self.sigmas)


@dataclass(frozen=True, eq=False)
class NikishinSystem:
    """Measures ``mu_1..mu_r`` on the first support and their densities.

    Attributes
    ----------
    kind : SystemKind
    generators : GeneratorChainRL or GeneratorChainUC
    mus : tuple of RealMeasure or CircleMeasure
    rn_chain : tuple of callables
        ``rn_chain[j - 1]`` is ``d mu_j / d sigma_1``; the first is the
        constant 1. On the circle they are functions of ``z``.
    tails : tuple
        ``tails[j - 2]`` is the nested measure ``<sigma_2, <..., sigma_j>>``
        whose transform gives ``rn_chain[j - 1]``.
    """

    kind: SystemKind
    generators: object
    mus: tuple
    rn_chain: tuple
    tails: tuple = ()
    dps: int = field(default_factory=lambda: ctx.dps)

    @property
    def r(self):
        return len(self.mus)

    @property
    def branch(self):
        return getattr(self.generators, "branch", None)

    @property
    def first_support(self):
        return self.mus[0].support

    def __repr__(self):
        sup = [s.support for s in self.generators.sigmas]
        return f"NikishinSystem({self.kind.value}, r={self.r}, supports={sup})"


class _One:
    def __call__(self, x):
        return ctx.mpf(1)

    def at_angle(self, theta):
        return ctx.mpf(1)

    def __repr__(self):
        return "1"


def build_system(chain):
    """Materialise the Nikishin system generated by ``chain``.

    Parameters
    ----------
    chain : GeneratorChainRL or GeneratorChainUC

    Returns
    -------
    NikishinSystem
        With ``mu_j = <sigma_1, T_j>`` where ``T_2 = sigma_2`` and
        ``T_j = <sigma_2, <sigma_3, ..., sigma_j>>``; all moment tables are
        computed here.
    """
    circle = isinstance(chain, GeneratorChainUC)
    bracket = bracket_uc if circle else bracket_rl
    factor = CaratheodoryFactor if circle else CauchyFactor
    s = chain.sigmas
    tails = []
    for j in range(2, len(s) + 1):
        inner = s[j - 1]
        for d in range(j - 2, 0, -1):
            inner = bracket(s[d], inner, chain.touching_ok)
        tails.append(inner)
    rn = (_One(),) + tuple(factor(t) for t in tails)
    mus = (s[0],) + tuple(bracket(s[0], t, chain.touching_ok) for t in tails)
    kind = SystemKind.CIRCLE if circle else SystemKind.REAL_LINE
    return NikishinSystem(kind, chain, mus, rn, tuple(tails), ctx.dps)


@dataclass(frozen=True)
class FReport:
    """Grid evaluation of ``|F_{sigma2}|`` on an arc."""

    min_abs: float
    nonvanishing: bool
    gridsize: int
    threshold: float = F_THRESHOLD


def check_F_nonvanishing(sigma2, gamma1, gridsize=200, threshold=F_THRESHOLD):
    """Minimum of ``|F_{sigma2}|`` on an equispaced grid of ``gamma1``.

    The grid includes both endpoints, so ``gridsize=2`` samples only those.
    """
    gridsize = int(gridsize)
    if gridsize < 2:
        raise ValueError("gridsize must be at least 2")
    if not isinstance(gamma1, Arc):
        gamma1 = Arc(*gamma1)
    step = gamma1.length / (gridsize - 1)
    vals = [abs(sigma2.icaratheodory_at_angle(gamma1.alpha + k * step))
            for k in range(gridsize)]
    m = float(min(vals))
    return FReport(m, m >= threshold, gridsize, threshold)


def flip_r2_rl(system, depth=40):
    """Swap the roles of the two measures of a real-line system with r = 2.

    Writing ``1 / m_{sigma2} = (b_1 - x - a_1**2 m_{sigma2^(1)}) / c`` with
    ``c`` the mass of ``sigma2`` and ``(a, b)`` the Jacobi coefficients of
    ``sigma2 / c``, the system ``(mu_2, mu_1)`` is, up to a polynomial
    perturbation of degree one, generated by ``mu_2`` and
    ``-a_1**2 sigma2^(1) / c``. The second generator is the Gauss rule of
    the stripped Jacobi matrix of size ``depth - 1``.

    Returns
    -------
    NikishinSystem
        Generated by ``(mu_2, -a_1**2 sigma2^(1) / c)``.
    """
    from .spectral import gauss_rule, jacobi_from_measure, strip_jacobi

    if system.r != 2:
        raise WrongArity("the flip needs exactly two measures")
    if system.kind is not SystemKind.REAL_LINE:
        raise WrongArity("flip_r2_rl needs a real-line system")
    sigma2 = system.generators.sigmas[1]
    coeffs = jacobi_from_measure(sigma2, depth)
    nodes, weights = gauss_rule(strip_jacobi(coeffs))
    scale = coeffs.a[0] ** 2 / abs(sigma2.mass)
    quad = QuadratureRule(len(nodes), tuple(nodes), tuple(scale * w for w in weights))
    sign = -1 if sigma2.sign > 0 else 1
    flipped = RealMeasure(sigma2.support, WeightSpec.uniform(sign), quad=quad,
                          max_order=sigma2.max_order)
    mu2 = system.mus[1]
    chain = GeneratorChainRL((mu2, flipped), system.generators.touching_ok)
    return build_system(chain)


def flip_r2_uc(system, gridsize=200):
    """Swap the two measures of a circle system with r = 2.

    Returns the system ``(mu_2, mu_1~)`` where ``d mu_1~ = -i / F_{sigma2} d mu_2``,
    which is the Nikishin system generated by ``mu_2`` and the measure whose
    Caratheodory function is ``1 / F_{sigma2}``. ``mu_1~`` coincides with
    ``mu_1``.

    Raises
    ------
    FVanishes
        If ``F_{sigma2}`` is numerically zero somewhere on the first arc.
    """
    if system.r != 2:
        raise WrongArity("the flip needs exactly two measures")
    if system.kind is not SystemKind.CIRCLE:
        raise WrongArity("flip_r2_uc needs a circle system")
    sigma2 = system.generators.sigmas[1]
    report = check_F_nonvanishing(sigma2, system.first_support, gridsize)
    if not report.nonvanishing:
        raise FVanishes(f"min |F| on the first arc is {report.min_abs:.3g}")
    mu2 = system.mus[1]
    recip = CaratheodoryFactor(sigma2, reciprocal=True)   # -i / F = 1 / (i F)
    mu1t = _with_factor(mu2, recip)
    gens = _FlippedChainUC((mu2, _AleksandrovDual(sigma2)), system.branch,
                           system.generators.touching_ok)
    return NikishinSystem(SystemKind.CIRCLE, gens, (mu2, mu1t),
                          (_One(), recip), (_AleksandrovDual(sigma2),), system.dps)


@dataclass(frozen=True, eq=False)
class _AleksandrovDual:
    """Measure known only through its Caratheodory function ``1 / F_base``."""

    base: CircleMeasure

    @property
    def support(self):
        return self.base.support

    def caratheodory(self, z):
        return 1 / self.base.caratheodory(z)


@dataclass(frozen=True, eq=False)
class _FlippedChainUC:
    sigmas: tuple
    branch: BranchCut
    touching_ok: bool = False

    @property
    def arcs(self):
        return tuple(s.support for s in self.sigmas)
