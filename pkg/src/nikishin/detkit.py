"""Determinants behind the normality results.

``U_x = det(f_i(x_k))`` for the weighted power family of a system, the
generalized Andreief identity (checked exactly on discrete measures), the
Cauchy-Vandermonde product formula, sign constancy of ``U`` on the real line
and constancy of its phase on the circle.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (CoincidentPoints, IndexConditionViolated, KindMismatch,
                     MixedParity, NotOrdered, ShapeMismatch, SizeMismatch,
                     TooManyAtoms)
from .measure_core import Arc, BranchCut, Interval, sqrt_branch
from .nikishin_builder import SystemKind
from .precision import ctx, normal_threshold

MAX_ATOMS = 12
MAX_M = 6
PHASE_TOL = 1e-6

__all__ = [
    "FunctionFamily", "OrderedTuple", "DiscreteMeasure", "SignReport", "PhaseReport",
    "chebyshev_det", "scaled_chebyshev_det", "at_family_rl", "at_family_uc",
    "random_ordered_tuple", "andreief_lhs", "andreief_rhs",
    "cauchy_vandermonde_matrix", "cauchy_vandermonde_closed",
    "sign_check_rl", "phase_check_uc",
]


@dataclass(frozen=True)
class FunctionFamily:
    """Ordered functions ``f_1, ..., f_m`` with descriptive labels."""

    entries: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        labels = tuple(self.labels) or tuple(f"f{i + 1}" for i in range(len(self.entries)))
        if len(labels) != len(self.entries):
            raise ValueError("one label per entry")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class OrderedTuple:
    """Strictly increasing points of an interval, or of an arc along a branch.

    Circle points are unimodular and ordered by their argument reduced into
    ``[t0, t0 + 2 pi)``.
    """

    points: tuple
    branch: BranchCut = None
    support: object = None

    def __post_init__(self):
        pts = tuple(self.points)
        if self.branch is None:
            pts = tuple(ctx.mpf(x) for x in pts)
            keys = pts
            if self.support is not None and not all(self.support.contains(x) for x in pts):
                raise ValueError("points must lie in the support")
        else:
            pts = tuple(ctx.mpc(z) for z in pts)
            if any(abs(abs(z) - 1) > 1e-12 for z in pts):
                raise ValueError("circle points must be unimodular")
            keys = tuple(self.branch.arg(z) for z in pts)
            if self.support is not None and not all(
                    self.support.contains_angle(ctx.arg(z)) for z in pts):
                raise ValueError("points must lie on the arc")
        if any(b <= a for a, b in zip(keys, keys[1:])):
            raise NotOrdered("points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def random_ordered_tuple(support, size, rng, branch=None):
    """Sort ``size`` uniform samples of the support parameter (x or theta)."""
    if isinstance(support, Arc):
        if branch is None:
            raise ValueError("circle tuples need a branch")
        th = rng.uniform(float(support.alpha), float(support.beta), size)
        pts = [ctx.expj(ctx.mpf(t)) for t in th]
        pts.sort(key=branch.arg)
        return OrderedTuple(tuple(pts), branch)
    xs = np.sort(rng.uniform(float(support.lo), float(support.hi), size))
    return OrderedTuple(tuple(ctx.mpf(x) for x in xs))


def _values(family, tup):
    if len(family) != len(tup):
        raise SizeMismatch(f"{len(family)} functions but {len(tup)} points")
    return [[f(x) for x in tup.points] for f in family.entries]


def chebyshev_det(family, tup):
    """``det(f_i(x_k))``, rows indexed by functions and columns by points."""
    vals = _values(family, tup)
    if not vals:
        return ctx.mpf(1)
    return ctx.det(ctx.matrix(vals))


def scaled_chebyshev_det(family, tup):
    """``det(f_i(x_k)) / prod_i ||(f_i(x_k))_k||``, free of under/overflow."""
    vals = _values(family, tup)
    rows = []
    for row in vals:
        nrm = ctx.sqrt(ctx.fsum(abs(v) ** 2 for v in row))
        rows.append([v / nrm for v in row] if nrm else row)
    return ctx.det(ctx.matrix(rows))


class _Memo:
    """Cache weight values: every power of one block shares them."""

    def __init__(self, w):
        self.w = w
        self.cache = {}
        if hasattr(w, "at_angle"):
            self.at_angle = self._at_angle

    def __call__(self, x):
        if x not in self.cache:
            self.cache[x] = self.w(x)
        return self.cache[x]

    def _at_angle(self, theta):
        key = ("angle", theta)
        if key not in self.cache:
            self.cache[key] = self.w.at_angle(theta)
        return self.cache[key]


class _Power:
    def __init__(self, p, w, label):
        self.p, self.w, self.label = p, w, label

    def __call__(self, x):
        return x ** self.p * self.w(x)

    def __repr__(self):
        return self.label


class _HalfPower:
    def __init__(self, d, w, branch, label):
        self.d, self.w, self.branch, self.label = d, w, branch, label

    def __call__(self, z):
        z = ctx.mpc(z)
        if hasattr(self.w, "at_angle") and abs(abs(z) - 1) < 1e-20:
            w = self.w.at_angle(ctx.arg(z))   # real on the arc
        else:
            w = self.w(z)
        return sqrt_branch(z, self.branch) ** self.d * w

    def __repr__(self):
        return self.label


def at_family_rl(system, n):
    """``{x**p rn_j(x) : p < n_j}`` for ``j = 1..r`` in that order."""
    from .mop_solver import MultiIndex

    if system.kind is not SystemKind.REAL_LINE:
        raise KindMismatch("at_family_rl needs a real-line system")
    n = MultiIndex.of(n)
    entries, labels = [], []
    for j, nj in enumerate(n.parts):
        w = _Memo(system.rn_chain[j])
        for p in range(nj):
            lab = (f"x^{p}" if p else "1") + (f"*w{j + 1}" if j else "")
            entries.append(_Power(p, w, lab))
            labels.append(lab)
    return FunctionFamily(tuple(entries), tuple(labels))


def at_family_uc(system, n):
    """``{z**(-(n_j-1)/2 + i) w_j(z) : i < n_j}`` for ``j = 1..r``.

    Half-integer powers use the system's branch.
    """
    from .mop_solver import MultiIndex

    if system.kind is not SystemKind.CIRCLE:
        raise KindMismatch("at_family_uc needs a circle system")
    n = MultiIndex.of(n)
    entries, labels = [], []
    for j, nj in enumerate(n.parts):
        w = _Memo(system.rn_chain[j])
        for i in range(nj):
            d = -(nj - 1) + 2 * i
            lab = f"z^({d}/2)*w{j + 1}"
            entries.append(_HalfPower(d, w, system.branch, lab))
            labels.append(lab)
    return FunctionFamily(tuple(entries), tuple(labels))


# ---------------------------------------------------------------------------
# Andreief identity

@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite sum of point masses ``sum m_i delta_{y_i}``, masses of one sign."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(y), float(m)) for y, m in self.atoms)
        if not atoms:
            raise ValueError("a discrete measure needs at least one atom")
        masses = [m for _, m in atoms]
        if any(m == 0 for m in masses) or (min(masses) < 0 < max(masses)):
            raise ValueError("atom masses must be nonzero and of one sign")
        object.__setattr__(self, "atoms", atoms)

    @property
    def locations(self):
        return [y for y, _ in self.atoms]

    @property
    def masses(self):
        return [m for _, m in self.atoms]


def _andreief_shapes(A, f, g):
    A = np.asarray(A, dtype=float)
    N, M = len(g), len(f)
    if A.size == 0:
        A = A.reshape(0, N)
    if A.ndim != 2 or A.shape != (N - M, N) or M > N:
        raise ShapeMismatch(f"A must be {N - M} x {N} for {M} f's and {N} g's")
    return A, N, M


def andreief_lhs(A, f, g, mu):
    """``det [A ; (int f_j g_k dmu)]``.

    Parameters
    ----------
    A : array_like, shape (N - M, N)
    f : list of M callables
    g : list of N callables
    mu : DiscreteMeasure or RealMeasure

    Returns
    -------
    float
    """
    A, N, M = _andreief_shapes(A, f, g)
    G = np.empty((M, N))
    if isinstance(mu, DiscreteMeasure):
        y, m = np.array(mu.locations), np.array(mu.masses)
        for j in range(M):
            fj = np.array([f[j](t) for t in y], dtype=float)
            for k in range(N):
                gk = np.array([g[k](t) for t in y], dtype=float)
                G[j, k] = np.sum(m * fj * gk)
    else:
        for j in range(M):
            for k in range(N):
                G[j, k] = float(mu.integrate(lambda t: f[j](t) * g[k](t)))
    return float(np.linalg.det(np.vstack([A, G]))) if N else 1.0


def andreief_rhs(A, f, g, mu, method="subsets"):
    """``(1/M!) sum over atom M-tuples of det[A ; g_k(y_j)] det(f_l(y_j)) prod m``.

    ``method="tuples"`` sums literally over all ``len(atoms)**M`` ordered
    tuples. ``method="subsets"`` uses that the summand is symmetric and
    vanishes on repeated atoms, so only increasing tuples are visited.
    """
    A, N, M = _andreief_shapes(A, f, g)
    if not isinstance(mu, DiscreteMeasure):
        raise TypeError("the exact right-hand side needs a DiscreteMeasure")
    y, m = mu.locations, mu.masses
    if len(y) > MAX_ATOMS or M > MAX_M:
        raise TooManyAtoms(f"{len(y)} atoms with M = {M} exceed the exact-sum limits")
    F = np.array([[fl(t) for t in y] for fl in f], dtype=float).reshape(M, len(y))
    Gv = np.array([[gk(t) for t in y] for gk in g], dtype=float).reshape(N, len(y))
    if method == "subsets":
        combos, scale = itertools.combinations(range(len(y)), M), 1.0
    elif method == "tuples":
        combos, scale = itertools.product(range(len(y)), repeat=M), 1.0 / math.factorial(M)
    else:
        raise ValueError("method is 'subsets' or 'tuples'")
    total = 0.0
    for idx in combos:
        idx = list(idx)
        top = np.vstack([A, Gv[:, idx].T]) if N else np.zeros((0, 0))
        d1 = np.linalg.det(top) if N else 1.0
        d2 = np.linalg.det(F[:, idx]) if M else 1.0
        total += d1 * d2 * float(np.prod([m[i] for i in idx]))
    return total * scale


# ---------------------------------------------------------------------------
# Cauchy-Vandermonde

def cauchy_vandermonde_matrix(t, z, n1, n2, exact=False):
    """Rows ``t**p`` (``p < n1``) then ``1 / (t - z_j)`` (``j <= n2``), columns over ``t``."""
    t, z = list(t), list(z)
    if len(t) != n1 + n2 or len(z) != n2:
        raise SizeMismatch("need n1 + n2 points t and n2 points z")
    if exact:
        t = [ctx.mpf(x) for x in t]
        z = [ctx.mpf(x) for x in z]
        rows = [[x ** p for x in t] for p in range(n1)]
        rows += [[1 / (x - zj) for x in t] for zj in z]
        return ctx.matrix(rows)
    t, z = np.asarray(t, float), np.asarray(z, float)
    rows = [t ** p for p in range(n1)] + [1.0 / (t - zj) for zj in z]
    return np.array(rows).reshape(n1 + n2, n1 + n2)


def cauchy_vandermonde_closed(t, z, n1, n2):
    """Product formula for the determinant of :func:`cauchy_vandermonde_matrix`.

    ``(-1)**(n1 n2 + n2 (n2 - 1) / 2) prod_{j<k} (t_k - t_j)
    prod_{j<k} (z_k - z_j) / prod_{j,k} (t_k - z_j)``.

    Raises
    ------
    CoincidentPoints
        If some ``t_k`` equals some ``z_j``.
    """
    t, z = [float(x) for x in t], [float(x) for x in z]
    if len(t) != n1 + n2 or len(z) != n2:
        raise SizeMismatch("need n1 + n2 points t and n2 points z")
    if any(tk == zj for tk in t for zj in z):
        raise CoincidentPoints("a t point coincides with a z point")
    sign = -1.0 if (n1 * n2 + n2 * (n2 - 1) // 2) % 2 else 1.0
    val = sign
    for j, k in itertools.combinations(range(len(t)), 2):
        val *= t[k] - t[j]
    for j, k in itertools.combinations(range(len(z)), 2):
        val *= z[k] - z[j]
    for tk in t:
        for zj in z:
            val /= tk - zj
    return val


# ---------------------------------------------------------------------------
# sign and phase checks

@dataclass(frozen=True)
class SignReport:
    """Signs of ``U`` over random ordered tuples.

    ``U`` vanishes like the Vandermonde product ``V`` of the tuple as points
    merge, so degeneracy is judged on ``U / V``, which stays continuous.
    ``min_scaled`` is the smallest ``|U / V|`` divided by the largest.
    ``verdict`` is CONSTANT_SIGN, SIGN_CHANGE or DEGENERATE (``min_scaled``
    at or below the normality threshold of the working precision).
    """

    verdict: str
    sign: int
    min_scaled: float
    trials: int

    @property
    def constant(self):
        return self.verdict == "CONSTANT_SIGN"


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def _vandermonde(points):
    return ctx.fprod(b - a for a, b in itertools.combinations(points, 2))


def sign_check_rl(system, n, trials=100, rng=0, allow_any_index=False):
    """Evaluate ``U`` of the weighted power family on random ordered tuples.

    Parameters
    ----------
    system : NikishinSystem
        Real-line system.
    n : multi-index
        Must satisfy ``n_j >= max(n_{j+1}, ...) - 1`` unless
        ``allow_any_index``.
    trials : int
    rng : int or numpy Generator

    Returns
    -------
    SignReport
    """
    from .mop_solver import MultiIndex, satisfies_nikishin_condition

    n = MultiIndex.of(n)
    if not allow_any_index and not satisfies_nikishin_condition(n):
        raise IndexConditionViolated(f"{n} does not satisfy the index condition")
    fam = at_family_rl(system, n)
    rng = _rng(rng)
    vals = []
    for _ in range(int(trials)):
        tup = random_ordered_tuple(system.first_support, n.size, rng)
        vals.append(chebyshev_det(fam, tup) / _vandermonde(tup.points))
    mags = [abs(v) for v in vals]
    ratio = min(mags) / max(mags) if max(mags) > 0 else ctx.mpf(0)
    signs = {1 if v > 0 else -1 for v in vals}
    if ratio <= normal_threshold(system.dps):
        verdict = "DEGENERATE"
    elif len(signs) == 1:
        verdict = "CONSTANT_SIGN"
    else:
        verdict = "SIGN_CHANGE"
    return SignReport(verdict, signs.pop() if len(signs) == 1 else 0, float(ratio), int(trials))


@dataclass(frozen=True)
class PhaseReport:
    """Phases of ``U`` over random ordered tuples on the first arc.

    ``l_mod4`` is set when the mean phase is within 1e-3 of ``l pi / 2``;
    otherwise it is None (unresolved).
    """

    phases: tuple
    mean_phase: float
    max_deviation: float
    l_mod4: int = None
    tolerance: float = PHASE_TOL

    @property
    def confirmed(self):
        return self.max_deviation <= self.tolerance


def _wrap(a):
    return (a + math.pi) % (2 * math.pi) - math.pi


def phase_check_uc(system, n, trials=100, rng=0, tolerance=PHASE_TOL):
    """Phase of ``U`` for the circle family at random ordered tuples.

    Mixed-parity indices are accepted but the result is exploratory.

    Returns
    -------
    PhaseReport
    """
    from .mop_solver import MultiIndex

    n = MultiIndex.of(n)
    fam = at_family_uc(system, n)
    rng = _rng(rng)
    phases = []
    for _ in range(int(trials)):
        tup = random_ordered_tuple(system.first_support, n.size, rng, system.branch)
        phases.append(float(ctx.arg(scaled_chebyshev_det(fam, tup))))
    mean = math.atan2(sum(math.sin(p) for p in phases), sum(math.cos(p) for p in phases))
    dev = max(abs(_wrap(p - mean)) for p in phases)
    q = mean / (math.pi / 2)
    l = int(round(q)) % 4 if abs(mean - round(q) * math.pi / 2) <= 1e-3 else None
    return PhaseReport(tuple(phases), mean, dev, l, tolerance)
