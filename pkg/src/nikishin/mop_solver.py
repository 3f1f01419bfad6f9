"""Moment matrices, normality verdicts and multiple orthogonal polynomials.

Real line: the type II polynomial ``P_n`` of degree ``|n|`` satisfies
``int P_n x**p dmu_j = 0`` for ``p < n_j``; it exists and is unique iff the
generalized Hankel matrix ``H_n`` is invertible.

Unit circle: the Laurent polynomial
``phi_n = z**(|n|/2) + sum kappa_e z**e`` (``e = -|n|/2, ..., |n|/2 - 1``)
satisfies ``int phi_n z**(-k) dmu_j = 0`` for ``k = -n_j/2, ..., n_j/2 - 1``;
this is governed by the generalized Toeplitz matrix ``T_n``. Exponents are
stored doubled so that half-integers stay integral; half-integer powers are
taken with the system's square-root branch.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (IndexConditionViolated, KindMismatch, MixedParity,
                     OrderExceeded, SingularSystem, WrongArity)
from .nikishin_builder import SystemKind, check_F_nonvanishing
from .precision import ctx, normal_threshold, singular_threshold

MAX_SCAN_DEGREE = 12
RESIDUAL_TOL = 1e-8

__all__ = [
    "MultiIndex", "Verdict", "ScanMode", "GeneralizedHankel", "GeneralizedToeplitz",
    "NormalityVerdict", "TypeIIPolyRL", "LaurentPolyUC", "ScanRow", "ScanTable",
    "hankel_matrix", "toeplitz_matrix", "classify", "normality_rl", "normality_uc",
    "normality", "type2_poly_rl", "laurent_poly_uc", "perturb_moments",
    "perturbation_det_check", "satisfies_nikishin_condition", "index_grid",
    "scan", "zeros", "root_residuals",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Multi-index ``(n_1, ..., n_r)`` of nonnegative integers."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a multi-index needs at least one component")
        if any(p < 0 for p in parts):
            raise ValueError("multi-index components must be nonnegative")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, n):
        """Coerce a tuple, list, ``"n1|n2"`` / ``"n1,n2"`` string or MultiIndex."""
        if isinstance(n, MultiIndex):
            return n
        if isinstance(n, str):
            return cls(tuple(int(p) for p in n.replace(",", "|").split("|") if p.strip()))
        if isinstance(n, int):
            return cls((n,))
        return cls(tuple(n))

    @property
    def size(self):
        return sum(self.parts)

    @property
    def r(self):
        return len(self.parts)

    @property
    def parities(self):
        return tuple(p % 2 for p in self.parts)

    @property
    def same_parity(self):
        return len(set(self.parities)) == 1

    @property
    def non_increasing(self):
        return all(a >= b for a, b in zip(self.parts, self.parts[1:]))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "|".join(str(p) for p in self.parts)


class Verdict(str, Enum):
    NORMAL = "NORMAL"
    SINGULAR = "SINGULAR"
    INCONCLUSIVE = "INCONCLUSIVE"


class ScanMode(str, Enum):
    THEOREM = "theorem"
    FULL_GRID = "full-grid"
    EXPLORE_MIXED_PARITY = "explore-mixed-parity"


@dataclass(frozen=True, eq=False)
class GeneralizedHankel:
    """Blocks ``H^(j)`` (``n_j x |n|``) and the stacked matrix ``H_n``.

    ``rhs`` holds the moments multiplying the leading coefficient.
    """

    index: MultiIndex
    blocks: tuple
    matrix: object
    rhs: tuple


@dataclass(frozen=True, eq=False)
class GeneralizedToeplitz:
    """Blocks ``T^(j)`` and the stacked complex matrix ``T_n``.

    ``row_offsets[i]`` is the doubled ``k`` of row ``i`` and
    ``col_offsets`` the doubled exponents of the unknowns.
    """

    index: MultiIndex
    blocks: tuple
    matrix: object
    rhs: tuple
    row_offsets: tuple
    col_offsets: tuple


@dataclass(frozen=True)
class NormalityVerdict:
    """Scaled-SVD invertibility decision for ``H_n`` or ``T_n``.

    Attributes
    ----------
    det : mpmath number
        Determinant of the raw matrix.
    scaled_det : mpmath number
        Determinant after dividing each row by its Euclidean norm.
    sigma_min, sigma_max : float
        Extreme singular values of the row-scaled matrix.
    scaled_min : float
        ``sigma_min / sigma_max``.
    verdict : Verdict
        NORMAL above ``normal_threshold(dps)``, SINGULAR below
        ``singular_threshold(dps)``, INCONCLUSIVE in between.
    residual : float or None
        Relative orthogonality defect of the solved polynomial (NORMAL only).
    """

    index: MultiIndex
    det: object
    scaled_det: object
    sigma_min: object
    sigma_max: object
    scaled_min: object
    verdict: Verdict
    residual: float = None
    dps: int = 15

    @property
    def is_normal(self):
        return self.verdict is Verdict.NORMAL


def _as_index(n, system=None):
    n = MultiIndex.of(n)
    if system is not None and n.r != system.r:
        raise ValueError(f"index {n} has {n.r} components, the system has {system.r} measures")
    if n.size == 0:
        raise ValueError("the zero multi-index is excluded")
    return n


def _hankel_from_moments(moms, n):
    N = n.size
    rows, rhs, blocks = [], [], []
    for j, nj in enumerate(n.parts):
        c = moms[j]
        block = []
        for p in range(nj):
            row = [c(p + e) for e in range(N)]
            block.append(row)
            rows.append(row)
            rhs.append(c(p + N))
        blocks.append(block)
    return GeneralizedHankel(n, tuple(blocks), ctx.matrix(rows), tuple(rhs))


def hankel_matrix(system, n):
    """Generalized Hankel matrix ``H_n`` with rows ``(c^(j)_p, ..., c^(j)_{p+|n|-1})``."""
    if system.kind is not SystemKind.REAL_LINE:
        raise KindMismatch("Hankel matrices belong to real-line systems")
    n = _as_index(n, system)
    return _hankel_from_moments([mu.moment for mu in system.mus], n)


def toeplitz_matrix(system, n, allow_mixed=False):
    """Generalized Toeplitz matrix ``T_n``.

    Row ``k`` of block ``j`` (``k = -n_j/2, ..., n_j/2 - 1``) against the
    unknown ``kappa_e`` holds ``c^(j)_{e - k}``. Subscripts are
    half-integers whenever ``|n| - n_j`` is odd; they are moments of
    ``z**(1/2)`` taken with the system's branch.

    Raises
    ------
    MixedParity
        If the components do not share parity and ``allow_mixed`` is false.
    """
    if system.kind is not SystemKind.CIRCLE:
        raise KindMismatch("Toeplitz matrices belong to circle systems")
    n = _as_index(n, system)
    if not n.same_parity and not allow_mixed:
        raise MixedParity(f"components of {n} do not share parity")
    N = n.size
    cols = tuple(-N + 2 * c for c in range(N))
    rows, rhs, blocks, row_off = [], [], [], []
    for j, nj in enumerate(n.parts):
        mu = system.mus[j]
        block = []
        for i in range(nj):
            k2 = -nj + 2 * i
            row = [mu.moment_half(e2 - k2) for e2 in cols]
            block.append(row)
            rows.append(row)
            rhs.append(mu.moment_half(N - k2))
            row_off.append(k2)
        blocks.append(block)
    return GeneralizedToeplitz(n, tuple(blocks), ctx.matrix(rows), tuple(rhs),
                               tuple(row_off), cols)


def classify(scaled_min, dps):
    """Map a scaled smallest singular value to a Verdict at ``dps`` digits."""
    if scaled_min > normal_threshold(dps):
        return Verdict.NORMAL
    if scaled_min < singular_threshold(dps):
        return Verdict.SINGULAR
    return Verdict.INCONCLUSIVE


def _verdict(A, n, dps, complex_=False):
    m = A.rows
    norms = [ctx.sqrt(ctx.fsum(abs(A[i, k]) ** 2 for k in range(m))) for i in range(m)]
    S = A.copy()
    for i in range(m):
        if norms[i] == 0:
            norms[i] = ctx.mpf(1)
        for k in range(m):
            S[i, k] = S[i, k] / norms[i]
    svd = ctx.svd_c if complex_ else ctx.svd_r
    sv = svd(S, compute_uv=False)
    smax = max(sv[i] for i in range(m))
    smin = min(sv[i] for i in range(m))
    scaled = smin / smax if smax > 0 else ctx.mpf(0)
    return NormalityVerdict(n, ctx.det(A), ctx.det(S), smin, smax, scaled,
                            classify(scaled, dps), None, dps)


def _system_dps(system):
    return min(system.dps, ctx.dps)


def normality_rl(system, n, solve=True):
    """Normality verdict for ``H_n``; solves for ``P_n`` when NORMAL."""
    H = hankel_matrix(system, n)
    v = _verdict(H.matrix, H.index, _system_dps(system))
    if solve and v.is_normal:
        poly = _solve_rl(system, H)
        v = _replace(v, residual=poly.residual)
    return v


def normality_uc(system, n, solve=True, allow_mixed=False):
    """phi-normality verdict for ``T_n``; solves for ``phi_n`` when NORMAL."""
    T = toeplitz_matrix(system, n, allow_mixed)
    v = _verdict(T.matrix, T.index, _system_dps(system), complex_=True)
    if solve and v.is_normal:
        poly = _solve_uc(system, T)
        v = _replace(v, residual=poly.residual)
    return v


def normality(system, n, solve=True, allow_mixed=False):
    """Dispatch to :func:`normality_rl` or :func:`normality_uc`."""
    if system.kind is SystemKind.CIRCLE:
        return normality_uc(system, n, solve, allow_mixed)
    return normality_rl(system, n, solve)


def _replace(v, **kw):
    from dataclasses import replace

    return replace(v, **kw)


@dataclass(frozen=True, eq=False)
class TypeIIPolyRL:
    """Monic type II multiple orthogonal polynomial on the real line.

    Attributes
    ----------
    coeffs : ndarray
        Float coefficients, lowest degree first; ``coeffs[-1] == 1``.
    coeffs_mp : tuple
        The same at working precision.
    residual : float
        ``max |int P x**p dmu_j| / int |P| |x|**p d|mu_j|``.
    """

    index: MultiIndex
    coeffs_mp: tuple
    residual: float
    coeffs: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.array([float(c) for c in self.coeffs_mp]))

    @property
    def degree(self):
        return len(self.coeffs_mp) - 1

    def __call__(self, x):
        return ctx.polyval(list(reversed(self.coeffs_mp)), x)


@dataclass(frozen=True, eq=False)
class LaurentPolyUC:
    """Monic Laurent multiple orthogonal polynomial on the unit circle.

    Attributes
    ----------
    half_offsets : tuple of int
        Doubled exponents ``-|n|, -|n| + 2, ..., |n|``.
    coeffs_mp : tuple
        Coefficients matching ``half_offsets``; the last one is 1.
    branch : BranchCut
    residual : float
    """

    index: MultiIndex
    half_offsets: tuple
    coeffs_mp: tuple
    branch: object
    residual: float
    coeffs: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.array([complex(c) for c in self.coeffs_mp]))

    def __call__(self, z):
        from .measure_core import sqrt_branch

        s = sqrt_branch(ctx.mpc(z), self.branch)
        return ctx.fsum(c * s ** d for c, d in zip(self.coeffs_mp, self.half_offsets))


def _solve_rl(system, H):
    n = H.index
    try:
        sol = ctx.lu_solve(H.matrix, ctx.matrix([-c for c in H.rhs]))
    except ZeroDivisionError as exc:
        raise SingularSystem(f"H_{n} is singular") from exc
    coeffs = tuple(sol[i] for i in range(n.size)) + (ctx.mpf(1),)
    rev = list(reversed(coeffs))
    worst = 0
    for j, nj in enumerate(n.parts):
        if nj == 0:
            continue
        mu = system.mus[j]
        P = [ctx.polyval(rev, x) for x in mu.nodes]
        absP = [abs(m * v) for m, v in zip(mu.masses, P)]
        mp_ = [m * v for m, v in zip(mu.masses, P)]
        for p in range(nj):
            xp = [x ** p for x in mu.nodes]
            num = abs(ctx.fdot(mp_, xp))
            den = ctx.fdot(absP, [abs(v) for v in xp])
            worst = max(worst, num / den)
    return TypeIIPolyRL(n, coeffs, float(worst))


def _solve_uc(system, T):
    n = T.index
    try:
        sol = ctx.lu_solve(T.matrix, ctx.matrix([-c for c in T.rhs]))
    except ZeroDivisionError as exc:
        raise SingularSystem(f"T_{n} is singular") from exc
    N = n.size
    coeffs = tuple(ctx.mpc(sol[i]) for i in range(N)) + (ctx.mpc(1),)
    offsets = T.col_offsets + (N,)
    worst = 0
    for j, nj in enumerate(n.parts):
        if nj == 0:
            continue
        mu = system.mus[j]
        s = mu.half_points
        # phi(z) z**(-k) at the nodes, with every exponent taken on the branch
        base = [ctx.fsum(c * si ** (d - N) for c, d in zip(coeffs, offsets)) for si in s]
        lead = [si ** N for si in s]
        phi = [b * l for b, l in zip(base, lead)]
        den = ctx.fdot([abs(m) for m in mu.masses], [abs(v) for v in phi])
        for k2 in range(-nj, nj, 2):
            num = abs(ctx.fdot(mu.masses, [v * si ** (-k2) for v, si in zip(phi, s)]))
            worst = max(worst, num / den)
    return LaurentPolyUC(n, offsets, coeffs, system.branch, float(worst))


def type2_poly_rl(system, n):
    """Type II multiple orthogonal polynomial ``P_n``.

    Raises
    ------
    SingularSystem
        Unless the normality verdict is NORMAL.
    """
    H = hankel_matrix(system, n)
    v = _verdict(H.matrix, H.index, _system_dps(system))
    if not v.is_normal:
        raise SingularSystem(f"index {H.index} is {v.verdict.value}")
    return _solve_rl(system, H)


def laurent_poly_uc(system, n, allow_mixed=False):
    """Laurent multiple orthogonal polynomial ``phi_n``.

    Raises
    ------
    SingularSystem
        Unless the phi-normality verdict is NORMAL.
    MixedParity
        For mixed-parity indices unless ``allow_mixed``.
    """
    T = toeplitz_matrix(system, n, allow_mixed)
    v = _verdict(T.matrix, T.index, _system_dps(system), complex_=True)
    if not v.is_normal:
        raise SingularSystem(f"index {T.index} is {v.verdict.value}")
    return _solve_uc(system, T)


# ---------------------------------------------------------------------------
# polynomial perturbation

def perturb_moments(mu1_moments, mu2_moments, kcoeffs):
    """Moments of ``dmu_1 + (sum_j k_j x**j) dmu_2``.

    Returns ``c1_m + sum_j k_j c2_{m+j}`` for every ``m`` the two tables
    support.
    """
    k = [ctx.mpf(x) for x in kcoeffs]
    s = len(k) - 1
    length = min(len(mu1_moments), len(mu2_moments) - s)
    if s < 0 or length <= 0:
        raise OrderExceeded("moment tables too short for this perturbation")
    c1 = [ctx.mpf(x) for x in mu1_moments[:length]]
    c2 = [ctx.mpf(x) for x in mu2_moments]
    return [c1[m] + ctx.fsum(kj * c2[m + j] for j, kj in enumerate(k)) for m in range(length)]


def perturbation_det_check(system, n, kcoeffs):
    """``(det H_n, det H~_n)`` before and after perturbing ``mu_1`` by ``k(x) mu_2``.

    The two agree when ``n_1 <= n_2 - s``, ``s = len(kcoeffs) - 1``.

    Raises
    ------
    IndexConditionViolated
        If ``n_1 > n_2 - s``.
    """
    if system.r != 2 or system.kind is not SystemKind.REAL_LINE:
        raise WrongArity("the perturbation check needs a real-line system with r = 2")
    n = _as_index(n, system)
    s = len(kcoeffs) - 1
    if n[0] > n[1] - s:
        raise IndexConditionViolated(f"n_1 = {n[0]} > n_2 - s = {n[1] - s}")
    mu1, mu2 = system.mus
    need = n.size + max(n.parts) + s
    c1 = [mu1.moment(k) for k in range(need)]
    c2 = [mu2.moment(k) for k in range(need + s)]
    ct = perturb_moments(c1, c2, kcoeffs)
    H = _hankel_from_moments([c1.__getitem__, c2.__getitem__], n)
    Ht = _hankel_from_moments([ct.__getitem__, c2.__getitem__], n)
    return ctx.det(H.matrix), ctx.det(Ht.matrix)


# ---------------------------------------------------------------------------
# scans

def satisfies_nikishin_condition(n):
    """``n_j >= max(n_{j+1}, ..., n_r) - 1`` for every ``j``."""
    parts = MultiIndex.of(n).parts
    return all(parts[j] >= max(parts[j + 1:]) - 1 for j in range(len(parts) - 1))


def index_grid(r, max_total, min_total=1):
    """All multi-indices with ``r`` components and ``min_total <= |n| <= max_total``."""
    out = []
    for parts in itertools.product(range(max_total + 1), repeat=r):
        if min_total <= sum(parts) <= max_total:
            out.append(MultiIndex(parts))
    return sorted(out)


@dataclass(frozen=True)
class ScanRow:
    index: MultiIndex
    verdict: NormalityVerdict
    labels: tuple = ()
    exploratory: bool = False


@dataclass(frozen=True)
class ScanTable:
    rows: tuple
    mode: ScanMode

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def count(self, verdict):
        return sum(1 for row in self.rows if row.verdict.verdict is Verdict(verdict))

    @property
    def all_normal(self):
        return all(row.verdict.is_normal for row in self.rows)


def theorem_labels(system, n, f_nonvanishing=None):
    """Names of the results whose hypotheses ``n`` satisfies for ``system``."""
    n = MultiIndex.of(n)
    labels = []
    if system.kind is SystemKind.REAL_LINE:
        if satisfies_nikishin_condition(n):
            labels.append("nikishin-at-real")
        if system.r == 2:
            labels.append("r2-all-normal-real")
    else:
        if n.same_parity and n.non_increasing:
            labels.append("nikishin-at-circle")
        if system.r == 2 and n.same_parity:
            if f_nonvanishing is None:
                f_nonvanishing = check_F_nonvanishing(
                    system.generators.sigmas[1], system.first_support).nonvanishing
            if f_nonvanishing:
                labels.append("r2-same-parity-circle")
    return tuple(labels)


def scan(system, index_set=None, mode=ScanMode.THEOREM, max_total=None):
    """Normality verdicts over a set of indices.

    Parameters
    ----------
    system : NikishinSystem
    index_set : iterable, optional
        Indices to consider; defaults to ``index_grid(r, max_total)``.
    mode : ScanMode
        ``theorem`` keeps only indices covered by a normality theorem,
        ``full-grid`` keeps all (same-parity only on the circle) and
        ``explore-mixed-parity`` keeps all, marking circle indices outside
        any theorem as exploratory.
    max_total : int, optional
        Largest ``|n|``; at most ``MAX_SCAN_DEGREE``.

    Returns
    -------
    ScanTable
        Rows sorted lexicographically by index.
    """
    mode = ScanMode(mode)
    if index_set is None:
        if max_total is None:
            raise ValueError("give index_set or max_total")
        index_set = index_grid(system.r, max_total)
    indices = sorted({_as_index(n, system) for n in index_set})
    if indices and max(n.size for n in indices) > MAX_SCAN_DEGREE:
        raise ValueError(f"scans are limited to |n| <= {MAX_SCAN_DEGREE}")
    circle = system.kind is SystemKind.CIRCLE
    fnv = None
    if circle and system.r == 2:
        fnv = check_F_nonvanishing(system.generators.sigmas[1],
                                   system.first_support).nonvanishing
    rows = []
    for n in indices:
        labels = theorem_labels(system, n, fnv)
        if mode is ScanMode.THEOREM and not labels:
            continue
        if circle and mode is ScanMode.FULL_GRID and not n.same_parity:
            continue
        explore = circle and not labels
        v = normality(system, n, allow_mixed=mode is ScanMode.EXPLORE_MIXED_PARITY)
        rows.append(ScanRow(n, v, labels, explore))
    return ScanTable(tuple(rows), mode)


# ---------------------------------------------------------------------------
# zeros

def _ascending_coeffs(poly):
    # for a Laurent polynomial these belong to z**(|n|/2) phi(z)
    return list(poly.coeffs_mp)


def zeros(poly):
    """Roots of ``P_n``, or of ``z**(|n|/2) phi_n(z)`` for a Laurent polynomial.

    Computed as eigenvalues of the companion matrix at working precision and
    sorted by real part, then imaginary part. Coefficients below the normality
    threshold relative to the largest one are set to zero first, so that an
    exact multiple root at the origin is not split by round-off.

    Returns
    -------
    list of complex
    """
    a = _ascending_coeffs(poly)
    cut = normal_threshold(ctx.dps) * max(abs(c) for c in a)
    a = [c if abs(c) >= cut else ctx.zero for c in a]
    deg = len(a) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [complex(-a[0] / a[1])]
    C = ctx.zeros(deg, deg)
    for i in range(1, deg):
        C[i, i - 1] = 1
    for i in range(deg):
        C[i, deg - 1] = -a[i] / a[deg]
    ev = ctx.eig(C, left=False, right=False)
    if all(ctx.im(c) == 0 for c in a):
        # real coefficients: imaginary parts at the rounding floor are noise
        tiny = normal_threshold(ctx.dps)
        ev = [ctx.re(e) if abs(ctx.im(e)) <= tiny * max(1, abs(e)) else e for e in ev]
    roots = [complex(e) for e in ev]
    return sorted(roots, key=lambda z: (z.real, z.imag))


def root_residuals(poly, roots):
    """``|p(root)| / sum |a_k| |root|**k`` for each root."""
    a = _ascending_coeffs(poly)
    out = []
    for z in roots:
        z = ctx.mpc(z)
        val = abs(ctx.polyval(list(reversed(a)), z))
        scale = ctx.fsum(abs(c) * abs(z) ** k for k, c in enumerate(a))
        out.append(float(val / scale))
    return out
