"""Normality of multiple orthogonal polynomials for Nikishin systems.

Measures on intervals and arcs (:mod:`measure_core`), Nikishin systems built
from them (:mod:`nikishin_builder`), the determinants behind normality
(:mod:`detkit`), moment matrices and multiple orthogonal polynomials
(:mod:`mop_solver`) and moment-level spectral transforms (:mod:`spectral`).
"""

from . import detkit, measure_core, mop_solver, nikishin_builder, spectral
from .errors import *  # noqa: F401,F403
from .measure_core import (Arc, BranchCut, CircleMeasure, Interval, QuadratureRule,
                           RealMeasure, WeightKind, WeightSpec, build_quadrature,
                           caratheodory, m_function_circle, m_function_real,
                           moment_circle, moment_real, sqrt_branch)
from .mop_solver import (MultiIndex, NormalityVerdict, ScanMode, Verdict, hankel_matrix,
                         laurent_poly_uc, normality, normality_rl, normality_uc, scan,
                         toeplitz_matrix, type2_poly_rl, zeros)
from .nikishin_builder import (GeneratorChainRL, GeneratorChainUC, NikishinSystem,
                               SystemKind, bracket_rl, bracket_uc, build_system,
                               check_F_nonvanishing, flip_r2_rl, flip_r2_uc)
from .precision import get_dps, set_dps, workdps

__version__ = "0.1.0"
