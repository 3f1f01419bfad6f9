"""Working precision shared by every extended-precision computation.

Moment matrices of Nikishin systems are intrinsically close to singular
(their smallest scaled singular values fall below 1e-20 already for total
degree 10), so all tables, determinants and singular values are computed
with a private mpmath context. Decision thresholds scale with the number of
digits in use; at 15 digits (IEEE double) they reduce to 1e-10 and 1e-12.
"""

import mpmath

DEFAULT_DPS = 50

ctx = mpmath.MPContext()
ctx.dps = DEFAULT_DPS


def get_dps():
    """Return the current number of working decimal digits."""
    return ctx.dps


def set_dps(dps):
    """Set the number of working decimal digits.

    Objects built before the change keep the precision they were built
    with; build measures and systems after calling this.
    """
    if int(dps) < 15:
        raise ValueError("working precision below 15 digits is not supported")
    ctx.dps = int(dps)


class workdps:
    """Context manager that temporarily changes the working precision."""

    def __init__(self, dps):
        self.dps = int(dps)

    def __enter__(self):
        self._old = ctx.dps
        set_dps(self.dps)
        return self

    def __exit__(self, *exc):
        ctx.dps = self._old
        return False


def normal_threshold(dps):
    """Scaled singular value above which a matrix counts as invertible."""
    return ctx.mpf(10) ** (-(int(dps) - 5))


def singular_threshold(dps):
    """Scaled singular value below which a matrix counts as singular."""
    return ctx.mpf(10) ** (-(int(dps) - 3))


def mpf(x):
    """Convert a number or decimal string to a working-precision real."""
    if isinstance(x, str):
        return ctx.mpf(x.strip())
    return ctx.mpf(x)


def mpc(x):
    return ctx.mpc(x)


def is_mp(x):
    return isinstance(x, (ctx.mpf, ctx.mpc))
