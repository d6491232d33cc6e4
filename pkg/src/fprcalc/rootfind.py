"""Bracketed scalar root finding (Brent's method).

All solvers in this package are scalar and favour robustness over speed:
a sign-changing bracket is required, bisection guarantees progress, and
secant / inverse-quadratic steps provide the fast local convergence.
"""

import math

from .errors import ConvergenceError, NoSolutionError

_EPS = 2.2204460492503131e-16


def brent(f, a, b, xtol=1e-12, rtol=4.0 * _EPS, max_iter=200):
    """Find a root of ``f`` in the sign-changing interval [a, b].

    Returns x with |x - root| bounded by ``xtol + rtol*|x|``. Raises
    NoSolutionError if f(a) and f(b) have the same sign.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoSolutionError(
            f"root not bracketed: f({a:g})={fa:g}, f({b:g})={fb:g}"
        )
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 0.5 * (xtol + rtol * abs(b))
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m  # bisection
        else:
            s = fb / fa
            if a == c:
                # secant
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                # inverse quadratic interpolation
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q  # accept interpolation
            else:
                d = e = m  # fall back to bisection
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = f(b)
    raise ConvergenceError(f"brent: no convergence after {max_iter} iterations")


def expand_bracket(f, lo, hi, hi_max, grow=2.0):
    """Grow [lo, hi] rightward until f changes sign, up to hi_max.

    ``f(lo)`` must be computable. Returns a sign-changing (lo, hi).
    Raises NoSolutionError when hi_max is reached without a sign change.
    """
    flo = f(lo)
    if flo == 0.0:
        return lo, lo
    fhi = f(hi)
    while (flo > 0) == (fhi > 0):
        if hi >= hi_max:
            raise NoSolutionError(
                f"no sign change in [{lo:g}, {hi_max:g}]"
            )
        lo, flo = hi, fhi
        hi = min(hi * grow, hi_max)
        fhi = f(hi)
    return lo, hi
