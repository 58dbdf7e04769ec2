"""Backward-stable root extraction for real monic cubics.

The strategy is the classical safe one: bracket a real root (a monic cubic
always has at least one), run safeguarded Newton inside the bracket, deflate
to a quadratic, then polish every root on the original polynomial so the
deflation error does not survive.
"""

from __future__ import annotations

import math

__all__ = ["solve_monic_cubic"]

_MAX_NEWTON = 200
sys_eps = math.ulp(1.0)


def _eval(p2, p1, p0, x):
    return ((x + p2) * x + p1) * x + p0


def _eval_d(p2, p1, x):
    return (3.0 * x + 2.0 * p2) * x + p1


def _bracketed_newton(p2, p1, p0, lo, hi):
    """One real root of the cubic inside [lo, hi], where the sign changes."""
    flo = _eval(p2, p1, p0, lo)
    if flo == 0.0:
        return lo
    x = 0.5 * (lo + hi)
    for _ in range(_MAX_NEWTON):
        f = _eval(p2, p1, p0, x)
        if f == 0.0:
            return x
        if (f < 0.0) == (flo < 0.0):
            lo = x
        else:
            hi = x
        d = _eval_d(p2, p1, x)
        if d != 0.0:
            step = f / d
            x_new = x - step
            if not (lo < x_new < hi):
                x_new = 0.5 * (lo + hi)
        else:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4.0 * sys_eps * max(1.0, abs(x_new)):
            return x_new
        x = x_new
    return x


def _polish(p2, p1, p0, r):
    """Two Newton passes on the undeflated cubic, complex-safe."""
    for _ in range(2):
        f = ((r + p2) * r + p1) * r + p0
        d = (3.0 * r + 2.0 * p2) * r + p1
        if abs(d) < 1e3 * sys_eps * max(1.0, abs(r) ** 2):
            break
        r = r - f / d
    return r


def solve_monic_cubic(p2: float, p1: float, p0: float):
    """All three roots of x^3 + p2 x^2 + p1 x + p0 as complex numbers.

    No ordering is imposed; exactly one root is guaranteed to have zero
    imaginary part before polishing.
    """
    if not all(math.isfinite(v) for v in (p2, p1, p0)):
        raise ValueError("cubic coefficients must be finite")

    if p0 == 0.0:
        real = 0.0
    else:
        bound = 1.0 + max(abs(p2), abs(p1), abs(p0))
        real = _bracketed_newton(p2, p1, p0, -bound, bound)

    # deflate: x^3+p2 x^2+p1 x+p0 = (x - real)(x^2 + q1 x + q0)
    q1 = p2 + real
    q0 = p1 + real * q1
    disc = q1 * q1 - 4.0 * q0
    if disc >= 0.0:
        s = math.sqrt(disc)
        t = -0.5 * (q1 + math.copysign(s, q1)) if q1 != 0.0 else 0.5 * s
        r2 = complex(t, 0.0)
        r3 = complex(q0 / t, 0.0) if t != 0.0 else complex(-q1 - t, 0.0)
    else:
        s = math.sqrt(-disc)
        r2 = complex(-0.5 * q1, 0.5 * s)
        r3 = r2.conjugate()

    roots = []
    for r in (complex(real, 0.0), r2, r3):
        pr = _polish(p2, p1, p0, r)
        if abs(pr.imag) <= 4.0 * sys_eps * max(1.0, abs(pr.real)):
            pr = complex(pr.real, 0.0)
        roots.append(pr)

    # polishing may drift a conjugate pair apart; re-pair symmetrically
    if roots[1].imag != 0.0 and roots[2].imag != 0.0:
        pair = 0.5 * (roots[1] + roots[2].conjugate())
        roots[1] = pair
        roots[2] = pair.conjugate()
    return tuple(roots)
