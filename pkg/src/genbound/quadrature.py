"""Adaptive Simpson quadrature used as an independent oracle.

The closed forms in :mod:`genbound.analytic_kernel` are all integrals of
piecewise-smooth integrands, so plain adaptive Simpson with the panel split
at the formula breakpoints converges quickly and gives an implementation
that shares no code path with the expressions under test.
"""

from __future__ import annotations

from typing import Callable, Iterable

_MAX_DEPTH = 60


def _simpson(f, a, fa, b, fb, m, fm):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(f, a, fa, m, fm, lm, flm)
    right = _simpson(f, m, fm, b, fb, rm, frm)
    err = left + right - whole
    if depth >= _MAX_DEPTH or abs(err) <= 15.0 * tol:
        # Richardson extrapolation on the two half-panels
        return left + right + err / 15.0
    return _adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) + _adapt(
        f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    breakpoints: Iterable[float] = (),
) -> float:
    """Integrate f on [a, b] to roughly the requested absolute tolerance.

    Interior breakpoints split the integration range so the adaptive
    refinement never straddles a kink of a piecewise formula.
    """
    if not b > a:
        raise ValueError("need b > a")
    points = sorted({a, b, *(x for x in breakpoints if a < x < b)})
    total = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        panel_tol = tol * (hi - lo) / (b - a)
        m = 0.5 * (lo + hi)
        flo, fhi, fm = f(lo), f(hi), f(m)
        whole = _simpson(f, lo, flo, hi, fhi, m, fm)
        total += _adapt(f, lo, flo, hi, fhi, m, fm, whole, max(panel_tol, 1e-300), 0)
    return total
