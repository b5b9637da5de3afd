"""Adaptive Simpson quadrature and a bracketed convex line search."""

import math

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def adaptive_simpson(f, a, b, tol=1e-8, min_panels=64, max_depth=40):
    """Integrate a vectorized function on ``[a, b]`` by adaptive Simpson.

    Refinement runs breadth first: every unconverged panel is split in the
    same sweep, so ``f`` is always called with an array of abscissae.

    Args:
        f: callable mapping an array of points to an array of values.
        a, b: finite integration limits.
        tol: absolute error target for the whole integral.
        min_panels: number of equal panels before any refinement.
        max_depth: bisection limit per panel; panels hitting it are accepted.

    Returns:
        ``(value, error_estimate)``.
    """
    if b == a:
        return 0.0, 0.0
    if b < a:
        value, err = adaptive_simpson(f, b, a, tol, min_panels, max_depth)
        return -value, err

    edges = np.linspace(a, b, min_panels + 1)
    left, right = edges[:-1], edges[1:]
    mid = 0.5 * (left + right)
    fe = np.asarray(f(edges), dtype=float)
    fm = np.asarray(f(mid), dtype=float)
    fl, fr = fe[:-1], fe[1:]
    whole = (right - left) / 6.0 * (fl + 4.0 * fm + fr)
    ptol = np.full(min_panels, tol / min_panels)

    total, err = 0.0, 0.0
    for depth in range(max_depth + 1):
        lm, rm = 0.5 * (left + mid), 0.5 * (mid + right)
        fx = np.asarray(f(np.concatenate([lm, rm])), dtype=float)
        flm, frm = fx[: lm.size], fx[lm.size:]
        s_left = (mid - left) / 6.0 * (fl + 4.0 * flm + fm)
        s_right = (right - mid) / 6.0 * (fm + 4.0 * frm + fr)
        delta = s_left + s_right - whole
        done = np.abs(delta) <= 15.0 * ptol
        if depth == max_depth:
            done[:] = True
        if not np.all(np.isfinite(delta)):
            raise FloatingPointError("non-finite integrand encountered")
        total += float(np.sum((s_left + s_right + delta / 15.0)[done]))
        err += float(np.sum(np.abs(delta[done]) / 15.0))
        keep = ~done
        if not keep.any():
            break
        left = np.concatenate([left[keep], mid[keep]])
        right = np.concatenate([mid[keep], right[keep]])
        new_mid = np.concatenate([lm[keep], rm[keep]])
        fl, fm, fr = (
            np.concatenate([fl[keep], fm[keep]]),
            np.concatenate([flm[keep], frm[keep]]),
            np.concatenate([fm[keep], fr[keep]]),
        )
        whole = np.concatenate([s_left[keep], s_right[keep]])
        ptol = np.concatenate([ptol[keep], ptol[keep]]) / 2.0
        mid = new_mid
    return total, err


def ternary_search(f, lo, hi, xtol=1e-10, max_iter=200):
    """Minimize a convex scalar function on ``[lo, hi]``.

    Golden-section variant of ternary search: one new evaluation per step.
    The endpoints are also evaluated so that boundary minima are returned
    exactly.

    Returns:
        ``(x_min, f_min)``.
    """
    lo, hi = float(lo), float(hi)
    if hi < lo:
        lo, hi = hi, lo
    if hi - lo <= xtol:
        x = 0.5 * (lo + hi) if hi > lo else lo
        return x, f(x)

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    best = min([(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)])
    return best[1], best[0]
