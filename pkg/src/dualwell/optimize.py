"""Scalar bracketed minimisation used by the variational fits."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = 1e-12, max_iter: int = 200) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The ends are compared against the interior estimate, so a minimum sitting
    on the boundary is returned exactly.
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    best = (x, f(x))
    for end in (float(lo), float(hi)):
        fe = f(end)
        if fe < best[1]:
            best = (end, fe)
    return best


def parabolic_step(f: Callable[[float], float], x: float, h: float,
                   lo: float, hi: float) -> tuple[float, float]:
    """One three-point parabolic refinement around ``x``; keeps the better point."""
    fx = f(x)
    if x - h < lo or x + h > hi:
        return x, fx
    fl, fr = f(x - h), f(x + h)
    denom = fl - 2.0 * fx + fr
    if denom <= 0:
        return x, fx
    xn = x + 0.5 * h * (fl - fr) / denom
    xn = min(max(xn, lo), hi)
    fn = f(xn)
    return (xn, fn) if fn < fx else (x, fx)


def grid_then_golden(f: Callable[[float], float], lo: float, hi: float,
                     points: int = 1001, tol: float = 1e-12) -> tuple[float, float]:
    """Global minimum on ``[lo, hi]``: grid scan for the basin, golden-section inside it."""
    grid = np.linspace(lo, hi, points)
    values = np.array([f(x) for x in grid])
    i = int(np.argmin(values))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, points - 1)]
    x, fx = golden_section(f, a, b, tol=tol)
    step = max(1e-6, 10 * tol)
    return parabolic_step(f, x, step, lo, hi) if lo < x < hi else (x, fx)
