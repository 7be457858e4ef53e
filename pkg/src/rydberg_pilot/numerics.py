"""Shared numerical building blocks.

Uniform-knot cubic tables with O(1) lookup, panelized Gauss-Legendre
quadrature (plain and cumulative), and Ridders' polynomial-extrapolation
derivative with an error estimate.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline

__all__ = [
    "UniformCubicTable",
    "gauss_panels_cumulative",
    "gauss_integral",
    "ridders_derivative",
]

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def gauss_panels_cumulative(f, knots: np.ndarray, order: int = 8) -> np.ndarray:
    """Cumulative integral of ``f`` from ``knots[0]`` to every knot.

    One Gauss-Legendre rule of the given order per inter-knot panel; the
    integrand must be smooth on the closed interval.  Returns an array the
    same length as ``knots`` whose first entry is 0.
    """
    knots = np.asarray(knots, dtype=float)
    x, w = _gl_nodes(order)
    a = knots[:-1]
    half = 0.5 * np.diff(knots)
    # nodes laid out panel-major: shape (n_panels, order)
    pts = a[:, None] + half[:, None] * (x[None, :] + 1.0)
    vals = f(pts)
    panel = half * (vals @ w)
    out = np.empty(knots.shape[0])
    out[0] = 0.0
    np.cumsum(panel, out=out[1:])
    return out


def gauss_integral(f, a: float, b: float, panels: int = 64, order: int = 8) -> float:
    """Integral of a smooth ``f`` over [a, b] by composite Gauss-Legendre."""
    if b == a:
        return 0.0
    knots = np.linspace(a, b, panels + 1)
    return float(gauss_panels_cumulative(f, knots, order=order)[-1])


class UniformCubicTable:
    """Piecewise-cubic interpolant on uniformly spaced knots.

    Coefficients come from a not-a-knot cubic spline; evaluation avoids the
    generic knot search since the spacing is uniform.  Supports stacked
    columns so several tabulated functions sharing the same knots can be
    read with one lookup.
    """

    __slots__ = ("x0", "x1", "h", "n", "coef")

    def __init__(self, x: np.ndarray, y: np.ndarray):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.size < 4:
            raise ValueError("need at least 4 knots")
        steps = np.diff(x)
        if not np.allclose(steps, steps[0], rtol=1e-12, atol=0.0):
            raise ValueError("knots must be uniformly spaced")
        self.x0 = float(x[0])
        self.x1 = float(x[-1])
        self.n = x.size
        self.h = float(steps[0])
        # CubicSpline coefficient layout: c[k, i, ...] for (x - x_i)^(3-k)
        self.coef = CubicSpline(x, y, axis=0).c

    def _index(self, x):
        i = np.floor((np.asarray(x, dtype=float) - self.x0) / self.h).astype(int)
        return np.clip(i, 0, self.n - 2)

    def __call__(self, x):
        i = self._index(x)
        xi = np.asarray(x, dtype=float) - (self.x0 + i * self.h)
        c = self.coef
        if c.ndim == 3:
            xi = xi[..., None]
        return ((c[0, i] * xi + c[1, i]) * xi + c[2, i]) * xi + c[3, i]

    def derivative(self, x):
        i = self._index(x)
        xi = np.asarray(x, dtype=float) - (self.x0 + i * self.h)
        c = self.coef
        if c.ndim == 3:
            xi = xi[..., None]
        return (3.0 * c[0, i] * xi + 2.0 * c[1, i]) * xi + c[2, i]


def ridders_derivative(f, x: float, h: float, max_tab: int = 10,
                       con: float = 1.4, safe: float = 2.0) -> tuple[float, float]:
    """First derivative of ``f`` at ``x`` with Ridders' extrapolation.

    ``h`` is the initial step; it should span a range over which ``f``
    varies noticeably.  Returns ``(derivative, error_estimate)``.
    """
    if h == 0.0:
        raise ValueError("initial step must be nonzero")
    con2 = con * con
    tab = np.empty((max_tab, max_tab))
    hh = h
    tab[0, 0] = (f(x + hh) - f(x - hh)) / (2.0 * hh)
    ans = tab[0, 0]
    err = np.inf
    for i in range(1, max_tab):
        hh /= con
        tab[0, i] = (f(x + hh) - f(x - hh)) / (2.0 * hh)
        fac = con2
        for j in range(1, i + 1):
            tab[j, i] = (tab[j - 1, i] * fac - tab[j - 1, i - 1]) / (fac - 1.0)
            fac *= con2
            errt = max(abs(tab[j, i] - tab[j - 1, i]),
                       abs(tab[j, i] - tab[j - 1, i - 1]))
            if errt <= err:
                err = errt
                ans = tab[j, i]
        if abs(tab[i, i] - tab[i - 1, i - 1]) >= safe * err:
            break
    return float(ans), float(err)
