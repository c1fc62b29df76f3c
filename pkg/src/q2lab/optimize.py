"""Dense-grid plus coordinate-refinement maximization of the two bivariate
objectives behind the numeric constants 0.283261 and (3 + sqrt 2)/2."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .graph import mu

QPRIME_CLAIM = 0.283261


@dataclass(frozen=True)
class OptResult:
    max_value: float
    argmax: tuple[float, float]
    grid_resolution: int
    refinement_tolerance: float
    box: tuple[tuple[float, float], tuple[float, float]] = ((0.0, 1.0), (0.0, 1.0))


def _check_box(x: float, y: float) -> None:
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"({x}, {y}) outside [0, 1]^2")


def _qprime_terms(a, b, m):
    return (b * b * (a ** 4 / 2 - a ** 3)
            + b * (a ** 3 - 3 * a ** 4 / 4 - a ** 3 * m + a ** 2 * m)
            + (a ** 4 / 4 - a ** 2 + a - a ** 2 * m + a ** 3 * m))


def qprime(a: float, b: float) -> float:
    _check_box(a, b)
    return float(_qprime_terms(a, b, float(mu(a).mu)))


def upsilon_diff_coefficient(a: float, b: float) -> float:
    """Coefficient of m! in the bound on Y3 - Y1; the same polynomial as qprime."""
    return qprime(a, b)


def qprime_left(a, b):
    """Q' with mu = 1, the a < 1/2 branch, extended continuously to a = 1/2."""
    return b * b * (a ** 4 / 2 - a ** 3) + b * (-3 * a ** 4 / 4 + a ** 2) + (a ** 4 / 4 + a - 2 * a ** 2 + a ** 3)


def qprime_right(a, b):
    """Q' with mu = (1 - a)/a, the a >= 1/2 branch."""
    return b * b * (a ** 4 / 2 - a ** 3) + b * (2 * a ** 3 - 3 * a ** 4 / 4 - 2 * a ** 2 + a) + (a ** 4 / 4 + a ** 2 - a ** 3)


def theorem2_surface(u: float, s: float) -> float:
    _check_box(u, s)
    return _t2(u, s)


def _t2(u, s):
    return 2 + np.sqrt(s * (1 - u)) + np.sqrt(u * (1 - s)) + u + s


def grid_argmax(fn: Callable, box, grid: int) -> tuple[float, float, float]:
    """Best grid point; ties go to the lexicographically smallest coordinates."""
    (x0, x1), (y0, y1) = box
    xs = np.linspace(x0, x1, grid + 1)
    ys = np.linspace(y0, y1, grid + 1)
    best, bx, by = -math.inf, x0, y0
    # row blocks keep memory bounded for large grids
    step = max(1, (1 << 22) // (grid + 1))
    for start in range(0, len(xs), step):
        X, Y = np.meshgrid(xs[start:start + step], ys, indexing="ij")
        V = np.broadcast_to(np.asarray(fn(X, Y), dtype=float), X.shape)
        i = int(np.argmax(V))
        if V.flat[i] > best:
            best, bx, by = float(V.flat[i]), float(X.flat[i]), float(Y.flat[i])
    return best, bx, by


def coordinate_refine(fn: Callable, x: float, y: float, box, tol: float,
                      max_rounds: int = 500) -> tuple[float, float, float]:
    """Alternate 1-d bounded maximizations until a round gains less than tol."""
    (x0, x1), (y0, y1) = box
    val = float(fn(x, y))
    for _ in range(max_rounds):
        rx = minimize_scalar(lambda t: -float(fn(t, y)), bounds=(x0, x1), method="bounded",
                             options={"xatol": 1e-13})
        if -rx.fun >= val:
            x = float(rx.x)
        ry = minimize_scalar(lambda t: -float(fn(x, t)), bounds=(y0, y1), method="bounded",
                             options={"xatol": 1e-13})
        if -ry.fun >= float(fn(x, y)):
            y = float(ry.x)
        # bounded Brent never probes the box edges exactly
        for cand in ((x0, y), (x1, y), (x, y0), (x, y1)):
            if float(fn(*cand)) > float(fn(x, y)):
                x, y = cand
        new = float(fn(x, y))
        if new - val < tol:
            val = max(val, new)
            break
        val = new
    return val, x, y


def maximize(fn: Callable, box=((0.0, 1.0), (0.0, 1.0)), grid: int = 2048, tol: float = 1e-12,
             refine: bool = True) -> OptResult:
    best, x, y = grid_argmax(fn, box, grid)
    if refine:
        (x0, x1), (y0, y1) = box
        hx, hy = (x1 - x0) / grid, (y1 - y0) / grid
        local = ((max(x0, x - 2 * hx), min(x1, x + 2 * hx)), (max(y0, y - 2 * hy), min(y1, y + 2 * hy)))
        val, rx, ry = coordinate_refine(fn, x, y, local, tol)
        if val > best:
            best, x, y = val, rx, ry
    return OptResult(best, (x, y), grid, tol, box)


QPRIME_REGIONS = {
    "left": (qprime_left, ((0.0, 0.5), (0.0, 1.0))),
    "right": (qprime_right, ((0.5, 1.0), (0.0, 1.0))),
}


def maximize_qprime(grid: int = 2048, tol: float = 1e-12, region: str = "global",
                    objective: Callable | None = None) -> OptResult:
    """Maximize Q'(a, b) over [0,1]^2, region by region.

    ``objective`` replaces both regional formulas (a test hook).
    """
    if region == "global":
        parts = [maximize_qprime(grid, tol, r, objective) for r in ("left", "right")]
        best = max(parts, key=lambda r: r.max_value)  # first wins ties: left region, smaller a
        res = OptResult(best.max_value, best.argmax, grid, tol, ((0.0, 1.0), (0.0, 1.0)))
        if objective is None and res.max_value > QPRIME_CLAIM:
            raise AssertionError(f"max of Q' = {res.max_value} exceeds {QPRIME_CLAIM}")
        return res
    fn, box = QPRIME_REGIONS[region]
    return maximize(objective or fn, box, grid, tol)


def maximize_theorem2_surface(grid: int = 2048, tol: float = 1e-12) -> OptResult:
    return maximize(_t2, ((0.0, 1.0), (0.0, 1.0)), grid, tol)
