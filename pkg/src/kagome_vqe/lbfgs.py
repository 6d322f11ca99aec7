"""Limited-memory BFGS with a strong-Wolfe line search.

Two-loop recursion for the search direction and the bracketing/zoom line
search with safeguarded cubic interpolation (Nocedal and Wright,
Algorithms 3.5, 3.6 and 7.4).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np


@dataclass
class LbfgsOptions:
    memory: int = 10
    c1: float = 1e-4
    c2: float = 0.9
    gtol: float = 1e-9
    ftol: float = 1e-14
    max_iter: int = 5000
    max_linesearch: int = 40


@dataclass
class OptimizeResult:
    x: np.ndarray
    f: float
    g: np.ndarray
    nit: int
    nfev: int
    status: str
    trace: list = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.status in ("gtol", "ftol")


def _cubic_min(a, fa, da, b, fb, db):
    """Minimiser of the cubic matching f and f' at a and b, or None."""
    if a == b:
        return None
    d1 = da + db - 3.0 * (fa - fb) / (a - b)
    disc = d1 * d1 - da * db
    if disc < 0:
        return None
    d2 = math.copysign(math.sqrt(disc), b - a)
    den = db - da + 2.0 * d2
    if den == 0:
        return None
    return b - (b - a) * (db + d2 - d1) / den


class _LineSearch:
    def __init__(self, fg, x, f0, g0, d, opts, record):
        self.fg, self.x, self.d = fg, x, d
        self.f0, self.d0 = f0, float(g0 @ d)
        self.opts = opts
        self.record = record
        self.cache = {}

    def phi(self, a):
        xa = self.x + a * self.d
        f, g = self.fg(xa)
        self.record(xa, f, g)
        self.cache[a] = (xa, f, g)
        return f, float(g @ self.d)

    def armijo(self, a, f):
        return f <= self.f0 + self.opts.c1 * a * self.d0

    def curvature(self, d):
        return abs(d) <= -self.opts.c2 * self.d0

    def run(self, a1):
        """Step length meeting strong Wolfe, a weaker descent step, or None."""
        a_prev, f_prev, d_prev = 0.0, self.f0, self.d0
        a = a1
        for i in range(self.opts.max_linesearch):
            f, d = self.phi(a)
            if not np.isfinite(f) or not self.armijo(a, f) or (i > 0 and f >= f_prev):
                return self.zoom(a_prev, a, f_prev, f, d_prev, d)
            if self.curvature(d):
                return a
            if d >= 0:
                return self.zoom(a, a_prev, f, f_prev, d, d_prev)
            a_prev, f_prev, d_prev = a, f, d
            a *= 2.0
        return a_prev if a_prev > 0 else None

    def zoom(self, lo, hi, f_lo, f_hi, d_lo, d_hi):
        for _ in range(self.opts.max_linesearch):
            width = hi - lo
            a = None
            if np.isfinite(f_hi):
                a = _cubic_min(lo, f_lo, d_lo, hi, f_hi, d_hi)
            left, right = sorted((lo + 0.1 * width, hi - 0.1 * width))
            if a is None or not left <= a <= right:
                a = lo + 0.5 * width
            f, d = self.phi(a)
            if not np.isfinite(f) or not self.armijo(a, f) or f >= f_lo:
                hi, f_hi, d_hi = a, f, d
            else:
                if self.curvature(d):
                    return a
                if d * (hi - lo) >= 0:
                    hi, f_hi, d_hi = lo, f_lo, d_lo
                lo, f_lo, d_lo = a, f, d
            if abs(hi - lo) <= 1e-16 * max(1.0, abs(lo)):
                break
        # sufficient decrease without curvature: usable descent step
        return lo if lo > 0 else None


def minimize(fun_and_grad, x0, options: LbfgsOptions | None = None, on_eval=None):
    """Minimise ``fun_and_grad(x) -> (f, g)`` from ``x0``.

    ``on_eval(x, f, g)`` is called after every evaluation, line-search probes
    included. Termination status is one of gtol, ftol, max_iter or
    line_search_failed; the latter returns the best point found.
    """
    opts = options or LbfgsOptions()
    nfev = 0
    best = {}

    def record(x, f, g):
        nonlocal nfev
        nfev += 1
        if on_eval is not None:
            on_eval(x, f, g)
        if np.isfinite(f) and (not best or f < best["f"]):
            best.update(x=x.copy(), f=f, g=g.copy())

    x = np.array(x0, dtype=float)
    f, g = fun_and_grad(x)
    record(x, f, g)
    trace = [f]
    mem = deque(maxlen=opts.memory)
    status = "max_iter"
    nit = 0
    for nit in range(1, opts.max_iter + 1):
        if g.size == 0 or np.max(np.abs(g)) <= opts.gtol:
            status = "gtol"
            nit -= 1
            break
        d = _direction(g, mem)
        if g @ d >= 0:
            mem.clear()
            d = -g
        a1 = 1.0 if mem else min(1.0, 1.0 / np.linalg.norm(g))
        ls = _LineSearch(fun_and_grad, x, f, g, d, opts, record)
        a = ls.run(a1)
        if a is None and mem:
            mem.clear()
            d = -g
            ls = _LineSearch(fun_and_grad, x, f, g, d, opts, record)
            a = ls.run(min(1.0, 1.0 / np.linalg.norm(g)))
        if a is None:
            status = "line_search_failed"
            break
        x_new, f_new, g_new = ls.cache[a]
        s, y = x_new - x, g_new - g
        sy = float(s @ y)
        if sy > 1e-300:
            mem.append((s, y, 1.0 / sy))
        f_old = f
        x, f, g = x_new, f_new, g_new
        trace.append(f)
        if (f_old - f) <= opts.ftol * max(abs(f_old), abs(f), 1.0):
            status = "ftol"
            break
    else:
        nit = opts.max_iter
    if best and best["f"] < f:
        x, f, g = best["x"], best["f"], best["g"]
    return OptimizeResult(x, float(f), g, nit, nfev, status, trace)


def _direction(g, mem):
    q = -g.copy()
    alphas = []
    for s, y, rho in reversed(mem):
        a = rho * (s @ q)
        alphas.append(a)
        q -= a * y
    if mem:
        s, y, _ = mem[-1]
        q *= (s @ y) / (y @ y)
    for (s, y, rho), a in zip(mem, reversed(alphas)):
        b = rho * (y @ q)
        q += (a - b) * s
    return q
