"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
from scipy.optimize import least_squares

import permqg as pq


def seeded_arrays(seed: int, count: int, tolerance: float = 1e-9):
    rng = np.random.default_rng(seed)
    return [pq.random_array(rng, tolerance) for _ in range(count)]


def random_sigma_scale(rng):
    sigma = tuple(int(x) for x in rng.permutation([1, 2, 3]))
    scale = complex(*rng.normal(size=2))
    if abs(scale) < 1e-3:
        scale = 1.0 + 0.5j
    return sigma, scale


def solve_constrained_array(rng, tolerance: float = 1e-8):
    """Numerically solve the equal-diagonal, all-ratio-one constraint system.

    Parametrizes the three free entries as exponentials (so they can never
    vanish), pins the other two by the exact ratio constraints, and drives
    the two diagonal-equality equations to zero with least squares.  This
    generator knows nothing about the four closed forms, which makes it an
    independent oracle for the matcher.  Returns None when the solver does
    not converge tightly enough.
    """

    def unpack(x):
        p = np.exp(x[0] + 1j * x[1])
        q = np.exp(x[2] + 1j * x[3])
        r = np.exp(x[4] + 1j * x[5])
        return p, q, r

    def resid(x):
        p, q, r = unpack(x)
        t = p * r
        s = p * r / q
        d1 = r + np.conj(p) * t
        d2 = np.conj(q) * p + np.conj(r) * s
        d3 = np.conj(s) + np.conj(t) * q
        return [(d1 - d2).real, (d1 - d2).imag, (d1 - d3).real, (d1 - d3).imag]

    x0 = rng.normal(scale=0.7, size=6)
    sol = least_squares(resid, x0, xtol=3e-16, ftol=3e-16, gtol=3e-16)
    if np.linalg.norm(sol.fun) > 1e-11:
        return None
    p, q, r = unpack(sol.x)
    return pq.from_tuple((1.0, p, q, r, p * r / q, p * r), tolerance=tolerance)


def max_entry_diff(a: pq.PermArray, b: pq.PermArray) -> float:
    return max(abs(x - y) for x, y in zip(a.as_tuple(), b.as_tuple()))
