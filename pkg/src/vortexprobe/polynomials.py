"""Special functions used by the beam models.

Generalized Laguerre polynomials (with derivatives), Bessel functions of the
first kind and the Laguerre-Gauss normalization constant.  Everything accepts
numpy arrays for the continuous argument.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "LaguerreOrder",
    "MAX_RADIAL_INDEX",
    "MAX_AZIMUTHAL_INDEX",
    "laguerre",
    "laguerre_deriv",
    "laguerre_at_zero",
    "bessel_j",
    "bessel_j_reduced",
    "factorial",
    "lg_norm",
]

MAX_RADIAL_INDEX = 32
MAX_AZIMUTHAL_INDEX = 8


@dataclass(frozen=True)
class LaguerreOrder:
    """Indices ``(p, a)`` of the generalized Laguerre polynomial L_p^a."""

    p: int
    a: int

    def __post_init__(self):
        if int(self.p) != self.p or int(self.a) != self.a:
            raise TypeError("Laguerre indices must be integers")
        if self.p < 0 or self.a < 0:
            raise ValueError(f"Laguerre indices must be non-negative, got p={self.p}, a={self.a}")
        if self.p > MAX_RADIAL_INDEX:
            raise ValueError(f"radial index p={self.p} exceeds {MAX_RADIAL_INDEX}")


def _order(order, a=None) -> LaguerreOrder:
    if isinstance(order, LaguerreOrder):
        return order
    if a is None:
        p, a = order
    else:
        p = order
    return LaguerreOrder(int(p), int(a))


def laguerre(order, x):
    """Generalized Laguerre polynomial L_p^a(x).

    Upward three-term recurrence in p,

        (n+1) L_{n+1} = (2n + a + 1 - x) L_n - (n + a) L_{n-1},

    which is stable for the small p / moderate x range used by the beam
    models.

    Parameters
    ----------
    order : LaguerreOrder or (p, a) tuple
    x : float or ndarray

    Returns
    -------
    float or ndarray
    """
    order = _order(order)
    p, a = order.p, order.a
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for n in range(p):
        prev, cur = cur, ((2 * n + a + 1 - x) * cur - (n + a) * prev) / (n + 1)
    return cur[()] if cur.ndim == 0 else cur


def laguerre_deriv(order, x, n=1):
    """n-th derivative of L_p^a, from dL_p^a/dx = -L_{p-1}^{a+1} (L_{-1} = 0)."""
    order = _order(order)
    if n not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {n}")
    if order.p < n:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return out[()] if out.ndim == 0 else out
    sign = -1.0 if n == 1 else 1.0
    return sign * laguerre(LaguerreOrder(order.p - n, order.a + n), x)


def factorial(n: int) -> float:
    """n! as a float; exact integer product up to 20, lgamma beyond."""
    if n < 0:
        raise ValueError("factorial of a negative number")
    if n <= 20:
        return float(math.factorial(n))
    return math.exp(math.lgamma(n + 1))


def laguerre_at_zero(order) -> float:
    """L_p^a(0) = binomial(p + a, p)."""
    order = _order(order)
    return float(math.comb(order.p + order.a, order.p))


def lg_norm(p: int, m: int) -> float:
    """Laguerre-Gauss normalization sqrt(2 p! / (pi (p+|m|)!))."""
    if p < 0:
        raise ValueError(f"radial index must be non-negative, got {p}")
    a = abs(int(m))
    return math.sqrt(2.0 * factorial(p) / (math.pi * factorial(p + a)))


def bessel_j(m: int, x):
    """Bessel function of the first kind J_m(x) for integer m and real x >= 0.

    Negative orders follow J_{-m} = (-1)^m J_m.
    """
    m = int(m)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bessel_j expects a non-negative argument")
    sign = -1.0 if (m < 0 and m % 2) else 1.0
    out = sign * special.jv(abs(m), x)
    # jv(0, 0) is already 1; keep the higher orders exactly zero at the origin
    if abs(m) > 0:
        out = np.where(x == 0.0, 0.0, out)
    return out[()] if np.ndim(out) == 0 else out


def bessel_j_reduced(n: int, g: float, r):
    """J_n(g r) / r^n for n >= 0, regular at r = 0.

    Combined with a factor (x -/+ i y)^n this gives J_n(g r) e^{-/+ i n phi}
    without dividing by r on the axis.
    """
    if n < 0:
        raise ValueError("reduced Bessel function needs n >= 0")
    r = np.asarray(r, dtype=float)
    gr = g * r
    small = gr < 1.0
    # power series: sum_k (-1)^k (g/2)^{n+2k} r^{2k} / (k! (n+k)!)
    series = np.zeros_like(r)
    term = (0.5 * g) ** n / math.factorial(n) * np.ones_like(r)
    q = -(0.25 * gr * gr)
    for k in range(30):
        series = series + term
        term = term * q / ((k + 1) * (n + k + 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = special.jv(n, gr) / np.where(small, 1.0, r) ** n
    out = np.where(small, series, direct)
    return out[()] if out.ndim == 0 else out
