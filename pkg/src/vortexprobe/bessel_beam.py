"""Exact (non-paraxial) Bessel beams built from a discrete transverse spectrum.

A beam is a weighted sum of modes with transverse wavenumber ``g`` and
longitudinal wavenumber ``h = sqrt(k^2 - g^2)``.  Each mode uses

    F_j(r, phi, z) = J_j(g r) exp(i (h z - j phi))

and the electric field

    E = (alpha, beta, 0) F_m + (g / 2h) [(i alpha + beta) F_{m-1} - (i alpha - beta) F_{m+1}] z_hat

The sign of the longitudinal term is the one that makes div E vanish
identically for this phase convention.  Derivatives use

    dF_j/dx = (g/2)(F_{j-1} - F_{j+1}),   dF_j/dy = -(i g/2)(F_{j-1} + F_{j+1}),

so B = rot E / (ik) is evaluated in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lg_beam import FieldSample, _points, polarization
from .polynomials import bessel_j_reduced

__all__ = [
    "BesselBeam",
    "bessel_electric_field",
    "bessel_electric_gradient",
    "bessel_magnetic_field",
    "bessel_field_sample",
    "bessel_axial_magnetic_density",
    "axial_spectral_integral",
]


@dataclass(frozen=True)
class BesselBeam:
    """Bessel beam with azimuthal index ``m`` and spectrum ``nodes``.

    ``nodes`` is a tuple of ``(g, weight)`` pairs with ``0 < g < k``.  A
    smooth spectrum f(g) is represented by quadrature nodes whose weights
    already include f (see :meth:`from_spectrum`).
    """

    k: float = 1.0
    m: int = 0
    alpha: complex = 1.0 + 0j
    beta: complex = 0j
    nodes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        nodes = tuple((float(g), complex(w)) for g, w in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not self.k > 0:
            raise ValueError("k must be positive")
        if int(self.m) != self.m:
            raise TypeError("m must be an integer")
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("polarization must satisfy |alpha|^2 + |beta|^2 = 1")
        for g, _ in nodes:
            if not 0.0 < g < self.k:
                raise ValueError(f"transverse wavenumber g={g} outside (0, k={self.k})")

    @classmethod
    def single(cls, k, m, g, weight=1.0, pol="circ-"):
        alpha, beta = polarization(pol)
        return cls(k=k, m=m, alpha=alpha, beta=beta, nodes=((g, weight),))

    @classmethod
    def from_spectrum(cls, k, m, f, g_min, g_max, n_nodes=64, pol="circ-"):
        """Discretize a smooth spectrum f(g) on (g_min, g_max) with Gauss-Legendre nodes."""
        if not 0.0 <= g_min < g_max < k:
            raise ValueError("spectrum support must lie inside [0, k)")
        x, w = np.polynomial.legendre.leggauss(int(n_nodes))
        half = 0.5 * (g_max - g_min)
        g = g_min + half * (x + 1.0)
        weights = half * w * np.array([complex(f(gi)) for gi in g])
        alpha, beta = polarization(pol)
        return cls(k=k, m=m, alpha=alpha, beta=beta, nodes=tuple(zip(g, weights)))

    @property
    def spin(self) -> float:
        a, b = self.alpha, self.beta
        return float((-1j * (a * b.conjugate() - b * a.conjugate())).real)


def _mode(j, g, x, y):
    """Transverse part of F_j, regular on the axis."""
    n = abs(j)
    r = np.sqrt(x * x + y * y)
    if j >= 0:
        poly = (x - 1j * y) ** n
    else:
        poly = (-1) ** n * (x + 1j * y) ** n
    return poly * bessel_j_reduced(n, g, r)


def _node_terms(bb: BesselBeam, g, pts):
    """E and gradE contributions of a single unit-weight node."""
    k, m, al, be = bb.k, bb.m, bb.alpha, bb.beta
    h = math.sqrt(k * k - g * g)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    carrier = np.exp(1j * h * z)
    F = {j: _mode(j, g, x, y) * carrier for j in range(m - 2, m + 3)}

    def dx(j):
        return 0.5 * g * (F[j - 1] - F[j + 1])

    def dy(j):
        return -0.5j * g * (F[j - 1] + F[j + 1])

    cz = g / (2.0 * h)
    cm, cp = cz * (1j * al + be), -cz * (1j * al - be)
    E = np.stack([al * F[m], be * F[m], cm * F[m - 1] + cp * F[m + 1]], axis=-1)

    grad = np.empty(E.shape[:-1] + (3, 3), dtype=complex)
    grad[..., 0, 0] = al * dx(m)
    grad[..., 0, 1] = be * dx(m)
    grad[..., 0, 2] = cm * dx(m - 1) + cp * dx(m + 1)
    grad[..., 1, 0] = al * dy(m)
    grad[..., 1, 1] = be * dy(m)
    grad[..., 1, 2] = cm * dy(m - 1) + cp * dy(m + 1)
    grad[..., 2, :] = 1j * h * E
    return E, grad


def _evaluate(bb: BesselBeam, point):
    pts = _points(point)
    E = np.zeros(pts.shape, dtype=complex)
    grad = np.zeros(pts.shape[:-1] + (3, 3), dtype=complex)
    for g, w in bb.nodes:
        e, dg = _node_terms(bb, g, pts)
        E += w * e
        grad += w * dg
    return E, grad


def _curl(grad):
    return np.stack(
        [
            grad[..., 1, 2] - grad[..., 2, 1],
            grad[..., 2, 0] - grad[..., 0, 2],
            grad[..., 0, 1] - grad[..., 1, 0],
        ],
        axis=-1,
    )


def bessel_electric_field(bb: BesselBeam, point) -> np.ndarray:
    return _evaluate(bb, point)[0]


def bessel_electric_gradient(bb: BesselBeam, point) -> np.ndarray:
    """gradE[..., i, j] = dE_j / dr_i."""
    return _evaluate(bb, point)[1]


def bessel_magnetic_field(bb: BesselBeam, point) -> np.ndarray:
    """B = rot E / (ik) from the closed-form gradient."""
    return _curl(_evaluate(bb, point)[1]) / (1j * bb.k)


def bessel_field_sample(bb: BesselBeam, point) -> FieldSample:
    E, grad = _evaluate(bb, point)
    return FieldSample(E=E, B=_curl(grad) / (1j * bb.k), gradE=grad)


def axial_spectral_integral(bb: BesselBeam) -> complex:
    """Sum over nodes of weight * g^2 / (h k)."""
    k = bb.k
    return sum(w * g * g / (math.sqrt(k * k - g * g) * k) for g, w in bb.nodes) + 0j


def bessel_axial_magnetic_density(bb: BesselBeam) -> float:
    """On-axis magnetic energy density |B|^2 / 8pi of an |m| = 2 circular beam.

    Equals |integral f(g) g^2/(h k) dg|^2 / (32 pi).  Only m = +2 with spin -1
    and m = -2 with spin +1 carry a field on the axis in this form.
    """
    if abs(bb.m) != 2:
        raise ValueError("axial magnetic density closed form needs |m| = 2")
    wanted = -1.0 if bb.m > 0 else 1.0
    if abs(bb.spin - wanted) > 1e-12:
        raise ValueError(f"m={bb.m} needs circular polarization with spin {wanted:+.0f}")
    return abs(axial_spectral_integral(bb)) ** 2 / (32.0 * math.pi)
