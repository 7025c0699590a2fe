"""Paraxial Laguerre-Gauss beams: scalar mode, E, B and the E-field gradient.

The scalar mode is written as

    U = (x - i sgn(m) y)^|m| * G(rho, z),    rho = x^2 + y^2,

where G is smooth in (rho, z).  Every Cartesian derivative up to second order
then follows from the product and chain rules without ever dividing by r, so
the beam axis is an ordinary point.  The e^{ikz} carrier is attached only when
the vector fields are assembled.

All evaluation functions accept a single point ``(x, y, z)`` or an array of
points with shape ``(..., 3)`` and broadcast over the leading axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polynomials import (
    MAX_AZIMUTHAL_INDEX,
    MAX_RADIAL_INDEX,
    LaguerreOrder,
    laguerre,
    laguerre_deriv,
    lg_norm,
)

__all__ = [
    "LGBeam",
    "ScalarJet",
    "FieldSample",
    "polarization",
    "scalar_jet",
    "electric_field",
    "magnetic_field",
    "electric_gradient",
    "field_sample",
    "energy_densities",
    "axial_magnetic_density",
    "beam_angular_momentum",
]

_SQRT_HALF = math.sqrt(0.5)


def polarization(spec) -> tuple[complex, complex]:
    """Parse a polarization spec into a unit Jones pair ``(alpha, beta)``.

    Accepted forms: ``"circ-"``/``"-1"`` (spin -1, alpha = 1/sqrt2,
    beta = i/sqrt2), ``"circ+"``/``"+1"`` (spin +1), ``"linear"`` (x
    polarized), ``"a,b"`` with two complex literals (normalized here), or an
    ``(alpha, beta)`` tuple.
    """
    if isinstance(spec, tuple):
        alpha, beta = complex(spec[0]), complex(spec[1])
    else:
        key = str(spec).strip().lower().replace(" ", "")
        if key in ("circ-", "-1", "circ-:-1", "sigma-"):
            return complex(_SQRT_HALF), 1j * _SQRT_HALF
        if key in ("circ+", "+1", "1", "circ+:+1", "sigma+"):
            return complex(_SQRT_HALF), -1j * _SQRT_HALF
        if key in ("linear", "lin", "x"):
            return 1 + 0j, 0j
        parts = key.split(",")
        if len(parts) != 2:
            raise ValueError(f"cannot parse polarization {spec!r}")
        try:
            alpha, beta = complex(parts[0]), complex(parts[1])
        except ValueError as exc:
            raise ValueError(f"cannot parse polarization {spec!r}") from exc
    norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    if norm == 0.0 or not math.isfinite(norm):
        raise ValueError("polarization vector must be finite and non-zero")
    return alpha / norm, beta / norm


@dataclass(frozen=True)
class LGBeam:
    """A Laguerre-Gauss mode with Jones polarization ``(alpha, beta)``.

    Parameters
    ----------
    E0 : float
        Field amplitude.
    k : float
        Wavenumber.
    w0 : float
        Waist radius.
    p, m : int
        Radial and azimuthal indices.
    alpha, beta : complex
        Polarization components, |alpha|^2 + |beta|^2 = 1.
    """

    E0: float = 1.0
    k: float = 1.0
    w0: float = 1.0
    p: int = 0
    m: int = 0
    alpha: complex = 1.0 + 0j
    beta: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not (self.k > 0 and self.w0 > 0):
            raise ValueError("k and w0 must be positive")
        if int(self.p) != self.p or int(self.m) != self.m:
            raise TypeError("p and m must be integers")
        if not 0 <= self.p <= MAX_RADIAL_INDEX:
            raise ValueError(f"p must lie in [0, {MAX_RADIAL_INDEX}]")
        if abs(self.m) > MAX_AZIMUTHAL_INDEX:
            raise ValueError(f"|m| must not exceed {MAX_AZIMUTHAL_INDEX}")
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("polarization must satisfy |alpha|^2 + |beta|^2 = 1")

    @classmethod
    def make(cls, *, p=0, m=0, kw0=10.0, pol="linear", w0=1.0, E0=1.0):
        """Build a beam from the dimensionless product k*w0 and a polarization spec."""
        alpha, beta = polarization(pol)
        return cls(E0=E0, k=kw0 / w0, w0=w0, p=p, m=m, alpha=alpha, beta=beta)

    @property
    def rayleigh_range(self) -> float:
        return 0.5 * self.k * self.w0**2

    def radius(self, z):
        """Beam radius w(z)."""
        return self.w0 * np.sqrt(1.0 + (np.asarray(z) / self.rayleigh_range) ** 2)

    def gouy_phase(self, z):
        return (2 * self.p + abs(self.m) + 1) * np.arctan(np.asarray(z) / self.rayleigh_range)

    @property
    def spin(self) -> float:
        a, b = self.alpha, self.beta
        return float((-1j * (a * b.conjugate() - b * a.conjugate())).real)


@dataclass(frozen=True)
class ScalarJet:
    """U and its Cartesian derivatives through second order.

    ``du[..., i]`` is dU/dr_i and ``d2u[..., i, j]`` is d2U/dr_i dr_j.
    """

    u: np.ndarray
    du: np.ndarray
    d2u: np.ndarray


@dataclass(frozen=True)
class FieldSample:
    """Complex E, B and gradE (``gradE[..., i, j] = dE_j/dr_i``) at one or more points."""

    E: np.ndarray
    B: np.ndarray
    gradE: np.ndarray


def _points(point) -> np.ndarray:
    pts = np.asarray(point, dtype=float)
    if pts.shape[-1:] != (3,):
        raise ValueError(f"points must have a trailing axis of length 3, got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def _radial_factor(beam: LGBeam, rho, z):
    """G and its (rho, z) derivatives: G, G_r, G_rr, G_z, G_zz, G_rz."""
    p, a = beam.p, abs(beam.m)
    zr = beam.rayleigh_range
    t = z / zr
    one_m = 1.0 - 1j * t
    one_p = 1.0 + 1j * t

    amp = lg_norm(p, beam.m) * math.sqrt(2.0) ** a / beam.w0 ** (a + 1)
    A = amp * one_m**p / one_p ** (p + a + 1)
    d1 = (-1j * p / one_m - 1j * (p + a + 1) / one_p) / zr
    dd1 = (p / one_m**2 - (p + a + 1) / one_p**2) / zr**2
    A1 = A * d1
    A2 = A * (d1 * d1 + dd1)

    # exp(-c rho) carries both the Gaussian envelope and wavefront curvature
    q = z - 1j * zr
    c = -0.5j * beam.k / q
    c1 = 0.5j * beam.k / q**2
    c2 = -1j * beam.k / q**3

    # Laguerre argument s(z) * rho with s = 2 / w(z)^2
    s_scale = 2.0 / beam.w0**2
    den = 1.0 + t * t
    s0 = s_scale / den
    s1 = -2.0 * s_scale * t / (den**2 * zr)
    s2 = s_scale * (6.0 * t * t - 2.0) / (den**3 * zr**2)

    order = LaguerreOrder(p, a)
    arg = s0 * rho
    L0 = laguerre(order, arg)
    L1 = laguerre_deriv(order, arg, 1)
    L2 = laguerre_deriv(order, arg, 2)
    env = np.exp(-c * rho)

    G = A * env * L0
    G_r = A * env * (-c * L0 + s0 * L1)
    G_rr = A * env * (c * c * L0 - 2.0 * c * s0 * L1 + s0 * s0 * L2)

    F = A1 * L0 - A * c1 * rho * L0 + A * s1 * rho * L1
    F_z = (
        A2 * L0
        + A1 * L1 * s1 * rho
        - A1 * c1 * rho * L0
        - A * c2 * rho * L0
        - A * c1 * rho * L1 * s1 * rho
        + A1 * s1 * rho * L1
        + A * s2 * rho * L1
        + A * s1 * s1 * rho * rho * L2
    )
    F_r = (
        A1 * L1 * s0
        - A * c1 * L0
        - A * c1 * rho * L1 * s0
        + A * s1 * L1
        + A * s1 * rho * L2 * s0
    )
    G_z = env * F
    G_zz = env * (-c1 * rho * F + F_z)
    G_rz = env * (-c * F + F_r)
    return G, G_r, G_rr, G_z, G_zz, G_rz


def scalar_jet(beam: LGBeam, point) -> ScalarJet:
    """Value and first/second Cartesian derivatives of the LG scalar mode.

    The e^{ikz} carrier is not included.
    """
    pts = _points(point)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    a = abs(beam.m)
    s = float(np.sign(beam.m))
    rho = x * x + y * y
    G, G_r, G_rr, G_z, G_zz, G_rz = _radial_factor(beam, rho, z)

    w = x - 1j * s * y

    def wpow(n):
        return w**n if n >= 0 else np.zeros_like(w)

    P = wpow(a)
    Pu = a * wpow(a - 1)
    Puu = a * (a - 1) * wpow(a - 2)
    Px, Py = Pu, -1j * s * Pu
    Pxx, Pxy, Pyy = Puu, -1j * s * Puu, -(s * s) * Puu

    u = P * G
    ux = Px * G + 2.0 * x * P * G_r
    uy = Py * G + 2.0 * y * P * G_r
    uz = P * G_z
    uxx = Pxx * G + 4.0 * x * Px * G_r + P * (4.0 * x * x * G_rr + 2.0 * G_r)
    uyy = Pyy * G + 4.0 * y * Py * G_r + P * (4.0 * y * y * G_rr + 2.0 * G_r)
    uxy = Pxy * G + 2.0 * y * Px * G_r + 2.0 * x * Py * G_r + 4.0 * x * y * P * G_rr
    uxz = Px * G_z + 2.0 * x * P * G_rz
    uyz = Py * G_z + 2.0 * y * P * G_rz
    uzz = P * G_zz

    du = np.stack([ux, uy, uz], axis=-1)
    d2u = np.stack(
        [
            np.stack([uxx, uxy, uxz], axis=-1),
            np.stack([uxy, uyy, uyz], axis=-1),
            np.stack([uxz, uyz, uzz], axis=-1),
        ],
        axis=-2,
    )
    return ScalarJet(u=u, du=du, d2u=d2u)


def _prefactor(beam: LGBeam, z):
    return beam.E0 * beam.w0 / beam.k * np.exp(1j * beam.k * z)


def _electric_terms(beam: LGBeam, jet: ScalarJet):
    k, al, be = beam.k, beam.alpha, beam.beta
    ux, uy = jet.du[..., 0], jet.du[..., 1]
    return np.stack([k * al * jet.u, k * be * jet.u, 1j * (al * ux + be * uy)], axis=-1)


def _faraday_terms(beam: LGBeam, jet: ScalarJet):
    """Bracketed components of H = rot E / (ik), written out term by term."""
    k, al, be = beam.k, beam.alpha, beam.beta
    u = jet.u
    ux, uy, uz = jet.du[..., 0], jet.du[..., 1], jet.du[..., 2]
    uxx, uxy, uyy = jet.d2u[..., 0, 0], jet.d2u[..., 0, 1], jet.d2u[..., 1, 1]
    hx = -k * be * u + 1j * be * uz + al / k * uxy + be / k * uyy
    hy = k * al * u - 1j * al * uz - al / k * uxx - be / k * uxy
    hz = 1j * (al * uy - be * ux)
    return np.stack([hx, hy, hz], axis=-1)


def _gradient_terms(beam: LGBeam, jet: ScalarJet):
    k, al, be = beam.k, beam.alpha, beam.beta
    V = _electric_terms(beam, jet)
    dV = np.empty(jet.d2u.shape, dtype=complex)
    dV[..., :, 0] = k * al * jet.du
    dV[..., :, 1] = k * be * jet.du
    dV[..., :, 2] = 1j * (al * jet.d2u[..., 0, :] + be * jet.d2u[..., 1, :])
    # carrier e^{ikz} contributes to the z row only
    dV[..., 2, :] += 1j * k * V
    return dV


def electric_field(beam: LGBeam, point) -> np.ndarray:
    """Complex electric field amplitude, shape ``(..., 3)``."""
    pts = _points(point)
    jet = scalar_jet(beam, pts)
    return _prefactor(beam, pts[..., 2])[..., None] * _electric_terms(beam, jet)


def magnetic_field(beam: LGBeam, point) -> np.ndarray:
    """Complex magnetic field (B = H in vacuum), shape ``(..., 3)``."""
    pts = _points(point)
    jet = scalar_jet(beam, pts)
    return _prefactor(beam, pts[..., 2])[..., None] * _faraday_terms(beam, jet)


def electric_gradient(beam: LGBeam, point) -> np.ndarray:
    """gradE[..., i, j] = dE_j / dr_i."""
    pts = _points(point)
    jet = scalar_jet(beam, pts)
    return _prefactor(beam, pts[..., 2])[..., None, None] * _gradient_terms(beam, jet)


def field_sample(beam: LGBeam, point) -> FieldSample:
    """E, B and gradE from a single jet evaluation."""
    pts = _points(point)
    jet = scalar_jet(beam, pts)
    pref = _prefactor(beam, pts[..., 2])
    return FieldSample(
        E=pref[..., None] * _electric_terms(beam, jet),
        B=pref[..., None] * _faraday_terms(beam, jet),
        gradE=pref[..., None, None] * _gradient_terms(beam, jet),
    )


def energy_densities(beam: LGBeam, point):
    """Cycle-averaged electric and magnetic densities |E|^2/16pi, |B|^2/16pi."""
    fs = field_sample(beam, point)
    i_e = np.sum(np.abs(fs.E) ** 2, axis=-1) / (16.0 * math.pi)
    i_m = np.sum(np.abs(fs.B) ** 2, axis=-1) / (16.0 * math.pi)
    return i_e, i_m


def axial_magnetic_density(beam: LGBeam) -> float:
    """Closed-form on-axis magnetic energy density of an |m| = 2 beam at any z = 0 point.

    I_M = E0^2/(16 pi) * 16 (p+1)(p+2) / (pi (k w0)^4) * |alpha -/+ i beta|^2,
    with the upper sign for m = +2.
    """
    if abs(beam.m) != 2:
        raise ValueError("closed-form axial magnetic density needs |m| = 2")
    sign = 1.0 if beam.m > 0 else -1.0
    pol = abs(beam.alpha - sign * 1j * beam.beta) ** 2
    p = beam.p
    kw0 = beam.k * beam.w0
    return beam.E0**2 / (16.0 * math.pi) * 16.0 * (p + 1) * (p + 2) / (math.pi * kw0**4) * pol


def beam_angular_momentum(beam: LGBeam) -> float:
    """Total angular momentum per photon along z, in units of hbar: m + sigma."""
    return beam.m + beam.spin

