"""Independent numerical oracles for the beam and detector models.

Finite differences with Richardson extrapolation, Maxwell and Helmholtz
residuals, sphere quadrature of the multipole matrix elements of a spherical
atom and adaptive 1-D Gauss-Legendre quadrature.  Beam modules are only
touched through their public evaluation functions.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass

import numpy as np

from . import lg_beam
from .bessel_beam import (
    BesselBeam,
    bessel_axial_magnetic_density,
    bessel_electric_field,
    bessel_field_sample,
    bessel_magnetic_field,
)
from .detector import (
    CHANNELS,
    VALID_M,
    amplitude_table,
    cartesian_dipole,
    cartesian_quadrupole,
    excitation_rate,
    DetectorSpec,
    MultipoleMoments,
    on_axis_rate_m2,
    selection_rule_scan,
)
from .lg_beam import LGBeam, field_sample

__all__ = [
    "FDConfig",
    "QuadratureError",
    "fd_jet",
    "fd_hessian",
    "fd_laplacian",
    "maxwell_residuals",
    "helmholtz_residual",
    "sphere_quadrature_moments",
    "shape_coefficient",
    "quad_1d",
    "Check",
    "run_suite",
    "inject_fault",
]


class QuadratureError(RuntimeError):
    """Raised when a quadrature fails to reach its tolerance."""


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference step ``h`` and number of Richardson levels."""

    h: float = 1.0 / 200.0
    levels: int = 2

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("step must be positive")
        if self.levels < 1:
            raise ValueError("need at least one Richardson level")

    @classmethod
    def for_beam(cls, beam, levels=2):
        """Default step w0/200 for LG beams, (1/k)/200 for Bessel beams."""
        scale = beam.w0 if isinstance(beam, LGBeam) else 1.0 / beam.k
        return cls(h=scale / 200.0, levels=levels)


def _richardson(estimates):
    """Neville table for O(h^2)-leading sequences at steps h, h/2, h/4, ...

    Returns (best estimate, error estimate).
    """
    col = [np.asarray(e) for e in estimates]
    last = col[-1]
    j = 1
    while len(col) > 1:
        last = col[-1]
        factor = 4.0**j
        col = [(factor * col[i + 1] - col[i]) / (factor - 1.0) for i in range(len(col) - 1)]
        j += 1
    return col[0], np.abs(col[0] - last)


def _finite(values):
    if not np.all(np.isfinite(values)):
        raise FloatingPointError("non-finite sample in finite-difference stencil")
    return values


def fd_jet(func, point, cfg: FDConfig = FDConfig()):
    """Value and Jacobian ``J[i, ...] = d func / d r_i`` by central differences.

    Returns ``(value, jacobian, error_estimate)``.
    """
    x0 = np.asarray(point, dtype=float)
    value = _finite(np.asarray(func(x0)))
    rows, errs = [], []
    for i in range(3):
        e = np.zeros(3)
        e[i] = 1.0
        est = []
        for lvl in range(cfg.levels + 1):
            h = cfg.h / 2.0**lvl
            fp = _finite(np.asarray(func(x0 + h * e)))
            fm = _finite(np.asarray(func(x0 - h * e)))
            est.append((fp - fm) / (2.0 * h))
        best, err = _richardson(est)
        rows.append(best)
        errs.append(err)
    return value, np.stack(rows), np.stack(errs)


def fd_hessian(func, point, cfg: FDConfig = FDConfig()):
    """Second derivatives ``H[i, j, ...]`` of a scalar- or array-valued function."""
    x0 = np.asarray(point, dtype=float)
    f0 = _finite(np.asarray(func(x0)))
    eye = np.eye(3)
    H = np.zeros((3, 3) + f0.shape, dtype=np.result_type(f0, float))
    for i in range(3):
        for j in range(i, 3):
            est = []
            for lvl in range(cfg.levels + 1):
                h = cfg.h / 2.0**lvl
                if i == j:
                    fp = np.asarray(func(x0 + h * eye[i]))
                    fm = np.asarray(func(x0 - h * eye[i]))
                    est.append(_finite(fp - 2.0 * f0 + fm) / h**2)
                else:
                    a, b = h * eye[i], h * eye[j]
                    s = func(x0 + a + b) - func(x0 + a - b) - func(x0 - a + b) + func(x0 - a - b)
                    est.append(_finite(np.asarray(s)) / (4.0 * h * h))
            H[i, j] = H[j, i] = _richardson(est)[0]
    return H


def fd_laplacian(func, point, cfg: FDConfig = FDConfig()):
    H = fd_hessian(func, point, cfg)
    return H[0, 0] + H[1, 1] + H[2, 2]


def _curl(grad):
    return np.array(
        [grad[1, 2] - grad[2, 1], grad[2, 0] - grad[0, 2], grad[0, 1] - grad[1, 0]]
    )


def _peak_field(beam: LGBeam) -> float:
    """Largest |E| over the waist plane, from a polar grid search."""
    r = np.linspace(0.0, 4.0 * beam.w0 * math.sqrt(1.0 + beam.p + abs(beam.m)), 600)
    phi = np.linspace(0.0, math.pi, 9)
    R, PHI = np.meshgrid(r, phi)
    pts = np.stack([R * np.cos(PHI), R * np.sin(PHI), np.zeros_like(R)], axis=-1)
    E = lg_beam.electric_field(beam, pts)
    return float(np.sqrt(np.sum(np.abs(E) ** 2, axis=-1)).max())


def maxwell_residuals(beam, point, peak: float | None = None):
    """Faraday residual ||ik B - rot E|| / ||k B|| and scaled |div E|.

    ``rot E`` and ``div E`` come from the closed-form gradient.  For LG beams
    the divergence is reported as |div E| w0 / |E|_peak; for Bessel beams as
    |div E| / (k sum |weight|).
    """
    if isinstance(beam, BesselBeam):
        fs = bessel_field_sample(beam, point)
        scale = beam.k * (sum(abs(w) for _, w in beam.nodes) or 1.0)
    else:
        fs = field_sample(beam, point)
        if peak is None:
            peak = _peak_field(beam)
        scale = peak / beam.w0
    k = beam.k
    curl = _curl(fs.gradE)
    denom = np.linalg.norm(k * fs.B)
    faraday = np.linalg.norm(1j * k * fs.B - curl) / denom if denom > 0 else float(np.linalg.norm(curl))
    div = abs(np.trace(fs.gradE)) / scale
    return float(faraday), float(div)


def helmholtz_residual(bb: BesselBeam, point, cfg: FDConfig | None = None) -> float:
    """max_j |(lap + k^2) E_j| / (k^2 max_j |E_j|) with a finite-difference Laplacian."""
    cfg = cfg or FDConfig.for_beam(bb)
    E = bessel_electric_field(bb, point)
    lap = fd_laplacian(lambda x: bessel_electric_field(bb, x), point, cfg)
    return float(np.abs(lap + bb.k**2 * E).max() / (bb.k**2 * np.abs(E).max()))


# --- sphere quadrature -------------------------------------------------------

def _ylm(l, M, x, y, z):
    """Orthonormal spherical harmonics (Condon-Shortley phase) for l <= 2."""
    if l == 0:
        return np.full_like(x, 1.0 / math.sqrt(4 * math.pi), dtype=complex)
    if l == 1:
        if M == 0:
            return math.sqrt(3 / (4 * math.pi)) * z + 0j
        return -M * math.sqrt(3 / (8 * math.pi)) * (x + 1j * M * y)
    if l == 2:
        if M == 0:
            return math.sqrt(5 / (16 * math.pi)) * (3 * z * z - 1) + 0j
        if abs(M) == 1:
            return -M * math.sqrt(15 / (8 * math.pi)) * z * (x + 1j * M * y)
        if abs(M) == 2:
            return math.sqrt(15 / (32 * math.pi)) * (x + 1j * np.sign(M) * y) ** 2
    raise ValueError(f"unsupported (l, M) = ({l}, {M})")


def _grad_y1(M):
    """Gradient of the solid harmonic r Y_1^M (a constant vector)."""
    if M == 0:
        return np.array([0, 0, math.sqrt(3 / (4 * math.pi))], dtype=complex)
    return -M * math.sqrt(3 / (8 * math.pi)) * np.array([1, 1j * M, 0])


def _sphere_grid(n_theta, n_phi):
    ct, wt = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    CT, PHI = np.meshgrid(ct, phi, indexing="ij")
    ST = np.sqrt(1.0 - CT**2)
    W = np.outer(wt, np.full(n_phi, 2 * math.pi / n_phi))
    return ST * np.cos(PHI), ST * np.sin(PHI), CT, W


def _sphere_integrals(M, rank, n_theta, n_phi):
    x, y, z, W = _sphere_grid(n_theta, n_phi)
    r = np.stack([x, y, z], axis=-1)
    if rank == "dipole":
        f = np.conj(_ylm(0, 0, x, y, z)) * _ylm(1, M, x, y, z)
        return np.einsum("ab,abi->i", W * f, r)
    if rank == "magnetic":
        # [r x grad] Y_1^M on the unit sphere
        lrot = np.cross(r, np.broadcast_to(_grad_y1(M), r.shape))
        f = np.conj(_ylm(1, 0, x, y, z))
        return np.einsum("ab,abi->i", W * f, lrot)
    if rank == "quadrupole":
        f = np.conj(_ylm(0, 0, x, y, z)) * _ylm(2, M, x, y, z)
        tensor = 3.0 * r[..., :, None] * r[..., None, :] - np.eye(3)
        return np.einsum("ab,abij->ij", W * f, tensor)
    raise ValueError(f"unknown rank {rank!r}")


def sphere_quadrature_moments(M: int, rank: str, n_theta: int = 8, n_phi: int = 12, tol: float = 1e-10):
    """Angular matrix elements of a spherically symmetric atom.

    ``rank`` is ``"dipole"``, ``"magnetic"`` or ``"quadrupole"``; the radial
    factor is set to one.  The integral is evaluated on a Gauss-Legendre in
    cos(theta) times uniform phi grid and again at doubled resolution; the
    doubled result is returned if both agree within ``tol``.
    """
    limit = 2 if rank == "quadrupole" else 1
    if abs(M) > limit:
        raise ValueError(f"M={M} out of range for {rank}")
    coarse = _sphere_integrals(M, rank, n_theta, n_phi)
    fine = _sphere_integrals(M, rank, 2 * n_theta, 2 * n_phi)
    if np.abs(fine - coarse).max() > tol:
        raise QuadratureError(f"sphere quadrature not converged for {rank} M={M}")
    return fine


def shape_coefficient(values, shape) -> complex:
    """Least-squares c with values ~ c * shape, and the residual norm."""
    v = np.ravel(values)
    s = np.ravel(shape)
    c = np.vdot(s, v) / np.vdot(s, s)
    return complex(c), float(np.linalg.norm(v - c * s))


# --- 1-D quadrature ----------------------------------------------------------

def quad_1d(f, a: float, b: float, tol: float = 1e-12, order: int = 10, max_depth: int = 40):
    """Adaptive Gauss-Legendre quadrature of ``f`` on [a, b].

    Each panel is integrated with ``order`` and ``2*order`` points; panels
    whose two estimates disagree by more than their share of ``tol`` are
    bisected.  Returns ``(value, error_estimate)``.
    """
    if not a < b:
        raise ValueError("need a < b")
    xs, ws = np.polynomial.legendre.leggauss(order)
    xl, wl = np.polynomial.legendre.leggauss(2 * order)

    def rule(lo, hi, x, w):
        half = 0.5 * (hi - lo)
        pts = lo + half * (x + 1.0)
        return half * np.sum(w * np.array([f(t) for t in pts]))

    total, err_total = 0j, 0.0
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        coarse, fine = rule(lo, hi, xs, ws), rule(lo, hi, xl, wl)
        err = abs(fine - coarse)
        share = tol * (hi - lo) / (b - a)
        if err <= max(share, 1e-15 * abs(fine)):
            total += fine
            err_total += err
        elif depth >= max_depth:
            raise QuadratureError(f"tolerance {tol} not reached on [{lo}, {hi}]")
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    if total.imag == 0:
        return total.real, err_total
    return total, err_total


# --- verification suite ------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.measured) and self.measured <= self.threshold)


@contextlib.contextmanager
def inject_fault(name: str | None):
    """Temporarily corrupt part of the field model (mutation testing).

    ``"faraday-y-sign"`` flips the sign of the second-derivative correction
    in the y component of the magnetic field.
    """
    if name is None:
        yield
        return
    if name != "faraday-y-sign":
        raise ValueError(f"unknown fault {name!r}")
    original = lg_beam._faraday_terms

    def faulty(beam, jet):
        h = original(beam, jet)
        uxx = jet.d2u[..., 0, 0]
        h = h.copy()
        h[..., 1] += 2.0 * beam.alpha / beam.k * uxx
        return h

    lg_beam._faraday_terms = faulty
    try:
        yield
    finally:
        lg_beam._faraday_terms = original


def _quasi_random_points(n, half_width, seed=0):
    from scipy.stats import qmc

    sampler = qmc.Halton(d=3, scramble=True, seed=seed)
    return (2.0 * sampler.random(n) - 1.0) * half_width


def _fd_agreement(analytic, fd):
    scale = max(np.abs(analytic).max(), np.abs(fd).max())
    if scale == 0:
        return 0.0
    return float(np.abs(analytic - fd).max() / scale)


def run_suite(p_max: int = 4, kw0_values=(4.0, 6.0, 10.0, 20.0), n_points: int = 40) -> list[Check]:
    """Run the invariant checks and return one :class:`Check` per item."""
    checks: list[Check] = []
    pols = {"circ-": "circ-", "circ+": "circ+", "linear": "linear"}

    # Faraday identity for the LG beam
    worst = 0.0
    pts = _quasi_random_points(n_points, 2.0)
    for p in range(min(p_max, 3) + 1):
        for m in range(-2, 3):
            for pol in pols:
                beam = LGBeam.make(p=p, m=m, kw0=6.0, pol=pol)
                fs = field_sample(beam, pts)
                curl = np.stack(
                    [
                        fs.gradE[:, 1, 2] - fs.gradE[:, 2, 1],
                        fs.gradE[:, 2, 0] - fs.gradE[:, 0, 2],
                        fs.gradE[:, 0, 1] - fs.gradE[:, 1, 0],
                    ],
                    axis=-1,
                )
                kB = beam.k * fs.B
                res = np.linalg.norm(1j * kB - curl, axis=-1) / np.linalg.norm(kB, axis=-1)
                worst = max(worst, float(res.max()))
    checks.append(Check("faraday_lg", worst, 1e-8))

    # Faraday identity against a finite-difference curl, independent of the B formula
    worst = 0.0
    for m, pol in ((2, "circ-"), (-1, "linear"), (0, "0.6,0.8j")):
        beam = LGBeam.make(p=2, m=m, kw0=6.0, pol=pol)
        for x in pts[:5]:
            _, J, _ = fd_jet(lambda r: lg_beam.electric_field(beam, r), x, FDConfig.for_beam(beam))
            B = lg_beam.magnetic_field(beam, x)
            worst = max(worst, _fd_agreement(1j * beam.k * B, _curl(J)))
    checks.append(Check("faraday_fd_lg", worst, 1e-7))

    # Bessel Faraday and divergence
    bb = BesselBeam.from_spectrum(1.0, 2, lambda g: g * (1.0 - g), 0.05, 0.9, 16)
    far, div = 0.0, 0.0
    for x in _quasi_random_points(10, 6.0, seed=1):
        f_res, d_res = maxwell_residuals(bb, x)
        _, J, _ = fd_jet(lambda r: bessel_electric_field(bb, r), x, FDConfig.for_beam(bb))
        far = max(far, f_res, _fd_agreement(1j * bb.k * bessel_magnetic_field(bb, x), _curl(J)))
        div = max(div, d_res)
    checks.append(Check("faraday_bessel", far, 1e-7))
    checks.append(Check("div_bessel", div, 1e-9))

    # analytic gradient vs Richardson finite differences
    worst = 0.0
    for p, m, pol in ((0, 0, "linear"), (2, 2, "circ-"), (1, -1, "circ+"), (3, 1, "0.6,0.8j")):
        beam = LGBeam.make(p=p, m=m, kw0=6.0, pol=pol)
        for x in pts[:5]:
            _, J, _ = fd_jet(lambda r: lg_beam.electric_field(beam, r), x, FDConfig.for_beam(beam))
            worst = max(worst, _fd_agreement(lg_beam.electric_gradient(beam, x), J))
    checks.append(Check("gradient_fd", worst, 1e-7))

    # divergence residual grows ~4x when k w0 is halved; the |E|_peak
    # normaliser itself drifts at small k w0, hence the loose band
    beam_a = LGBeam.make(p=2, m=1, kw0=20.0, pol="circ-")
    beam_b = LGBeam.make(p=2, m=1, kw0=10.0, pol="circ-")
    x = np.array([0.4, 0.3, 0.0])
    ratio = maxwell_residuals(beam_b, x)[1] / maxwell_residuals(beam_a, x)[1]
    checks.append(Check("div_scaling", abs(ratio / 4.0 - 1.0), 0.05))

    # selection rules
    worst = 0.0
    ok = True
    for p in range(p_max + 1):
        rep = selection_rule_scan(p, kw0=6.0)
        worst = max(worst, rep.worst)
        ok = ok and rep.passed
    checks.append(Check("selection_rules", worst if ok else math.inf, 1e-12))

    # superposition of circular polarizations
    worst = 0.0
    for p in range(p_max + 1):
        for ch in CHANNELS:
            lin = amplitude_table(ch, "linear", p, snap=False).values
            plus = amplitude_table(ch, "circ+", p, snap=False).values
            minus = amplitude_table(ch, "circ-", p, snap=False).values
            diff = np.abs(lin - (plus + minus) / math.sqrt(2.0)).max() / np.abs(lin).max()
            worst = max(worst, float(diff))
    checks.append(Check("superposition", worst, 1e-12))

    # closed form vs field evaluation, on-axis m=2 rate and magnetic density
    worst = 0.0
    spec = DetectorSpec(moments=MultipoleMoments(mm={1: 0.7 - 0.2j}, q={1: 0.05 + 0.01j}))
    for p in range(7):
        for kw0 in kw0_values:
            beam = LGBeam.make(p=p, m=2, kw0=kw0, pol="circ-")
            fs = field_sample(beam, np.zeros(3))
            direct = excitation_rate(spec, fs, [("M1", 1), ("E2", 1)])
            closed = on_axis_rate_m2(beam, 0.7 - 0.2j, 0.05 + 0.01j, 1.0)
            worst = max(worst, abs(direct - closed) / closed)
            i_m = np.sum(np.abs(fs.B) ** 2) / (16 * math.pi)
            worst = max(worst, abs(i_m - lg_beam.axial_magnetic_density(beam)) / i_m)
    checks.append(Check("closed_form_lg", worst, 1e-10))

    single = BesselBeam.single(1.0, 2, 0.6)
    direct = np.sum(np.abs(bessel_magnetic_field(single, np.zeros(3))) ** 2) / (8 * math.pi)
    closed = bessel_axial_magnetic_density(single)
    checks.append(Check("closed_form_bessel", abs(direct - closed) / closed, 1e-8))

    # sphere quadrature patterns
    worst = 0.0
    mags = {}
    for rank, Ms, shape in (
        ("dipole", VALID_M["E1"], cartesian_dipole),
        ("magnetic", VALID_M["M1"], cartesian_dipole),
        ("quadrupole", VALID_M["E2"], cartesian_quadrupole),
    ):
        for M in Ms:
            vals = sphere_quadrature_moments(M, rank)
            c, resid = shape_coefficient(vals, shape(M))
            worst = max(worst, resid)
            mags[(rank, M)] = abs(c)
    spread = max(
        np.ptp([mags[("dipole", M)] for M in VALID_M["E1"]]),
        np.ptp([mags[("quadrupole", M)] for M in VALID_M["E2"]]),
        abs(mags[("magnetic", 1)] - mags[("magnetic", -1)]),
        mags[("magnetic", 0)],
    )
    checks.append(Check("sphere_quadrature", max(worst, float(spread)), 1e-10))
    return checks
