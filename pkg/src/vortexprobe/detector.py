"""Multipole photon detectors: E1, M1 and E2 excitation amplitudes and rates.

A detector is described by the spherical components of its transition
moments d^(M), m^(M) (M = -1..1) and Q^(M) (M = -2..2), each mapped onto a
fixed Cartesian shape with the quantization axis along the beam axis z.  The
amplitude of one channel is the plain contraction

    T_E1 = d . E,    T_M1 = m . B,    T_E2 = Q_ij dE_j/dr_i

with no complex conjugation of either factor, and the rate of a set of
channels is |sum T|^2 / (hbar^2 Delta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .lg_beam import FieldSample, LGBeam, field_sample, polarization

__all__ = [
    "CHANNELS",
    "VALID_M",
    "MultipoleMoments",
    "DetectorSpec",
    "AmplitudeTable",
    "SelectionReport",
    "cartesian_dipole",
    "cartesian_quadrupole",
    "spherical_atom_moments",
    "amplitude",
    "excitation_rate",
    "on_axis_rate_m2",
    "chiral_estimate",
    "plane_wave_e1_rate",
    "amplitude_table",
    "selection_rule_scan",
    "radial_rate_profile",
]

CHANNELS = ("E1", "M1", "E2")
VALID_M = {"E1": (-1, 0, 1), "M1": (-1, 0, 1), "E2": (-2, -1, 0, 1, 2)}
BEAM_M = (-2, -1, 0, 1, 2)

_SQRT2 = math.sqrt(2.0)


def _check(channel: str, M: int):
    if channel not in VALID_M:
        raise ValueError(f"unknown channel {channel!r}; expected one of {CHANNELS}")
    if M not in VALID_M[channel]:
        raise ValueError(f"M={M} is not valid for channel {channel}")


def cartesian_dipole(M: int, amp: complex = 1.0) -> np.ndarray:
    """Cartesian vector of a dipole (electric or magnetic) component M."""
    if M == 1:
        v = np.array([1.0, 1j, 0.0])
    elif M == -1:
        v = np.array([-1.0, 1j, 0.0])
    elif M == 0:
        v = np.array([0.0, 0.0, _SQRT2], dtype=complex)
    else:
        raise ValueError(f"dipole component M={M} out of range")
    return complex(amp) * v


def cartesian_quadrupole(M: int, amp: complex = 1.0) -> np.ndarray:
    """Symmetric traceless 3x3 matrix of quadrupole component M."""
    if M == 0:
        q = math.sqrt(2.0 / 3.0) * np.diag([-1.0, -1.0, 2.0]).astype(complex)
    elif M in (1, -1):
        s = -float(M)
        q = np.array([[0, 0, s], [0, 0, -1j], [s, -1j, 0]], dtype=complex)
    elif M in (2, -2):
        s = 1j * float(np.sign(M))
        q = np.array([[1, s, 0], [s, -1, 0], [0, 0, 0]], dtype=complex)
    else:
        raise ValueError(f"quadrupole component M={M} out of range")
    return complex(amp) * q


def _unit(keys):
    return {M: 1.0 + 0j for M in keys}


@dataclass(frozen=True)
class MultipoleMoments:
    """Spherical components of the detector's transition moments.

    Missing entries count as zero.
    """

    d: Mapping[int, complex] = field(default_factory=dict)
    mm: Mapping[int, complex] = field(default_factory=dict)
    q: Mapping[int, complex] = field(default_factory=dict)

    @classmethod
    def unit(cls) -> "MultipoleMoments":
        return cls(d=_unit(VALID_M["E1"]), mm=_unit(VALID_M["M1"]), q=_unit(VALID_M["E2"]))

    def get(self, channel: str, M: int) -> complex:
        _check(channel, M)
        table = {"E1": self.d, "M1": self.mm, "E2": self.q}[channel]
        return complex(table.get(M, 0.0))


def spherical_atom_moments(dR: complex, mR: complex, QR: complex) -> MultipoleMoments:
    """Moments of a spherically symmetric atom.

    All d^(M) and Q^(M) share one radial amplitude, m^(+-1) = mR and m^(0) = 0.
    """
    return MultipoleMoments(
        d={M: complex(dR) for M in VALID_M["E1"]},
        mm={-1: complex(mR), 0: 0j, 1: complex(mR)},
        q={M: complex(QR) for M in VALID_M["E2"]},
    )


@dataclass(frozen=True)
class DetectorSpec:
    """Detector moments plus linewidth ``delta``, transition frequency and hbar."""

    moments: MultipoleMoments = field(default_factory=MultipoleMoments.unit)
    delta: float = 1.0
    omega0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("linewidth delta must be positive")


def _contract(channel: str, M: int, amp: complex, fs: FieldSample):
    if channel == "E1":
        return np.einsum("i,...i->...", cartesian_dipole(M, amp), fs.E)
    if channel == "M1":
        return np.einsum("i,...i->...", cartesian_dipole(M, amp), fs.B)
    return np.einsum("ij,...ij->...", cartesian_quadrupole(M, amp), fs.gradE)


def amplitude(spec: DetectorSpec, channel: str, M: int, field: FieldSample):
    """Excitation amplitude of one channel and component M."""
    _check(channel, M)
    return _contract(channel, M, spec.moments.get(channel, M), field)


def _selection(channels) -> list[tuple[str, int]]:
    if isinstance(channels, Mapping):
        pairs = list(channels.items())
    else:
        pairs = [tuple(c) for c in channels]
    if not pairs:
        raise ValueError("at least one channel must be selected")
    for ch, M in pairs:
        _check(ch, M)
    return pairs


def excitation_rate(spec: DetectorSpec, field: FieldSample, channels) -> float:
    """Rate |sum of selected amplitudes|^2 / (hbar^2 Delta).

    ``channels`` is a mapping ``{channel: M}`` or an iterable of
    ``(channel, M)`` pairs; the amplitudes add coherently.
    """
    total = sum(amplitude(spec, ch, M, field) for ch, M in _selection(channels))
    return np.abs(total) ** 2 / (spec.hbar**2 * spec.delta)


def _matched_circular(beam: LGBeam):
    if abs(beam.m) != 2:
        raise ValueError("on-axis m=2 rate needs |m| = 2")
    wanted = -1.0 if beam.m > 0 else 1.0
    if abs(beam.spin - wanted) > 1e-12:
        raise ValueError(f"m={beam.m} needs circular polarization with spin {wanted:+.0f}")


def on_axis_rate_m2(beam: LGBeam, m1_amp: complex, q1_amp: complex, delta: float, hbar: float = 1.0) -> float:
    """Closed-form on-axis rate of coherent M1 + E2 excitation by an |m| = 2 beam.

    For m = +2 (spin -1) the detector component is M = +1 and the moments add
    as m^(1) + k Q^(1).  For m = -2 (spin +1) it is M = -1 and, the magnetic
    moment being axial, they combine as m^(-1) - k Q^(-1).
    """
    _matched_circular(beam)
    p, k = beam.p, beam.k
    kw0 = k * beam.w0
    sign = 1.0 if beam.m > 0 else -1.0
    coupling = abs(complex(m1_amp) + sign * k * complex(q1_amp)) ** 2
    return beam.E0**2 * 64.0 * (p + 1) * (p + 2) / (hbar**2 * delta * math.pi * kw0**4) * coupling


def chiral_estimate(a: float, beam: LGBeam, delta: float, hbar: float = 1.0, charge: float = 1.0) -> float:
    """Order-of-magnitude on-axis rate for a chiral molecule of size ``a``.

    Uses m^(1) ~ k Q^(1) ~ k e a^2 added in phase.
    """
    if not a > 0:
        raise ValueError("molecular size must be positive")
    p, w0 = beam.p, beam.w0
    kw0 = beam.k * w0
    return (
        beam.E0**2 * 256.0 * (p + 1) * (p + 2) / (hbar**2 * delta * math.pi * kw0**2)
        * (a / w0) ** 2 * charge**2 * a**2
    )


def plane_wave_e1_rate(a: float, E0: float = 1.0, delta: float = 1.0, hbar: float = 1.0, charge: float = 1.0) -> float:
    """Reference E1 rate E0^2 e^2 a^2 / (hbar^2 Delta) for a plane wave."""
    return E0**2 * charge**2 * a**2 / (hbar**2 * delta)


@dataclass(frozen=True)
class AmplitudeTable:
    """On-axis amplitudes T^{mM} for beam m in -2..2 (rows) and detector M (columns).

    Entries are normalized by E0 and the moment amplitude.
    """

    channel: str
    alpha: complex
    beta: complex
    p: int
    kw0: float
    w0: float
    values: np.ndarray
    ms: tuple = BEAM_M

    @property
    def Ms(self) -> tuple:
        return VALID_M[self.channel]

    def entry(self, m: int, M: int) -> complex:
        return complex(self.values[self.ms.index(m), self.Ms.index(M)])

    def mask(self) -> np.ndarray:
        """Boolean zero pattern, True where the entry is non-zero."""
        return self.values != 0

    def nonzero_cells(self) -> set:
        return {(m, M) for i, m in enumerate(self.ms) for j, M in enumerate(self.Ms) if self.values[i, j] != 0}


def amplitude_table(channel: str, pol="circ-", p: int = 0, kw0: float = 6.0, w0: float = 1.0, snap: bool = True) -> AmplitudeTable:
    """Tabulate on-axis amplitudes with unit moments and E0 = 1.

    With ``snap`` set, entries below 1e-13 of the table maximum become exact
    zeros.
    """
    if channel not in VALID_M:
        raise ValueError(f"unknown channel {channel!r}")
    alpha, beta = polarization(pol)
    origin = np.zeros(3)
    Ms = VALID_M[channel]
    values = np.zeros((len(BEAM_M), len(Ms)), dtype=complex)
    for i, m in enumerate(BEAM_M):
        beam = LGBeam(E0=1.0, k=kw0 / w0, w0=w0, p=p, m=m, alpha=alpha, beta=beta)
        fs = field_sample(beam, origin)
        for j, M in enumerate(Ms):
            values[i, j] = _contract(channel, M, 1.0, fs)
    if snap:
        peak = np.abs(values).max()
        values[np.abs(values) < 1e-13 * peak] = 0.0
    return AmplitudeTable(channel=channel, alpha=alpha, beta=beta, p=p, kw0=kw0, w0=w0, values=values)


@dataclass
class SelectionReport:
    """Outcome of :func:`selection_rule_scan`.

    ``diagonal`` maps ``(sigma, channel)`` to the non-zero ``(m, M)`` cells;
    ``violations`` lists ``(label, channel, m, M, relative magnitude)``.
    """

    p: int
    kw0: float
    tol: float
    diagonal: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations


def selection_rule_scan(p: int, kw0: float = 6.0, tol: float = 1e-12) -> SelectionReport:
    """Check angular momentum bookkeeping of the on-axis tables.

    For circular polarization every amplitude with M != m + sigma must vanish.
    For linear and a generic elliptical polarization the diagonal m = M must
    vanish.
    """
    report = SelectionReport(p=p, kw0=kw0, tol=tol)
    for sigma, pol in ((-1, "circ-"), (1, "circ+")):
        for ch in CHANNELS:
            tab = amplitude_table(ch, pol, p, kw0, snap=False)
            peak = np.abs(tab.values).max()
            cells = []
            for m in tab.ms:
                for M in tab.Ms:
                    rel = abs(tab.entry(m, M)) / peak
                    if M == m + sigma:
                        if rel > tol:
                            cells.append((m, M))
                    else:
                        report.worst = max(report.worst, rel)
                        if rel > tol:
                            report.violations.append((f"sigma={sigma:+d}", ch, m, M, rel))
            report.diagonal[(sigma, ch)] = cells
    for label, pol in (("linear", "linear"), ("elliptic", "0.6,0.8j")):
        for ch in CHANNELS:
            tab = amplitude_table(ch, pol, p, kw0, snap=False)
            peak = np.abs(tab.values).max()
            for m in tab.ms:
                if m in tab.Ms:
                    rel = abs(tab.entry(m, m)) / peak
                    report.worst = max(report.worst, rel)
                    if rel > tol:
                        report.violations.append((label, ch, m, m, rel))
    return report


def radial_rate_profile(beam: LGBeam, spec: DetectorSpec | None, channel: str, M: int, radii: Iterable[float]) -> np.ndarray:
    """Radial dependence of a normalized partial rate in the waist plane.

    Returns an ``(n, 3)`` array of ``r``, ``|T / (E0 moment)|^2`` and the
    total energy density ``(|E|^2 + |B|^2) / E0^2`` at ``(r, 0, 0)``.
    ``spec`` only fixes which detector is meant; by linearity the normalized
    rate does not depend on its moment amplitudes.
    """
    _check(channel, M)
    r = np.asarray(list(radii), dtype=float)
    if np.any(r < 0):
        raise ValueError("radii must be non-negative")
    pts = np.stack([r, np.zeros_like(r), np.zeros_like(r)], axis=-1)
    fs = field_sample(beam, pts)
    T = _contract(channel, M, 1.0, fs) / beam.E0
    density = (np.sum(np.abs(fs.E) ** 2, axis=-1) + np.sum(np.abs(fs.B) ** 2, axis=-1)) / beam.E0**2
    return np.stack([r, np.abs(T) ** 2, density], axis=-1)
