"""Electromagnetic structure of Laguerre-Gauss and Bessel beams and their
excitation of E1, M1 and E2 photon detectors."""

from .bessel_beam import (
    BesselBeam,
    bessel_axial_magnetic_density,
    bessel_electric_field,
    bessel_field_sample,
    bessel_magnetic_field,
)
from .detector import (
    AmplitudeTable,
    DetectorSpec,
    MultipoleMoments,
    amplitude,
    amplitude_table,
    chiral_estimate,
    excitation_rate,
    on_axis_rate_m2,
    radial_rate_profile,
    selection_rule_scan,
    spherical_atom_moments,
)
from .lg_beam import (
    FieldSample,
    LGBeam,
    axial_magnetic_density,
    beam_angular_momentum,
    electric_field,
    electric_gradient,
    energy_densities,
    field_sample,
    magnetic_field,
    polarization,
    scalar_jet,
)

__version__ = "0.1.0"
