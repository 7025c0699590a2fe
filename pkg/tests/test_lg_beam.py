import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from vortexprobe.lg_beam import (
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
from vortexprobe.verify import FDConfig, fd_hessian, fd_jet

SQPI = math.sqrt(math.pi)
AXIS = np.zeros(3)


def circ(m, sigma, p=0, kw0=6.0, w0=1.0):
    return LGBeam.make(p=p, m=m, kw0=kw0, pol="circ-" if sigma < 0 else "circ+", w0=w0)


def test_polarization_specs():
    a, b = polarization("circ-")
    assert_allclose([a, b], [1 / math.sqrt(2), 1j / math.sqrt(2)])
    assert polarization("-1") == polarization("circ-")
    assert polarization("+1") == polarization("circ+")
    assert polarization("linear") == (1, 0)
    a, b = polarization("3,4j")
    assert_allclose([a, b], [0.6, 0.8j])
    with pytest.raises(ValueError):
        polarization("sideways")
    with pytest.raises(ValueError):
        polarization("0,0")


def test_beam_validation():
    with pytest.raises(ValueError):
        LGBeam(k=-1.0)
    with pytest.raises(ValueError):
        LGBeam(m=9)
    with pytest.raises(ValueError):
        LGBeam(alpha=1.0, beta=1.0)


def test_derived_quantities():
    beam = LGBeam(k=4.0, w0=0.5, p=2, m=-1)
    zr = 0.5
    assert_allclose(beam.rayleigh_range, zr)
    assert_allclose(beam.radius(zr), 0.5 * math.sqrt(2))
    assert_allclose(beam.gouy_phase(zr), 6 * math.pi / 4)


@pytest.mark.parametrize("r", [0.0, 0.4, 1.7])
def test_gaussian_mode_at_waist(r):
    beam = LGBeam(w0=1.3, k=5.0)
    u = scalar_jet(beam, [r, 0.0, 0.0]).u
    assert_allclose(u, math.sqrt(2) / (SQPI * 1.3) * math.exp(-r**2 / 1.3**2), rtol=1e-14)


def test_p1_m0_on_axis():
    beam = LGBeam(p=1, w0=0.8, k=3.0)
    assert_allclose(scalar_jet(beam, AXIS).u, math.sqrt(2) / (SQPI * 0.8), rtol=1e-14)


def test_m2_mode_is_polynomial_in_x_minus_iy():
    beam = LGBeam(m=2, w0=1.1, k=7.0)
    x, y = 0.3, -0.9
    expected = 2 / (SQPI * 1.1**3) * (x - 1j * y) ** 2 * math.exp(-(x * x + y * y) / 1.1**2)
    assert_allclose(scalar_jet(beam, [x, y, 0.0]).u, expected, rtol=1e-14)


def test_paraxial_equation():
    beam = LGBeam.make(p=3, m=-2, kw0=8.0, pol="linear")
    pts = np.random.default_rng(3).uniform(-2, 2, (25, 3))
    jet = scalar_jet(beam, pts)
    lhs = jet.d2u[:, 0, 0] + jet.d2u[:, 1, 1] + 2j * beam.k * jet.du[:, 2]
    assert np.abs(lhs).max() < 1e-12 * np.abs(jet.d2u).max()


def test_jet_matches_finite_differences():
    rng = np.random.default_rng(11)
    for p, m in [(0, 1), (2, -2), (3, 2), (1, 0)]:
        beam = LGBeam.make(p=p, m=m, kw0=6.0)
        cfg = FDConfig.for_beam(beam)
        f = lambda r: scalar_jet(beam, r).u
        for x in rng.uniform(-1.5, 1.5, (4, 3)):
            jet = scalar_jet(beam, x)
            _, J, _ = fd_jet(f, x, cfg)
            H = fd_hessian(f, x, cfg)
            scale = max(np.abs(jet.d2u).max(), np.abs(jet.du).max())
            assert np.abs(jet.du - J).max() <= 1e-7 * scale
            assert np.abs(jet.d2u - H).max() <= 1e-7 * scale
            assert_allclose(jet.d2u, jet.d2u.T, rtol=1e-12, atol=1e-12 * scale)


def test_vectorized_evaluation_matches_pointwise():
    beam = circ(2, -1, p=1)
    pts = np.random.default_rng(0).uniform(-1, 1, (2, 3, 3))
    E = electric_field(beam, pts)
    assert E.shape == (2, 3, 3)
    assert_allclose(E[1, 2], electric_field(beam, pts[1, 2]), rtol=1e-15)


def test_rejects_bad_points():
    beam = LGBeam()
    with pytest.raises(ValueError):
        electric_field(beam, [1.0, 2.0])
    with pytest.raises(ValueError):
        electric_field(beam, [np.nan, 0.0, 0.0])


def test_gaussian_on_axis_field():
    beam = LGBeam.make(kw0=12.0, pol="linear")
    assert_allclose(electric_field(beam, AXIS), [math.sqrt(2 / math.pi), 0, 0], atol=1e-15)
    assert_allclose(electric_gradient(beam, AXIS)[0, 0], 0.0, atol=1e-15)


def test_m1_on_axis_only_longitudinal():
    E = electric_field(circ(1, -1), AXIS)
    assert_allclose(E[:2], 0.0, atol=1e-15)
    assert abs(E[2]) > 0.1


@pytest.mark.parametrize("m", [-2, -1, 1, 2])
@pytest.mark.parametrize("pol", ["circ-", "circ+", "linear"])
def test_hollow_core(m, pol):
    beam = LGBeam.make(p=1, m=m, kw0=6.0, pol=pol)
    peak = np.abs(electric_field(beam, np.stack([np.linspace(0, 3, 400), np.zeros(400), np.zeros(400)], -1))).max()
    for z in (0.0, 0.7, -2.0):
        E = electric_field(beam, [0.0, 0.0, z])
        assert np.abs(E[:2]).max() <= 1e-14 * peak
        if abs(m) >= 2:
            assert np.abs(E).max() <= 1e-14 * peak


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_on_axis_magnetic_structure(m):
    B = magnetic_field(LGBeam.make(p=1, m=m, kw0=6.0, pol="linear"), AXIS)
    assert (np.abs(B[:2]).max() > 1e-6) == (abs(m) in (0, 2))
    assert (abs(B[2]) > 1e-6) == (abs(m) == 1)


@pytest.mark.parametrize("p", [0, 1, 4])
@pytest.mark.parametrize("w0", [1.0, 0.4])
def test_m2_axis_closed_forms(p, w0):
    beam = LGBeam.make(p=p, m=2, kw0=7.0, pol="0.6,0.8j", w0=w0)
    k = beam.k
    pol = beam.alpha - 1j * beam.beta
    B = magnetic_field(beam, AXIS)
    G = electric_gradient(beam, AXIS)
    bmag = math.sqrt(8 * (p + 1) * (p + 2) / math.pi) / (k * w0) ** 2
    gmag = math.sqrt(8 * (p + 1) * (p + 2) / math.pi) / (k * w0**2)
    assert_allclose(np.abs(B[:2]), [bmag * abs(pol)] * 2, rtol=1e-12)
    assert_allclose(B[1] / B[0], -1j, rtol=1e-12)
    assert abs(B[2]) < 1e-15
    assert_allclose(np.abs(G[:2, 2]), [gmag * abs(pol)] * 2, rtol=1e-12)
    G[:2, 2] = 0
    assert np.abs(G).max() < 1e-14


def test_m_minus2_uses_alpha_plus_i_beta():
    beam = LGBeam.make(p=2, m=-2, kw0=5.0, pol="0.6,0.8j")
    expected = math.sqrt(8 * 12 / math.pi) / 25 * abs(beam.alpha + 1j * beam.beta)
    assert_allclose(np.abs(magnetic_field(beam, AXIS)[:2]), [expected] * 2, rtol=1e-12)


def test_axial_density_example_value():
    beam = circ(2, -1, p=0, kw0=10.0)
    i_e, i_m = energy_densities(beam, AXIS)
    assert i_e == 0.0
    assert_allclose(i_m, 4 / (math.pi**2 * 1e4), rtol=1e-12)
    assert_allclose(axial_magnetic_density(beam), 4.053e-5, rtol=1e-3)


@pytest.mark.parametrize("p", range(5))
@pytest.mark.parametrize("m", [-2, 2])
@pytest.mark.parametrize("pol", ["circ-", "circ+", "linear", "0.6,0.8j"])
def test_axial_density_matches_fields(p, m, pol):
    beam = LGBeam.make(p=p, m=m, kw0=4.0, pol=pol)
    i_m = energy_densities(beam, AXIS)[1]
    assert_allclose(i_m, axial_magnetic_density(beam), rtol=1e-12, atol=1e-18)


def test_axial_density_branches():
    assert axial_magnetic_density(circ(2, +1)) == 0.0
    assert axial_magnetic_density(circ(-2, -1)) == 0.0
    assert axial_magnetic_density(circ(2, -1)) > 0
    assert axial_magnetic_density(circ(-2, +1)) > 0
    assert_allclose(axial_magnetic_density(circ(2, -1, p=1)) / axial_magnetic_density(circ(2, -1, p=0)), 3.0)
    with pytest.raises(ValueError):
        axial_magnetic_density(circ(1, -1))


def test_angular_momentum():
    assert_allclose(beam_angular_momentum(circ(2, -1)), 1.0)
    assert_allclose(beam_angular_momentum(LGBeam.make(m=0, pol="linear")), 0.0)
    assert_allclose(beam_angular_momentum(circ(-2, +1)), -1.0)


def test_plane_wave_limit():
    beam = LGBeam.make(kw0=2000.0, pol="linear")
    fs = field_sample(beam, [0.01, -0.02, 0.3])
    assert_allclose(fs.B[1] / fs.E[0], 1.0, rtol=1e-5)
    assert abs(np.vdot(fs.E, fs.B)) < 1e-4 * np.linalg.norm(fs.E) ** 2
    i_e, i_m = energy_densities(beam, AXIS)
    assert_allclose(i_m, i_e, rtol=1e-5)


@pytest.mark.parametrize("p, m", [(0, 0), (1, 2), (3, -1), (5, 2)])
def test_mode_normalization(p, m):
    beam = LGBeam(p=p, m=m, w0=1.0, k=6.0)

    def density(r):
        return r * abs(scalar_jet(beam, [r, 0.0, 0.0]).u) ** 2

    val, _ = integrate.quad(density, 0.0, 12.0, epsabs=1e-13, limit=200)
    assert_allclose(2 * math.pi * val, 1.0, rtol=1e-6)


def _mirror_observables(beam, pts):
    fs = field_sample(beam, pts)
    return (
        np.linalg.norm(fs.E, axis=-1),
        np.linalg.norm(fs.B, axis=-1),
        *energy_densities(beam, pts),
    )


@pytest.mark.parametrize("p, m", [(0, 1), (2, 2), (1, -2)])
@pytest.mark.parametrize("pol", ["circ-", "circ+", "linear", "0.6,0.8j"])
def test_mirror_symmetry_conjugate_form(p, m, pol):
    # (m, alpha, beta) -> (-m, conj alpha, conj beta) holds for real alpha and imaginary beta
    beam = LGBeam.make(p=p, m=m, kw0=6.0, pol=pol)
    mirror = LGBeam.make(p=p, m=-m, kw0=6.0, pol=(beam.alpha.conjugate(), beam.beta.conjugate()))
    pts = np.random.default_rng(5).uniform(-1.5, 1.5, (30, 3))
    flipped = pts * [1, -1, 1]
    for a, b in zip(_mirror_observables(beam, pts), _mirror_observables(mirror, flipped)):
        assert_allclose(a, b, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("pol", [(0.3 + 0.4j, 0.2 - 0.5j), (1.0, 1.0), "0.6,0.8j"])
def test_mirror_symmetry_general_polarization(pol):
    # reflection y -> -y maps (alpha, beta) to (alpha, -beta) for any Jones vector
    beam = LGBeam.make(p=1, m=2, kw0=5.0, pol=pol)
    mirror = LGBeam.make(p=1, m=-2, kw0=5.0, pol=(beam.alpha, -beam.beta))
    pts = np.random.default_rng(6).uniform(-1.5, 1.5, (30, 3))
    fs, fm = field_sample(beam, pts), field_sample(mirror, pts * [1, -1, 1])
    assert_allclose(fm.E, fs.E * [1, -1, 1], rtol=1e-12, atol=1e-14)
    assert_allclose(fm.B, fs.B * [-1, 1, -1], rtol=1e-12, atol=1e-14)


def test_divergence_scales_as_inverse_kw0_squared():
    ratios = []
    for kw0 in (10.0, 20.0, 40.0):
        beam = LGBeam.make(p=1, m=1, kw0=kw0, pol="linear")
        ratios.append(abs(np.trace(electric_gradient(beam, [0.3, 0.2, 0.0]))) * kw0**2)
    assert_allclose(ratios, ratios[0], rtol=1e-12)


def _axial_to_peak_ratio(kw0, transverse_only=False):
    beam = circ(2, -1, p=6, kw0=kw0)
    r = np.linspace(0.0, 6.0, 6001)
    E = electric_field(beam, np.stack([r, 0 * r, 0 * r], -1))
    if transverse_only:
        E = E[:, :2]
    peak = np.sum(np.abs(E) ** 2, axis=-1).max() / (16 * math.pi)
    return energy_densities(beam, AXIS)[1] / peak


def test_axial_ratio_slope_tends_to_minus_four():
    # the longitudinal field inflates max |E|^2 by O((k w0)^-2), so -4 is reached only asymptotically
    kw0 = np.array([40.0, 80.0, 160.0, 320.0])
    slope = np.polyfit(np.log(kw0), np.log([_axial_to_peak_ratio(q) for q in kw0]), 1)[0]
    assert abs(slope + 4) < 0.02
    coarse = np.array([5.0, 10.0, 20.0, 40.0])
    slope = np.polyfit(np.log(coarse), np.log([_axial_to_peak_ratio(q, True) for q in coarse]), 1)[0]
    assert_allclose(slope, -4.0, atol=1e-6)
