"""A doughnut beam that is not dark on its axis.

An m = 2 Laguerre-Gauss beam has no electric field on its axis, yet the
magnetic field and the transverse gradient of E_z survive there.  This script
walks through the numbers for a circularly polarized beam.
"""
import numpy as np

from vortexprobe import LGBeam, axial_magnetic_density, energy_densities, field_sample

beam = LGBeam.make(p=6, m=2, kw0=6.0, pol="circ-")
print(f"beam: p={beam.p} m={beam.m} k*w0={beam.k * beam.w0:g} spin={beam.spin:+.0f}")

# %% the axis
fs = field_sample(beam, np.zeros(3))
print("E(axis)      =", np.round(fs.E, 15))
print("B(axis)      =", fs.B)
print("dEz/dx, dEz/dy =", fs.gradE[0, 2], fs.gradE[1, 2])

# %% radial cut through the waist
r = np.linspace(0.0, 3.0, 13)
i_e, i_m = energy_densities(beam, np.stack([r, 0 * r, 0 * r], axis=-1))
print("\n   r/w0        I_E          I_M")
for ri, a, b in zip(r, i_e, i_m):
    print(f"{ri:7.2f}  {a:11.4e}  {b:11.4e}")

print("\nclosed-form axial I_M:", axial_magnetic_density(beam))

# %% how the axial magnetic density fades with weaker focusing
print("\nk*w0   I_M(axis)")
for kw0 in (4.0, 6.0, 10.0, 20.0, 40.0):
    b = LGBeam.make(p=6, m=2, kw0=kw0, pol="circ-")
    print(f"{kw0:5.0f}  {axial_magnetic_density(b):.4e}")

# the opposite circular polarization extinguishes the axial field entirely
print("\nspin +1 partner:", axial_magnetic_density(LGBeam.make(p=6, m=2, kw0=6.0, pol="circ+")))
