"""On-axis excitation amplitudes and what they say about angular momentum.

For circular polarization only the cells with M = m + sigma survive, i.e.
the detector picks up orbital plus spin angular momentum.  Linear light is
just the sum of the two circular tables.
"""
import numpy as np

from vortexprobe import amplitude_table, chiral_estimate, LGBeam, on_axis_rate_m2
from vortexprobe.detector import plane_wave_e1_rate


def show(table):
    print(f"\n{table.channel}  alpha={table.alpha:.3f} beta={table.beta:.3f}  p={table.p} k*w0={table.kw0:g}")
    print("  m\\M " + "".join(f"{M:>14d}" for M in table.Ms))
    for i, m in enumerate(table.ms):
        row = "".join(f"{abs(v):14.4e}" if v != 0 else f"{'0':>14}" for v in table.values[i])
        print(f"{m:5d} {row}")


for pol in ("circ-", "circ+", "linear"):
    for ch in ("E1", "M1", "E2"):
        show(amplitude_table(ch, pol, p=1, kw0=6.0))

# %% superposition
lin = amplitude_table("E2", "linear", p=1).values
plus = amplitude_table("E2", "circ+", p=1).values
minus = amplitude_table("E2", "circ-", p=1).values
print("\nlinear - (plus + minus)/sqrt2 :", np.abs(lin - (plus + minus) / np.sqrt(2)).max())

# %% a chiral molecule sitting on the axis
beam = LGBeam.make(p=7, m=2, kw0=10.0, pol="circ-")
a = 0.1 * beam.w0
print("\nM1 + E2 rate in phase      :", on_axis_rate_m2(beam, beam.k * a * a, a * a, delta=1.0))
print("same, opposite phase       :", on_axis_rate_m2(beam, beam.k * a * a, -a * a, delta=1.0))
print("ratio to plane-wave E1 rate:", chiral_estimate(a, beam, 1.0) / plane_wave_e1_rate(a))
