"""Command-line front end writing deterministic CSV/JSON datasets.

Subcommands: ``field-map``, ``radial-profile``, ``tables``, ``bessel-axis``
and ``verify``.  Exit codes: 0 ok, 1 bad arguments, 2 I/O failure,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bessel_beam import BesselBeam, bessel_axial_magnetic_density, bessel_magnetic_field
from .detector import CHANNELS, VALID_M, amplitude_table, radial_rate_profile
from .lg_beam import LGBeam, field_sample, polarization
from .verify import inject_fault, run_suite

EXIT_OK, EXIT_ARGS, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_ARGS)


def _threads() -> int:
    raw = os.environ.get("VORTEXPROBE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.16e}"


def _write(path, fmt, header: dict, columns, rows, extra=None):
    """Write one dataset; ``rows`` is a sequence of equal-length tuples."""
    if fmt == "json":
        doc = {"header": header, "columns": list(columns),
               "rows": [[v if isinstance(v, str) else (int(v) if isinstance(v, (int, np.integer)) else float(v))
                         for v in row] for row in rows]}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = [f"# {key}: {value}" for key, value in header.items()]
        if extra:
            for key, value in extra.items():
                lines.append(f"# {key}: {json.dumps(value)}")
        lines.append(",".join(columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _beam(args) -> LGBeam:
    if args.kw0 <= 0:
        raise UsageError("--kw0 must be positive")
    try:
        return LGBeam.make(p=args.p, m=args.m, kw0=args.kw0, pol=args.pol)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _beam_header(beam: LGBeam, args) -> dict:
    return {
        "p": beam.p, "m": beam.m, "kw0": _fmt(beam.k * beam.w0), "pol": args.pol,
        "alpha": f"{beam.alpha.real:.16e}{beam.alpha.imag:+.16e}j",
        "beta": f"{beam.beta.real:.16e}{beam.beta.imag:+.16e}j",
        "units": "lengths in w0, fields in E0",
    }


def _chunked(fn, pts, nthreads):
    chunks = np.array_split(pts, max(1, min(nthreads, len(pts))))
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        results = list(pool.map(fn, chunks))
    return results


def cmd_field_map(args) -> int:
    beam = _beam(args)
    if args.grid < 2 or args.extent <= 0:
        raise UsageError("--grid must be >= 2 and --extent > 0")
    axis = np.linspace(-args.extent, args.extent, args.grid)
    Y, X = np.meshgrid(axis, axis, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), np.zeros(X.size)], axis=-1) * beam.w0

    def evaluate(chunk):
        fs = field_sample(beam, chunk)
        return fs.E, fs.B

    parts = _chunked(evaluate, pts, _threads())
    E = np.concatenate([p[0] for p in parts])
    B = np.concatenate([p[1] for p in parts])
    i_e = np.sum(np.abs(E) ** 2, axis=-1) / (16 * math.pi * beam.E0**2)
    i_m = np.sum(np.abs(B) ** 2, axis=-1) / (16 * math.pi * beam.E0**2)
    columns = ["x_w0", "y_w0"]
    for name in ("Ex", "Ey", "Ez", "Bx", "By", "Bz"):
        columns += [f"re_{name}", f"im_{name}"]
    columns += ["I_E", "I_M"]
    rows = []
    for n in range(len(pts)):
        row = [pts[n, 0] / beam.w0, pts[n, 1] / beam.w0]
        for vec in (E[n], B[n]):
            for c in vec:
                row += [c.real, c.imag]
        rows.append(row + [i_e[n], i_m[n]])
    header = {"reproduces": "waist-plane map of E and B for a Laguerre-Gauss beam",
              **_beam_header(beam, args), "grid": args.grid, "extent_w0": _fmt(args.extent)}
    _write(args.out, args.format, header, columns, rows)
    return EXIT_OK


def _channel_Ms(args):
    if args.channel not in CHANNELS:
        raise UsageError(f"--channel must be one of {CHANNELS}")
    if args.M is None:
        return list(VALID_M[args.channel])
    for M in args.M:
        if M not in VALID_M[args.channel]:
            raise UsageError(f"M={M} not valid for {args.channel}")
    return list(args.M)


def cmd_radial_profile(args) -> int:
    beam = _beam(args)
    Ms = _channel_Ms(args)
    if args.grid < 2 or args.extent <= 0:
        raise UsageError("--grid must be >= 2 and --extent > 0")
    radii = np.linspace(0.0, args.extent, args.grid) * beam.w0
    profiles = [radial_rate_profile(beam, None, args.channel, M, radii) for M in Ms]
    columns = ["r_w0"] + [f"rate_{args.channel}_M{M:+d}" for M in Ms] + ["energy_density"]
    rows = [
        [radii[i] / beam.w0] + [prof[i, 1] for prof in profiles] + [profiles[0][i, 2]]
        for i in range(len(radii))
    ]
    header = {"reproduces": f"radial distribution of normalized {args.channel} excitation rates in the waist plane",
              **_beam_header(beam, args),
              "normalization": "rate = |T/(E0 moment)|^2, energy_density = (|E|^2+|B|^2)/E0^2"}
    _write(args.out, args.format, header, columns, rows)
    return EXIT_OK


def cmd_tables(args) -> int:
    if args.channel not in CHANNELS:
        raise UsageError(f"--channel must be one of {CHANNELS}")
    try:
        table = amplitude_table(args.channel, args.pol, args.p, args.kw0)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    columns = ["m", "M", "re", "im", "abs", "phase", "nonzero"]
    rows = []
    for m in table.ms:
        for M in table.Ms:
            t = table.entry(m, M)
            rows.append([m, M, t.real, t.imag, abs(t), math.atan2(t.imag, t.real) if t != 0 else 0.0, int(t != 0)])
    header = {"reproduces": f"on-axis {args.channel} excitation amplitudes T^(mM), unit moments, E0 = 1",
              "channel": args.channel, "pol": args.pol, "p": args.p, "kw0": _fmt(args.kw0),
              "alpha": f"{table.alpha.real:.16e}{table.alpha.imag:+.16e}j",
              "beta": f"{table.beta.real:.16e}{table.beta.imag:+.16e}j"}
    mask = {"mask_rows_m": list(table.ms), "mask_cols_M": list(table.Ms),
            "mask": table.mask().astype(int).tolist()}
    _write(args.out, args.format, header, columns, rows, extra=mask)
    return EXIT_OK


def _parse_node(text):
    g, _, w = text.partition(":")
    try:
        return float(g), complex(w) if w else 1.0 + 0j
    except ValueError as exc:
        raise UsageError(f"cannot parse spectrum node {text!r}") from exc


def cmd_bessel_axis(args) -> int:
    k = args.k
    try:
        alpha, beta = polarization(args.pol)
        if args.spectrum == "parabolic":
            bb = BesselBeam.from_spectrum(k, args.m, lambda g: g * (k - g), 0.0, args.g_max * k, args.n_nodes, pol=args.pol)
        else:
            nodes = tuple(_parse_node(n) for n in (args.node or []))
            bb = BesselBeam(k=k, m=args.m, alpha=alpha, beta=beta, nodes=nodes)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    try:
        closed = bessel_axial_magnetic_density(bb)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    B = bessel_magnetic_field(bb, np.zeros(3))
    direct = float(np.sum(np.abs(B) ** 2) / (8 * math.pi))
    rel = abs(direct - closed) / closed if closed > 0 else abs(direct - closed)
    header = {"reproduces": "on-axis magnetic energy density |B|^2/8pi of an m=2 Bessel beam at z=0",
              "k": _fmt(k), "m": bb.m, "pol": args.pol, "nodes": len(bb.nodes),
              "spectrum": args.spectrum or "nodes"}
    _write(args.out, args.format, header, ["closed_form", "field_evaluation", "rel_difference"],
           [[closed, direct, rel]])
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with inject_fault(args.mutate):
            checks = run_suite(p_max=args.p_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [[c.name, c.measured, c.threshold, "pass" if c.passed else "FAIL"] for c in checks]
    header = {"reproduces": "invariant and oracle checks of the field and detector models",
              "mutation": args.mutate or "none", "p_max": args.p_max}
    _write(args.out, args.format, header, ["check", "measured", "threshold", "status"], rows)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vortexprobe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def beam_opts(sp):
        sp.add_argument("--p", type=int, default=0)
        sp.add_argument("--m", type=int, default=2)
        sp.add_argument("--kw0", type=float, default=6.0)
        sp.add_argument("--pol", default="circ-",
                        help="circ- | circ+ | linear | 'a,b' complex Jones pair")

    def out_opts(sp):
        sp.add_argument("--out", default="-")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("field-map", help="E, B and energy densities over the waist plane")
    beam_opts(sp)
    sp.add_argument("--grid", type=int, default=41)
    sp.add_argument("--extent", type=float, default=2.5, help="half-width in units of w0")
    out_opts(sp)
    sp.set_defaults(func=cmd_field_map)

    sp = sub.add_parser("radial-profile", help="normalized partial rates versus r")
    beam_opts(sp)
    sp.add_argument("--channel", default="E2")
    sp.add_argument("--M", type=int, action="append")
    sp.add_argument("--grid", type=int, default=101)
    sp.add_argument("--extent", type=float, default=2.0)
    out_opts(sp)
    sp.set_defaults(func=cmd_radial_profile)

    sp = sub.add_parser("tables", help="on-axis amplitude table and zero pattern")
    beam_opts(sp)
    sp.add_argument("--channel", default="E1")
    out_opts(sp)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("bessel-axis", help="axial magnetic density of an m=2 Bessel beam")
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--pol", default="circ-")
    sp.add_argument("--node", action="append", help="spectrum node G[:WEIGHT], repeatable")
    sp.add_argument("--spectrum", choices=("parabolic",), help="f(g) = g (k - g) on (0, g_max k)")
    sp.add_argument("--g-max", type=float, default=0.95)
    sp.add_argument("--n-nodes", type=int, default=64)
    out_opts(sp)
    sp.set_defaults(func=cmd_bessel_axis)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("--mutate", choices=("faraday-y-sign",), default=None)
    sp.add_argument("--p-max", type=int, default=4)
    out_opts(sp)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"vortexprobe: error: {exc}\n")
        return EXIT_ARGS
    except OSError as exc:
        sys.stderr.write(f"vortexprobe: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
