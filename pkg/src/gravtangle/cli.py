"""Command-line front end.

    gravtangle reproduce table1|fig6|fig7|fig8|fig9 [--out DIR]
    gravtangle analyze phases|build|classify|gm|negativity|ghz-construct [...]

Every CSV starts with a ``# config: {...}`` comment row holding the fully
resolved configuration. Reproduction exits with status 1 when a check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import figures, reproduce
from .classify import classify_three_qubit
from .ghzlib import Which, build_recursive, check_spatial_symmetry, rank2_certificate
from .gravity import (
    Corrections,
    Geometry,
    SetupParams,
    bitstrings,
    build_final_state,
    build_from_phase_vector,
    phase_table,
    three_qubit_state,
)
from .measures import OptimizerOpts, default_seed, gm_general, gm_symmetric, negativity_tripartite, bipartite_negativity
from .qstate import Equality, PureState, global_factor, invert

TARGETS = ("table1", "fig6", "fig7", "fig8", "fig9")
ANALYSES = ("phases", "build", "classify", "gm", "negativity", "ghz-construct")


def fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, (complex, np.complexfloating)):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def write_csv(stream, header, rows, config: dict):
    stream.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def emit(header, rows, config, out: str | None):
    if out is None or out == "-":
        write_csv(sys.stdout, header, rows, config)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        write_csv(fh, header, rows, config)


def read_phase_file(path: str) -> tuple[int, dict[str, float]]:
    phases: dict[str, float] = {}
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if rows and rows[0][0].strip().lower() == "bitstring":
        rows = rows[1:]
    for r in rows:
        if len(r) != 2:
            raise ValueError(f"phase file rows need two columns, got {r}")
        b = r[0].strip()
        if not b or set(b) - {"0", "1"}:
            raise ValueError(f"bad bit-string {b!r}")
        phases[b] = float(r[1])
    lengths = {len(b) for b in phases}
    if len(lengths) != 1:
        raise ValueError("phase file mixes bit-string lengths")
    n = lengths.pop()
    missing = set(bitstrings(n)) - set(phases)
    if missing:
        raise ValueError(f"phase file is missing {sorted(missing)}")
    return n, phases


def add_common(p: argparse.ArgumentParser):
    g = p.add_argument_group("setup")
    g.add_argument("--n", type=int, default=3, help="number of masses / qubits")
    g.add_argument("--d", type=float, default=200e-6, help="neighbour spacing [m]")
    g.add_argument("--l", type=float, default=None, help="split width [m]")
    g.add_argument("--l-over-d", type=float, default=20.0, help="split width in units of d (when --l is absent)")
    g.add_argument("--mass", type=float, default=1e-14, help="mass of each particle [kg]")
    g.add_argument("--tau", type=float, default=1.0, help="interaction time [s]")
    g.add_argument("--geometry", choices=[x.value for x in Geometry], default="symmetric")
    g.add_argument("--corrections", choices=["on", "off"], default="off")
    g.add_argument("--unit-scale", action="store_true", help="G m^2 tau / hbar = 1 and d = 1")
    o = p.add_argument_group("numerics")
    o.add_argument("--resolution", type=int, default=64)
    o.add_argument("--restarts", type=int, default=64)
    o.add_argument("--seed", type=int, default=None, help="defaults to $GRAVTANGLE_SEED or a fixed value")
    o.add_argument("--tol", type=float, default=None, help="pass/fail tolerance for reproduction checks")
    o.add_argument("--out", default=None)


def setup_from_args(args) -> SetupParams:
    corr = Corrections.WITH_CORRECTIONS if args.corrections == "on" else Corrections.NEWTONIAN
    geom = Geometry(args.geometry)
    if args.unit_scale:
        d = 1.0
        l = args.l if args.l is not None else args.l_over_d
        return SetupParams.unit_scale(args.n, d=d, l=l, geometry=geom, corrections=corr)
    l = args.l if args.l is not None else args.l_over_d * args.d
    return SetupParams(n_masses=args.n, masses=(args.mass,) * args.n, d=args.d, l=l, tau=args.tau,
                       geometry=geom, corrections=corr)


def opts_from_args(args) -> OptimizerOpts:
    seed = args.seed if args.seed is not None else default_seed()
    return OptimizerOpts(n_restarts=args.restarts, seed=seed)


def config_dict(args, setup: SetupParams | None, opts: OptimizerOpts | None) -> dict:
    # the output location is not part of the provenance, so outputs compare byte-for-byte
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    if setup is not None:
        cfg["setup"] = {
            "n_masses": setup.n_masses, "masses": list(setup.masses), "d": setup.d, "l": setup.l,
            "l_over_d": setup.l / setup.d, "tau": setup.tau, "G": setup.G, "hbar": setup.hbar, "c": setup.c,
            "geometry": setup.geometry.value, "corrections": setup.corrections.value,
        }
    if opts is not None:
        cfg["optimizer"] = {"n_restarts": opts.n_restarts, "seed": opts.seed, "max_iter": opts.max_iter,
                            "tol": opts.tol, "grid": opts.grid, "refine": opts.refine}
    return cfg


def validate(args):
    if args.resolution < 2:
        raise SystemExit("--resolution must be at least 2")
    if args.n < 1 or args.n > 12:
        raise SystemExit("--n must be between 1 and 12")


# -- reproduce ----------------------------------------------------------------

def cmd_reproduce(args) -> int:
    validate(args)
    opts = opts_from_args(args)
    setup = setup_from_args(args)
    outdir = Path(args.out or "results")
    outdir.mkdir(parents=True, exist_ok=True)
    t = args.target
    if t == "table1":
        rep = reproduce.table1(opts, tol=args.tol if args.tol is not None else 0.01)
    elif t == "fig6":
        rep = reproduce.fig6(opts, args.resolution, tol=args.tol if args.tol is not None else 0.05)
    elif t == "fig7":
        rep = reproduce.fig7(setup, opts, args.resolution, args.tau_max, args.tau_points)
    elif t == "fig8":
        rep = reproduce.fig8(setup, args.resolution, args.tau_max, args.tau_points)
    else:
        rep = reproduce.fig9(setup, opts, args.tau_max, args.tau_points)

    cfg = config_dict(args, setup if t in ("fig7", "fig8", "fig9") else None, opts)
    for name, (header, rows) in rep.tables.items():
        path = outdir / f"{name}.csv"
        emit(header, rows, cfg, str(path))
        print(f"wrote {path}")
        if not args.no_plot:
            print(f"wrote {render(name, header, rows, path)}")
    for c in rep.checks:
        print(c.line())
    print(f"{t}: {'PASS' if rep.passed else 'FAIL'}")
    return 0 if rep.passed else 1


def render(name, header, rows, path: Path) -> Path:
    cols = {h: np.array([r[i] for r in rows], dtype=float) for i, h in enumerate(header)}
    if name == "table1":
        return figures.plot_table1(cols["dphi3"], cols["lambda2"], cols["lambda2_paper"], path)
    if name == "fig6":
        return figures.plot_curve_with_fit(cols["dphi3"], cols["lambda2"], cols["lambda2_fit"], path)
    if name.endswith("_map"):
        value = "G" if "G" in cols else "negativity"
        k = int(round(math.sqrt(len(rows))))
        g = cols["dphi2"].reshape(k, k)[:, 0]
        return figures.plot_phase_map(g, g, cols[value].reshape(k, k), value, path)
    series = {h: cols[h] for h in header if h not in ("tau", "period", "G")}
    return figures.plot_tau_series(cols["tau"], series, path, window=reproduce.STRONG_WINDOW)


# -- analyze ------------------------------------------------------------------

def state_from_args(args) -> tuple[PureState, dict]:
    if args.phase_file:
        n, phases = read_phase_file(args.phase_file)
        return build_from_phase_vector(n, phases), {}
    if args.dphi2 is not None or args.dphi3 is not None:
        return three_qubit_state(args.dphi2 or 0.0, args.dphi3 or 0.0), {}
    setup = setup_from_args(args)
    psi, _ = build_final_state(setup)
    return psi, {"setup": setup}


def cmd_analyze(args) -> int:
    validate(args)
    what = args.what
    if what == "phases":
        setup = setup_from_args(args)
        table = phase_table(setup)
        rows = [[cls[0], " ".join(cls), ph, rel] for cls, ph, rel in
                zip(table.classes, table.phases, table.relative_phases())]
        emit(["representative", "members", "phase", "relative_phase"], rows, config_dict(args, setup, None), args.out)
        return 0

    if what == "ghz-construct":
        which = Which(args.which)
        psi = build_recursive(args.n, which)
        cert = rank2_certificate(args.n, which)
        strict = check_spatial_symmetry(psi, Equality.STRICT)
        ray = check_spatial_symmetry(psi, Equality.RAY)
        rows = [[b, a.real, a.imag] for b, a in zip(bitstrings(args.n), psi.amplitudes)]
        emit(["bitstring", "re", "im"], rows, config_dict(args, None, None), args.out)
        ok = lambda f: "pass" if f else "fail"  # noqa: E731
        print(f"spatial symmetry strict: invert={ok(strict[0])} turnover={ok(strict[1])}", file=sys.stderr)
        print(f"spatial symmetry ray: invert={ok(ray[0])} turnover={ok(ray[1])}", file=sys.stderr)
        fac = global_factor(psi, invert(psi))
        print(f"invert factor: {fmt(fac) if fac is not None else 'not proportional'}", file=sys.stderr)
        print(f"certificate error: {cert.reconstruction_error:.3e}", file=sys.stderr)
        print(f"certificate min site determinant: {cert.site_determinants().min():.6f}", file=sys.stderr)
        return 0

    psi, extra = state_from_args(args)
    setup = extra.get("setup")
    if what == "build":
        rows = [[b, a.real, a.imag, abs(a), math.atan2(a.imag, a.real)]
                for b, a in zip(bitstrings(psi.n_qubits), psi.amplitudes)]
        emit(["bitstring", "re", "im", "abs", "phase"], rows, config_dict(args, setup, None), args.out)
        return 0
    if what == "classify":
        res = classify_three_qubit(psi)
        print(f"verdict: {res.verdict.value}")
        print(f"schmidt_ranks: {list(res.schmidt_ranks)}")
        print(f"three_tangle: {res.tangle:.12g}")
        if res.phase_point is not None:
            print(f"phase_point: dphi2={res.phase_point.dphi2:.12g} dphi3={res.phase_point.dphi3:.12g}")
            print(f"range_vectors_dependent: {res.range_dependent}")
            print(f"product_roots: {res.roots.kind.value} {[fmt(complex(x)) for x in res.roots.roots]}")
        for note in res.notes:
            print(f"note: {note}")
        return 0
    if what == "gm":
        opts = opts_from_args(args)
        res = gm_symmetric(args.dphi3, opts) if args.symmetric else gm_general(psi, opts)
        print(f"lambda2: {res.lambda2:.12g}")
        print(f"G: {res.G:.12g}")
        print(f"negativity: {res.negativity:.12g}")
        print(f"alphas: {[round(a, 10) for a in res.argmax.alphas]}")
        print(f"thetas: {[round(t, 10) for t in res.argmax.thetas]}")
        print(f"restarts: {res.n_restarts_used}")
        return 0
    if what == "negativity":
        parts = [bipartite_negativity(psi, q) for q in (1, 2, 3)]
        print(f"negativity: {negativity_tripartite(psi):.12g}")
        print(f"bipartite: {[round(p, 12) for p in parts]}")
        return 0
    raise SystemExit(f"unknown analysis {what}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gravtangle", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("reproduce", help="regenerate a table/figure dataset and check it")
    rp.add_argument("target", choices=TARGETS)
    add_common(rp)
    rp.add_argument("--tau-max", type=float, default=60.0)
    rp.add_argument("--tau-points", type=int, default=601)
    rp.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    rp.set_defaults(func=cmd_reproduce)

    ap = sub.add_parser("analyze", help="inspect one configuration")
    ap.add_argument("what", choices=ANALYSES)
    add_common(ap)
    ap.add_argument("--phase-file", help="CSV with columns bitstring,phase_rad")
    ap.add_argument("--dphi2", type=float, default=None)
    ap.add_argument("--dphi3", type=float, default=None)
    ap.add_argument("--symmetric", action="store_true", help="gm: restrict to dphi2 = dphi3 and the shared ansatz")
    ap.add_argument("--which", choices=[w.value for w in Which], default="main")
    ap.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "symmetric", False) and args.dphi3 is None:
        raise SystemExit("--symmetric needs --dphi3")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
