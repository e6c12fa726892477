"""Command line entry point: ``hopsym <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors. Sign sequences are comma separated, e.g. ``--k 1,-1,1``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import hopping, render, symmetries, theorems
from .config import JobConfig, read_config
from .polyring import IntPoly, RootFindingError

SIGN_FLAGS = ("--k", "--b")
GLOBAL_KEYS = ("out", "threads", "config")
RENDER_KINDS = ("preimage", "union", "iterated", "julia")


class UsageError(Exception):
    pass


def _join_sign_args(argv: list[str]) -> list[str]:
    # "--k -1,1" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in SIGN_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _signs(text: str) -> hopping.SignSeq:
    try:
        return hopping.parse_signs(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _poly(text: str) -> IntPoly:
    try:
        return IntPoly.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _degree(text: str) -> int:
    d = int(text)
    if d < 2:
        raise argparse.ArgumentTypeError(f"max degree must be >= 2, got {d}")
    return d


def _complex_pair(text: str) -> complex:
    try:
        re_, im_ = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None
    return complex(re_, im_)


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--out", default=d("."), help="output directory (default: current directory)")
    p.add_argument("--threads", type=int, default=d(None), help="worker cap (default: all cores)")
    p.add_argument("--config", default=d(None), help="key = value file with option defaults")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="hopsym", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _add_globals(sp, suppress=True)
        subs[name] = sp
        return sp

    sp = add("table", "short list of the symmetry set, one row per distinct polynomial")
    sp.add_argument("--max-degree", type=_degree, default=7)

    sp = add("enumerate", "all periods generating symmetries, with the degree-count report")
    sp.add_argument("--max-degree", type=_degree, default=10)
    sp.add_argument("--figure", action=argparse.BooleanOptionalAction, default=True)

    sp = add("closure", "compositions of symmetry polynomials")
    sp.add_argument("--max-degree", type=_degree, default=12)
    sp.add_argument("--max-chain", type=int, default=2)

    sp = add("spectrum", "sample the spectrum of a periodic operator")
    sp.add_argument("--k", type=_signs, required=True)
    sp.add_argument("--samples", type=int, default=401)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--name", default=None)
    sp.add_argument("--figure", action=argparse.BooleanOptionalAction, default=True)

    sp = add("finite-spectrum", "eigenvalues of the finite hopping matrix")
    sp.add_argument("--k", type=_signs, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)

    sp = add("verify", "run structural checks; nonzero exit if any fails")
    sp.add_argument("--suite", choices=theorems.SUITE_NAMES + ("all",), default="all")
    sp.add_argument("--k", type=_signs, default=None)
    sp.add_argument("--b", type=_signs, default=None)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--phis", type=int, default=16)
    sp.add_argument("--tol", type=float, default=None)

    sp = add("render", "rasterise preimages of the unit disk or filled Julia sets")
    sp.add_argument("--kind", choices=RENDER_KINDS, default="union")
    sp.add_argument("--k", type=_signs, default=None, help="period whose p_k is rendered")
    sp.add_argument("--poly", type=_poly, default=None, help="ascending coefficients c0,c1,...")
    sp.add_argument("--max-degree", type=_degree, default=7, help="degree cap for S-based renders")
    sp.add_argument("--min-degree", type=int, default=2)
    sp.add_argument("--max-chain", type=int, default=1, help="compose up to this many S elements")
    sp.add_argument("--n-max", type=int, default=9)
    sp.add_argument("--max-iter", type=int, default=200)
    sp.add_argument("--counts", action="store_true", help="store escape times (julia)")
    sp.add_argument("--center", type=_complex_pair, default=0j)
    sp.add_argument("--half-width", type=float, default=1.8)
    sp.add_argument("--half-height", type=float, default=None)
    sp.add_argument("--resolution", type=int, default=2048)
    sp.add_argument("--symmetry-closure", action="store_true")
    sp.add_argument("--supersample", action="store_true")
    sp.add_argument("--circle", action="store_true", help="draw the unit circle in red")
    sp.add_argument("--format", choices=("ppm", "png", "both"), default="ppm")
    sp.add_argument("--figure", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--name", default=None)
    return parser, subs


def _apply_config(parser, subs, args, argv):
    cfg = read_config(args.config)
    sp = subs[args.command]
    known = {a.dest: a for a in sp._actions}
    defaults = {}
    for key, value in cfg.items():
        if key in ("command",):
            continue
        if key not in known:
            parser.error(f"unknown config key {key!r} for command {args.command!r}")
        action = known[key]
        if action.nargs == 0 or isinstance(action, argparse.BooleanOptionalAction):
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            defaults[key] = value
    sp.set_defaults(**defaults)
    return parser.parse_args(argv)


def _job(args) -> JobConfig:
    opts = {k: v for k, v in vars(args).items() if k not in GLOBAL_KEYS + ("command",)}
    return JobConfig(args.command, opts, args.config, args.out)


def _tag(k) -> str:
    return "k" + "".join("p" if x == 1 else "m" for x in k)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_table(args, out: Path) -> int:
    S = symmetries.enumerate_S(args.max_degree)
    print(S.format_table())
    path = out / "table.csv"
    path.write_text(S.to_csv(representatives_only=True), encoding="utf-8")
    _job(args).write_sidecar(path)
    return 0


def cmd_enumerate(args, out: Path) -> int:
    S = symmetries.enumerate_S(args.max_degree)
    path = out / "symmetries.csv"
    path.write_text(S.to_csv(), encoding="utf-8")
    job = _job(args)
    job.write_sidecar(path)
    rows = symmetries.count_report(S)
    print(symmetries.format_count_report(rows))
    fam = [m for m in range(2, args.max_degree + 1) if not symmetries.trivial_families_present(S, m)]
    print("trivial families present for all degrees" if not fam else f"trivial families missing at {fam}")
    if args.figure:
        from .plotting import plot_counts

        fig = plot_counts(rows, out / "symmetry_counts.png", "symmetry polynomials per degree")
        job.write_sidecar(fig)
    return 0


def cmd_closure(args, out: Path) -> int:
    S = symmetries.enumerate_S(args.max_degree)
    T = symmetries.closure_T(S, args.max_degree, args.max_chain)
    lines = ["degree,chain,coeffs"]
    for ce in T:
        chain = " o ".join("(" + ",".join(str(x) for x in e.k) + ")" for e in ce.chain)
        print(f"{ce.degree:>4}  {chain:<40}  {ce.q.pretty()}")
        lines.append(f'{ce.degree},"{chain}","{ce.q.to_csv()}"')
    path = out / "closure.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    _job(args).write_sidecar(path)
    return 0


def cmd_spectrum(args, out: Path) -> int:
    cloud = hopping.periodic_spectrum_points(args.k, args.samples, args.tol, threads=args.threads or 1)
    name = args.name or f"spectrum_{_tag(args.k)}"
    path = out / f"{name}.csv"
    cloud.write_csv(path)
    job = _job(args)
    job.write_sidecar(path)
    target = hopping.spectral_target(args.k)
    print(f"{len(cloud)} points, p_k = {hopping.hopping_poly(args.k).pretty()}, target {target} -> {path}")
    if args.figure:
        from .plotting import plot_point_cloud

        plot_point_cloud(cloud, out / f"{name}.png", f"spectrum of the period ({args.k})")
    return 0


def cmd_finite_spectrum(args, out: Path) -> int:
    roots = hopping.finite_spectrum(args.k, args.tol)
    print("re,im")
    for z in roots:
        print(f"{z.real!r},{z.imag!r}")
    return 0


def cmd_verify(args, out: Path) -> int:
    names = theorems.SUITE_NAMES if args.suite == "all" else (args.suite,)
    failed = 0
    for name in names:
        if name in ("thm1", "claim2", "thm2", "cor2") and bool(args.k) != bool(args.b):
            raise UsageError(f"suite {name} needs both --k and --b, or neither")
        for rep in theorems.run_suite(name, k=args.k, b=args.b, N=args.N, phis=args.phis, tol=args.tol):
            print(rep.line())
            failed += not rep.passed
    return 1 if failed else 0


def _render_polys(args) -> list[IntPoly]:
    if args.poly is not None:
        return [args.poly]
    if args.k is not None:
        return [hopping.hopping_poly(args.k)]
    S = symmetries.enumerate_S(args.max_degree)
    if args.max_chain > 1:
        return [ce.q for ce in symmetries.closure_T(S, args.max_degree, args.max_chain) if ce.degree >= args.min_degree]
    return [p for m in range(max(args.min_degree, 2), args.max_degree + 1) for p in S.polynomials(m)]


def cmd_render(args, out: Path) -> int:
    polys = _render_polys(args)
    if not polys:
        raise UsageError("no polynomials selected")
    hh = args.half_height if args.half_height is not None else args.half_width
    win = render.Window(args.center, args.half_width, hh, args.resolution, args.resolution)
    t = args.threads
    if args.kind in ("preimage", "julia") and len(polys) != 1:
        raise UsageError(f"--kind {args.kind} needs a single polynomial (--k or --poly)")
    if args.kind == "preimage":
        img = render.raster_preimage_disk(polys[0], win, t, args.supersample)
    elif args.kind == "union":
        img = render.raster_union(polys, win, args.symmetry_closure, t, args.supersample)
    elif args.kind == "iterated":
        img = None
        for p in polys:
            r = render.raster_iterated_preimage(p, args.n_max, win, t, args.supersample)
            img = r if img is None else img | r
    else:
        img = render.raster_filled_julia(polys[0], args.max_iter, win, t, counts=args.counts)
    name = args.name or _render_name(args)
    job = _job(args)
    written = []
    if args.format in ("ppm", "both"):
        written.append(render.export_image(img, out / f"{name}.ppm", "ppm", circle=args.circle))
    if args.format in ("png", "both"):
        written.append(render.export_image(img, out / f"{name}.png", "png", circle=args.circle))
    if args.figure:
        from .plotting import plot_raster

        written.append(plot_raster(img, out / f"{name}.fig.png", _render_title(args, polys), circle=True))
    job.write_sidecar(out / f"{name}.ppm")
    for w in written:
        print(w)
    print(f"{img.count()} member pixels of {win.width * win.height}")
    return 0


def _render_name(args) -> str:
    src = _tag(args.k) if args.k is not None else ("poly" if args.poly is not None else f"S{args.max_degree}")
    extra = f"_n{args.n_max}" if args.kind == "iterated" else ""
    return f"{args.kind}_{src}{extra}_{args.resolution}"


def _render_title(args, polys) -> str:
    if args.kind == "julia":
        return f"filled Julia set of {polys[0].pretty()}"
    if args.kind == "iterated":
        return f"iterated preimages of the unit disk, n <= {args.n_max}"
    if len(polys) == 1:
        return f"preimage of the unit disk under {polys[0].pretty()}"
    return f"union of preimages of the unit disk, {len(polys)} polynomials"


COMMANDS = {
    "table": cmd_table,
    "enumerate": cmd_enumerate,
    "closure": cmd_closure,
    "spectrum": cmd_spectrum,
    "finite-spectrum": cmd_finite_spectrum,
    "verify": cmd_verify,
    "render": cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    argv = _join_sign_args(list(sys.argv[1:] if argv is None else argv))
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            args = _apply_config(parser, subs, args, argv)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, OSError) as exc:
        if isinstance(exc, FileNotFoundError) and args.config and exc.filename == args.config:
            parser.error(f"cannot read config file {args.config}")
        print(f"hopsym: error: {exc}", file=sys.stderr)
        return 2
    except RootFindingError as exc:
        print(f"hopsym: root finding failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
