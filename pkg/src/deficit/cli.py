"""Command-line interface: ``deficit {action,spectrum,census,entropy,lambda}``."""
import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import census as census_mod
from .action import regge_action_direct
from .errors import (
    BudgetExceeded, DeficitError, NotBracketable, TargetOutOfRange, TriangulationError,
)
from .nearlyflat import ASYMPTOTIC, EXACT, cosmological_constant
from .recognition import SphereRecognizer
from .spectrum import WALKUP_BOUND, WalkupParams, bracket, n1_window, spectrum_levels
from .triangulation import LENIENT, MODES, mean_edge_degree, parse_triangulations

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_OUT_OF_RANGE = 3
EXIT_NOT_BRACKETABLE = 4
EXIT_BUDGET = 5
EXIT_VALUE = 6
EXIT_IO = 7
EXIT_USAGE = 64


def _fmt(x):
    return format(x, ".17g")


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(path, command, argv, inputs, outputs, started):
    manifest = {
        "command": command,
        "argv": list(argv),
        "tool_version": __version__,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": {Path(p).name: _sha256(p) for p in outputs},
        "duration_s": round(time.perf_counter() - started, 6),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return value


# ---------------------------------------------------------------------------


def cmd_action(args, argv, out):
    with open(args.input, encoding="utf-8") as fh:
        tris = parse_triangulations(fh.read(), mode=args.mode)
    blocks = []
    for T in tris:
        val = regge_action_direct(T, args.edge_length)
        fv = T.f_vector()
        mu = mean_edge_degree(T)
        head = val.per_volume if args.normalized else val.total
        blocks.append("\n".join([
            f"action: {_fmt(head)}",
            f"K: {T.size}",
            f"f_vector: {fv.n0} {fv.n1} {fv.n2} {fv.n3}",
            f"mu: {mu} ({_fmt(float(mu))})",
            f"edge_length: {_fmt(args.edge_length)}",
            f"action_total: {_fmt(val.total)}",
            f"action_per_volume: {_fmt(val.per_volume)}",
            f"volume: {_fmt(val.volume)}",
        ]))
    out.write("\n\n".join(blocks) + "\n")
    return EXIT_OK


def spectrum_csv(K, edge_length, params, target=None):
    lo, hi = n1_window(K, params.gamma_star)
    levels = spectrum_levels(K, edge_length, params.gamma_star)
    comments = [
        f"guaranteed action levels per volume, natural units (l={_fmt(edge_length)})",
        params.describe(),
    ]
    if levels:
        comments.append(f"K={K} window n1 in [{lo}, {hi}] ({len(levels)} levels), ordered by ascending action")
    else:
        comments.append(f"K={K} window is empty (lower bound {lo} > upper bound {hi})")
    flags = {}
    error = None
    if target is not None:
        try:
            b = bracket(target, K, edge_length, params.gamma_star)
        except NotBracketable as exc:
            error = exc
            comments.append(f"target {_fmt(target)} is not bracketable at K={K}")
        else:
            flags = {b.lower.n1: "-", b.upper.n1: "+"}
            comments.append(
                f"target {_fmt(target)}: '-' marks n1={b.lower.n1} (action {_fmt(b.lower.action_per_volume)}), "
                f"'+' marks n1={b.upper.n1} (action {_fmt(b.upper.action_per_volume)})")
    cols = ["K", "n1", "mu_num", "mu_den", "action_per_volume", "guaranteed"]
    if target is not None:
        cols.append("bracket")
    lines = [f"# {c}" for c in comments] + [",".join(cols)]
    for lv in levels:
        row = [str(K), str(lv.n1), str(lv.mu.numerator), str(lv.mu.denominator),
               _fmt(lv.action_per_volume), "true" if lv.guaranteed else "false"]
        if target is not None:
            row.append(flags.get(lv.n1, ""))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n", error


def cmd_spectrum(args, argv, out):
    started = time.perf_counter()
    given = args.gamma_star is not None
    params = WalkupParams(args.gamma_star if given else WALKUP_BOUND, assumed=not given)
    text, error = spectrum_csv(args.K, args.edge_length, params, args.target)
    if args.out:
        _write_text(args.out, text)
        write_manifest(str(args.out) + ".manifest.json", "spectrum", argv, [], [args.out], started)
    else:
        out.write(text)
    if error is not None:
        raise error
    return EXIT_OK


def cmd_census(args, argv, out):
    started = time.perf_counter()
    out_dir = Path(args.out)
    rec = SphereRecognizer()
    written = []
    unknown_total = 0
    if args.min_tets > args.max_tets:
        raise ValueError("--min-tets exceeds --max-tets")
    census_mod.check_K(args.max_tets, census_mod.DEFAULT_MAX_K, args.allow_large)
    out.write("K,mode,total,unknown,rejected,candidates\n")
    for K in range(args.min_tets, args.max_tets + 1):
        res = census_mod.enumerate(K, args.mode, jobs=args.jobs, recognizer=rec,
                                   allow_large=args.allow_large)
        written.extend(census_mod.write_census(res, out_dir))
        unknown_total += len(res.unknown)
        out.write(f"{K},{args.mode},{len(res)},{len(res.unknown)},{res.rejected},{res.candidates}\n")
    write_manifest(out_dir / f"manifest.{args.mode}.json", "census", argv, [], written, started)
    if unknown_total and args.fail_on_unknown:
        raise BudgetExceeded(f"{unknown_total} triangulations were not recognised")
    return EXIT_OK


def cmd_entropy(args, argv, out):
    started = time.perf_counter()
    hists = census_mod.read_histograms(args.census, args.mode)
    if not hists:
        raise FileNotFoundError(f"no census sidecars found in {args.census}")
    points = census_mod.entropy_curve(hists, args.edge_length)
    comments = [f"entropy per volume ln(count)/(V3*K) versus action per volume, natural units (l={_fmt(args.edge_length)})"]
    for h in hists:
        comments.append(f"K={h.K} mode={h.mode} total={h.total} unknown={h.unknown}")
    text = census_mod.entropy_csv(points, comments)
    inputs = sorted(str(p) for p in Path(args.census).glob("K*.json"))
    if args.out:
        _write_text(args.out, text)
        write_manifest(str(args.out) + ".manifest.json", "entropy", argv, inputs, [args.out], started)
    else:
        out.write(text)
    return EXIT_OK


def cmd_lambda(args, argv, out):
    started = time.perf_counter()
    if args.exact:
        res = cosmological_constant(args.planck_length, args.volume, EXACT, C=args.C, N=args.N)
    else:
        res = cosmological_constant(args.planck_length, args.volume, ASYMPTOTIC)
    text = json.dumps(res.report(), indent=2) + "\n"
    if args.out:
        _write_text(args.out, text)
        write_manifest(str(args.out) + ".manifest.json", "lambda", argv, [], [args.out], started)
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="deficit", description="Action spectrum of 3-dimensional dynamical triangulations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("action", help="Regge action of a triangulation file")
    a.add_argument("--input", required=True)
    a.add_argument("--edge-length", type=_positive_float, default=1.0)
    a.add_argument("--normalized", action="store_true", help="headline value is the action per volume")
    a.add_argument("--mode", choices=MODES, default=LENIENT)
    a.set_defaults(func=cmd_action)

    s = sub.add_parser("spectrum", help="guaranteed action levels at fixed K")
    s.add_argument("--K", type=_positive_int, required=True)
    s.add_argument("--gamma-star", type=int, default=None, help=f"default {WALKUP_BOUND} (S3, assumed)")
    s.add_argument("--edge-length", type=_positive_float, default=1.0)
    s.add_argument("--target", type=float, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("census", help="enumerate triangulated 3-spheres")
    c.add_argument("--max-tets", type=_positive_int, required=True)
    c.add_argument("--min-tets", type=_positive_int, default=1)
    c.add_argument("--mode", choices=MODES, default=LENIENT)
    c.add_argument("--out", required=True)
    c.add_argument("--jobs", type=_positive_int, default=1)
    c.add_argument("--allow-large", action="store_true",
                   help=f"permit K above {census_mod.DEFAULT_MAX_K} (slow)")
    c.add_argument("--fail-on-unknown", action="store_true")
    c.set_defaults(func=cmd_census)

    e = sub.add_parser("entropy", help="entropy per volume from a census directory")
    e.add_argument("--census", required=True)
    e.add_argument("--out")
    e.add_argument("--edge-length", type=_positive_float, default=1.0)
    e.add_argument("--mode", choices=MODES, default=None)
    e.set_defaults(func=cmd_entropy)

    m = sub.add_parser("lambda", help="emergent cosmological constant")
    m.add_argument("--volume", type=_positive_float, required=True, help="volume in m^3")
    m.add_argument("--planck-length", type=_positive_float, required=True, help="in m")
    m.add_argument("--exact", action="store_true")
    m.add_argument("--C", type=float, default=None)
    m.add_argument("--N", type=_positive_int, default=None)
    m.add_argument("--out")
    m.set_defaults(func=cmd_lambda)
    return p


_EXIT_CODES = (
    (TriangulationError, EXIT_INVALID),
    (TargetOutOfRange, EXIT_OUT_OF_RANGE),
    (NotBracketable, EXIT_NOT_BRACKETABLE),
    (BudgetExceeded, EXIT_BUDGET),
    (DeficitError, EXIT_VALUE),
    (ValueError, EXIT_VALUE),
    (OSError, EXIT_IO),
)


def main(argv=None, out=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lambda":
        if (args.C is not None or args.N is not None) and not args.exact:
            parser.error("--C and --N require --exact")
        if args.exact and args.C is None:
            parser.error("--exact requires --C")
    try:
        return args.func(args, argv, out)
    except tuple(cls for cls, _ in _EXIT_CODES) as exc:
        code = next(c for cls, c in _EXIT_CODES if isinstance(exc, cls))
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
