"""``lattice-ft``: validate structures, run the law suite, replay the worked
example, and compress signals or images with F-transforms on [0, 1].

Exit codes: 0 success, 1 a check/law/replay/sandwich failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from .connectives import (
    closed_form,
    derive_coresidual,
    derive_residual,
    load_connective,
    load_negator,
    standard_negator,
    validate_grouping,
    validate_negator,
    validate_overlap,
)
from .errors import LatticeFTError, ParseError, UnsupportedFormat
from .io import Scaling, minmax_scaling, quantize, read_csv, read_pgm, write_csv, write_pgm
from .lattice import UnitIntervalLattice, load_lattice
from .partitions import Universe, block_partition, equal_blocks, grid_blocks, load_partition, profile_partition
from .transforms import DIRECT_KINDS, direct_transform, inverse_transform, result_from_json

__all__ = ["main", "build_parser", "run_data_path", "unit_partition"]

KIND_NAMES = tuple(DIRECT_KINDS)

# kind -> (slot of the direct connective, slot of the inverse one)
SLOTS = {
    "upper-theta": ("theta", "i_theta"),
    "lower-residual": ("i_theta", "theta"),
    "upper-coresidual": ("i_eta", "eta"),
    "lower-eta": ("eta", "i_eta"),
}
# upper kind -> the lower kind built from the same connective pair
PARTNER = {"upper-theta": "lower-residual", "upper-coresidual": "lower-eta"}
PARTNER.update({v: k for k, v in PARTNER.items()})
COMPONENTS_FORMAT = "lattice-ft/components"


def _emit(text, out=None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _implicators(theta, eta, residual, coresidual):
    i_theta = closed_form("paper-ex22-residual", theta.lattice) if residual == "paper-ex22" else derive_residual(theta)
    i_eta = closed_form("paper-ex22-coresidual", eta.lattice) if coresidual == "paper-ex22" else derive_coresidual(eta)
    return i_theta, i_eta


def _default_negator(lattice, ref):
    if ref:
        return load_negator(ref, lattice)
    if not lattice.is_finite:
        return standard_negator(lattice)
    if lattice.name == "figure1":
        return load_negator("figure1", lattice)
    if lattice.is_chain:
        return load_negator("reversal", lattice)
    raise LatticeFTError("this lattice has no default negator; pass --negator")


# ---- check -------------------------------------------------------------

def cmd_check(args):
    reports = []
    try:
        lattice = load_lattice(args.lattice)
    except LatticeFTError as exc:
        return _check_output(args, [{"subject": f"lattice {args.lattice}", "status": "failed", "error": str(exc)}], None)
    reports.append({"subject": f"lattice {lattice.name}", "status": "passed", "elements": len(lattice.elements)})
    for ref, kind, validator in (
        (args.overlap, "overlap", validate_overlap),
        (args.grouping, "grouping", validate_grouping),
    ):
        if ref:
            reports.append(validator(load_connective(ref, lattice, kind), lattice))
    if args.negator:
        reports.append(validate_negator(load_negator(args.negator, lattice), lattice))
    if args.partition:
        try:
            part = load_partition(args.partition, lattice)
            reports.append({"subject": f"partition {args.partition}", "status": "passed", "members": list(part.labels)})
        except ParseError:
            raise
        except LatticeFTError as exc:  # a readable file that is not a partition
            reports.append({"subject": f"partition {args.partition}", "status": "failed", "error": str(exc)})
    return _check_output(args, reports, lattice)


def _check_output(args, reports, lattice):
    data, lines = [], []
    for r in reports:
        if isinstance(r, dict):
            data.append(r)
            extra = r.get("error") or ""
            lines.append(f"{r['subject']}: {r['status']}" + (f" ({extra})" if extra else ""))
        else:
            data.append(r.to_json(lattice))
            lines.extend(r.lines(lattice))
    _emit(json.dumps(data, indent=2) if args.format == "json" else "\n".join(lines), args.out)
    return 0 if all(d["status"] == "passed" for d in data) else 1


# ---- laws --------------------------------------------------------------

def build_context(args):
    from .lawcheck import LawContext
    from .worked import example_partition

    lattice = load_lattice(args.lattice)
    theta = load_connective(args.overlap, lattice, "overlap")
    eta = load_connective(args.grouping, lattice, "grouping")
    negator = _default_negator(lattice, args.negator)
    i_theta, i_eta = _implicators(theta, eta, args.residual, args.coresidual)
    if args.partition:
        partition = load_partition(args.partition, lattice)
    elif lattice.name == "figure1" and args.points is None:
        partition = example_partition(lattice)
    else:
        universe = Universe.of_size(args.points or 3)
        blocks = equal_blocks(len(universe), args.blocks or len(universe))
        partition = block_partition(universe, lattice, blocks)
    return LawContext(
        lattice, theta, eta, negator, i_theta, i_eta, partition,
        budget=args.budget, seed=args.seed, name=str(args.lattice),
    )


def cmd_laws(args):
    from .lawcheck import run_suite, suite_json, suite_table

    context = build_context(args)
    reports = run_suite(context, args.law or None)
    text = suite_json(reports, context.lattice) if args.format == "json" else suite_table(reports, context.lattice)
    _emit(text, args.out)
    return 1 if any(r.status == "failed" for r in reports) else 0


# ---- paper-example -------------------------------------------------------

def cmd_paper_example(args):
    from .worked import KNOWN_DISCREPANCIES, replay_direct, replay_inverse

    sections = {"direct": replay_direct(), "inverse": replay_inverse()}
    if args.format == "json":
        data = {
            name: [dict(zip(("kind", "at", "published", "computed", "status"), row)) for row in rows]
            for name, rows in sections.items()
        }
        text = json.dumps(data, indent=2)
    else:
        lines = []
        for name, rows in sections.items():
            lines.append(f"{name} transforms")
            lines.append(f"  {'kind':<17} {'at':<4} {'published':<10} {'computed':<9} status")
            for kind, at, pub, got, status in rows:
                lines.append(f"  {kind:<17} {at:<4} {pub:<10} {got:<9} {status}")
        text = "\n".join(lines)
    _emit(text, args.out)
    flagged = {(r[0], r[1]) for rows in sections.values() for r in rows if r[4] != "match"}
    unexpected = [r for rows in sections.values() for r in rows if r[4] == "mismatch"]
    return 0 if not unexpected and flagged == set(KNOWN_DISCREPANCIES) else 1


# ---- transform / reconstruct ---------------------------------------------

def unit_partition(points, blocks, width=None, shape=None):
    """Block partition on [0, 1] with distance-decay profiles.

    Signals split into ``blocks`` contiguous runs; images into blocks x blocks
    tiles.  The decay width defaults to the block length.
    """
    lattice = UnitIntervalLattice()
    universe = Universe.of_size(points)
    if shape is None:
        index_blocks = equal_blocks(points, blocks)
        width = float(len(index_blocks[0])) if width is None else float(width)
        return block_partition(universe, lattice, index_blocks, width=width), width
    rows, cols = shape
    width = float(min(rows // blocks, cols // blocks)) if width is None else float(width)
    _, profiles = grid_blocks(shape, blocks, width)
    return profile_partition(universe, lattice, profiles), width


def _unit_connectives(overlap, grouping):
    lattice = UnitIntervalLattice()
    theta = closed_form(overlap, lattice)
    eta = closed_form(grouping, lattice)
    if theta.kind != "overlap" or eta.kind != "grouping":
        raise LatticeFTError("--overlap needs an overlap and --grouping a grouping map")
    return {
        "theta": theta,
        "eta": eta,
        "i_theta": derive_residual(theta),
        "i_eta": derive_coresidual(eta),
        "negator": standard_negator(lattice),
    }


def _direct(kind, partition, conns, u):
    neg = conns["negator"] if DIRECT_KINDS[kind][2] else None
    return direct_transform(kind, partition, conns[SLOTS[kind][0]], u, neg)


def _inverse(comps, partition, conns):
    neg = conns["negator"] if DIRECT_KINDS[comps.kind][2] else None
    return inverse_transform(comps, partition, conns[SLOTS[comps.kind][1]], neg, as_array=True)


def run_data_path(u, kind, blocks, width=None, shape=None, overlap="theta_M", grouping="eta_M"):
    """Direct and inverse transform of ``u`` (values in [0, 1]) plus the sandwich check.

    Returns ``(components, reconstruction, summary)``.
    """
    u = np.asarray(u, dtype=float).ravel()
    conns = _unit_connectives(overlap, grouping)
    partition, width = unit_partition(len(u), blocks, width, shape)
    comps = _direct(kind, partition, conns, u)
    recon = _inverse(comps, partition, conns)
    partner = _inverse(_direct(PARTNER[kind], partition, conns, u), partition, conns)
    upper, lower = (recon, partner) if kind in ("upper-theta", "upper-coresidual") else (partner, recon)
    lat = partition.lattice
    dev = np.abs(recon - u)
    summary = {
        "kind": kind,
        "points": len(u),
        "blocks": len(partition),
        "width": width,
        "max_abs_dev": float(dev.max()),
        "mean_abs_dev": float(dev.mean()),
        "sandwich": bool(lat.vle(lower, u).all() and lat.vle(u, upper).all()),
    }
    return comps, recon, summary, partition


def _components_json(comps, meta):
    data = {"format": COMPONENTS_FORMAT, **comps.to_json(), **meta}
    return json.dumps(data, indent=2) + "\n"


def _read_input(path, normalize):
    suffix = Path(path).suffix.lower()
    if suffix in (".pgm", ".pnm"):
        levels, maxval = read_pgm(path)
        plain = Path(path).read_bytes()[:2] == b"P2"
        source = {"type": "pgm", "shape": list(levels.shape), "maxval": maxval, "plain": plain}
        return levels.ravel() / maxval, Scaling(0.0, 1.0), source
    if suffix in (".csv", ".txt", ""):
        values = read_csv(path)
        scaling = minmax_scaling(values) if normalize == "minmax" else Scaling()
        u = scaling.forward(values)
        if normalize == "none" and ((u < 0).any() or (u > 1).any()):
            raise LatticeFTError("with --normalize none every sample must lie in [0, 1]")
        return np.clip(u, 0.0, 1.0), scaling, {"type": "csv"}
    raise UnsupportedFormat(f"{path}: expected a .csv signal or a .pgm image")


def _write_output(path, recon, scaling, source):
    if source["type"] == "pgm":
        maxval = source["maxval"]
        write_pgm(path, quantize(recon, maxval).reshape(source["shape"]), maxval, plain=source.get("plain", False))
    else:
        write_csv(path, scaling.backward(recon))


def _default_recon_path(out, source):
    out = Path(out)
    ext = ".pgm" if source["type"] == "pgm" else ".csv"
    return out.with_name(out.stem + ".recon" + ext)


def cmd_transform(args):
    u, scaling, source = _read_input(args.input, args.normalize)
    shape = tuple(source["shape"]) if source["type"] == "pgm" else None
    comps, recon, summary, _ = run_data_path(
        u, args.kind, args.blocks, args.width, shape, args.overlap, args.grouping
    )
    meta = {
        "connectives": {"overlap": args.overlap, "grouping": args.grouping},
        "partition": {"points": len(u), "blocks": args.blocks, "width": summary["width"], "shape": source.get("shape")},
        "scaling": scaling.to_json(),
        "source": source,
    }
    text = _components_json(comps, meta)
    if args.out:
        Path(args.out).write_text(text)
        recon_path = args.recon or _default_recon_path(args.out, source)
    else:
        recon_path = args.recon
    if recon_path:
        _write_output(recon_path, recon, scaling, source)
        summary["reconstruction"] = str(recon_path)
    if args.out:
        summary["components"] = str(args.out)
    _print_summary(summary, args.format, comps if not args.out else None)
    return 0 if summary["sandwich"] else 1


def _print_summary(summary, fmt, comps=None):
    if comps is not None:
        summary = {**summary, "values": list(comps.components)}
    if fmt == "json":
        print(json.dumps(summary, indent=2))
    else:
        for key, value in summary.items():
            print(f"{key:<14} {value}")


def cmd_reconstruct(args):
    try:
        data = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read components: {exc}", source=args.input) from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source=args.input) from None
    if not isinstance(data, dict) or data.get("format") != COMPONENTS_FORMAT:
        raise ParseError("not a components file written by 'transform'", source=args.input)
    lattice = UnitIntervalLattice()
    comps = result_from_json(data, lattice, source=args.input)
    p = data["partition"]
    shape = tuple(p["shape"]) if p.get("shape") else None
    partition, _ = unit_partition(p["points"], p["blocks"], p["width"], shape)
    conns = _unit_connectives(data["connectives"]["overlap"], data["connectives"]["grouping"])
    if tuple(comps.labels) != partition.labels:
        raise ParseError("component labels do not match the stored partition", source=args.input)
    recon = _inverse(comps, partition, conns)
    scaling = Scaling(**data["scaling"])
    if args.out:
        _write_output(args.out, recon, scaling, data["source"])
    else:
        print("\n".join(repr(float(v)) for v in scaling.backward(recon)))
    return 0


# ---- parser --------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="lattice-ft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="table"):
        p.add_argument("--format", choices=("json", "table"), default=fmt)
        p.add_argument("--out", help="write the main output here instead of stdout")

    def structures(p, lattice=None):
        p.add_argument("--lattice", default=lattice, required=lattice is None,
                       help="figure1, chainN, 2x2, unit, or a lattice JSON file")
        p.add_argument("--negator", help="standard, reversal, figure1, or a negator JSON file")
        p.add_argument("--partition", help="partition JSON file")

    p = sub.add_parser("check", help="validate a lattice and optional connectives, negator, partition")
    structures(p, "figure1")
    p.add_argument("--overlap", help="closed-form name or connective JSON file")
    p.add_argument("--grouping", help="closed-form name or connective JSON file")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("laws", help="run the law suite on one context")
    structures(p, "figure1")
    p.add_argument("--overlap", default="theta_M")
    p.add_argument("--grouping", default="eta_M")
    p.add_argument("--residual", choices=("derived", "paper-ex22"), default="derived")
    p.add_argument("--coresidual", choices=("derived", "paper-ex22"), default="derived")
    p.add_argument("--law", action="append", help="run only this law id (repeatable)")
    p.add_argument("--points", type=int, help="universe size when no partition is given")
    p.add_argument("--blocks", type=int, help="block count when no partition is given")
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("paper-example", help="replay the eight-element worked example")
    common(p)
    p.set_defaults(func=cmd_paper_example)

    p = sub.add_parser("transform", help="F-transform a CSV signal or PGM image on [0, 1]")
    p.add_argument("input")
    p.add_argument("--kind", choices=KIND_NAMES, default="upper-theta")
    p.add_argument("--overlap", default="theta_M", help="theta_M (min) or product")
    p.add_argument("--grouping", default="eta_M", help="eta_M (max) or probsum")
    p.add_argument("--blocks", type=int, default=8, help="blocks (signals) or tiles per side (images)")
    p.add_argument("--width", type=float, help="decay width; defaults to the block length")
    p.add_argument("--normalize", choices=("minmax", "none"), default="minmax", help="CSV scaling into [0, 1]")
    p.add_argument("--recon", help="reconstruction path (default: next to --out)")
    common(p, "json")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("reconstruct", help="inverse transform of a components file")
    p.add_argument("input")
    p.add_argument("--out", help="CSV or PGM output path (default: CSV on stdout)")
    p.set_defaults(func=cmd_reconstruct)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = lambda msg, cat, *rest: print(f"warning: {msg}", file=sys.stderr)
        try:
            return args.func(args)
        except (LatticeFTError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2


if __name__ == "__main__":
    sys.exit(main())
