"""Command-line front end: batch subcommands with JSON output.

Exit codes: 0 on success, 1 on a domain error (a machine-readable error
object goes to stderr), 2 on a usage error (bad flags or malformed JSON).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PrimstabError
from .markoff import MarkoffTriple, bq_decide, bq_verdict_to_json
from .moebius import (
    IsometryClass,
    Representation,
    UhsPoint,
    classify,
    fricke_traces,
    representation_from_json,
    translation_length,
)
from .render import render_slice, slice_config_from_json
from .stability import orbit_growth_probe, ps_report_to_json, ps_scan
from .whitehead import (
    DEFAULT_RANK_CAP,
    blocking_certificate,
    enumerate_primitive_classes,
    is_primitive,
)
from .words import cyclic_length, cyclic_reduce, parse_word


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError("expected re or re,im, got %r" % (text,))


def _parse_basepoint(text: str) -> UhsPoint:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 3:
        raise ValueError("expected re,im,t, got %r" % (text,))
    return UhsPoint(complex(parts[0], parts[1]), parts[2])


def load_representation(path: str) -> Representation:
    """Load and validate a representation JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        return representation_from_json(json.load(handle))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _cmd_word(args) -> int:
    w = parse_word(args.word, args.rank)
    cyc, conj = cyclic_reduce(w)
    _emit({
        "word": args.word,
        "rank": w.rank,
        "reduced": str(w),
        "length": len(w),
        "cyclic": str(cyc),
        "cyclic_length": cyclic_length(w),
        "conjugator": str(conj),
    })
    return 0


def _cmd_primitive(args) -> int:
    w = parse_word(args.word, args.rank)
    _emit({"word": args.word, "primitive": is_primitive(w, args.rank_cap)})
    return 0


def _cmd_blocking(args) -> int:
    w = parse_word(args.word, args.rank)
    cert = blocking_certificate(w)
    _emit({"word": args.word, "certified": cert.certified, "reason": cert.reason})
    return 0


def _cmd_enumerate(args) -> int:
    classes = enumerate_primitive_classes(args.rank, args.max_len, args.rank_cap)
    _emit({
        "rank": args.rank,
        "max_len": args.max_len,
        "count": len(classes),
        "classes": [str(c) for c in classes],
    })
    return 0


def _cmd_rep_info(args) -> int:
    rep = load_representation(args.rep)
    generators = []
    for m in rep.images:
        kind = classify(m)
        generators.append({
            "trace": [m.trace().real, m.trace().imag],
            "class": kind.value,
            "translation_length":
                translation_length(m) if kind == IsometryClass.LOXODROMIC else 0.0,
        })
    info = {"rank": rep.rank, "generators": generators}
    if rep.rank == 2:
        x, y, z, kappa = fricke_traces(rep)
        info["fricke"] = {
            "x": [x.real, x.imag],
            "y": [y.real, y.imag],
            "z": [z.real, z.imag],
            "kappa": [kappa.real, kappa.imag],
        }
    _emit(info)
    return 0


def _cmd_ps_scan(args) -> int:
    rep = load_representation(args.rep)
    report = ps_scan(rep, args.max_len, args.rank_cap)
    _emit(ps_report_to_json(report, rep.rank))
    return 0


def _cmd_probe(args) -> int:
    rep = load_representation(args.rep)
    w = parse_word(args.word, rep.rank)
    slope, residuals = orbit_growth_probe(rep, w, args.periods, args.basepoint)
    _emit({
        "word": args.word,
        "periods": args.periods,
        "slope": slope,
        "residuals": residuals,
    })
    return 0


def _cmd_bq_decide(args) -> int:
    triple = MarkoffTriple.from_traces(args.x, args.y, args.z)
    verdict = bq_decide(triple, args.budget, args.small_trace_bound, args.tol, args.delta)
    out = bq_verdict_to_json(verdict)
    out["kappa"] = [triple.kappa.real, triple.kappa.imag]
    _emit(out)
    return 0


def _cmd_render(args) -> int:
    with open(args.config, "r", encoding="utf-8") as handle:
        cfg = slice_config_from_json(json.load(handle))
    data = render_slice(cfg, args.threads)
    with open(args.out, "wb") as handle:
        handle.write(data)
    _emit({"out": args.out, "width": cfg.width, "height": cfg.height, "bytes": len(data)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primstab",
        description="Free-group words, trace spectra, and BQ slice pictures.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_word_flags(p):
        p.add_argument("word", help="ASCII word, a..z generators and A..Z inverses")
        p.add_argument("--rank", type=int, default=None,
                       help="rank of the free group (default: largest letter used)")

    p = sub.add_parser("word", help="reduced and cyclically reduced forms of a word")
    add_word_flags(p)
    p.set_defaults(func=_cmd_word)

    p = sub.add_parser("primitive", help="decide whether a word is primitive")
    add_word_flags(p)
    p.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.set_defaults(func=_cmd_primitive)

    p = sub.add_parser("blocking", help="certificate that a word blocks primitive words")
    add_word_flags(p)
    p.set_defaults(func=_cmd_blocking)

    p = sub.add_parser("enumerate", help="list primitive conjugacy classes up to a length")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("rep-info", help="classify the generator images of a representation")
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.set_defaults(func=_cmd_rep_info)

    p = sub.add_parser("ps-scan", help="primitive spectrum scan of a representation")
    p.add_argument("--rep", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.set_defaults(func=_cmd_ps_scan)

    p = sub.add_parser("probe", help="orbit displacement growth of one word")
    p.add_argument("--rep", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--periods", type=int, required=True)
    p.add_argument("--basepoint", type=_parse_basepoint, default=None,
                   help="re,im,t upper-half-space basepoint (default 0,0,1)")
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("bq-decide", help="run the BQ search on a trace triple")
    p.add_argument("--x", type=_parse_complex, required=True, help="trace of a (re or re,im)")
    p.add_argument("--y", type=_parse_complex, required=True, help="trace of b")
    p.add_argument("--z", type=_parse_complex, required=True, help="trace of ab")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--small-trace-bound", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--delta", type=float, default=1e-6)
    p.set_defaults(func=_cmd_bq_decide)

    p = sub.add_parser("render", help="render a slice to a PPM image")
    p.add_argument("--config", required=True, help="slice config JSON file")
    p.add_argument("--out", required=True, help="output PPM path")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (default: machine parallelism)")
    p.set_defaults(func=_cmd_render)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        sys.stderr.write(json.dumps({"error": "JSONDecodeError", "message": str(exc)}) + "\n")
        return 2
    except PrimstabError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 1
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "OSError", "message": str(exc)}) + "\n")
        return 1


def main() -> None:
    sys.exit(run())
