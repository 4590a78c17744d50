"""Deterministic raster of BQ verdicts over a rectangle in a trace slice.

Each pixel fixes the trace of ab from its position in the window, solves the
level-set quadratic for the trace of b at the configured kappa and fixed
trace of a, runs the BQ search, and colors by verdict:

    BQ_CERTIFIED   gray (v, v, v) with v = 255 - min(191, nodes // 32)
    NOT_BQ_WITNESS red (min(255, 64 + 16 * witnesses), 0, 0)
    INCONCLUSIVE   dark blue (0, 0, 96)

Output is binary PPM (P6), top row first.  Pixels are independent and are
assembled by index, so the byte stream does not depend on how many worker
processes computed it.
"""

from __future__ import annotations

import multiprocessing
import os
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError
from .markoff import BqKind, BqVerdict, MarkoffTriple, bq_decide, solve_y_from_fricke
from .moebius import _complex_from_json, _complex_to_json


class RootChoice(str, Enum):
    SMALLER_ABS = "SMALLER_ABS"
    LARGER_ABS = "LARGER_ABS"


@dataclass(frozen=True)
class SliceConfig:
    """Parameters of one rendered slice.

    ``window`` is the (lower-left, upper-right) corner pair of the rectangle
    of ab-traces.  ``root_choice`` picks which root of the level-set
    quadratic is drawn; the two roots are different characters on the same
    level set, so the choice is part of the picture's definition.
    """

    kappa: complex
    fixed_x: complex
    window: tuple[complex, complex]
    width: int
    height: int
    root_choice: RootChoice = RootChoice.SMALLER_ABS
    budget: int = 20000
    small_trace_bound: int = 64
    tol: float = 1e-9
    delta: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "kappa", complex(self.kappa))
        object.__setattr__(self, "fixed_x", complex(self.fixed_x))
        lo, hi = self.window
        object.__setattr__(self, "window", (complex(lo), complex(hi)))
        object.__setattr__(self, "root_choice", RootChoice(self.root_choice))
        if self.width < 1 or self.height < 1:
            raise ValueError("image must be at least 1x1")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")


def pixel_trace(cfg: SliceConfig, i: int, j: int) -> complex:
    """The ab-trace at the center of pixel (column i, row j); row 0 is the top."""
    lo, hi = cfg.window
    re = lo.real + (i + 0.5) * (hi.real - lo.real) / cfg.width
    im = hi.imag - (j + 0.5) * (hi.imag - lo.imag) / cfg.height
    return complex(re, im)


def pixel_verdict(cfg: SliceConfig, z: complex) -> BqVerdict:
    plus, minus = solve_y_from_fricke(cfg.fixed_x, z, cfg.kappa)
    if cfg.root_choice == RootChoice.SMALLER_ABS:
        y = plus if abs(plus) <= abs(minus) else minus
    else:
        y = plus if abs(plus) >= abs(minus) else minus
    triple = MarkoffTriple(cfg.fixed_x, y, z, cfg.kappa)
    return bq_decide(triple, cfg.budget, cfg.small_trace_bound, cfg.tol, cfg.delta)


def palette_color(verdict: BqVerdict) -> tuple[int, int, int]:
    if verdict.kind == BqKind.BQ_CERTIFIED:
        v = 255 - min(191, verdict.nodes_explored // 32)
        return (v, v, v)
    if verdict.kind == BqKind.NOT_BQ_WITNESS:
        return (min(255, 64 + 16 * len(verdict.witnesses)), 0, 0)
    return (0, 0, 96)


def _render_row(args) -> bytes:
    cfg, j = args
    row = bytearray()
    for i in range(cfg.width):
        row.extend(palette_color(pixel_verdict(cfg, pixel_trace(cfg, i, j))))
    return bytes(row)


def render_slice(cfg: SliceConfig, threads: int | None = 1) -> bytes:
    """Render the slice to PPM bytes; identical output for any thread count."""
    if threads is None:
        threads = os.cpu_count() or 1
    header = b"P6\n%d %d\n255\n" % (cfg.width, cfg.height)
    tasks = [(cfg, j) for j in range(cfg.height)]
    ctx = None
    if threads > 1 and cfg.height > 1:
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:  # no fork on this platform; fall back to serial
            ctx = None
    if ctx is None:
        rows = [_render_row(task) for task in tasks]
    else:
        with ctx.Pool(min(threads, cfg.height)) as pool:
            rows = pool.map(_render_row, tasks, chunksize=1)
    return header + b"".join(rows)


def slice_config_to_json(cfg: SliceConfig) -> dict:
    return {
        "kappa": _complex_to_json(cfg.kappa),
        "fixed_x": _complex_to_json(cfg.fixed_x),
        "window": [_complex_to_json(cfg.window[0]), _complex_to_json(cfg.window[1])],
        "width": cfg.width,
        "height": cfg.height,
        "root": "smaller" if cfg.root_choice == RootChoice.SMALLER_ABS else "larger",
        "budget": cfg.budget,
        "small_trace_bound": cfg.small_trace_bound,
    }


def slice_config_from_json(obj) -> SliceConfig:
    if not isinstance(obj, dict):
        raise ParseError("slice config must be an object, got %r" % (type(obj).__name__,))
    for key in ("kappa", "fixed_x", "window", "width", "height"):
        if key not in obj:
            raise ParseError("slice config is missing the %r field" % (key,))
    window = obj["window"]
    if not isinstance(window, list) or len(window) != 2:
        raise ParseError("'window' must be a pair of [re, im] corners")
    root = obj.get("root", "smaller")
    if root not in ("smaller", "larger"):
        raise ParseError("'root' must be \"smaller\" or \"larger\", got %r" % (root,))
    width, height = obj["width"], obj["height"]
    budget = obj.get("budget", 20000)
    bound = obj.get("small_trace_bound", 64)
    for name, value in (("width", width), ("height", height), ("budget", budget),
                        ("small_trace_bound", bound)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError("%r must be an integer, got %r" % (name, value))
    try:
        return SliceConfig(
            kappa=_complex_from_json(obj["kappa"]),
            fixed_x=_complex_from_json(obj["fixed_x"]),
            window=(_complex_from_json(window[0]), _complex_from_json(window[1])),
            width=width,
            height=height,
            root_choice=RootChoice.SMALLER_ABS if root == "smaller" else RootChoice.LARGER_ABS,
            budget=budget,
            small_trace_bound=bound,
            tol=obj.get("tol", 1e-9),
            delta=obj.get("delta", 1e-6),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
