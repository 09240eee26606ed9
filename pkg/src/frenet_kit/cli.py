"""Command-line front end.

    frenet-kit --curve "[t, t^2, t^3, t^4]" --t-min -1 --t-max 1 --samples 3

Exit status: 0 success, 2 bad input (parse error, invalid flags), 3 domain
or degeneracy error, 4 verification failure.
"""

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import dsl, engine, oracles
from .errors import (
    ArityError,
    DomainError,
    FrenetError,
    OrderDeficient,
    ParseError,
    StepUnderflow,
    ZeroVelocity,
)
from .report import SampleRow, emit_csv, emit_json

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_VERIFY = 4

DEFAULT_VERIFY_TOL = 1e-6
THREADS_ENV = "FRENET_KIT_THREADS"


@dataclass(frozen=True)
class RunConfig:
    curve: str
    t_min: float = -1.0
    t_max: float = 1.0
    samples: int = 11
    method: str = "minor"               # minor | qr | both
    verify: bool = False
    degenerate_ok: bool = False
    tol_order: float = engine.DEFAULT_ORDER_TOL
    output: str = "csv"                 # csv | json
    out_path: Optional[str] = None
    frames: bool = False
    verify_tol: float = DEFAULT_VERIFY_TOL
    dim: Optional[int] = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not self.t_min < self.t_max:
            raise ValueError("t_min must be smaller than t_max")
        if not self.tol_order > 0:
            raise ValueError("tol_order must be positive")
        if self.method not in ("minor", "qr", "both"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.output not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output!r}")


@dataclass
class RunResult:
    status: int
    output: bytes = b""
    message: str = ""
    rows: Optional[List[SampleRow]] = None


def _delta(a, b):
    return max(abs(x - y) / (1.0 + abs(y)) for x, y in zip(a, b))


def _worker_count():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _evaluate(spec, t, cfg):
    """Compute the report row for the grid sample ``t``."""
    n = spec.n
    try:
        cm = engine.canonical_matrix(spec, t)
    except ZeroVelocity:
        if not cfg.degenerate_ok:
            raise
        return SampleRow(t, 0, [None] * (n - 1), None, [])
    gd = engine.gram_data(cm)
    r = engine.detect_order(gd, cfg.tol_order)
    row = SampleRow(t, r, [None] * (n - 1), gd.det_a, list(gd.minors))
    if r < n - 1:
        if not cfg.degenerate_ok:
            raise OrderDeficient(
                f"curve has order {r} < {n - 1} at t={t!r}; pass --degenerate-ok "
                "to report curvatures on constant-order segments "
                "(see frenet_kit.engine.segment_by_order)", t=t, order=r)
        if r >= 2:
            prof = engine.curvatures_degenerate(cm, gd, r)
            row.kappas[: len(prof.kappas)] = prof.kappas
        return row

    minor = engine.curvatures_minor(cm, gd, cfg.tol_order)
    qr = None
    if cfg.method in ("qr", "both") or cfg.verify:
        qr = engine.curvatures_qr(cm, cfg.tol_order)
    row.kappas = list((qr if cfg.method == "qr" else minor).kappas)
    if cfg.verify or cfg.method == "both":
        row.delta_qr = _delta(qr.kappas, minor.kappas)
    if cfg.verify:
        try:
            defn = oracles.definitional_curvatures(spec, t, tol=cfg.tol_order)
            row.delta_oracle = _delta(defn, minor.kappas)
        except (StepUnderflow, OrderDeficient, DomainError) as exc:
            log.warning("definitional oracle failed at t=%r: %s", t, exc)
    if cfg.frames:
        frame = engine.frenet_frame(cm, cfg.tol_order)
        row.frame = [frame.t_vec.tolist()] + [v.tolist() for v in frame.normals]
    return row


def _blank_isolated_drops(rows, n):
    """Unreport degenerate samples that form a one-sample dip in order.

    Such a sample sits on a boundary between constant-order stretches, where
    curvatures of neither side apply.
    """
    orders = [r.order for r in rows]
    for i, row in enumerate(rows):
        neighbours = orders[max(i - 1, 0):i] + orders[i + 1:i + 2]
        if row.order < n - 1 and neighbours and all(
                o > row.order for o in neighbours):
            row.kappas = [None] * len(row.kappas)


def run(cfg: RunConfig) -> RunResult:
    try:
        # the sampling window is not a domain restriction: the oracle may
        # need points just outside it
        spec = dsl.parse_curve(cfg.curve)
    except ParseError as exc:
        return RunResult(EXIT_INPUT, message=exc.diagnostic())
    except ArityError as exc:
        return RunResult(EXIT_INPUT, message=str(exc))
    if cfg.dim is not None and cfg.dim != spec.n:
        return RunResult(EXIT_INPUT, message=(
            f"--dim {cfg.dim} contradicts the curve, which has {spec.n} components"))
    if spec.n > engine.MAX_DIM:
        return RunResult(EXIT_INPUT, message=(
            f"dimension {spec.n} exceeds the supported maximum {engine.MAX_DIM}"))

    grid = np.linspace(cfg.t_min, cfg.t_max, cfg.samples).tolist()
    try:
        with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            rows = list(pool.map(lambda t: _evaluate(spec, t, cfg), grid))
    except FrenetError as exc:
        return RunResult(EXIT_DEGENERATE, message=f"error: {exc}")
    if cfg.degenerate_ok:
        _blank_isolated_drops(rows, spec.n)

    verify = cfg.verify or cfg.method == "both"
    if cfg.output == "csv":
        out = emit_csv(rows, spec.n, verify=verify, frames=cfg.frames)
    else:
        out = emit_json(rows, spec.n, verify=verify, frames=cfg.frames,
                        curve=dsl.pretty(spec))

    status, message = EXIT_OK, ""
    if cfg.verify:
        bad = [r.t for r in rows
               if r.order >= spec.n - 1 and (
                   r.delta_qr is None or r.delta_qr > cfg.verify_tol
                   or r.delta_oracle is None or r.delta_oracle > cfg.verify_tol)]
        if bad:
            status = EXIT_VERIFY
            message = (f"verification failed at {len(bad)} sample(s), first at "
                       f"t={bad[0]!r} (tolerance {cfg.verify_tol:g})")
    return RunResult(status, out, message, rows)


def build_parser():
    p = argparse.ArgumentParser(
        prog="frenet-kit",
        description="Frenet frames and generalized curvatures of parametric curves.")
    p.add_argument("--curve", required=True,
                   help='curve text, e.g. "[cos(t), sin(t), 0.5*t]"')
    p.add_argument("--t-min", type=float, default=-1.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=11,
                   help="number of points of the uniform inclusive grid")
    p.add_argument("--method", choices=("minor", "qr", "both"), default="minor")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the QR path and the definitional oracle")
    p.add_argument("--verify-tol", type=float, default=DEFAULT_VERIFY_TOL)
    p.add_argument("--degenerate-ok", action="store_true",
                   help="report truncated curvatures where the order drops")
    p.add_argument("--tol-order", type=float, default=engine.DEFAULT_ORDER_TOL)
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.add_argument("--out-path")
    p.add_argument("--frames", action="store_true", help="also emit frame vectors")
    p.add_argument("--dim", type=int, help="expected dimension (checked)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            curve=args.curve, t_min=args.t_min, t_max=args.t_max,
            samples=args.samples, method=args.method, verify=args.verify,
            degenerate_ok=args.degenerate_ok, tol_order=args.tol_order,
            output=args.output, out_path=args.out_path, frames=args.frames,
            verify_tol=args.verify_tol, dim=args.dim)
    except ValueError as exc:
        parser.error(str(exc))

    result = run(cfg)
    if result.message:
        print(result.message, file=sys.stderr)
    if result.output:
        if cfg.out_path:
            try:
                with open(cfg.out_path, "wb") as fh:
                    fh.write(result.output)
            except OSError as exc:
                print(f"error: cannot write {cfg.out_path}: {exc.strerror}",
                      file=sys.stderr)
                return EXIT_INPUT
        else:
            sys.stdout.buffer.write(result.output)
            sys.stdout.flush()
    return result.status


if __name__ == "__main__":
    sys.exit(main())
