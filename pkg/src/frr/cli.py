"""Command line front end.

Subcommands::

    frr frft    --order A[,B] INPUT OUTPUT
    frr riesz   --order A,B --component J INPUT OUTPUT
    frr hilbert --order A INPUT OUTPUT
    frr edges   --order A,B [--feature F] [--threshold T] [--mode M] INPUT OUTPUT
    frr sweep   --order A,B --order C,D ... INPUT OUTDIR
    frr verify  [--size N] [--seed S] [--report DIR]

Inputs are ``.pgm`` (binary P5) or ``.cfld`` files; ``edges`` and ``sweep``
also accept the word ``blocks`` for the synthetic two-by-two block image of
side ``--size`` (400 by default). Angles are radians and may be written as
arithmetic in ``pi``, e.g. ``pi/2,pi/2+0.3``; an order that starts with a
minus sign needs the ``--order=-pi/3`` form.

Failures print a single ``error<TAB>kind<TAB>message`` line on stderr and exit
with a nonzero status.
"""

from __future__ import annotations

import argparse
import ast
import logging
import math
import operator
import os
import sys
from dataclasses import dataclass

import numpy as np

from .checks import run_checks
from .errors import FrrError, InvalidArgumentError
from .fields import ComplexField, FrftOrder
from .fracops import fractional_hilbert, fractional_riesz
from .frft import frft
from .io import read_cfld, read_pgm, write_cfld, write_pgm
from .monogenic import FEATURES, block_image, detect_edges, directional_sweep, image_field
from .report import format_order, render_checks, render_features, render_sweep, table_text, write_table

log = logging.getLogger("frr")

COMMANDS = ("frft", "riesz", "hilbert", "edges", "sweep", "verify")
MODES = ("relative", "absolute")
BLOCKS = "blocks"
DEFAULT_BLOCK_SIZE = 400

EXIT_FAILED_CHECKS = 1
EXIT_ERROR = 2

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_angle(text: str) -> float:
    """Evaluate an angle expression built from numbers, ``pi``, ``+ - * /`` and parentheses."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) in (int, float):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in ("pi", "π"):
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        raise ValueError

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise InvalidArgumentError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise InvalidArgumentError(f"angle {text!r} is not finite")
    return value


def parse_order(text: str) -> tuple[float, ...]:
    parts = text.split(",")
    if not 1 <= len(parts) <= 2:
        raise InvalidArgumentError(f"an order has one or two comma separated angles, got {text!r}")
    return tuple(parse_angle(p) for p in parts)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; ``from_argv(cfg.to_argv()) == cfg``."""

    command: str
    orders: tuple[tuple[float, ...], ...] = ()
    component: int = 1
    feature: str = "amplitude"
    threshold: float = 0.3
    mode: str = "relative"
    inputs: tuple[str, ...] = ()
    output: str | None = None
    size: int | None = None
    seed: int = 0
    figure: str | None = None
    feature_out: str | None = None
    report: str | None = None

    def to_argv(self) -> list[str]:
        argv = [self.command]
        for order in self.orders:
            # the = form keeps a leading minus sign from reading as a flag
            argv.append("--order=" + ",".join(repr(a) for a in order))
        if self.command == "riesz":
            argv += ["--component", str(self.component)]
        if self.command in ("edges", "sweep"):
            argv += ["--feature", self.feature, "--threshold", repr(self.threshold), "--mode", self.mode]
        if self.size is not None:
            argv += ["--size", str(self.size)]
        argv += ["--seed", str(self.seed)]
        for flag, value in (("--figure", self.figure), ("--feature-out", self.feature_out), ("--report", self.report)):
            if value is not None:
                argv += [flag, value]
        argv += list(self.inputs)
        if self.output is not None:
            argv.append(self.output)
        return argv

    @classmethod
    def from_argv(cls, argv) -> RunConfig:
        args = build_parser().parse_args(list(argv))
        return cls.from_namespace(args)

    @classmethod
    def from_namespace(cls, args) -> RunConfig:
        orders = tuple(parse_order(t) for t in (args.order or ()))
        paths = tuple(getattr(args, "paths", ()) or ())
        inputs, output = (paths[:-1], paths[-1]) if paths else ((), None)
        return cls(
            command=args.command,
            orders=orders,
            component=getattr(args, "component", 1),
            feature=getattr(args, "feature", "amplitude"),
            threshold=getattr(args, "threshold", 0.3),
            mode=getattr(args, "mode", "relative"),
            inputs=inputs,
            output=output,
            size=args.size,
            seed=args.seed,
            figure=getattr(args, "figure", None),
            feature_out=getattr(args, "feature_out", None),
            report=getattr(args, "report", None),
        )

    def validate(self) -> RunConfig:
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"unknown command {self.command!r}")
        need_paths = self.command != "verify"
        if need_paths and (len(self.inputs) != 1 or self.output is None):
            raise InvalidArgumentError(f"{self.command} takes exactly one input and one output path")
        if self.command != "verify" and not self.orders:
            raise InvalidArgumentError(f"{self.command} requires --order")
        if self.command != "sweep" and len(self.orders) > 1:
            raise InvalidArgumentError(f"--order may be repeated only for sweep, got {len(self.orders)}")
        if self.feature not in FEATURES:
            raise InvalidArgumentError(f"unknown feature {self.feature!r}; expected one of {', '.join(FEATURES)}")
        if self.mode not in MODES:
            raise InvalidArgumentError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if not math.isfinite(self.threshold):
            raise InvalidArgumentError("threshold must be finite")
        if self.mode == "relative" and not 0 < self.threshold < 1:
            raise InvalidArgumentError(f"relative threshold must lie in (0, 1), got {self.threshold!r}")
        if self.component not in (1, 2):
            raise InvalidArgumentError(f"component must be 1 or 2, got {self.component}")
        if self.size is not None and (self.size < 4 or self.size % 2):
            raise InvalidArgumentError(f"size must be an even integer >= 4, got {self.size}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be non-negative, got {self.seed}")
        for path in self.inputs:
            if path != BLOCKS and not os.path.isfile(path):
                raise InvalidArgumentError(f"input file not found: {path}")
            if path == BLOCKS and self.command not in ("edges", "sweep"):
                raise InvalidArgumentError("the synthetic 'blocks' input is only available to edges and sweep")
        return self


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgumentError(message)


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frr", description="Fractional Fourier, Riesz and Hilbert transforms and monogenic edge maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, paths_help):
        p.add_argument("--order", action="append", help="per-axis angles in radians, e.g. pi/2,pi/3; write --order=-pi/2 for a leading minus")
        p.add_argument("--size", type=_int, default=None, help="grid size N")
        p.add_argument("--seed", type=_int, default=0, help="seed for randomized inputs")
        p.add_argument("paths", nargs="*", help=paths_help)

    p = sub.add_parser("frft", help="fractional Fourier transform of a field or image")
    common(p, "INPUT OUTPUT")
    p = sub.add_parser("riesz", help="fractional Riesz transform of a 2D field")
    common(p, "INPUT OUTPUT")
    p.add_argument("--component", type=_int, default=1)
    p = sub.add_parser("hilbert", help="fractional Hilbert transform of a 1D field")
    common(p, "INPUT OUTPUT")
    for name, help_ in (("edges", "monogenic edge map of an image"), ("sweep", "edge maps for several orders")):
        p = sub.add_parser(name, help=help_)
        common(p, "INPUT OUTPUT" if name == "edges" else "INPUT OUTDIR")
        p.add_argument("--feature", default="amplitude", help="amplitude, orientation or phase")
        p.add_argument("--threshold", type=float, default=0.3)
        p.add_argument("--mode", default="relative", help="relative or absolute")
        p.add_argument("--figure", default=None, help="PNG with the image, features and edge map")
        if name == "edges":
            p.add_argument("--feature-out", default=None, help="PGM of the min-max normalized feature")
    p = sub.add_parser("verify", help="run the invariant checks and print a pass/fail table")
    common(p, "")
    p.add_argument("--report", default=None, help="directory for checks.tsv and checks.png")
    return parser


def _load_field(path: str, size: int | None) -> ComplexField:
    if path == BLOCKS:
        return image_field(block_image(size or DEFAULT_BLOCK_SIZE, 1.0))
    ext = os.path.splitext(path)[1].lower()
    if ext == ".cfld":
        return read_cfld(path)
    if ext == ".pgm":
        return image_field(read_pgm(path)[0])
    raise InvalidArgumentError(f"unsupported input extension {ext!r}; expected .pgm or .cfld")


def _normalized(values: np.ndarray, label: str) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    log.info("normalize\t%s\tmin=%r\tmax=%r", label, lo, hi)
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def _save_field(out: ComplexField, path: str) -> None:
    ext = os.path.splitext(path)[1].lower()
    if ext == ".cfld":
        write_cfld(out, path)
    elif ext == ".pgm":
        if out.dims != 2:
            raise InvalidArgumentError("only 2D fields can be written as PGM")
        data = out.samples
        scale = float(np.abs(data).max(initial=0.0))
        if np.abs(data.imag).max(initial=0.0) <= 1e-12 * scale:
            write_pgm(_normalized(data.real, "real part"), path)
        else:
            write_pgm(_normalized(np.abs(data), "modulus"), path)
    else:
        raise InvalidArgumentError(f"unsupported output extension {ext!r}; expected .pgm or .cfld")


def _check_output(path: str, exts) -> None:
    ext = os.path.splitext(path)[1].lower()
    if ext not in exts:
        raise InvalidArgumentError(f"output must end in {' or '.join(exts)}, got {path!r}")
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise InvalidArgumentError(f"output directory does not exist: {parent}")


def _run_transform(cfg: RunConfig, out) -> int:
    _check_output(cfg.output, (".cfld", ".pgm"))
    f = _load_field(cfg.inputs[0], cfg.size)
    order = FrftOrder.of(*cfg.orders[0])
    if order.dims == 1:
        order = order.broadcast(f.dims)
    if order.dims != f.dims:
        raise InvalidArgumentError(f"order has {order.dims} angles but the field is {f.dims}D")
    if cfg.command == "frft":
        result = frft(f, order)
    elif cfg.command == "riesz":
        if f.dims != 2:
            raise InvalidArgumentError("riesz expects a 2D field; use hilbert for 1D")
        result = fractional_riesz(f, order, cfg.component)
    else:
        if f.dims != 1:
            raise InvalidArgumentError("hilbert expects a 1D field")
        result = fractional_hilbert(f, order)
    _save_field(result, cfg.output)
    return 0


def _run_edges(cfg: RunConfig, out) -> int:
    _check_output(cfg.output, (".pgm",))
    for extra, exts in ((cfg.figure, (".png",)), (cfg.feature_out, (".pgm",))):
        if extra is not None:
            _check_output(extra, exts)
    f = _load_field(cfg.inputs[0], cfg.size)
    order = FrftOrder.of(*cfg.orders[0]).broadcast(2)
    feats = detect_edges(f, order, cfg.feature, cfg.threshold, cfg.mode)
    write_pgm(feats.edge_map.astype(float), cfg.output)
    if cfg.feature_out is not None:
        write_pgm(_normalized(feats.feature(cfg.feature), cfg.feature), cfg.feature_out)
    if cfg.figure is not None:
        render_features(f.samples.real, feats, cfg.figure, title="alpha = (" + format_order(order) + ")")
    out.write(table_text([[format_order(order), int(feats.edge_map.sum()), feats.edge_map.size]],
                          ["order", "marked", "pixels"]))
    return 0


def _run_sweep(cfg: RunConfig, out) -> int:
    outdir = cfg.output
    if not os.path.isdir(outdir):
        raise InvalidArgumentError(f"output directory does not exist: {outdir}")
    if cfg.figure is not None:
        _check_output(cfg.figure, (".png",))
    f = _load_field(cfg.inputs[0], cfg.size)
    orders = [FrftOrder.of(*o).broadcast(2) for o in cfg.orders]
    maps = directional_sweep(f, orders, cfg.feature, cfg.threshold, cfg.mode)
    rows = []
    for i, (order, edge_map) in enumerate(zip(orders, maps)):
        name = f"edges_{i:02d}.pgm"
        write_pgm(edge_map.astype(float), os.path.join(outdir, name))
        hamming = int(np.count_nonzero(edge_map != maps[0]))
        rows.append([i, format_order(order), name, int(edge_map.sum()), hamming])
    header = ["index", "order", "file", "marked", "hamming_to_first"]
    write_table(rows, header, os.path.join(outdir, "sweep.tsv"))
    render_sweep(f.samples.real, orders, maps, cfg.figure or os.path.join(outdir, "sweep.png"))
    out.write(table_text(rows, header))
    return 0


def _run_verify(cfg: RunConfig, out) -> int:
    if cfg.report is not None and not os.path.isdir(cfg.report):
        raise InvalidArgumentError(f"report directory does not exist: {cfg.report}")
    results = run_checks(cfg.size or 128, cfg.seed)
    header = ["check", "value", "tolerance", "status"]
    rows = [[r.name, f"{r.value:.3e}", f"{r.tolerance:.0e}", "pass" if r.passed else "FAIL"] for r in results]
    out.write(table_text(rows, header))
    if cfg.report is not None:
        write_table(rows, header, os.path.join(cfg.report, "checks.tsv"))
        render_checks(results, os.path.join(cfg.report, "checks.png"))
    return 0 if all(r.passed for r in results) else EXIT_FAILED_CHECKS


_RUNNERS = {
    "frft": _run_transform,
    "riesz": _run_transform,
    "hilbert": _run_transform,
    "edges": _run_edges,
    "sweep": _run_sweep,
    "verify": _run_verify,
}


def _check_threads() -> None:
    raw = os.environ.get("FRR_THREADS")
    if raw is None:
        return
    try:
        ok = int(raw) >= 1
    except ValueError:
        ok = False
    if not ok:
        raise InvalidArgumentError(f"FRR_THREADS must be a positive integer, got {raw!r}")


def run(cfg: RunConfig, out=None) -> int:
    """Execute a validated config and return the exit status."""
    out = sys.stdout if out is None else out
    _check_threads()
    cfg.validate()
    return _RUNNERS[cfg.command](cfg, out)


def _error_line(kind: str, message: str) -> str:
    return "error\t" + kind + "\t" + " ".join(str(message).split())


def main(argv=None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    log.propagate = False
    try:
        return _main(sys.argv[1:] if argv is None else list(argv))
    finally:
        log.removeHandler(handler)


def _main(argv) -> int:
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    try:
        return run(RunConfig.from_argv(argv))
    except FrrError as exc:
        print(_error_line(exc.kind, exc), file=sys.stderr)
    except OSError as exc:
        print(_error_line("io", exc), file=sys.stderr)
    except MemoryError:
        print(_error_line("resource", "out of memory"), file=sys.stderr)
    return EXIT_ERROR

if __name__ == "__main__":
    sys.exit(main())
