"""Command-line interface: train, evaluate, predict, interpret.

Exit codes: 0 success, 1 usage error, 2 runtime error. Data (metrics,
prediction lines) goes to stdout; progress, warnings, and anything
containing a timestamp goes to stderr, so stdout is byte-identical across
repeated runs on the same inputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from .artifact import load_artifact, save_artifact
from .config import load_experiment
from .core import Dataset
from .data import read_asap, read_tsv
from .errors import AtsError
from .figures import save_evaluation_figures
from .metrics import evaluate_all
from .profiler import Profiler, train
from .server import DEFAULT_PORT, InterpretApp, InterpretServer

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ats", description="Train, evaluate, and interpret text scoring models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a model from a config file and save an artifact")
    p_train.add_argument("config", help="experiment config file")
    p_train.add_argument("artifact", help="output artifact directory")

    p_eval = sub.add_parser("evaluate", help="score a labeled dataset with a trained artifact")
    p_eval.add_argument("artifact", help="artifact directory")
    p_eval.add_argument("--input", required=True, help="labeled dataset to evaluate on")
    p_eval.add_argument("--format", choices=["tsv", "asap"], default="tsv", help="input format")
    p_eval.add_argument("--prompt", type=int, help="prompt id for --format asap")
    p_eval.add_argument(
        "--output-format", choices=["text", "json"], default="text", help="report format"
    )
    p_eval.add_argument("--figures-dir", help="also render evaluation figures into this directory")

    p_pred = sub.add_parser("predict", help="predict labels for one document per input line")
    p_pred.add_argument("artifact", help="artifact directory")
    p_pred.add_argument("--input", help="input file (default: stdin)")

    p_int = sub.add_parser("interpret", help="serve the interactive interpretation API and UI")
    p_int.add_argument("artifact", help="artifact directory")
    p_int.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_int.add_argument("--data", help="labeled TSV dataset to browse in the UI")
    p_int.add_argument("--ui-dir", help="directory with the built web UI (default: auto-detect)")
    return parser


def cmd_train(args) -> int:
    started = time.monotonic()
    cfg = load_experiment(args.config)
    profiler = train(cfg)
    save_artifact(profiler, args.artifact)
    elapsed = time.monotonic() - started
    print(
        f"trained {profiler.model.__class__.__name__} on "
        f"{cfg.dataset.type}:{cfg.dataset.path} "
        f"({profiler.pipeline.dim} features) in {elapsed:.2f}s -> {args.artifact}",
        file=sys.stderr,
    )
    return 0


def _read_eval_dataset(args, profiler: Profiler) -> Dataset:
    if args.format == "asap":
        if args.prompt is None:
            raise AtsError("BadParam", "--prompt is required with --format asap")
        return read_asap(args.input, args.prompt)
    return read_tsv(args.input, spec=profiler.label_spec)


def cmd_evaluate(args) -> int:
    profiler = load_artifact(args.artifact)
    ds = _read_eval_dataset(args, profiler)
    golds = ds.labels()
    preds = [profiler.predict(inst.text) for inst in ds]
    report = evaluate_all(preds, golds, profiler.task, profiler.label_spec)
    if "pearson" not in report.values:
        print("warning: pearson omitted (constant scores or labels)", file=sys.stderr)
    if args.output_format == "json":
        print(json.dumps({**report.values, "n": report.n}, sort_keys=True))
    else:
        for line in report.lines():
            print(line)
    if args.figures_dir:
        for path in save_evaluation_figures(preds, golds, profiler.label_spec, args.figures_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_predict(args) -> int:
    profiler = load_artifact(args.artifact)
    if args.input and args.input != "-":
        text = Path(args.input).read_text(encoding="utf-8")
    else:
        text = sys.stdin.read()
    for line in text.splitlines():
        pred = profiler.predict(line)
        print(f"{pred.label}\t{pred.score:.6f}")
    return 0


def _find_ui_dir(flag_value: str | None) -> Path | None:
    if flag_value:
        return Path(flag_value)
    env = os.environ.get("ATS_UI_DIR")
    if env:
        return Path(env)
    candidate = Path.cwd() / "frontend" / "dist"
    if candidate.is_dir():
        return candidate
    return None


def cmd_interpret(args) -> int:
    profiler = load_artifact(args.artifact)
    dataset = read_tsv(args.data, spec=profiler.label_spec) if args.data else None
    ui_dir = _find_ui_dir(args.ui_dir)
    server = InterpretServer(InterpretApp(profiler, dataset, ui_dir), port=args.port)
    print(f"serving on {server.url}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


_COMMANDS = {
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "interpret": cmd_interpret,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except AtsError as e:
        print(f"ats: error [{e.code}]: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"ats: error: {e}", file=sys.stderr)
        return 2
