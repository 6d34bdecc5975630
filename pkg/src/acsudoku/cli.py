"""Command-line entry point: solve, bench, recognize, pipeline, render."""
from __future__ import annotations

import argparse
import sys

from acsudoku import _backend
from acsudoku.bench import run_bench
from acsudoku.consistency import AcAlgorithm
from acsudoku.netpbm import FormatError, load_binary_image, write_pbm
from acsudoku.recognizer import (
    IdxFormatError,
    KnnModel,
    generate_synthetic,
    load_idx,
    recognize_grid,
    render_grid,
)
from acsudoku.solver import Heuristic, Outcome, SearchConfig, SearchResult, solve
from acsudoku.sudoku import (
    InvalidPuzzleError,
    MalformedInputError,
    SudokuGrid,
    duplicate_clues,
    parse_grid,
    read_puzzles,
    serialize_grid,
)
from acsudoku.vision import DimensionError, Encoding

EXIT_SOLVED = 0
EXIT_UNSAT = 1
EXIT_BAD_INPUT = 2
EXIT_LIMIT = 3
EXIT_MISREAD = 4

_OUTCOME_EXIT = {
    Outcome.SOLVED: EXIT_SOLVED,
    Outcome.UNSATISFIABLE: EXIT_UNSAT,
    Outcome.LIMIT_EXCEEDED: EXIT_LIMIT,
}

_INPUT_ERRORS = (MalformedInputError, InvalidPuzzleError, FormatError, DimensionError, IdxFormatError, OSError)


def _fail(msg: str, code: int = EXIT_BAD_INPUT) -> int:
    print(f"acsudoku: {msg}", file=sys.stderr)
    return code


def _load_single(path: str) -> SudokuGrid:
    if path == "-":
        return parse_grid(sys.stdin.read())
    puzzles = read_puzzles(path)
    if len(puzzles) != 1:
        raise MalformedInputError(f"{path} holds {len(puzzles)} puzzles; solve takes one")
    return puzzles[0][1]


def _parse_ac(text: str) -> AcAlgorithm:
    try:
        return AcAlgorithm.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_ac_list(text: str) -> list[AcAlgorithm]:
    return [_parse_ac(part) for part in text.split(",") if part.strip()]


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ac", type=_parse_ac, default=AcAlgorithm.AC3, metavar="{1,2,2paper,3,4}",
                   help="arc-consistency algorithm (default: 3)")
    p.add_argument("--heuristic", choices=[h.value for h in Heuristic], default="mrv")
    p.add_argument("--stats", action="store_true", help="print search counters to stderr")
    p.add_argument("--time-limit", type=_positive_float, metavar="SECS")
    p.add_argument("--node-limit", type=_positive_int, metavar="N")
    p.add_argument("--backend", choices=["auto", *_backend.BACKENDS], default="auto")


def _add_recognize_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--encoding", choices=[e.value for e in Encoding], default="morph")
    p.add_argument("--k", type=_positive_int, default=5)
    p.add_argument("--train", choices=["synthetic", "idx"], default="synthetic")
    p.add_argument("--idx-images", metavar="PATH")
    p.add_argument("--idx-labels", metavar="PATH")
    p.add_argument("--idx-limit", type=_positive_int, metavar="N",
                   help="use at most N training images from the IDX files")
    p.add_argument("--train-count", type=_positive_int, default=30,
                   help="synthetic samples per digit (default: 30)")
    p.add_argument("--train-noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=12345, help="synthetic training seed")
    p.add_argument("--margin", type=float, default=0.15)
    p.add_argument("--ink-threshold", type=float, default=0.02)
    p.add_argument("--threshold", type=int, default=128, help="PGM binarization threshold")


def _config(args) -> SearchConfig:
    return SearchConfig(args.ac, Heuristic(args.heuristic), args.node_limit, args.time_limit, args.backend)


def _print_stats(res: SearchResult, alg: AcAlgorithm) -> None:
    p = res.propagation
    print(
        f"algorithm: {alg.label}\n"
        f"outcome: {res.outcome.value}\n"
        f"nodes: {res.nodes}\n"
        f"backtracks: {res.backtracks}\n"
        f"revise_calls: {p.revise_calls}\n"
        f"values_removed: {p.values_removed}\n"
        f"queue_pushes: {p.queue_pushes}\n"
        f"propagation_seconds: {p.wall_time:.6f}\n"
        f"seconds: {res.wall_time:.6f}",
        file=sys.stderr,
    )


def _emit_solution(res: SearchResult, args) -> int:
    if res.solved:
        print(serialize_grid(res.grid))
    elif res.outcome is Outcome.UNSATISFIABLE:
        print("acsudoku: puzzle has no solution", file=sys.stderr)
    else:
        print("acsudoku: search limit exceeded", file=sys.stderr)
    if args.stats:
        _print_stats(res, args.ac)
    return _OUTCOME_EXIT[res.outcome]


def cmd_solve(args) -> int:
    try:
        grid = _load_single(args.puzzle)
        res = solve(grid, _config(args))
    except _INPUT_ERRORS as exc:
        return _fail(str(exc))
    return _emit_solution(res, args)


def cmd_bench(args) -> int:
    try:
        puzzles = [p for path in args.puzzles for p in read_puzzles(path)]
        for _, grid in puzzles:
            bad = duplicate_clues(grid)
            if bad:
                unit, digit = bad[0]
                raise InvalidPuzzleError(f"digit {digit} repeated in {unit.kind} {unit.ordinal}")
    except _INPUT_ERRORS as exc:
        return _fail(str(exc))
    report = run_bench(
        puzzles, args.ac, trials=args.trials, warmup=args.warmup, heuristic=Heuristic(args.heuristic),
        time_limit=args.time_limit, node_limit=args.node_limit, backend=args.backend,
    )
    sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_table())
    return 0


def _train_model(args) -> KnnModel:
    encoding = Encoding(args.encoding)
    if args.train == "idx":
        if not (args.idx_images and args.idx_labels):
            raise MalformedInputError("--train idx needs --idx-images and --idx-labels")
        data = load_idx(args.idx_images, args.idx_labels, encoding, limit=args.idx_limit)
    else:
        if not 0 <= args.train_noise <= 1:
            raise MalformedInputError("--train-noise must be in [0, 1]")
        data = generate_synthetic(args.train_count, args.train_noise, args.seed, encoding)
    return KnnModel(data, args.k)


def _recognize(args) -> SudokuGrid:
    img = load_binary_image(args.image, args.threshold)
    if not 0 <= args.margin < 0.4:
        raise MalformedInputError("--margin must be in [0, 0.4)")
    if not 0 <= args.ink_threshold <= 1:
        raise MalformedInputError("--ink-threshold must be in [0, 1]")
    model = _train_model(args)
    return recognize_grid(img, model, args.margin, args.ink_threshold)


def cmd_recognize(args) -> int:
    try:
        grid = _recognize(args)
    except (*_INPUT_ERRORS, ValueError) as exc:
        return _fail(str(exc))
    print(grid.to_string())
    return 0


def cmd_pipeline(args) -> int:
    try:
        grid = _recognize(args)
    except (*_INPUT_ERRORS, ValueError) as exc:
        return _fail(str(exc))
    print(grid.to_string(), file=sys.stderr)
    try:
        res = solve(grid, _config(args))
    except InvalidPuzzleError as exc:
        return _fail(f"recognized grid is not a valid puzzle: {exc}", EXIT_MISREAD)
    return _emit_solution(res, args)


def cmd_render(args) -> int:
    try:
        grid = _load_single(args.puzzle)
    except _INPUT_ERRORS as exc:
        return _fail(str(exc))
    if not 0 <= args.noise <= 1:
        return _fail("--noise must be in [0, 1]")
    write_pbm(args.output, render_grid(grid, args.noise, args.seed, args.scale))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acsudoku", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one puzzle file")
    p.add_argument("puzzle", help="puzzle text file, or - for stdin")
    _add_search_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="time AC algorithms over puzzles")
    p.add_argument("puzzles", nargs="+")
    p.add_argument("--trials", type=_positive_int, default=3)
    p.add_argument("--warmup", type=int, default=0, help="untimed runs before each timed series")
    p.add_argument("--ac", type=_parse_ac_list, default=[AcAlgorithm(v) for v in "1234"],
                   metavar="LIST", help="comma-separated algorithms (default: 1,2,3,4)")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.add_argument("--heuristic", choices=[h.value for h in Heuristic], default="mrv")
    p.add_argument("--time-limit", type=_positive_float, metavar="SECS")
    p.add_argument("--node-limit", type=_positive_int, metavar="N")
    p.add_argument("--backend", choices=["auto", *_backend.BACKENDS], default="auto")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("recognize", help="read a grid image into a puzzle string")
    p.add_argument("image", help="PBM or PGM image")
    _add_recognize_flags(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("pipeline", help="recognize a grid image, then solve it")
    p.add_argument("image", help="PBM or PGM image")
    _add_recognize_flags(p)
    _add_search_flags(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("render", help="draw a puzzle as a PBM using the built-in font")
    p.add_argument("puzzle")
    p.add_argument("output")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=_positive_int, default=1)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RuntimeError as exc:  # e.g. compiled backend requested but not built
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
