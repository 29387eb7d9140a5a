"""Command-line driver: parse a knowledge base, run a query, print the
search tree and the answers.

Exit codes: 0 at least one answer, 1 no answers, 2 usage or parse or
engine error, 3 tree truncated by resource limits.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .engine import Answer, EngineOptions, Limits, build_tree, solutions
from .errors import PrologError
from .fixtures import FIXTURES, fixture_text
from .reader import ParseError, parse_program, parse_query
from .render import RenderOptions, render_text
from .serialize import serialize

EXIT_OK = 0
EXIT_NO_ANSWERS = 1
EXIT_ERROR = 2
EXIT_TRUNCATED = 3


@dataclass
class RunConfig:
    db: str | None = None
    query: str | None = None
    format: str = "ascii"
    limits: Limits = field(default_factory=Limits)
    unknown: str = "fail"
    rename: str = "prime"
    width: int = 120
    list_fixtures: bool = False


def _answer_block(answer: Answer) -> str:
    if not answer.bindings:
        return "true."
    return answer.text()


def _answers_section(answers: list[Answer]) -> str:
    if not answers:
        return "false.\n"
    return "\n\n".join(_answer_block(a) for a in answers) + "\n"


def _load_db(source: str) -> str:
    path = Path(source)
    if path.exists():
        return path.read_text(encoding="utf-8")
    try:
        return fixture_text(source)
    except KeyError:
        raise FileNotFoundError(
            f"no such file or bundled fixture: {source}") from None


def run(cfg: RunConfig, out: IO[str], err: IO[str]) -> int:
    if cfg.list_fixtures:
        for f in FIXTURES:
            print(f"{f.name}: {f.query}", file=out)
        return EXIT_OK

    if not cfg.db or not cfg.query:
        print("error: --db and --query are required", file=err)
        return EXIT_ERROR

    try:
        db_text = _load_db(cfg.db)
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_ERROR

    try:
        program = parse_program(db_text)
        query = parse_query(cfg.query)
    except ParseError as e:
        print(f"error: {e}", file=err)
        return EXIT_ERROR

    options = EngineOptions(unknown=cfg.unknown, rename=cfg.rename)
    try:
        tree = build_tree(program, query, cfg.limits, options)
        answers = solutions(tree)
    except PrologError as e:
        print(f"error: {e}", file=err)
        return EXIT_ERROR

    if cfg.format == "ascii":
        out.write(render_text(tree, RenderOptions(max_width=cfg.width)))
        out.write("\n")
    elif cfg.format == "canonical":
        out.write(serialize(tree))
        out.write("\n")
    out.write(_answers_section(answers))

    if tree.truncated:
        print("warning: tree truncated by depth/node limits", file=err)
        return EXIT_TRUNCATED
    return EXIT_OK if answers else EXIT_NO_ANSWERS


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sldtree",
        description="Build and draw the exhaustive search tree for a "
                    "Prolog query.")
    p.add_argument("--db", metavar="PATH_OR_FIXTURE",
                   help="knowledge base file, or a bundled fixture name")
    p.add_argument("--query", metavar="GOAL",
                   help="query to run, e.g. 'jealous(X,Y)'")
    p.add_argument("--format", choices=("ascii", "canonical", "answers-only"),
                   default="ascii")
    p.add_argument("--max-depth", type=int, default=Limits().max_depth)
    p.add_argument("--max-nodes", type=int, default=Limits().max_nodes)
    p.add_argument("--unknown", choices=("fail", "error"), default="fail",
                   help="how to treat goals with no defining clauses")
    p.add_argument("--rename", choices=("prime", "numeric"), default="prime",
                   help="display style for renamed clause variables")
    p.add_argument("--width", type=int, default=120,
                   help="soft column budget for the ascii layout")
    p.add_argument("--list-fixtures", action="store_true",
                   help="list bundled knowledge bases and exit")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        limits = Limits(max_depth=args.max_depth, max_nodes=args.max_nodes)
        cfg = RunConfig(db=args.db, query=args.query, format=args.format,
                        limits=limits, unknown=args.unknown,
                        rename=args.rename, width=args.width,
                        list_fixtures=args.list_fixtures)
        if cfg.format == "ascii" and cfg.width:
            RenderOptions(max_width=cfg.width)  # validate early
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return run(cfg, sys.stdout, sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
