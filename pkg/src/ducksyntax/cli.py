"""Command-line harness.

    ducksyntax parse    --lexicon PATH [--format sexpr|tabular] [INPUT_FILE]
    ducksyntax trace    --lexicon PATH [INPUT_FILE]
    ducksyntax stats    --lexicon PATH [INPUT_FILE]
    ducksyntax validate --lexicon PATH

Input is one utterance per line. ``--lexicon @bundled`` selects the lexicon
shipped with the package. Exit codes: 0 ok, 1 some line failed to parse,
2 lexicon failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, TextIO

from .lexicon import Lexicon, LexiconError, load_lexicon, validate_lexicon
from .output import to_sexpr, to_tabular
from .parser import EventKind, ParseResult, UnfulfilledContract, facilitation_metric, parse, tokenize

EXIT_OK, EXIT_PARSE, EXIT_LEXICON, EXIT_IO = 0, 1, 2, 3
BUNDLED = "@bundled"


class CliError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


@dataclass
class RunConfig:
    command: str
    lexicon_path: str
    output_format: str = "sexpr"
    input: str | None = None  # None reads standard input


def _read_lexicon(path: str) -> Lexicon:
    try:
        if path == BUNDLED:
            text = resources.files("ducksyntax.data").joinpath("english.lex").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read lexicon: {exc}") from None
    except UnicodeDecodeError as exc:
        raise CliError(EXIT_LEXICON, f"lexicon is not UTF-8: {exc}") from None
    try:
        return load_lexicon(text)
    except LexiconError as exc:
        raise CliError(EXIT_LEXICON, f"lexicon: {exc}") from None


def _read_lines(cfg: RunConfig) -> list[str]:
    try:
        if cfg.input is None:
            return sys.stdin.read().splitlines()
        with open(cfg.input, encoding="utf-8") as fh:
            return fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_IO, f"cannot read input: {exc}") from None


def _usable_lexicon(cfg: RunConfig) -> Lexicon:
    lex = _read_lexicon(cfg.lexicon_path)
    report = validate_lexicon(lex)
    if report.errors:
        raise CliError(EXIT_LEXICON, "lexicon: " + "; ".join(str(e) for e in report.errors))
    return lex


def _parsed(cfg: RunConfig, err: TextIO) -> Iterator[tuple[int, ParseResult | UnfulfilledContract]]:
    lex = _usable_lexicon(cfg)
    for lineno, line in enumerate(_read_lines(cfg), start=1):
        tokens = tokenize(line)
        if not tokens:
            continue
        try:
            yield lineno, parse(tokens, lex)
        except UnfulfilledContract as exc:
            err.write(f"line {lineno}: {exc}\n")
            yield lineno, exc


def cmd_parse(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    status = EXIT_OK
    for _, result in _parsed(cfg, err):
        if isinstance(result, UnfulfilledContract):
            status = EXIT_PARSE
            continue
        if cfg.output_format == "tabular":
            out.write(to_tabular(result.objects) + "\n\n")
        else:
            out.write(" ".join(to_sexpr(o) for o in result.objects) + "\n")
    return status


def cmd_trace(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    status = EXIT_OK
    first = True
    for _, result in _parsed(cfg, err):
        if not first:
            out.write("\n")
        first = False
        if isinstance(result, UnfulfilledContract):
            status = EXIT_PARSE
        if len(result.trace):
            out.write(str(result.trace) + "\n")
    return status


def _fraction(num: int, den: int) -> str:
    return "n/a" if den == 0 else f"{num / den:.4f}"


def cmd_stats(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    status = EXIT_OK
    lines = failed = 0
    kinds: Counter = Counter()
    fw_cw = 0
    by_type: Counter = Counter()
    metric = 0
    for _, result in _parsed(cfg, err):
        lines += 1
        if isinstance(result, UnfulfilledContract):
            failed += 1
            status = EXIT_PARSE
            continue
        events = result.trace.events
        for i, ev in enumerate(events):
            kinds[ev.kind] += 1
            if ev.kind is EventKind.FULFILL:
                by_type[ev.detail.split("[", 1)[0]] += 1
                # a fulfilment straight after its CAST took a single content word
                if i > 0 and events[i - 1].kind is EventKind.CAST:
                    fw_cw += 1
        metric += facilitation_metric(result.metrics)

    fulfils = kinds[EventKind.FULFILL]
    combos = fulfils + kinds[EventKind.BUFFER] + kinds[EventKind.RETRO_ATTACH]
    report = [
        f"lines={lines}",
        f"parsed={lines - failed}",
        f"failed={failed}",
        f"composition_events={combos}",
        f"fulfill_events={fulfils}",
        f"buffer_events={kinds[EventKind.BUFFER]}",
        f"retro_attach_events={kinds[EventKind.RETRO_ATTACH]}",
        f"fw_cw_fulfillments={fw_cw}",
        f"fw_cw_fraction={_fraction(fw_cw, combos)}",
        f"fw_cw_fraction_excluding_buffered={_fraction(fw_cw, combos - kinds[EventKind.BUFFER])}",
    ]
    report += [f"out_{label}={by_type[label]}" for label in sorted(by_type)]
    report.append(f"facilitation_metric={metric}")
    out.write("\n".join(report) + "\n")
    return status


def cmd_validate(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    report = validate_lexicon(_read_lexicon(cfg.lexicon_path))
    for finding in report.errors:
        out.write(f"error\t{finding}\n")
    for finding in report.warnings:
        out.write(f"warning\t{finding}\n")
    out.write(f"errors={len(report.errors)} warnings={len(report.warnings)}\n")
    return EXIT_OK if report.ok else EXIT_LEXICON


COMMANDS = {"parse": cmd_parse, "trace": cmd_trace, "stats": cmd_stats, "validate": cmd_validate}


def build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ducksyntax", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("parse", "trace", "stats", "validate"):
        p = sub.add_parser(name)
        p.add_argument("--lexicon", required=True, metavar="PATH",
                       help=f"lexicon file, or {BUNDLED} for the shipped English lexicon")
        if name == "validate":
            continue
        if name == "parse":
            p.add_argument("--format", choices=("sexpr", "tabular"), default="sexpr")
        p.add_argument("input", nargs="?", metavar="INPUT_FILE", help="defaults to standard input")
    return ap


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return COMMANDS[cfg.command](cfg, out, err)
    except CliError as exc:
        err.write(f"{exc}\n")
        return exc.status


def main(argv: list[str] | None = None) -> int:
    args = build_argparser().parse_args(argv)
    cfg = RunConfig(args.command, args.lexicon,
                    getattr(args, "format", "sexpr"), getattr(args, "input", None))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
