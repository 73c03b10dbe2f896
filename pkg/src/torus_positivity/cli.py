"""Command-line interface: ``torus-positivity <subcommand> ...``.

Inputs are read one per line from a file argument or standard input.  A
line is either a braid word such as ``(x y)^3 x y^-1 x y^-5`` or a tuple such
as ``(3,2,3)``, which stands for the word h(c).  Blank lines and lines
starting with ``#`` are skipped.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Any, Iterable, TextIO

from . import lattice
from .blowup import descendants, format_tuple, looks_like_tuple, parse_tuple, word_of_tuple
from .braid import BraidWord, WordSyntaxError, exp_sum, parse_word, render_word
from .certificate import check_certificate, from_text, to_text
from .factorization import (
    HYPOTHESIS_NOTE,
    FailsNecessaryCondition,
    NotPositive,
    OutOfScope,
    Positive,
    decide,
)
from .murasugi import (
    Case3,
    FailsNecessaryCondition as GateFailure,
    GateViolation,
    PositiveCase1,
    PositiveCase2,
    classify,
    describe,
    filling_invariants,
    gate,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
DEFAULTS = {"max_n": 12, "oracle": False}


@dataclasses.dataclass
class RunReport:
    input: str
    word: str | None = None
    cls: str | None = None
    gate: str | None = None
    invariants: str | None = None
    decision: str | None = None
    detail: str | None = None
    certificate: dict[str, Any] | None = None
    oracle: str | None = None
    notes: list[str] = dataclasses.field(default_factory=list)
    timing: float | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in dataclasses.asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunReport":
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for key in ("input", "word", "cls", "gate", "invariants", "decision", "detail", "oracle", "error"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{'class' if key == 'cls' else key}: {value}")
        if self.certificate is not None:
            lines.append(f"factors: {len(self.certificate['factors'])}")
            for f in self.certificate["factors"]:
                lines.append(f"  {f['generator']} @ {f['conjugator'] or '1'}")
        lines.extend(f"note: {n}" for n in self.notes)
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def read_input(line: str) -> BraidWord:
    text = line.strip()
    if looks_like_tuple(text):
        c = parse_tuple(text)
        if len(c) < 2:
            raise ValueError("tuples need at least two entries")
        return word_of_tuple(c)
    return parse_word(text)


def _gate_text(result) -> str:
    if isinstance(result, PositiveCase1):
        return "case 1 (positive)"
    if isinstance(result, PositiveCase2):
        return "case 2 (positive)"
    if isinstance(result, Case3):
        return f"case 3, c={format_tuple(result.c)}"
    return f"fails necessary condition: {result.reason}"


def report(line: str, max_n: int, oracle: bool, timing: bool = False) -> RunReport:
    start = time.perf_counter()
    rep = RunReport(input=line.strip())
    try:
        w = read_input(line)
    except (WordSyntaxError, ValueError) as exc:
        rep.error = f"parse error: {exc}"
        return rep
    rep.word = render_word(w) or "1"
    cls = classify(w)
    rep.cls = describe(cls)
    rep.gate = _gate_text(gate(cls))
    try:
        inv = filling_invariants(w)
        rep.invariants = f"c1={inv.c1} b2+={inv.b2plus} b2-={inv.b2minus} euler={inv.euler}"
    except GateViolation as exc:
        rep.invariants = str(exc)
    d = decide(w, max_n=max_n, oracle=oracle)
    rep.decision = type(d).__name__
    if isinstance(d, Positive):
        rep.detail = f"{len(d.certificate)} right-handed twists"
        rep.certificate = json.loads(to_text(d.certificate))
        if d.lattice_embedding is not None:
            rep.oracle = "embedding found" if d.lattice_embedding else "NO EMBEDDING (disagreement)"
    elif isinstance(d, NotPositive):
        wt = d.witness
        rep.detail = f"no descendant of (0,0) dominated by {format_tuple(wt.c)}; searched {wt.descendant_count} (sha256 {wt.digest[:16]})"
        if wt.lattice_embedding is not None:
            rep.oracle = "EMBEDDING FOUND (disagreement)" if wt.lattice_embedding else "no embedding"
    else:
        rep.detail = d.reason
    rep.notes.append(HYPOTHESIS_NOTE)
    if timing:
        rep.timing = time.perf_counter() - start
    return rep


def _lines(source: TextIO) -> Iterable[str]:
    for line in source:
        if line.strip() and not line.lstrip().startswith("#"):
            yield line.rstrip("\n")


def _open_input(path: str | None) -> TextIO:
    return sys.stdin if path in (None, "-") else open(path, encoding="utf-8")


def _emit(rep: RunReport, args) -> None:
    if args.machine:
        print(rep.to_json())
    elif not args.quiet:
        print(rep.to_text())
    elif rep.error:
        print(f"{rep.input}: {rep.error}")
    else:
        print(f"{rep.input}: {rep.decision}")


def cmd_decide(args) -> int:
    status = EXIT_OK
    with _open_input(args.file) as src:
        for line in _lines(src):
            rep = report(line, args.max_n, args.oracle, args.timing)
            if rep.error:
                status = EXIT_USAGE
            _emit(rep, args)
    return status


def cmd_classify(args) -> int:
    status = EXIT_OK
    with _open_input(args.file) as src:
        for line in _lines(src):
            rep = RunReport(input=line.strip())
            try:
                w = read_input(line)
            except (WordSyntaxError, ValueError) as exc:
                rep.error = f"parse error: {exc}"
                status = EXIT_USAGE
            else:
                cls = classify(w)
                rep.word = render_word(w) or "1"
                rep.cls = describe(cls)
                rep.gate = _gate_text(gate(cls))
                rep.detail = f"exp={exp_sum(w)}"
            _emit(rep, args)
    return status


def cmd_factorize(args) -> int:
    status = EXIT_OK
    outputs = []
    with _open_input(args.file) as src:
        for line in _lines(src):
            try:
                w = read_input(line)
            except (WordSyntaxError, ValueError) as exc:
                print(f"{line.strip()}: parse error: {exc}", file=sys.stderr)
                status = EXIT_USAGE
                continue
            d = decide(w, max_n=args.max_n)
            if isinstance(d, Positive):
                outputs.append(to_text(d.certificate))
            else:
                print(f"{line.strip()}: {type(d).__name__}, no certificate", file=sys.stderr)
                status = max(status, EXIT_FAILED)
    if args.output:
        if len(outputs) != 1:
            print(f"--output needs exactly one certificate, got {len(outputs)}", file=sys.stderr)
            return EXIT_USAGE
        Path(args.output).write_text(outputs[0], encoding="utf-8")
    else:
        sys.stdout.write("".join(outputs))
    return status


def cmd_verify(args) -> int:
    status = EXIT_OK
    for path in args.certificates:
        try:
            cert = from_text(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            print(f"{path}: malformed certificate: {exc}")
            status = EXIT_USAGE
            continue
        failures = check_certificate(cert)
        if not failures:
            if not args.quiet:
                print(f"{path}: OK ({len(cert)} twists)")
            continue
        first = failures[0]
        where = f"factor {first.index}" if first.index is not None else "certificate"
        print(f"{path}: FAILED at {where}: {first.message}")
        status = max(status, EXIT_FAILED) if status != EXIT_USAGE else status
    return status


def cmd_enumerate(args) -> int:
    if args.kind == "descendants":
        try:
            n = int(args.target)
        except ValueError:
            print(f"expected an integer N, got {args.target!r}", file=sys.stderr)
            return EXIT_USAGE
        if n < 2:
            print("N must be at least 2", file=sys.stderr)
            return EXIT_USAGE
        if n > args.max_n:
            print(f"refusing to enumerate N={n}: above the cap {args.max_n} (raise --max-n)", file=sys.stderr)
            return EXIT_USAGE
        items = [format_tuple(t) for t in sorted(descendants(n))]
        header = f"# descendants of (0,0) of length {n}: {len(items)}"
    else:
        try:
            c = parse_tuple(args.target)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        if len(c) > args.max_n:
            print(f"refusing to search N={len(c)}: above the cap {args.max_n}", file=sys.stderr)
            return EXIT_USAGE
        try:
            found = list(lattice.iter_embeddings(c))
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        items = [lattice.format_matrix(m.rows) for m in found]
        header = f"# embeddings of the chain lattice of {format_tuple(c)} (K={lattice.rank_of_target(c)}): {len(items)}"
    if args.machine:
        print(json.dumps({"count": len(items), "items": items}, sort_keys=True))
        return EXIT_OK
    print(header)
    for item in items:
        print(item if args.kind == "descendants" else item.rstrip("\n") + "\n")
    return EXIT_OK


def cmd_embed(args) -> int:
    status = EXIT_OK
    with _open_input(args.file) as src:
        for line in _lines(src):
            out: dict[str, Any] = {"input": line.strip()}
            try:
                c = parse_tuple(line)
                g = lattice.gram(c)
            except ValueError as exc:
                out["error"] = str(exc)
                status = EXIT_USAGE
            else:
                out["K"] = lattice.rank_of_target(c)
                out["gram"] = lattice.format_matrix(g)
                out["positive_definite"] = lattice.is_positive_definite(g)
                out["w_characteristic"] = lattice.is_w_characteristic(c)
                m = lattice.find_embedding(c)
                out["embedding"] = None if m is None else lattice.format_matrix(m.rows)
                if m is not None:
                    ex = lattice.extract_blowdowns(m)
                    out["s"] = format_tuple(ex.s)
                    out["blowdowns"] = " -> ".join(format_tuple(t) for t in ex.norms)
            if args.machine:
                print(json.dumps(out, sort_keys=True))
            else:
                for key, value in out.items():
                    if isinstance(value, str) and "\n" in value:
                        print(f"{key}:")
                        print("".join("  " + r + "\n" for r in value.splitlines()), end="")
                    else:
                        print(f"{key}: {'none' if value is None else value}")
                print()
    return status


def load_config(path: str | None) -> dict[str, Any]:
    config = dict(DEFAULTS)
    if path:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        config.update(data)
    return config


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults for max_n and oracle")
    common.add_argument("--oracle", action="store_true", default=None, help="cross-check with the lattice embedding search")
    common.add_argument("--max-n", type=int, default=None, help="enumeration cap on tuple length (default 12)")
    common.add_argument("--machine", action="store_true", help="one JSON object per result")
    common.add_argument("--quiet", action="store_true", help="one line per result")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in reports")

    parser = argparse.ArgumentParser(prog="torus-positivity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_ in (
        ("decide", cmd_decide, "decide positivity of each input"),
        ("classify", cmd_classify, "Murasugi class and gate result of each input"),
        ("factorize", cmd_factorize, "print positivity certificates"),
        ("embed", cmd_embed, "lattice embedding diagnostics for tuples"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", nargs="?", help="input file, one item per line (default: stdin)")
        p.set_defaults(func=func)
        if name == "factorize":
            p.add_argument("--output", "-o", help="write the single certificate to this file")
    p = sub.add_parser("verify", parents=[common], help="verify certificate files")
    p.add_argument("certificates", nargs="+")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("enumerate", parents=[common], help="list descendants of (0,0) or embeddings of a tuple")
    p.add_argument("kind", choices=["descendants", "embeddings"])
    p.add_argument("target", help="N for descendants, a tuple for embeddings")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.max_n is None:
        args.max_n = config["max_n"]
    if args.oracle is None:
        args.oracle = config["oracle"]
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
