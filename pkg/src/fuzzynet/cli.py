"""Command-line interface.

Exit codes: 0 success, 1 engine/validation failure, 2 usage error.  Every
subcommand that reads a knowledge base takes it as an optional leading
argument, falling back to $FUZZYNET_KB and then to the built-in sample.
Numeric output is printed with 4 decimals; --json emits the same canonical
JSON the HTTP service returns.
"""
from __future__ import annotations

import argparse
import os
import sys

from .diagnosis import (
    ETA_DEFAULT,
    DialogueSession,
    Query,
    confirm,
    diagnose,
    learn_term,
    reject,
)
from .errors import DocumentValidationError, EngineError
from .inclusion import include_named
from .membership import round_nearest
from .network import SemanticNet
from .partition import partition
from .service import DEFAULT_PORT
from .similarity import SimilarityReport, term_similarity
from .store import SAMPLE_KB_NAME, canonical_json, load_kb, save_kb

__all__ = ["main", "build_parser", "repl_loop"]

_REPL_HELP = """commands:
  diagnose <goal> [object] [context...]   rank procedures for a goal term
  confirm <n|procedure>                   accept a candidate (reinforces it)
  reject <n|procedure>                    refuse a candidate (weakens it)
  learn <term> <procedure> <level>        teach a new term/procedure link
  sim <termA> <termB>                     similarity between two user terms
  include <a> <b>                         inclusion degree between variables
  terms                                   list known user terms
  save <path>                             write the current KB to a file
  help                                    show this message
  quit                                    leave the assistant"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzynet",
        description="fuzzy semantic-network engine and interactive assistant",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_kb(p: argparse.ArgumentParser):
        p.add_argument(
            "kb",
            nargs="?",
            default=None,
            help="knowledge base path (default: $FUZZYNET_KB, then the built-in sample)",
        )

    kb = sub.add_parser("kb", help="knowledge base maintenance")
    kb_sub = kb.add_subparsers(dest="kb_command", required=True)
    validate = kb_sub.add_parser("validate", help="check a knowledge base file")
    validate.add_argument("path")
    validate.set_defaults(handler=cmd_kb_validate)

    sim = sub.add_parser("sim", help="similarity between two user terms")
    add_kb(sim)
    sim.add_argument("a")
    sim.add_argument("b")
    sim.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    sim.set_defaults(handler=cmd_sim)

    include = sub.add_parser("include", help="inclusion degree between two variables")
    add_kb(include)
    include.add_argument("a")
    include.add_argument("b")
    include.add_argument("--json", action="store_true")
    include.set_defaults(handler=cmd_include)

    diag = sub.add_parser("diagnose", help="rank procedures for a goal term")
    add_kb(diag)
    diag.add_argument("--goal", required=True)
    diag.add_argument("--object", default="", dest="obj")
    diag.add_argument("--context", nargs="*", default=[])
    diag.add_argument("--json", action="store_true")
    diag.set_defaults(handler=cmd_diagnose)

    part = sub.add_parser("partition", help="group objects by similarity threshold")
    add_kb(part)
    part.add_argument("--theta", type=float, default=0.9)
    part.add_argument("--json", action="store_true")
    part.set_defaults(handler=cmd_partition)

    repl = sub.add_parser("repl", help="interactive assistant loop")
    add_kb(repl)
    repl.add_argument("--eta", type=float, default=ETA_DEFAULT)
    repl.set_defaults(handler=cmd_repl)

    serve = sub.add_parser("serve", help="run the HTTP service")
    add_kb(serve)
    serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--log", default=None, help="session log file (JSONL)")
    serve.set_defaults(handler=cmd_serve)

    return parser


def _load(args) -> SemanticNet:
    path = args.kb or os.environ.get("FUZZYNET_KB") or SAMPLE_KB_NAME
    return load_kb(path)


def cmd_kb_validate(args) -> int:
    load_kb(args.path)
    print(f"OK: {args.path} is a valid knowledge base")
    return 0


def print_similarity_table(report: SimilarityReport, out=None) -> None:
    out = out or sys.stdout
    print(f"similarity: {report.a} vs {report.b}", file=out)
    print(f"{'procedure':<20} {'f_min':>8} {'f_max':>8}", file=out)
    for (proc, f_min), (_, f_max) in zip(report.intersections, report.unions):
        print(f"{proc:<20} {f_min:>8.4f} {f_max:>8.4f}", file=out)
    print(
        f"{'max':<20} {report.max_intersection:>8.4f} {report.max_union:>8.4f}",
        file=out,
    )
    print(
        f"ratio: {report.rounded_intersection:.2f} / {report.rounded_union:.2f}"
        f" = {report.ratio:.4f}",
        file=out,
    )
    print(f"similarity degree: {round_nearest(report.ratio, 2):.2f}", file=out)


def cmd_sim(args) -> int:
    report = term_similarity(_load(args), args.a, args.b)
    if args.json:
        sys.stdout.write(canonical_json(report.to_jsonable()))
    else:
        print_similarity_table(report)
    return 0


def cmd_include(args) -> int:
    degree = include_named(_load(args), args.a, args.b)
    if args.json:
        sys.stdout.write(canonical_json({"a": args.a, "b": args.b, "degree": degree}))
    else:
        print(f"inclusion degree of {args.a} in {args.b}: {degree:.4f}")
    return 0


def print_candidates(session: DialogueSession, out=None) -> None:
    out = out or sys.stdout
    if not session.candidates:
        print(
            "no candidate above the score floor;"
            " teach me with: learn <term> <procedure> <level>",
            file=out,
        )
        return
    for index, candidate in enumerate(session.candidates, 1):
        extra = ""
        if candidate.via is not None:
            extra = f"  via {candidate.via} (weight {candidate.transfer_similarity:.4f})"
        print(
            f"  {index}. {candidate.procedure:<16} score={candidate.score:.4f}"
            f"  level={candidate.level}{extra}",
            file=out,
        )


def cmd_diagnose(args) -> int:
    net = _load(args)
    query = Query(goal=args.goal, obj=args.obj, context=tuple(args.context))
    session = diagnose(net, query)
    if args.json:
        sys.stdout.write(canonical_json(session.to_jsonable()))
    else:
        print(f"query: goal={query.goal!r} object={query.obj!r}")
        print_candidates(session)
    return 0


def cmd_partition(args) -> int:
    result = partition(_load(args), args.theta)
    if args.json:
        sys.stdout.write(canonical_json(result.to_jsonable()))
    else:
        print(f"partition at theta={result.theta:.4f}")
        for index, group in enumerate(result.groups, 1):
            print(f"  group {index}: {', '.join(group)}")
    return 0


def _pick_candidate(session: DialogueSession, token: str) -> str:
    if token.isdigit():
        index = int(token)
        if not 1 <= index <= len(session.candidates):
            raise EngineError(f"candidate index {index} out of range")
        return session.candidates[index - 1].procedure
    return token


def repl_loop(net: SemanticNet, in_stream, out_stream, eta: float = ETA_DEFAULT):
    """Text dialogue loop; returns the (possibly updated) network."""

    def emit(text: str = ""):
        print(text, file=out_stream)

    session: DialogueSession | None = None
    counter = 0
    emit("interactive assistant; type 'help' for commands")
    while True:
        out_stream.write("fuzzy> ")
        out_stream.flush()
        line = in_stream.readline()
        if not line:
            emit()
            break
        parts = line.split()
        if not parts:
            continue
        command, rest = parts[0].lower(), parts[1:]
        try:
            if command in ("quit", "exit"):
                break
            elif command == "help":
                emit(_REPL_HELP)
            elif command == "diagnose":
                if not rest:
                    emit("usage: diagnose <goal> [object] [context...]")
                    continue
                counter += 1
                query = Query(
                    goal=rest[0],
                    obj=rest[1] if len(rest) > 1 else "",
                    context=tuple(rest[2:]),
                )
                session = diagnose(net, query, session_id=f"r{counter}")
                print_candidates(session, out_stream)
            elif command in ("confirm", "reject"):
                if session is None:
                    emit("no session yet; run diagnose first")
                    continue
                if not rest:
                    emit(f"usage: {command} <n|procedure>")
                    continue
                candidate_id = _pick_candidate(session, rest[0])
                if command == "confirm":
                    net, session, deltas = confirm(net, session, candidate_id, eta)
                else:
                    net, session, deltas = reject(net, session, candidate_id, eta)
                for delta in deltas:
                    corners = ", ".join(f"{corner:.4f}" for corner in delta.new)
                    emit(
                        f"{delta.action}: {delta.term}/{delta.procedure}"
                        f" {delta.level} -> [{corners}]"
                    )
                emit(f"session {session.id} is {session.status.value}")
            elif command == "learn":
                if len(rest) != 3:
                    emit("usage: learn <term> <procedure> <level>")
                    continue
                net, delta = learn_term(net, rest[0], rest[1], rest[2])
                emit(f"learned {delta.term} -> {delta.procedure} at {delta.level}")
            elif command == "sim":
                if len(rest) != 2:
                    emit("usage: sim <termA> <termB>")
                    continue
                print_similarity_table(term_similarity(net, rest[0], rest[1]), out_stream)
            elif command == "include":
                if len(rest) != 2:
                    emit("usage: include <a> <b>")
                    continue
                degree = include_named(net, rest[0], rest[1])
                emit(f"inclusion degree of {rest[0]} in {rest[1]}: {degree:.4f}")
            elif command == "terms":
                for attr, term in net.terms():
                    procs = ", ".join(net.user_variable(attr, term).procedures)
                    emit(f"{attr}: {term} -> {procs}")
            elif command == "save":
                if len(rest) != 1:
                    emit("usage: save <path>")
                    continue
                save_kb(net, rest[0])
                emit(f"saved knowledge base to {rest[0]}")
            else:
                emit(f"unknown command {command!r}; type 'help'")
        except EngineError as exc:
            emit(f"error [{exc.code}]: {exc}")
    return net


def cmd_repl(args) -> int:
    repl_loop(_load(args), sys.stdin, sys.stdout, eta=args.eta)
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(_load(args), port=args.port, host=args.host, log_path=args.log)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except EngineError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        if isinstance(exc, DocumentValidationError):
            for problem in exc.errors:
                print(f"  - {problem}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
