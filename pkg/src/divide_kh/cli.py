"""``divide-kh``: batch command-line front end.

Exit codes: 0 success, 1 invalid input (syntax, validation, inapplicable
move, unsupported format), 2 a violated internal invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .complex import GradingMismatch, NotAChainMap, UnsupportedSaddle, build_complex, chain_summands
from .divide import DivideError, Divide, SingularProfile, validate
from .homology import METHODS, divide_homology, graded_euler
from .laurent import HalfLaurent, NotDivisible
from .moves import NotApplicable, apply_move, parse_move, random_divide
from .notation import emit, loads
from .polynomial import check_euler_relation, w_statesum
from .states import DEFAULT_MAX_POINTS, InternalError, TooManyPoints, WordLengthMismatch, enumerate_enhanced, StateSpace, int_to_word

SCHEMA = 1
FORMATS = ("text", "json", "latex", "tsv")

INPUT_ERRORS = (DivideError, WordLengthMismatch, TooManyPoints, NotApplicable, OSError, ValueError)
INTERNAL_ERRORS = (UnsupportedSaddle, NotDivisible, InternalError, GradingMismatch, NotAChainMap, ArithmeticError)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    format: str = "text"
    max_points: int = DEFAULT_MAX_POINTS
    threads: int = 1
    seed: int | None = None


def _read_divide(path: str) -> Divide:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return loads(text)


def _json(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def _need(fmt: str, allowed: tuple[str, ...], command: str) -> None:
    if fmt not in allowed:
        raise UsageError(f"{command} does not support --format {fmt} (use one of {', '.join(allowed)})")


def _profile_obj(prof: SingularProfile) -> dict:
    return {
        "strands": prof.strands, "n": prof.n, "n_plus": prof.n_plus, "n_minus": prof.n_minus,
        "n_zero": prof.n_zero, "endpoints": prof.endpoints, "writhe": prof.writhe,
        "points": [str(p) for p in prof.points],
    }


def cmd_check(args, out) -> None:
    _need(args.format, ("text", "json"), "check")
    divide = _read_divide(args.input)
    prof = validate(divide)
    if args.format == "json":
        out.write(_json({"valid": True, "profile": _profile_obj(prof)}))
        return
    obj = _profile_obj(prof)
    out.write("valid\n")
    for key in ("strands", "n", "n_plus", "n_minus", "n_zero", "endpoints", "writhe"):
        out.write(f"{key}: {obj[key]}\n")
    out.write("points: " + " ".join(obj["points"]) + "\n")


def cmd_states(args, out) -> None:
    _need(args.format, ("text", "tsv", "json"), "states")
    divide = _read_divide(args.input)
    space = StateSpace(divide, args.max_points)
    rows = []
    for w in range(1 << space.n):
        sc, g = space.components(w), space.gradings(w)
        word = "".join(map(str, int_to_word(w, space.n)))
        rows.append({"word": word, "op": sc.op, "cl": sc.cl, "i": g.i, "k": g.k})
    enhanced = []
    if args.enhanced:
        for st in enumerate_enhanced(divide, args.max_points):
            enhanced.append({"word": "".join(map(str, st.word)),
                             "signs": "".join("+" if s > 0 else "-" for s in st.signs),
                             "i": st.i, "k": st.k, "j": st.j})
    if args.format == "json":
        obj = {"states": rows}
        if args.enhanced:
            obj["enhanced"] = enhanced
        out.write(_json(obj))
        return
    out.write("word\top\tcl\ti\tk\n")
    for r in rows:
        out.write(f"{r['word']}\t{r['op']}\t{r['cl']}\t{r['i']}\t{r['k']}\n")
    if args.enhanced:
        out.write("\nword\tsigns\ti\tk\tj\n")
        for r in enhanced:
            out.write(f"{r['word']}\t{r['signs']}\t{r['i']}\t{r['k']}\t{r['j']}\n")


def cmd_complex(args, out) -> None:
    _need(args.format, ("text", "tsv", "json"), "complex")
    divide = _read_divide(args.input)
    cx = build_complex(divide, args.max_points)
    dims = cx.dims()
    summands = chain_summands(divide, args.max_points)
    if args.format == "json":
        obj = {
            "dims": [{"i": i, "j": j, "dim": d} for (i, j), d in dims.items()],
            "summands": [{"i": i, "k": k, "op": op, "cl": cl, "count": c}
                         for i, parts in summands.items() for k, op, cl, c in parts],
        }
        if args.matrices:
            obj["entries"] = [{"i": key[0], "j": key[1], "src": a, "tgt": b} for key, a, b in cx.triples()]
        out.write(_json(obj))
        return
    out.write("i\tj\tdim\n")
    for (i, j), d in dims.items():
        out.write(f"{i}\t{j}\t{d}\n")
    out.write("\ni\tsummands\n")
    for i, parts in summands.items():
        terms = " + ".join(_summand(k, op, cl, c) for k, op, cl, c in parts)
        out.write(f"{i}\t{terms}\n")
    if args.matrices:
        out.write("\ni\tj\tsrc\ttgt\n")
        for (i, j), a, b in cx.triples():
            out.write(f"{i}\t{j}\t{a}\t{b}\n")


def _summand(k: int, op: int, cl: int, count: int) -> str:
    factors = ["A"] * op + ["B"] * cl
    body = "(" + "⊗".join(factors) + ")" if len(factors) > 1 else (factors[0] if factors else "Z2")
    return (f"{count}·" if count > 1 else "") + f"{body}{{{k}}}"


def cmd_homology(args, out) -> None:
    _need(args.format, FORMATS, "homology")
    divide = _read_divide(args.input)
    table = divide_homology(divide, args.method, args.threads, args.max_points)
    out.write(table.render(args.format).rstrip("\n") + "\n")


def _poly_out(p: HalfLaurent, fmt: str, key: str) -> str:
    if fmt == "json":
        return _json({key: p.to_pairs(), "text": p.render()})
    if fmt == "tsv":
        return "exponent\tcoefficient\n" + "".join(f"{e}\t{c}\n" for e, c in p.to_pairs())
    return p.render(style="latex" if fmt == "latex" else "text") + "\n"


def cmd_poly(args, out) -> None:
    _need(args.format, FORMATS, "poly")
    divide = _read_divide(args.input)
    out.write(_poly_out(w_statesum(divide, args.max_points), args.format, "W"))


def cmd_euler(args, out) -> int:
    _need(args.format, ("text", "json"), "euler")
    divide = _read_divide(args.input)
    table = divide_homology(divide, "auto", args.threads, args.max_points)
    ok = check_euler_relation(divide, table, args.max_points)
    chi = graded_euler(table)
    try:
        w_text = w_statesum(divide, args.max_points).render()
    except NotDivisible:
        w_text = None
    if args.format == "json":
        out.write(_json({"holds": ok, "W": w_text, "chi": chi.to_pairs(), "chi_text": chi.render()}))
    else:
        out.write(f"W: {w_text if w_text is not None else '(not a Laurent polynomial)'}\n")
        out.write(f"chi: {chi.render()}\n")
        out.write(f"relation: {'holds' if ok else 'FAILS'}\n")
    if not ok:
        raise InternalError("W(t^2)(1 + t^2) != t chi(t)")
    return 0


def cmd_moves(args, out) -> None:
    _need(args.format, ("text", "json"), "moves apply")
    divide = _read_divide(args.input)
    moved = apply_move(divide, parse_move(args.move))
    out.write(emit(moved, args.format))


def cmd_rand(args, out) -> None:
    _need(args.format, ("text", "json"), "rand")
    seed = 0 if args.seed is None else args.seed
    out.write(emit(random_divide(seed, args.points, args.strands), args.format))


def cmd_report(args, out) -> None:
    from . import report
    divide = _read_divide(args.input)
    written = report.write_report(divide, Path(args.out), args.max_points, args.threads)
    if args.format == "json":
        out.write(_json({"files": [str(p) for p in written]}))
    else:
        for p in written:
            out.write(f"{p}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(prog="divide-kh", description="Homology and state-sum polynomials of OMS-divides.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name: str, help: str):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("input", help="divide file, or - for stdin")
        return p

    with_input("check", "validate and print the singular profile").set_defaults(func=cmd_check)
    p = with_input("states", "list states with op, cl, i, k")
    p.add_argument("--enhanced", action="store_true", help="also list enhanced states with j")
    p.set_defaults(func=cmd_states)
    p = with_input("complex", "chain-group dimensions and summands")
    p.add_argument("--matrices", action="store_true", help="also list differential entries")
    p.set_defaults(func=cmd_complex)
    p = with_input("homology", "homology table")
    p.add_argument("--method", choices=METHODS + ("module",), default="auto")
    p.set_defaults(func=cmd_homology)
    with_input("poly", "the polynomial W").set_defaults(func=cmd_poly)
    with_input("euler", "check W(t^2)(1+t^2) = t chi").set_defaults(func=cmd_euler)

    moves = sub.add_parser("moves", help="word-level moves")
    msub = moves.add_subparsers(dest="moves_command", required=True)
    p = msub.add_parser("apply", parents=[common], help="apply a move descriptor such as II-insert@1:+1")
    p.add_argument("input")
    p.add_argument("move")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("rand", parents=[common], help="seeded random divide")
    p.add_argument("--points", type=int, default=6)
    p.add_argument("--strands", type=int, default=4)
    p.set_defaults(func=cmd_rand)

    p = with_input("report", "write TSV, JSON and PNG figures to a directory")
    p.add_argument("--out", default="report")
    p.set_defaults(func=cmd_report)
    return parser


def _fail(args, exc: BaseException, code: int) -> int:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        sys.stderr.write(_json({"error": type(exc).__name__, "message": str(exc), "exit": code}))
    else:
        sys.stderr.write(f"divide-kh: {type(exc).__name__}: {exc}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, sys.stdout)
    except INTERNAL_ERRORS as exc:
        return _fail(args, exc, 2)
    except INPUT_ERRORS as exc:
        return _fail(args, exc, 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
