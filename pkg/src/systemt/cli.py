"""Command-line front end.

Every subcommand produces a ``CommandResult``; ``--json`` prints it as one
JSON object, otherwise a short human-readable report is printed.  Exit code
0 means success, 1 a module error (parse, type, budget, ...), 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import codec, enumerator, metanf, reducibility, stdlib
from .errors import SystemTError
from .normalizer import DEFAULT_BUDGET, Budget, NormalForm, equal, eval_numeral, normalize
from .parser import parse_term, parse_type
from .syntax import App, Term, TypeExpr, canonical_names, pretty, show_type
from .typecheck import check_closed

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    command: str
    status: str = "ok"
    payload: Any = None
    steps: int = 0
    nodes: int = 0
    wall_time: float = 0.0
    error: dict[str, str] | None = None
    lines: list[str] = field(default_factory=list)

    def record(self, nf: NormalForm) -> NormalForm:
        if nf.stats is not None:
            self.steps += nf.stats.steps
            self.nodes = max(self.nodes, nf.stats.nodes)
        return nf

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "metrics": {"steps": self.steps, "nodes": self.nodes, "wall_time": round(self.wall_time, 6)},
            "error": self.error,
        }


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input helpers


def _show(t: Term) -> str:
    return pretty(canonical_names(t))


def _source(args, position: int = 0) -> str:
    names = args.combinator or []
    for name in names:
        if name not in stdlib.namespace():
            raise UsageError(f"unknown combinator {name!r}")
    exprs = args.expr or []
    files = args.file or []
    items = [*names, *exprs, *(Path(f).read_text() for f in files)]
    if position >= len(items):
        raise UsageError("missing term: pass -e EXPR, --combinator NAME or a FILE")
    return items[position]


def _term(args, position: int = 0) -> Term:
    return parse_term(_source(args, position), defs=stdlib.namespace())


def _type(args, attr: str = "type") -> TypeExpr:
    text = getattr(args, attr)
    if text is None:
        raise UsageError(f"--{attr} is required")
    return parse_type(text)


def _budget(args) -> Budget:
    return Budget(
        max_steps=args.budget_steps or DEFAULT_BUDGET.max_steps,
        max_nodes=args.budget_nodes or DEFAULT_BUDGET.max_nodes,
    )


def _enum_budget(args) -> Budget:
    base = enumerator.ENUMERATOR_BUDGET
    return Budget(args.budget_steps or base.max_steps, args.budget_nodes or base.max_nodes)


def _jets(args):
    return not args.no_jets


def _witness(args, tau: TypeExpr) -> reducibility.ReducibilityWitness:
    if args.witness:
        return reducibility.load_witness(Path(args.witness), tau)
    if tau != reducibility.TREE_TYPE:
        raise UsageError(f"--witness is required for type {show_type(tau)}")
    return reducibility.identity_witness()


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args, res: CommandResult) -> None:
    ty = check_closed(_term(args))
    res.payload = {"type": show_type(ty)}
    res.lines.append(show_type(ty))


def cmd_normalize(args, res: CommandResult) -> None:
    nf = res.record(normalize(_term(args), _budget(args), jets=_jets(args)))
    text = _show(nf.term)
    res.payload = {"term": text, "type": show_type(nf.type)}
    steps = nf.stats.steps
    res.lines += [text, f"-- type {show_type(nf.type)}; {steps} step{'' if steps == 1 else 's'}"]


def cmd_eq(args, res: CommandResult) -> None:
    a, b = _term(args, 0), _term(args, 1)
    budget, jets = _budget(args), _jets(args)
    na = res.record(normalize(a, budget, jets=jets))
    nb = res.record(normalize(b, budget, jets=jets))
    same = equal(a, b, budget, jets=jets) if na.type == nb.type else False
    res.payload = {"equal": same, "left": _show(na.term), "right": _show(nb.term)}
    res.lines.append("equal" if same else "not equal")


def cmd_encode(args, res: CommandResult) -> None:
    code, nested = codec.encode_nested(_term(args))
    res.payload = {"code": str(code), "nested": nested}
    res.lines += [str(code), nested]


def cmd_enum_nf(args, res: CommandResult) -> None:
    ty = _type(args)
    rows = []
    for t in metanf.enumerate_pure_closed_nf(ty, args.max_size):
        code = codec.encode_oslash(t)
        rows.append({"term": _show(t), "code": str(code)})
        res.lines.append(f"{code}\t{_show(t)}")
    res.payload = {"type": show_type(ty), "terms": rows}


def cmd_build_enumerator(args, res: CommandResult) -> None:
    ty = _type(args)
    bundle = enumerator.build_bundle(ty)
    checks = enumerator.typecheck_bundle(bundle)
    bad = [name for name, ok in checks.items() if not ok]
    if bad:
        raise SystemTError(f"bundle terms with wrong types: {', '.join(bad)}")
    text = _show(bundle.E)
    if args.emit:
        Path(args.emit).write_text(text + "\n")
    res.payload = {
        "type": show_type(ty),
        "subtypes": [show_type(t) for t in bundle.types],
        "degenerate": [list(p) for p in bundle.degenerate()],
        "emitted": args.emit,
    }
    res.lines.append(f"subtypes: {', '.join(show_type(t) for t in bundle.types)}")
    res.lines.append(f"degenerate J slots (j,i): {bundle.degenerate()}")
    res.lines.append(f"E written to {args.emit}" if args.emit else text)


def cmd_roundtrip(args, res: CommandResult) -> None:
    ty = _type(args)
    bundle = enumerator.build_bundle(ty)
    budget = _enum_budget(args)
    rows = []
    for t in metanf.enumerate_pure_closed_nf(ty, args.max_size):
        code = codec.encode_oslash(t)
        if code > args.max_code:
            continue
        nf = res.record(enumerator.apply_enumerator(bundle, code, budget))
        ok = nf.term == t
        rows.append({"code": code, "term": _show(t), "pass": ok, "steps": nf.stats.steps})
    rows.sort(key=lambda r: r["code"])
    res.payload = {"type": show_type(ty), "rows": rows, "all_pass": all(r["pass"] for r in rows)}
    res.lines.append("code\tresult\tsteps\tterm")
    res.lines += [f"{r['code']}\t{'pass' if r['pass'] else 'FAIL'}\t{r['steps']}\t{r['term']}" for r in rows]
    if not res.payload["all_pass"]:
        res.status = "error"
        res.error = {"category": "roundtrip", "message": "some codes did not roundtrip"}


def cmd_tree_code(args, res: CommandResult) -> None:
    t = _term(args)
    tree = reducibility.tree_of_nf(t)
    n = reducibility.tree_numeral(tree)
    N = reducibility.build_N(reducibility.identity_witness())
    via_term = eval_numeral(res.record(normalize(App(N, t), _budget(args), jets=_jets(args))))
    res.payload = {"tree": str(tree), "numeral": n, "object_numeral": via_term}
    res.lines += [str(tree), str(n)]


def cmd_reduce(args, res: CommandResult) -> None:
    tau = _type(args) if args.type else None
    if args.witness:
        wit = reducibility.load_witness(Path(args.witness), tau)
    else:
        wit = _witness(args, tau or reducibility.TREE_TYPE)
    n_term = reducibility.build_N(wit)
    exprs = [*(args.combinator or []), *(args.expr or []), *(args.file or [])]
    if not exprs:
        res.payload = {"type": show_type(wit.tau), "term": _show(n_term)}
        res.lines.append(_show(n_term))
        return
    value = eval_numeral(res.record(normalize(App(n_term, _term(args)), _budget(args), jets=_jets(args))))
    res.payload = {"type": show_type(wit.tau), "numeral": value}
    res.lines.append(str(value))


def cmd_encode_u(args, res: CommandResult) -> None:
    sigma, tau = _type(args, "sigma"), _type(args, "tau")
    F = _term(args)
    U = reducibility.encode_U(F, sigma, tau, _witness(args, tau), enumerator.build_bundle(sigma))
    if args.code is None:
        res.payload = {"term": _show(U)}
        res.lines.append(_show(U))
        return
    arg = codec.numeral_of_code(args.code, args.guard).term
    nf = res.record(normalize(App(U, arg), _enum_budget(args), jets=_jets(args)))
    value = eval_numeral(nf)
    res.payload = {"input": args.code, "output": value}
    res.lines.append(str(value))


def cmd_decode_v(args, res: CommandResult) -> None:
    sigma, tau = _type(args, "sigma"), _type(args, "tau")
    G = _term(args)
    V = reducibility.decode_V(G, sigma, tau, _witness(args, sigma), enumerator.build_bundle(tau))
    if args.input is None:
        res.payload = {"term": _show(V)}
        res.lines.append(_show(V))
        return
    x = parse_term(args.input, defs=stdlib.namespace())
    nf = res.record(normalize(App(V, x), _enum_budget(args), jets=_jets(args)))
    res.payload = {"input": _show(x), "output": _show(nf.term)}
    res.lines.append(_show(nf.term))


def cmd_lemma_a(args, res: CommandResult) -> None:
    ty = _type(args)
    bundle = enumerator.build_bundle(ty)
    rows = []
    for i in range(args.max_i + 1):
        for j in range(args.max_j + 1):
            rows.append({"i": i, "j": j, "pass": enumerator.check_lemma_a(bundle, i, j, _enum_budget(args))})
    res.payload = {"type": show_type(ty), "rows": rows, "all_pass": all(r["pass"] for r in rows)}
    res.lines += [f"i={r['i']} j={r['j']}\t{'pass' if r['pass'] else 'FAIL'}" for r in rows]
    if not res.payload["all_pass"]:
        res.status = "error"
        res.error = {"category": "lemma", "message": "some (i, j) pairs failed"}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "check": (cmd_check, "typecheck a closed term and print its type"),
    "normalize": (cmd_normalize, "print the normal form of a term"),
    "eq": (cmd_eq, "decide provable equality of two terms"),
    "encode": (cmd_encode, "Gödel code of a pure closed normal form"),
    "enum-nf": (cmd_enum_nf, "list pure closed normal forms of a type"),
    "build-enumerator": (cmd_build_enumerator, "construct the enumerator E for a type"),
    "roundtrip": (cmd_roundtrip, "check E(code of A) = A over a census"),
    "tree-code": (cmd_tree_code, "binary tree and tree numeral of a tree-type normal form"),
    "reduce": (cmd_reduce, "build N_t from a witness, or apply it to a term"),
    "encode-u": (cmd_encode_u, "build or run the U-encoding of a functional"),
    "decode-v": (cmd_decode_v, "build or run the V-decoding of a number function"),
    "lemma-a": (cmd_lemma_a, "check A (i+j) j = A i 0 over a grid"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-e", "--expr", action="append", help="term text (repeatable)")
    common.add_argument("--combinator", action="append", metavar="NAME", help="library combinator by name, e.g. Add")
    common.add_argument("file", nargs="*", help="file(s) holding terms")
    common.add_argument("--type", help="type, e.g. 'N -> N'")
    common.add_argument("--budget-steps", type=int)
    common.add_argument("--budget-nodes", type=int)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--no-jets", action="store_true", help="evaluate combinators literally")

    parser = argparse.ArgumentParser(prog="systemt", description="Gödel's System T toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}

    parsers["enum-nf"].add_argument("--max-size", type=int, default=9)
    parsers["build-enumerator"].add_argument("--emit", metavar="FILE")
    parsers["roundtrip"].add_argument("--max-code", type=int, default=2000)
    parsers["roundtrip"].add_argument("--max-size", type=int, default=9)
    parsers["reduce"].add_argument("--witness", metavar="FILE")
    for name in ("encode-u", "decode-v"):
        p = parsers[name]
        p.add_argument("--sigma", default=show_type(reducibility.TREE_TYPE))
        p.add_argument("--tau", default=show_type(reducibility.TREE_TYPE))
        p.add_argument("--witness", metavar="FILE")
    parsers["encode-u"].add_argument("--code", type=int, help="Gödel code to feed in")
    parsers["encode-u"].add_argument("--guard", type=int, default=codec.DEFAULT_GUARD)
    parsers["decode-v"].add_argument("--input", help="argument term of type sigma")
    parsers["lemma-a"].add_argument("--max-i", type=int, default=4)
    parsers["lemma-a"].add_argument("--max-j", type=int, default=4)
    return parser


def run(argv: list[str] | None = None) -> tuple[CommandResult, int]:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad usage
    res = CommandResult(args.command)
    handler = COMMANDS[args.command][0]
    start = time.perf_counter()
    code = EXIT_OK
    try:
        handler(args, res)
        if res.status != "ok":
            code = EXIT_ERROR
    except UsageError as exc:
        res.status, res.error, code = "error", {"category": "usage", "message": str(exc)}, EXIT_USAGE
    except SystemTError as exc:
        res.status, res.error, code = "error", {"category": exc.category, "message": str(exc)}, EXIT_ERROR
    except OSError as exc:
        res.status, res.error, code = "error", {"category": "io", "message": str(exc)}, EXIT_ERROR
    res.wall_time = time.perf_counter() - start

    if args.json:
        print(json.dumps(res.to_json(), sort_keys=True))
    else:
        for line in res.lines:
            print(line)
        if res.error:
            print(f"error [{res.error['category']}]: {res.error['message']}", file=sys.stderr)
    return res, code


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
