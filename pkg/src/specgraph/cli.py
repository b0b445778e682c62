"""Command-line interface: one JSON envelope per line on stdout.

Exit status is 0 when every envelope is ``ok``, 1 if any is ``mismatch``
and 2 if any is ``error``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from typing import Any, Callable, Iterator, Optional

from . import extremal, search
from .graph import (
    Complement,
    Complete,
    CompleteBipartite,
    EmptyGraph,
    Graph,
    GraphError,
    GraphFamilySpec,
    Join,
    build,
    vertex_bipartiteness,
)
from .graph6 import Graph6Error, from_graph6, to_graph6
from .linalg import DEFAULT_CLUSTER_TOL, adjacency_matrix, signless_laplacian, spectral_radius, spectrum
from .quotient import ContractError

TOL_ENV = "SPECGRAPH_TOL"
EXIT_CODES = {"ok": 0, "mismatch": 1, "error": 2}


# --- JSON with 17 significant digits ----------------------------------------


def _fmt(obj: Any) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _fmt(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _fmt(obj)


def envelope(command: str, parameters: dict, status: str, result: Any = None, error: Optional[str] = None) -> dict:
    env = {"command": command, "parameters": parameters, "status": status}
    if status == "error":
        env["error"] = error
    else:
        env["result"] = result
    return env


# --- family expressions -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(K\d+,\d+|K\d+|E\d+)|(\^join|\^c)|([+~()]))")


class FamilySyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FamilySyntaxError(f"unexpected input at offset {pos}: {text[pos:pos + 8]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


def parse_family(text: str) -> GraphFamilySpec:
    """Parse a join expression such as ``K4 + (E3 + E3)^join``.

    ``+`` is join (left associative), ``~X`` and ``X^c`` are complements,
    ``^join`` is an optional no-op marker on a group.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise FamilySyntaxError("unexpected end of expression")
        pos += 1
        return tok

    def expr() -> GraphFamilySpec:
        node = term()
        while peek() == "+":
            take()
            node = Join(node, term())
        return node

    def term() -> GraphFamilySpec:
        if peek() == "~":
            take()
            return Complement(term())
        node = atom()
        while peek() in ("^c", "^join"):
            if take() == "^c":
                node = Complement(node)
        return node

    def atom() -> GraphFamilySpec:
        tok = take()
        if tok == "(":
            node = expr()
            if take() != ")":
                raise FamilySyntaxError("expected ')'")
            return node
        if tok.startswith("K") and "," in tok:
            s, t = (int(x) for x in tok[1:].split(","))
            return CompleteBipartite(s, t)
        if tok.startswith("K"):
            return Complete(int(tok[1:]))
        if tok.startswith("E"):
            return EmptyGraph(int(tok[1:]))
        raise FamilySyntaxError(f"unexpected token {tok!r}")

    node = expr()
    if pos != len(tokens):
        raise FamilySyntaxError(f"trailing input starting at token {tokens[pos]!r}")
    return node


# --- commands -------------------------------------------------------------------


def _default_tol(fallback: float) -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return fallback
    try:
        value = float(raw)
    except ValueError:
        raise SystemExit(f"{TOL_ENV}={raw!r} is not a number")
    if not value > 0:
        raise SystemExit(f"{TOL_ENV} must be positive")
    return value


def _graph_inputs(args) -> Iterator[tuple[dict, Callable[[], Graph]]]:
    if args.graph6 is not None:
        yield {"graph6": args.graph6}, lambda: from_graph6(args.graph6)
    elif args.family is not None:
        yield {"family": args.family}, lambda: build(parse_family(args.family))
    else:
        for line in sys.stdin:
            line = line.strip()
            if line:
                yield {"graph6": line}, (lambda text=line: from_graph6(text))


_INPUT_ERRORS = (Graph6Error, GraphError, FamilySyntaxError, ContractError, ValueError)


def cmd_spectrum(args) -> Iterator[dict]:
    for params, load in _graph_inputs(args):
        params = dict(params, matrix=args.matrix, cluster_tol=args.cluster_tol)
        try:
            g = load()
            m = adjacency_matrix(g) if args.matrix == "adjacency" else signless_laplacian(g)
            spec = spectrum(m, args.cluster_tol)
            result = {"n": g.n, "graph6": to_graph6(g), "spectrum": spec.to_json(), "rho": spectral_radius(m)}
        except _INPUT_ERRORS as exc:
            yield envelope("spectrum", params, "error", error=str(exc))
            continue
        yield envelope("spectrum", params, "ok", result)


def cmd_vb(args) -> Iterator[dict]:
    for params, load in _graph_inputs(args):
        try:
            g = load()
            vb, witness = vertex_bipartiteness(g)
        except _INPUT_ERRORS as exc:
            yield envelope("vb", params, "error", error=str(exc))
            continue
        yield envelope("vb", params, "ok", {"n": g.n, "vb": vb, "witness": witness})


def cmd_counterexample(args) -> Iterator[dict]:
    params = {"which": args.which, "tol": args.tol}
    try:
        report = extremal.reproduce_counterexample(args.which, args.tol)
    except ContractError as exc:
        yield envelope("counterexample", params, "error", error=str(exc))
        return
    yield envelope("counterexample", params, "ok" if report.ok else "mismatch", report.to_json())


def cmd_formula(args) -> Iterator[dict]:
    params = {"n": args.n, "k": args.k, "which": args.which}
    try:
        inst = extremal.ExtremalInstance(args.n, args.k)
        if args.which == "original":
            value, method = extremal.original_formula_even(args.n, args.k), "original_closed_form"
        elif inst.parity == "even":
            value, method = extremal.corrected_formula_even(args.n, args.k), "corrected_closed_form"
        else:
            value, method = extremal.max_quotient_eigenvalue(args.n, args.k), "quotient_max_eigenvalue"
    except ContractError as exc:
        yield envelope("formula", params, "error", error=str(exc))
        return
    yield envelope("formula", params, "ok", {"value": value, "method": method, "parity": inst.parity})


def cmd_search(args) -> Iterator[dict]:
    workers = args.workers or os.cpu_count() or 1
    params = {"n": args.n, "k": args.k, "workers": workers, "tol": args.tol}
    try:
        cert = search.extremal_search(args.n, args.k, args.tol, workers)
    except ContractError as exc:
        yield envelope("search", params, "error", error=str(exc))
        return
    yield envelope("search", params, "ok" if cert.candidate_matches else "mismatch", cert.to_json())


def cmd_sweep(args) -> Iterator[dict]:
    parity = None if args.parity == "all" else args.parity
    params = {"n_max": args.n_max, "parity": args.parity, "tol": args.tol}
    rows = extremal.sweep(args.n_max, parity, args.tol)
    status = "ok" if all(r["pass"] for r in rows) else "mismatch"
    yield envelope("sweep", params, status, {"rows": rows, "passed": sum(r["pass"] for r in rows), "total": len(rows)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        grp = p.add_mutually_exclusive_group()
        grp.add_argument("--graph6", help="graph6 string (default: read graph6 lines from stdin)")
        grp.add_argument("--family", help='join expression, e.g. "K4 + (E3 + E3)"')

    p = sub.add_parser("spectrum", help="clustered spectrum and spectral radius")
    graph_input(p)
    p.add_argument("--matrix", choices=["adjacency", "signless-laplacian"], default="adjacency")
    p.add_argument("--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("vb", help="vertex bipartiteness with a witness set")
    graph_input(p)
    p.set_defaults(func=cmd_vb)

    p = sub.add_parser("counterexample", help="rebuild a stored counterexample to the older formula")
    p.add_argument("which", help="2.1 or 2.2")
    p.add_argument("--tol", type=float, default=_default_tol(extremal.MATCH_TOL))
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("formula", help="spectral radius of the extremal graph by formula")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--which", choices=["original", "corrected"], default="corrected")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("search", help="exhaustive maximiser search over Σ_k(n), 4 <= n <= 8")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--workers", type=int, default=None, help="processes (default: all CPUs)")
    p.add_argument("--tol", type=float, default=_default_tol(search.DEFAULT_TIE_TOL))
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="formula/eigensolver agreement table")
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--parity", choices=["even", "odd", "all"], default="all")
    p.add_argument("--tol", type=float, default=_default_tol(extremal.MATCH_TOL))
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    worst = 0
    for env in args.func(args):
        print(dumps(env), flush=True)
        worst = max(worst, EXIT_CODES[env["status"]])
    return worst


if __name__ == "__main__":
    sys.exit(main())
