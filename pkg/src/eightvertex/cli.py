"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (bad input data, failed
precondition, failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify as classify_mod
from . import graphs, matchgate, reductions, suite
from .scalar import DEFAULT_TOL, format_scalar, is_exact, parse_scalar, to_float
from .signature import NEQ2, eight_vertex_signature, parity_check


class DomainError(Exception):
    pass


def _render(x):
    """Exact rationals become strings; floats stay numbers."""
    if is_exact(x):
        return format_scalar(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return float(x)


def _load_json(text: str):
    """Parse inline JSON, a file path, or ``-`` for standard input."""
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        with open(text) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {text}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON in {text}: {exc}") from None


def _scalars(tokens, args):
    try:
        return tuple(parse_scalar(t, exact=not args.float) for t in tokens)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_classify(args) -> int:
    params = _scalars(args.params, args)
    v = classify_mod.verdict(*params, tol=args.tol)
    lines = [f"verdict: {v}",
             "flags: " + ", ".join(f"{k}={'yes' if val else 'no'}"
                                   for k, val in v.flags.to_json().items() if k != "boundary"),
             f"planar: {v.planar_note}"]
    lines += [f"citation: {c}" for c in v.citations]
    lines += [f"note: {n}" for n in v.notes]
    _emit(args, v.to_json(), "\n".join(lines))
    return 0


def _graph(args):
    g = graphs.PortedGraph.from_json(_load_json(args.graph))
    graphs.require_valid(g)
    return g


def cmd_eval(args) -> int:
    g = _graph(args)
    a, b, c, d = _scalars(args.params, args)
    try:
        value = graphs.z_eight_vertex(g, a, b, c, d, cap=args.max_bruteforce)
        method = "bruteforce"
    except graphs.GraphError:
        inst = graphs.HolantInstance.uniform(g, eight_vertex_signature(a, b, c, d), NEQ2)
        value = graphs.holant_contract(inst)
        method = "contract"
    _emit(args, {"value": _render(value), "method": method, "vertices": g.n}, format_scalar(value)
          if is_exact(value) else repr(value))
    return 0


def cmd_holant(args) -> int:
    inst = graphs.instance_from_json(_load_json(args.instance), exact=not args.float)
    value = graphs.holant(inst, method=args.method, cap=args.max_bruteforce)
    _emit(args, {"value": _render(value), "method": args.method},
          format_scalar(value) if is_exact(value) else repr(value))
    return 0


def _gate_text(report: matchgate.SynthesisReport) -> str:
    gate = report.gate
    lines = [f"route: {report.method}", f"round-trip residual: {report.residual:.3e}",
             f"vertices: {gate.n}", f"dangling: {list(gate.dangling)}", "edges:"]
    lines += [f"  {u} {v} {format_scalar(w) if is_exact(w) else repr(float(w))}" for u, v, w in gate.edges]
    return "\n".join(lines)


def cmd_synthesize(args) -> int:
    if args.gate is not None:
        gate = matchgate.Matchgate.from_json(_load_json(args.gate), exact=not args.float)
        f = matchgate.signature(gate)
        matrix = [[_render(x) for x in row] for row in f.matrix()]
        text = "\n".join(" ".join(format_scalar(x) if is_exact(x) else f"{float(x):.12g}" for x in row)
                         for row in f.matrix())
        _emit(args, {"matrix": matrix, "parity": parity_check(f)}, text)
        return 0
    text, parity = (args.even, "even") if args.even is not None else (args.odd, "odd")
    obj = _load_json(text)
    try:
        s = matchgate.GeneralSignature8.from_json(obj, exact=not args.float, parity=parity)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"expected {{\"tuple\": [a1, a2, b1, b2, c1, c2, d1, d2]}}: {exc}") from None
    synth = matchgate.synthesize_even_report if parity == "even" else matchgate.synthesize_odd_report
    report = synth(s, tol=args.tol)
    _emit(args, report.to_json(), _gate_text(report))
    return 0


def cmd_reduce_ising(args) -> int:
    g = _graph(args)
    h = reductions.crossing_circuit_graph(g)
    payload = {"ising_graph": h.to_json()}
    lines = [f"crossing circuits: {h.n}", "edges (label: endpoints):"]
    lines += [f"  {k}: {u} {v}" for k, (u, v) in enumerate(h.edges)]
    if args.w is not None or args.z is not None:
        if args.w is None or args.z is None:
            raise DomainError("--w and --z must be given together")
        w, z = _scalars([args.w, args.z], args)
        report = reductions.verify_ising_identity(g, w, z)
        payload["identity"] = report.to_json()
        lines.append(f"Holant = {format_scalar(report.holant)}, z^|V| Z_Ising = {format_scalar(report.ising_side)}, "
                     f"equal: {report.equal}")
        _emit(args, payload, "\n".join(lines))
        return 0 if report.equal else 1
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_gadget_iterate(args) -> int:
    params = _scalars(args.params, args)
    trace = reductions.iterate_rounds(params, args.rounds, exact=not args.float and args.exact)
    lines = [f"round {i + 1}: " + ", ".join(f"{float(to_float(x)):.10f}" for x in t)
             + f"  gap {float(g):.3e}" for i, (t, g) in enumerate(zip(trace.triples, trace.gaps))]
    if trace.bound is not None:
        lines.append(f"k = {trace.k}: gap {float(trace.final_gap):.3e} <= 2^-2^k = {trace.bound:.3e}: "
                     f"{trace.within_bound}")
    _emit(args, trace.to_json(), "\n".join(lines))
    return 0 if trace.within_bound else 1


def cmd_normalize(args) -> int:
    params = _scalars(args.params, args)
    result = reductions.normalize_to_star(params)
    replayed = reductions.replay_params(params, result.recipe)
    payload = result.to_json()
    payload["replay_matches"] = replayed == result.params
    lines = [f"star parameters: {', '.join(result.params.to_json())}"]
    if result.notice:
        lines.append(f"notice: {result.notice}")
    lines += [f"  {json.dumps(step)}" for step in result.recipe]
    lines.append(f"recipe replays exactly: {payload['replay_matches']}")
    _emit(args, payload, "\n".join(lines))
    return 0 if payload["replay_matches"] else 1


def cmd_verify(args) -> int:
    jobs = args.jobs if args.jobs is not None else min(len(suite.ALL_CHECKS), os.cpu_count() or 1)
    results = suite.run_all(seed=args.seed, quick=args.quick, jobs=jobs)
    ok = all(r.ok for r in results)
    _emit(args, {"ok": ok, "seed": args.seed, "checks": [r.to_json() for r in results]},
          "\n".join(r.line() for r in results) + f"\n{'all invariants hold' if ok else 'FAILURES'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")
    common.add_argument("--float", action="store_true", help="parse numbers as floats instead of exact rationals")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float comparison tolerance")
    common.add_argument("--max-bruteforce", type=int, default=graphs.MAX_BRUTEFORCE,
                        help="largest number of assignments to enumerate")

    parser = argparse.ArgumentParser(prog="eightvertex",
                                     description="Eight-vertex model, Holant and matchgate toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="complexity verdict for (a, b, c, d)")
    p.add_argument("params", nargs=4, metavar="X")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="eight-vertex partition function of a graph")
    p.add_argument("graph", help="graph JSON file, inline JSON, or -")
    p.add_argument("params", nargs=4, metavar="X")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("holant", parents=[common], help="evaluate a Holant instance")
    p.add_argument("instance", help="instance JSON file, inline JSON, or -")
    p.add_argument("--method", choices=("auto", "bruteforce", "contract"), default="auto")
    p.set_defaults(func=cmd_holant)

    p = sub.add_parser("synthesize", parents=[common], help="build a matchgate for an eight-entry tuple")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--even", metavar="JSON", help='{"tuple": [a1, a2, b1, b2, c1, c2, d1, d2]}')
    group.add_argument("--odd", metavar="JSON", help="same tuple in the odd-parity layout")
    group.add_argument("--gate", metavar="JSON", help="print the signature of an existing matchgate")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("reduce-ising", parents=[common], help="crossing-circuit Ising graph of a 4-regular graph")
    p.add_argument("graph")
    p.add_argument("--w", help="weight at 0000/1111 for the identity check")
    p.add_argument("--z", help="weight at 0101/1010 for the identity check")
    p.set_defaults(func=cmd_reduce_ising)

    p = sub.add_parser("gadget-iterate", parents=[common], help="run G1/G2 rounds from a star-condition start")
    p.add_argument("params", nargs=4, metavar="X")
    p.add_argument("--rounds", type=int, default=12)
    p.add_argument("--exact", action="store_true", help="iterate in exact rationals (slow beyond a few rounds)")
    p.set_defaults(func=cmd_gadget_iterate)

    p = sub.add_parser("normalize", parents=[common], help="gadget recipe reaching the star condition")
    p.add_argument("params", nargs=4, metavar="X")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", parents=[common], help="run the cross-module invariant suite")
    p.add_argument("--quick", action="store_true", help="run reduced sample sizes")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: one per check)")
    p.set_defaults(func=cmd_verify)
    return parser


DOMAIN_ERRORS = (DomainError, ValueError, ArithmeticError, RecursionError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.float and args.command not in ("verify",):
        print(f"float mode, tolerance {args.tol:g}", file=sys.stderr)
    try:
        return args.func(args)
    except graphs.GraphError as exc:
        print("error: " + "; ".join(exc.violations), file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
