"""Command-line entry point: ``cogen <command> [options]``.

Every command prints one JSON report (to stdout or ``--out``) and a short
summary line to stderr.  Exit codes: 0 when the computed result matches
the expected mathematics, 2 on a mismatch, 1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .errors import CogenError

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _scenario(args):
    from .witness import Scenario

    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    if not (args.n > args.k > args.n / 2):
        raise UsageError(f"need n > k > n/2, got --n {args.n} --k {args.k}")
    return Scenario(args.n, args.k, args.group)


def _budget(args):
    from .witness import default_budget

    return args.budget if args.budget is not None else default_budget()


# -- commands -----------------------------------------------------------------

def cmd_verify(args):
    from .coclique import is_maximal_coclique, theorem_status

    s = _scenario(args)
    if s.n < 4:
        raise UsageError("need n >= 4")
    st = theorem_status(s.n, s.k, s.kind)
    result = {"predicted": "maximal" if st.maximal else "not-maximal", "reason": st.reason}
    if s.n <= args.max_sweep:
        S = {g for g in s.M.elements() if not g.is_identity()}
        rep = is_maximal_coclique(S, s.kind, s.n, _budget(args), symmetry=s.M, subgroup=s.M)
        result["status"] = "maximal" if rep.is_maximal else "not-maximal"
        result["coclique_report"] = rep.to_json()
        ok = rep.is_maximal == st.maximal
    else:
        result["status"] = result["predicted"]
        result["computed"] = False
        ok = True
    return result, ok, result["status"]


def cmd_witness(args):
    from .groups import generates_pair
    from .perm import parse_cycles
    from .witness import closure_class_rep, find_witness, verify_witness

    s = _scenario(args)
    if args.x is None:
        raise UsageError("--x is required")
    x = parse_cycles(args.x, s.n)
    res = find_witness(x, s, _budget(args), prime_rule=args.prime_rule)
    out = res.to_json()
    out["x"] = str(x)
    if res.found:
        ok = verify_witness(x, res.y, s)
        out["order_of_pair"] = generates_pair(x, res.y, s.kind).order
        out["verified"] = ok
    else:
        cert = res.certificate or {}
        expected = closure_class_rep(s) is not None
        ok = expected and (cert.get("kind") == "blocks" or bool(cert.get("in_closure_class")))
        out["expected_no_witness"] = expected
    return out, ok, f"{res.outcome} via {res.tag}"


def cmd_closure(args):
    from .coclique import coclique_closure

    s = _scenario(args)
    c = coclique_closure(s, certify_up_to=args.certify_up_to)
    out = c.to_json()
    if not args.elements:
        out.pop("elements")
    ok = c.certified or c.certificate.get("provenance") == "paper-certified"
    return out, ok, f"{len(c)} elements, certified={c.certified}"


def cmd_graph(args):
    from .coclique import edges_to_csv, edges_to_dot, edges_to_json, graph_edges

    if args.n is None:
        raise UsageError("--n is required")
    edges = graph_edges(args.group, args.n)
    if args.format == "csv":
        text = edges_to_csv(edges)
    elif args.format == "dot":
        text = edges_to_dot(edges, name=f"Gamma_{args.group}{args.n}")
    else:
        text = None
    summary = f"{len(edges)} edges"
    if text is not None:
        return {"_raw": text}, True, summary
    return {"edge_count": len(edges), "edges": json.loads(edges_to_json(edges))}, True, summary


def cmd_primes(args):
    from .primes import InequalityCase, bertrand_pk, lemma23_check, prime_p1, prime_p2

    failures = []
    counts = {"bertrand_pk": 0, "prime_p1": 0, "prime_p2": 0, "prime_p2_inequality": 0, "lemma23": 0}
    for k in range(7, args.k_max + 1):
        try:
            w = bertrand_pk(k)
            if not (w.reverify() and 2 * w.value > k and w.value < k - 1):
                failures.append(["bertrand_pk", k])
            counts["bertrand_pk"] += 1
            if k <= args.lemma23_k_max:
                for n in range(k + 1, 2 * k):
                    if not lemma23_check(n, k, w.value):
                        failures.append(["lemma23", n, k])
                    counts["lemma23"] += 1
        except CogenError as e:
            failures.append(["bertrand_pk", k, str(e)])
    for k in range(10, args.p1_k_max + 1):
        for n in range(k + 1, 2 * k):
            try:
                w = prime_p1(n, k)
                if not w.reverify():
                    failures.append(["prime_p1", n, k])
                counts["prime_p1"] += 1
            except CogenError as e:
                failures.append(["prime_p1", n, k, str(e)])
    for n in range(22, args.n_max + 1):
        for k in range(n // 2 + 1, n - 10):
            try:
                w = prime_p2(n, k)
                if not w.reverify():
                    failures.append(["prime_p2", n, k])
                counts["prime_p2_inequality" if isinstance(w, InequalityCase) else "prime_p2"] += 1
            except CogenError as e:
                failures.append(["prime_p2", n, k, str(e)])
    out = {"counts": counts, "failures": failures[:100], "failure_count": len(failures)}
    return out, not failures, f"{sum(counts.values())} checks, {len(failures)} failures"


def cmd_agl(args):
    from .prime_degree import verify_agl_facts

    if args.p is None:
        raise UsageError("--p is required")
    r = verify_agl_facts(args.p)
    ok = all(r[key] for key in ("sharply_2_transitive", "unique_sylow_p", "element_shapes", "two_cycles_generate"))
    return r, ok, "all facts hold" if ok else "a fact failed"


def cmd_prime_degree(args):
    from .prime_degree import prime_degree_check

    if args.p is None:
        raise UsageError("--p is required")
    r = prime_degree_check(args.p, args.group, reduced=args.reduced, budget=args.budget)
    rows = [row for row in r["subgroups"] if row.get("agrees") is not None]
    ok = all(row["agrees"] for row in rows)
    return r, ok, f"exceptions: {', '.join(r['exceptions']) or 'none'}"


def cmd_reproduce(args):
    from .coclique import reproduce_lemma_3_2

    r = reproduce_lemma_3_2(args.max_n, jobs=args.jobs)
    return r, r["match"], f"{len(r['survivors'])} survivors, match={r['match']}"


COMMANDS = {
    "verify": cmd_verify,
    "witness": cmd_witness,
    "closure": cmd_closure,
    "graph": cmd_graph,
    "primes": cmd_primes,
    "agl": cmd_agl,
    "prime-degree": cmd_prime_degree,
    "reproduce-3-2": cmd_reproduce,
}


def build_parser():
    parser = _Parser(prog="cogen", description="Generating-graph coclique verification for S_n and A_n.")
    parser.add_argument("--version", action="version", version=f"cogen {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--budget", type=_positive, default=None,
                        help="generation tests per search (default: $COGEN_BUDGET or 1000000)")
    common.add_argument("--no-timing", action="store_true", help="leave wall_time out of the report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scen(p, need_k=True):
        p.add_argument("--n", type=_positive)
        if need_k:
            p.add_argument("--k", type=_positive)
        p.add_argument("--group", choices=("sym", "alt"), default="sym")

    p = sub.add_parser("verify", parents=[common], help="is M a maximal coclique")
    scen(p)
    p.add_argument("--max-sweep", type=_positive, default=11, help="largest n for an element sweep")
    p = sub.add_parser("witness", parents=[common], help="find y in M with <x,y> = G")
    scen(p)
    p.add_argument("--x", help='permutation in cycle notation, e.g. "(1,8)(2,3)"')
    p.add_argument("--prime-rule", choices=("default", "opposite"), default="default")
    p = sub.add_parser("closure", parents=[common], help="maximal coclique containing M")
    scen(p)
    p.add_argument("--elements", action="store_true", help="list every element")
    p.add_argument("--certify-up-to", type=_positive, default=10)
    p = sub.add_parser("graph", parents=[common], help="edges of the generating graph")
    scen(p, need_k=False)
    p.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    p = sub.add_parser("primes", parents=[common], help="prime-search sweeps")
    p.add_argument("--k-max", type=_positive, default=10**4)
    p.add_argument("--p1-k-max", type=_positive, default=10**3)
    p.add_argument("--n-max", type=_positive, default=10**4)
    p.add_argument("--lemma23-k-max", type=_positive, default=2000)
    p = sub.add_parser("agl", parents=[common], help="structural facts about AGL_1(p)")
    p.add_argument("--p", type=_positive)
    p = sub.add_parser("prime-degree", parents=[common], help="coclique checks at prime degree")
    p.add_argument("--p", type=_positive)
    p.add_argument("--group", choices=("sym", "alt"), default="sym")
    p.add_argument("--reduced", action="store_true", help="allow p > 7 without element sweeps")
    p = sub.add_parser("reproduce-3-2", parents=[common], help="small-degree exhaustive survivors")
    p.add_argument("--max-n", type=_positive, default=9)
    return parser


def _config(args) -> dict:
    skip = {"out", "no_timing", "jobs"}
    return {key: v for key, v in sorted(vars(args).items()) if key not in skip}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        result, ok, summary = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"cogen {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CogenError as e:
        from .errors import BudgetExceededError, InternalInconsistencyError

        if isinstance(e, (InternalInconsistencyError, BudgetExceededError)):
            trace = getattr(e, "trace", None) or getattr(e, "partial", None)
            report = {"tool": "cogen", "version": __version__, "command": args.command,
                      "config": _config(args), "status": "mismatch", "error": str(e), "trace": trace}
            _emit(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n", args.out)
            print(f"cogen {args.command}: {e}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"cogen {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    if "_raw" in result:
        _emit(result["_raw"], args.out)
    else:
        report = {
            "tool": "cogen",
            "version": __version__,
            "command": args.command,
            "config": _config(args),
            "status": "ok" if ok else "mismatch",
            "result": result,
        }
        if not args.no_timing:
            report["wall_time"] = round(time.perf_counter() - t0, 3)
        _emit(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n", args.out)
    print(f"cogen {args.command}: {summary}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_MISMATCH


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
