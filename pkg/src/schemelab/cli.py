"""Command-line front end: ``schemelab {scheme,code,design,lp,repro}``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys


from . import codes, designs, lp, repro, zoo
from .codes import Code, _num
from .config import settings
from .exceptions import SchemeLabError

# positional parameter names per scheme, for ``--params 2,5`` style input
POSITIONAL = {
    "hamming": ("n", "q"),
    "lee": ("n", "q"),
    "homogeneous": ("n", "k"),
    "nrt": ("n_blocks", "r", "q"),
    "johnson": ("n", "w", "q"),
}


class UsageError(Exception):
    pass


def parse_scheme_params(name, text):
    """Turn a ``--params`` string into constructor keywords.

    Accepts ``k=v`` pairs, or positional values: ``n,q`` (hamming, lee),
    ``n,k`` (homogeneous), ``n_blocks,r,q`` (nrt), ``n,w,q`` (johnson),
    ``n:q,...`` blocks (mixed) and ``q,nxm,...`` (sumrank).
    """
    text = (text or "").strip()
    if name not in zoo.SCHEME_NAMES:
        raise UsageError(f"unknown scheme {name!r}; choose from {', '.join(zoo.SCHEME_NAMES)}")
    if "=" in text:
        return zoo._parse_params(text)
    items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        if name == "mixed":
            return {"blocks": zoo._parse_pairs(",".join(items))}
        if name == "sumrank":
            return {"q": int(items[0]), "blocks": zoo._parse_pairs(",".join(items[1:]))}
        keys = POSITIONAL[name]
        if len(items) != len(keys):
            raise UsageError(f"{name} takes {','.join(keys)}")
        return {k: int(v) for k, v in zip(keys, items)}
    except (ValueError, IndexError) as ex:
        raise UsageError(f"cannot parse parameters {text!r} for {name}: {ex}") from None


def build_bundle(name, params):
    try:
        return zoo.build(name, parse_scheme_params(name, params))
    except (KeyError, ValueError, TypeError) as ex:
        raise UsageError(f"bad parameters for {name}: {ex}") from None


# -- example codes -----------------------------------------------------------------------------


def _example(name):
    if name == "lee5-c2":
        b = zoo.lee(2, 5)
        return b, Code.from_generators(b.scheme, [(1, 2)])
    if name == "lee13-kernel":
        return repro.lee_kernel(2)
    if name == "lee5-kernel":
        return repro.lee_kernel(1)
    if name == "mixed-perfect":
        return codes.mixed_perfect_code()
    if name.startswith("lee-cn-"):
        q = int(name.rsplit("-", 1)[1])
        n = (q - 1) // 2
        b = zoo.lee(n, q)
        return b, Code.from_generators(b.scheme, [tuple(range(1, n + 1))])
    raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


EXAMPLES = ("lee5-c2", "lee5-kernel", "lee13-kernel", "mixed-perfect", "lee-cn-<q>")


def load_code(args):
    """Code from ``--example`` or from a JSON file.

    The file holds ``scheme`` and ``params`` plus one of ``points`` (coordinate
    tuples), ``indices``, ``generators`` or ``kernel`` (check rows).
    """
    if args.example:
        return _example(args.example)
    if not args.code:
        raise UsageError("give --code FILE or --example NAME")
    try:
        with open(args.code) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as ex:
        raise UsageError(f"cannot read code file: {ex}") from None
    name = data.get("scheme", args.scheme)
    params = data.get("params", args.params)
    if isinstance(params, dict):
        b = zoo.build(name, params)
    else:
        b = build_bundle(name, params)
    if "points" in data:
        try:
            Y = Code.from_points(b.scheme, [tuple(p) for p in data["points"]])
        except (IndexError, ValueError) as ex:
            raise SchemeLabError(f"code point not in the scheme's point set: {ex}") from None
    elif "indices" in data:
        Y = Code(b.scheme, data["indices"])
    elif "generators" in data:
        Y = Code.from_generators(b.scheme, data["generators"])
    elif "kernel" in data:
        Y = Code.kernel(b.scheme, data["kernel"])
    else:
        raise UsageError("code file needs points, indices, generators or kernel")
    return b, Y


# -- output ----------------------------------------------------------------------------------------


def emit(obj, out=None, fmt="json"):
    if fmt == "csv":
        text = obj if isinstance(obj, str) else _csv_from_rows(obj)
    else:
        text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _csv_from_rows(rows):
    buf = io.StringIO()
    # csv.QUOTE_MINIMAL with \r\n line ends follows RFC 4180
    w = csv.writer(buf, lineterminator="\r\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _label(t):
    return "(" + ",".join(f"{_num(x)}" for x in t) + ")"


# -- subcommands -------------------------------------------------------------------------------------


def cmd_scheme(args):
    b = build_bundle(args.name, args.params)
    if args.format == "csv":
        lab = b.labeling
        rows = [["index", "relation_label", "distance", "valency", "idempotent_label",
                 "idempotent_distance", "multiplicity"]]
        for k in range(b.scheme.class_count):
            rows.append([k, _label(lab.relation_labels[k]), _num(b.relation_distances[k]),
                         _num(b.eigen.v[k]), _label(lab.idempotent_labels[k]),
                         _num(b.idempotent_distances[k]), _num(b.eigen.mu[k])])
        if args.eigen:
            rows.append([])
            rows.append(["P"] + [f"idempotent_{j}" for j in range(b.scheme.class_count)])
            for k, row in enumerate(b.eigen.P):
                rows.append([f"class_{k}"] + [_num(x) for x in row])
        emit(rows, args.out, "csv")
        return 0
    out = b.to_json()
    if not args.eigen:
        for key in ("P", "Q"):
            out.pop(key, None)
    emit(out, args.out)
    return 0


def code_report(b, Y, kind="distance", use_lp=False):
    prof = codes.profile(Y, b)
    s = prof.distance_degree if kind == "distance" else prof.degree_s
    Ms = codes.bound_M(s, b)
    e = prof.e_pack
    out = {"scheme": b.name, "params": b.parameters, "kind": kind, "M": Y.size, "s": s,
           "M_of_s": Ms, "tight": Y.size == Ms, "e": e,
           "perfect": codes.is_perfect(Y, b, e) if prof.dmin is not None else False,
           "bound_holds": Y.size <= Ms}
    out["profile"] = prof.to_json()
    if Y.is_additive:
        out["additive"] = True
        out["dual_size"] = Y.dual().size
        if b.self_duality():
            out["external_bound"] = codes.gh_and_external_bound(Y, b)
    if use_lp:
        # Delsarte bound on codes whose occupied classes lie in S
        M = [0] + [int(i) for i in prof.S]
        prob = lp.build_primal(b.eigen, M, use="Q")
        primal = lp.solve(prob)
        dual = lp.solve(lp.build_dual(b.eigen, M, use="Q"))
        certified = lp.slackness_check(primal, dual, prob.A, prob.M)
        out["lp"] = {"M": M, "bound": _num(primal.objective), "dual_bound": _num(dual.objective),
                     "primal": primal.to_json(certified), "dual": dual.to_json(certified),
                     "holds": Y.size <= primal.objective + 1e-7}
    return out


def cmd_code(args):
    b, Y = load_code(args)
    out = code_report(b, Y, args.kind, args.lp)
    emit(out, args.out)
    return 0


def cmd_design(args):
    b, Y = load_code(args)
    if args.t is None and args.T is None:
        raise UsageError("give --t or --T")
    T = None
    if args.T is not None:
        try:
            T = [int(g) for g in args.T.split(",") if g.strip()]
        except ValueError:
            raise UsageError(f"--T takes comma-separated idempotent indices, got {args.T!r}") from None
        if any(g <= 0 or g >= b.scheme.class_count for g in T):
            raise UsageError("--T indices must lie in 1..class_count-1")
    out = {"scheme": b.name, "params": b.parameters, "M": Y.size}
    out.update(designs.design_report(Y, b, args.t, T))
    emit(out, args.out)
    return 0


def cmd_lp(args):
    if args.input:
        prob = lp.load_problem(args.input)
        problems = (prob, lp.LPProblem(prob.A, prob.M, "dual"))
    else:
        if not args.name:
            raise UsageError("give --in FILE or --name/--params/--M")
        b = build_bundle(args.name, args.params)
        try:
            M = [int(i) for i in (args.M or "0").split(",")]
        except ValueError:
            raise UsageError(f"--M takes comma-separated indices, got {args.M!r}") from None
        problems = (lp.build_primal(b.eigen, M, args.use), lp.build_dual(b.eigen, M, args.use))
    primal = lp.solve(problems[0])
    dual = lp.solve(problems[1])
    certified = lp.slackness_check(primal, dual, problems[0].A, problems[0].M)
    out = {"M": list(problems[0].M), "primal": primal.to_json(certified),
           "dual": dual.to_json(certified),
           "strong_duality": abs(primal.objective - dual.objective) <= 1e-7 * max(1, abs(primal.objective)),
           "certified": certified}
    emit(out, args.out)
    return 0


def cmd_repro(args):
    checks = repro.run(args.filter, args.jobs)
    man = repro.manifest(checks)
    if args.json:
        emit(man, args.json)
    if args.csv:
        rows = [["id", "criterion", "anchor", "origin", "computed", "expected", "passed"]]
        for c in man["checks"]:
            rows.append([c["id"], c["criterion"], c["anchor"], c["origin"],
                         json.dumps(c["computed"]), json.dumps(c["expected"]), c["passed"]])
        emit(rows, args.csv, "csv")
    print(repro.table(checks))
    print(f"\n{man['passed']} passed, {man['failed']} failed")
    for k, ok in man["criteria"].items():
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}")
    return 0 if man["failed"] == 0 else 1


# -- parser ----------------------------------------------------------------------------------------------


def make_parser():
    p = argparse.ArgumentParser(prog="schemelab", description="Association schemes, codes, designs and LP bounds.")
    p.add_argument("--seed", type=int, default=42, help="seed for the eigen-solver (default 42)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scheme", help="build a scheme bundle and dump it")
    s.add_argument("--name", required=True, choices=zoo.SCHEME_NAMES)
    s.add_argument("--params", default="", help="e.g. 2,5 or n=2,q=5; mixed: 1:4,1:2; sumrank: 2,2x2")
    s.add_argument("--eigen", action="store_true", help="include the eigenmatrices")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_scheme)

    def code_source(sp):
        sp.add_argument("--code", help="JSON code file")
        sp.add_argument("--example", help=f"built-in code: {', '.join(EXAMPLES)}")
        sp.add_argument("--scheme", help="scheme name when the file does not carry one")
        sp.add_argument("--params", default="", help="scheme parameters when the file does not carry them")
        sp.add_argument("--out")

    c = sub.add_parser("code", help="analyze a code")
    code_source(c)
    c.add_argument("--kind", choices=("distance", "degree"), default="distance")
    c.add_argument("--lp", action="store_true", help="also solve the linear-programming bound")
    c.set_defaults(func=cmd_code)

    d = sub.add_parser("design", help="design verdicts and Rao bounds")
    code_source(d)
    d.add_argument("--t", type=int)
    d.add_argument("--T", help="explicit idempotent indices, comma-separated")
    d.set_defaults(func=cmd_design)

    q = sub.add_parser("lp", help="solve a primal/dual LP pair")
    q.add_argument("--in", dest="input", help="JSON problem {A, M}")
    q.add_argument("--name", choices=zoo.SCHEME_NAMES)
    q.add_argument("--params", default="")
    q.add_argument("--M", help="index set containing 0, comma-separated")
    q.add_argument("--use", choices=("P", "Q"), default="P")
    q.add_argument("--out")
    q.set_defaults(func=cmd_lp)

    r = sub.add_parser("repro", help="run every check and print a manifest")
    r.add_argument("--filter", help="group name or check id substring")
    r.add_argument("--json", help="write the manifest JSON here")
    r.add_argument("--csv", help="write the manifest CSV here")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_repro)
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    settings.seed = args.seed
    try:
        return args.func(args)
    except UsageError as ex:
        parser.print_usage(sys.stderr)
        print(f"schemelab: error: {ex}", file=sys.stderr)
        return 2
    except SchemeLabError as ex:
        print(f"schemelab: error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
