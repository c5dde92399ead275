"""Command-line entry point.

Exit codes: 0 for success, 1 when a computation's verdict is negative (an
invalid coloring, an imperfect graph, observed property failures, a chain
link failure, a chromatic number past the cap), 2 for input problems
(malformed JSON, bad parameters, budget refusals, unknown subcommands).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import bounds as bounds_mod
from . import config, lemma6
from .cliques import maximal_cliques
from .coloring import (chromatic_number, clique_chromatic_number,
                       coloring_from_json, construct_tower_coloring,
                       verify_clique_coloring)
from .errors import (BudgetExceeded, ColoringConstructionError, InputError,
                     TowerInfeasible)
from .expansion import (ExpansionSpec, LevelRecord, Petal, TowerTrace,
                        build_tower, expand_at_clique)
from .graph import Graph, graph_to_dot, graph_to_json, load_graph, save_graph


def _emit(data, path=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def generate_named_graph(name: str, n: int = 0, seed: int = 0) -> Graph:
    """Built-in generators; labels are v1..vn."""
    if name == "complete":
        if n < 1:
            raise InputError("complete graph needs --n >= 1")
        labs = [f"v{j}" for j in range(1, n + 1)]
        return Graph(labs, [(labs[a], labs[b]) for a in range(n)
                            for b in range(a + 1, n)])
    if name == "cycle":
        if n < 3:
            raise InputError("cycle needs --n >= 3")
        labs = [f"v{j}" for j in range(1, n + 1)]
        return Graph(labs, [(labs[a], labs[(a + 1) % n]) for a in range(n)])
    if name == "path":
        if n < 1:
            raise InputError("path needs --n >= 1")
        labs = [f"v{j}" for j in range(1, n + 1)]
        return Graph(labs, [(labs[a], labs[a + 1]) for a in range(n - 1)])
    if name == "c9triangle":
        labs = [f"v{j}" for j in range(1, 10)]
        edges = [(labs[a], labs[(a + 1) % 9]) for a in range(9)]
        edges += [("v1", "v4"), ("v4", "v7"), ("v1", "v7")]
        return Graph(labs, edges)
    if name == "cobipartite-random":
        if n < 2:
            raise InputError("cobipartite-random needs --n >= 2")
        half = n // 2
        labs = [f"v{j}" for j in range(1, n + 1)]
        edges = [(labs[a], labs[b]) for a in range(half)
                 for b in range(a + 1, half)]
        edges += [(labs[a], labs[b]) for a in range(half, n)
                  for b in range(a + 1, n)]
        rng = config.stream(seed, "gen-cobipartite")
        for a in range(half):
            for b in range(half, n):
                if rng.random() < 0.5:
                    edges.append((labs[a], labs[b]))
        return Graph(labs, edges)
    raise InputError(f"unknown generator {name!r}")


def _parse_bijections(raw: str, spec: ExpansionSpec):
    if raw == "all":
        return "all"
    if raw.startswith("random:"):
        parts = raw.split(":")
        if len(parts) != 3:
            raise InputError("random bijections need random:COUNT:SEED")
        return ("random", int(parts[1]), int(parts[2]))
    if raw.startswith("file:"):
        path = raw[5:]
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON in {path}: {exc}") from None
        return [tuple(tuple(int(x) for x in sub) for sub in seq)
                for seq in data]
    raise InputError("--bijections must be all, file:PATH, or random:COUNT:SEED")


def _petal_json(p: Petal) -> dict:
    return {"petal_id": p.petal_id, "clique_id": p.clique_id,
            "bij_index": p.bij_index, "attachment": list(p.attachment),
            "vertices": list(p.vertices),
            "bijection": [list(s) for s in p.bijection]}


def _petal_from_json(d: dict) -> Petal:
    return Petal(d["clique_id"], int(d["bij_index"]),
                 tuple(d["attachment"]), tuple(d["vertices"]),
                 tuple(tuple(int(x) for x in s) for s in d["bijection"]))


def save_tower(trace: TowerTrace, outdir: str) -> None:
    os.makedirs(outdir, exist_ok=True)
    refs = []
    for idx, g in enumerate(trace.graphs):
        ref = f"h{idx}.json"
        save_graph(g, os.path.join(outdir, ref))
        refs.append(ref)
    data = {
        "k_target": trace.k_target, "mode": trace.mode, "graphs": refs,
        "levels": [{"n": lev.n, "k": lev.k,
                    "petals": [_petal_json(p) for p in lev.petals]}
                   for lev in trace.levels],
        "warnings": list(trace.warnings),
    }
    _emit(data, os.path.join(outdir, "trace.json"))


def load_tower(outdir: str) -> TowerTrace:
    with open(os.path.join(outdir, "trace.json")) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in trace.json: {exc}") from None
    graphs = [load_graph(os.path.join(outdir, ref)) for ref in data["graphs"]]
    levels = [LevelRecord(int(lev["n"]), int(lev["k"]),
                          tuple(_petal_from_json(p) for p in lev["petals"]))
              for lev in data["levels"]]
    return TowerTrace(int(data["k_target"]), data["mode"], graphs, levels,
                      [], list(data.get("warnings", [])))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliquecolor")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named graph")
    g.add_argument("--type", required=True)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.add_argument("--dot", help="also write a DOT rendering here")

    c = sub.add_parser("cliques", help="clique enumeration")
    csub = c.add_subparsers(dest="sub", required=True)
    cl = csub.add_parser("list")
    cl.add_argument("graph")
    cl.add_argument("--min-size", type=int, default=1)
    cl.add_argument("--json", action="store_true")

    cc = sub.add_parser("cc", help="clique colorings")
    ccsub = cc.add_subparsers(dest="sub", required=True)
    v = ccsub.add_parser("verify")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.add_argument("--json", action="store_true")
    ch = ccsub.add_parser("chromatic")
    ch.add_argument("graph")
    ch.add_argument("--max-colors", type=int, default=None)
    ch.add_argument("--proper", action="store_true",
                    help="compute the ordinary chromatic number instead")
    ch.add_argument("--json", action="store_true")
    tc = ccsub.add_parser("tower-color")
    tc.add_argument("tracedir")
    tc.add_argument("--json", action="store_true")

    p = sub.add_parser("perfect", help="perfection checks")
    psub = p.add_subparsers(dest="sub", required=True)
    pc = psub.add_parser("check")
    pc.add_argument("graph")
    pc.add_argument("--method", choices=["spgt", "definitional"],
                    default="spgt")
    pc.add_argument("--json", action="store_true")

    cut = sub.add_parser("cutset", help="clique cutsets")
    cutsub = cut.add_subparsers(dest="sub", required=True)
    cf = cutsub.add_parser("find")
    cf.add_argument("graph")
    cf.add_argument("--json", action="store_true")

    e = sub.add_parser("expand", help="clique expansion at one clique")
    e.add_argument("--graph", required=True)
    e.add_argument("--clique", required=True,
                   help="comma-separated vertex labels")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--bijections", default="all")
    e.add_argument("-o", "--output", help="output graph file (default stdout)")
    e.add_argument("--petals-out", help="petal record file")

    t = sub.add_parser("tower", help="expansion towers")
    tsub = t.add_subparsers(dest="sub", required=True)
    tb = tsub.add_parser("build")
    tb.add_argument("--mode", choices=["paper", "custom"], required=True)
    tb.add_argument("--k", type=int, default=2)
    tb.add_argument("--spec", help="custom parameters JSON file")
    tb.add_argument("-o", "--output", help="output directory")

    l6 = sub.add_parser("lemma6", help="bijection covering properties")
    lsub = l6.add_subparsers(dest="sub", required=True)
    ls = lsub.add_parser("sample")
    ls.add_argument("--m", type=int, required=True)
    ls.add_argument("--k", type=int, required=True)
    ls.add_argument("--i", type=int, required=True)
    ls.add_argument("--seed", type=int, required=True)
    ls.add_argument("-o", "--output")
    lc = lsub.add_parser("check")
    lc.add_argument("instance")
    lc.add_argument("--property", type=int, choices=[1, 2], required=True)
    lc.add_argument("--mode", default="exhaustive",
                    help="exhaustive or sampled:TRIALS")
    lc.add_argument("--seed", type=int, default=0)
    lc.add_argument("--json", action="store_true")
    le = lsub.add_parser("estimate")
    le.add_argument("--m", type=int, required=True)
    le.add_argument("--k", type=int, required=True)
    le.add_argument("--i", type=int, required=True)
    le.add_argument("--trials", type=int, required=True)
    le.add_argument("--inner", type=int, default=100_000)
    le.add_argument("--seed", type=int, required=True)
    le.add_argument("--json", action="store_true")

    b = sub.add_parser("bounds", help="probability bound certification")
    bsub = b.add_subparsers(dest="sub", required=True)
    be = bsub.add_parser("eval")
    be.add_argument("--n", type=int, required=True)
    be.add_argument("--i", type=int, required=True)
    be.add_argument("--json", action="store_true")
    return ap


def _cmd_gen(args) -> int:
    g = generate_named_graph(args.type, args.n, args.seed)
    _emit(graph_to_json(g), args.output)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph_to_dot(g))
    return 0


def _cmd_cliques(args) -> int:
    g = load_graph(args.graph)
    mcl = maximal_cliques(g, args.min_size)
    if args.json:
        _emit({"cliques": [sorted(c) for c in mcl.cliques]})
    else:
        for cl in mcl.cliques:
            print(",".join(sorted(cl)))
    return 0


def _cmd_cc(args, budgets) -> int:
    if args.sub == "verify":
        g = load_graph(args.graph)
        with open(args.coloring) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON in {args.coloring}: "
                                 f"{exc}") from None
        verdict = verify_clique_coloring(g, coloring_from_json(data))
        if args.json:
            _emit({"valid": verdict.valid,
                   "witness": list(verdict.witness) if verdict.witness else None})
        else:
            print("valid" if verdict.valid else
                  f"invalid: monochromatic maximal clique "
                  f"{','.join(verdict.witness)}")
        return 0 if verdict.valid else 1
    if args.sub == "chromatic":
        g = load_graph(args.graph)
        if args.proper:
            value = chromatic_number(g)
        else:
            value = clique_chromatic_number(g, args.max_colors)
        if args.json:
            _emit({"value": value, "exceeds_max": value is None})
        else:
            print("exceeds max" if value is None else value)
        return 0 if value is not None else 1
    if args.sub == "tower-color":
        trace = load_tower(args.tracedir)
        col = construct_tower_coloring(trace)
        verdict = verify_clique_coloring(trace.graphs[-1], col)
        if args.json:
            _emit({"colors": dict(sorted(col.assignment.items())),
                   "valid": verdict.valid,
                   "witness": list(verdict.witness) if verdict.witness else None})
        else:
            print(f"{col.num_colors()} colors; "
                  + ("valid" if verdict.valid else "invalid"))
        return 0 if verdict.valid else 1
    raise InputError(f"unknown cc subcommand {args.sub!r}")


def _cmd_perfect(args, budgets) -> int:
    from .perfection import is_perfect
    g = load_graph(args.graph)
    verdict = is_perfect(g, args.method, budgets)
    if args.json:
        _emit({"perfect": verdict.perfect, "witness_kind": verdict.witness_kind,
               "witness": list(verdict.witness) if verdict.witness else None})
    else:
        if verdict.perfect:
            print("perfect")
        else:
            print(f"not perfect: {verdict.witness_kind} "
                  f"{','.join(verdict.witness)}")
    return 0 if verdict.perfect else 1


def _cmd_cutset(args) -> int:
    from .perfection import find_clique_cutset
    g = load_graph(args.graph)
    cut = find_clique_cutset(g)
    if args.json:
        _emit({"found": cut is not None,
               "cutset": list(cut) if cut is not None else None})
    else:
        if cut is None:
            print("none")
        else:
            print(",".join(cut) if cut else "(empty clique)")
    return 0


def _cmd_expand(args, budgets) -> int:
    g = load_graph(args.graph)
    spec = ExpansionSpec(args.n, args.k)
    clique = [x for x in args.clique.split(",") if x]
    bijections = _parse_bijections(args.bijections, spec)
    result, petals = expand_at_clique(g, clique, spec, bijections,
                                      budgets=budgets)
    _emit(graph_to_json(result), args.output)
    if args.petals_out:
        _emit([_petal_json(p) for p in petals], args.petals_out)
    return 0


def _cmd_tower(args, budgets) -> int:
    if args.mode == "custom":
        if not args.spec:
            raise InputError("custom mode needs --spec FILE")
        with open(args.spec) as fh:
            try:
                params = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON in {args.spec}: "
                                 f"{exc}") from None
    else:
        params = None
    trace = build_tower(args.k, args.mode, params, budgets)
    if args.output:
        save_tower(trace, args.output)
    else:
        print(f"tower with {len(trace.levels)} levels; final graph has "
              f"{trace.graphs[-1].n} vertices")
        for w in trace.warnings:
            print(f"warning: {w}")
    return 0


def _cmd_lemma6(args, budgets) -> int:
    if args.sub == "sample":
        inst = lemma6.sample_bijection(args.m, args.k, args.i, args.seed)
        if args.output:
            lemma6.save_instance(inst, args.output)
        else:
            _emit(lemma6.instance_to_json(inst))
        return 0
    if args.sub == "check":
        inst = lemma6.load_instance(args.instance)
        if args.mode == "exhaustive":
            mode, trials = "exhaustive", None
        elif args.mode.startswith("sampled:"):
            mode, trials = "sampled", int(args.mode.split(":", 1)[1])
        else:
            raise InputError("--mode must be exhaustive or sampled:TRIALS")
        fn = (lemma6.check_property1 if args.property == 1
              else lemma6.check_property2)
        report = fn(inst, mode, trials=trials, seed=args.seed,
                    budgets=budgets)
        if args.json:
            _emit({"property": report.property, "mode": report.mode,
                   "checked": report.checked, "failures": report.failures,
                   "witnesses": [[j, list(s)] for j, s in report.witnesses],
                   "note": report.note})
        else:
            print(f"property {report.property}: {report.failures} failures "
                  f"over {report.checked} sets ({report.mode})")
        return 0 if report.failures == 0 else 1
    if args.sub == "estimate":
        rep = lemma6.estimate_failure_probability(
            args.m, args.k, args.i, args.trials, args.seed,
            inner_samples=args.inner, budgets=budgets)
        if args.json:
            _emit(asdict(rep))
        else:
            print(f"p1_hat={rep.p1_hat} {rep.p1_interval} "
                  f"p2_hat={rep.p2_hat} {rep.p2_interval}")
        return 0
    raise InputError(f"unknown lemma6 subcommand {args.sub!r}")


def _cmd_bounds(args) -> int:
    report = bounds_mod.verify_inequality_chain(args.n, args.i)
    if args.json:
        _emit({"n": report.n, "i": report.i, "N": str(report.N),
               "p": str(report.p), "q": str(report.q),
               "p1_log2": report.p1_log2, "p2_log2": report.p2_log2,
               "overall": report.overall,
               "chain": [{"name": l.name, "passed": l.passed,
                          "method": l.method, "lhs_log2": l.lhs_log2,
                          "rhs_log2": l.rhs_log2, "margin": l.margin}
                         for l in report.chain]})
    else:
        for link in report.chain:
            print(f"[{'pass' if link.passed else 'FAIL'}] ({link.name}) "
                  f"{link.description}")
        print(f"p1_log2={report.p1_log2:.3f} p2_log2={report.p2_log2:.3f} "
              f"overall={'pass' if report.overall else 'FAIL'}")
    return 0 if report.overall else 1


def dispatch(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    budgets = config.budgets_from_env()
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "cliques":
            return _cmd_cliques(args)
        if args.command == "cc":
            return _cmd_cc(args, budgets)
        if args.command == "perfect":
            return _cmd_perfect(args, budgets)
        if args.command == "cutset":
            return _cmd_cutset(args)
        if args.command == "expand":
            return _cmd_expand(args, budgets)
        if args.command == "tower":
            return _cmd_tower(args, budgets)
        if args.command == "lemma6":
            return _cmd_lemma6(args, budgets)
        if args.command == "bounds":
            return _cmd_bounds(args)
        raise InputError(f"unknown subcommand {args.command!r}")
    except TowerInfeasible as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        _emit(exc.report)
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 2
    except ColoringConstructionError as exc:
        sys.stderr.write(f"construction failed: {exc}\n")
        return 1
    except InputError as exc:
        msg = str(exc)
        prefix = "json error" if "invalid JSON" in msg else "input error"
        sys.stderr.write(f"{prefix}: {msg}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
