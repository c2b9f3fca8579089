"""Command-line interface: ``gridminor <command> ...``.

Exit codes are 0 for success, 1 when a model or answer fails its check and
2 for usage errors (bad specs, unreadable or malformed files, infeasible
parameters).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from math import sqrt

from .constructions import (
    SubgraphEmbedding,
    bipartite_in_star_tree,
    certificate_from_dict,
    clique_in_product,
    grid_in_star_path_strong,
    grid_in_star_tree_cartesian,
    grid_in_tree_star_product,
    grid_subgraph_in_P3_lex_path,
    omega_sqrt_n_grid,
)
from .graph import (
    PRODUCT_KINDS,
    Graph,
    GraphError,
    bfs_order,
    make_caterpillar,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_star,
    make_subdivided_star,
    product,
    random_tree,
)
from .models import Bramble, MalformedModelError, MinorModel, ModelError, product_bramble, validate_bramble, \
    validate_model
from .oracle import SearchBudget, bramble_order, gm_exact, has_minor, min_fvs, treewidth_exact
from .trees import RootedTree, check_height_hypothesis, disjoint_p_paths, height_histogram, unrelated_vertical_paths

log = logging.getLogger("gridminor")

SWEEP_COLUMNS = ("family", "n", "seed", "k_achieved", "sqrt_n", "ratio", "validated", "elapsed_ms")
FAMILIES = ("random-tree", "path", "star", "subdivided-star", "caterpillar")
# constant c in the reference curve sqrt(c n) that each sweepable construction is compared with
SWEEP_CONSTRUCTIONS = {"star-tree-cart": 2.0, "star-path-strong": 2.5, "lex-embed": 3.0, "lower-bound": 1.0}
SWEEP_KIND = {"star-tree-cart": "cartesian", "star-path-strong": "strong", "lex-embed": "lex",
              "lower-bound": "cartesian"}


class UsageError(Exception):
    pass


# -- graph specs ----------------------------------------------------------------


def _ints(text: str, sep: str, count: int, spec: str) -> list[int]:
    parts = text.split(sep)
    if len(parts) != count:
        raise UsageError(f"bad graph spec {spec!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad graph spec {spec!r}") from None


def parse_graph_spec(spec: str, seed: int = 0) -> Graph:
    """``path:N``, ``cycle:N``, ``complete:N``, ``star:L``, ``substar:LxP``, ``grid:K``,
    ``caterpillar:SxL``, ``tree:N`` (random, uses ``seed``; ``tree:N:SEED`` overrides) or ``file:PATH``."""
    name, _, arg = spec.partition(":")
    if not arg:
        raise UsageError(f"bad graph spec {spec!r}")
    try:
        if name == "file":
            try:
                with open(arg) as fh:
                    return Graph.from_dict(json.load(fh))
            except OSError as exc:
                raise UsageError(f"cannot read {arg}: {exc}") from None
            except (json.JSONDecodeError, GraphError) as exc:
                raise UsageError(f"{arg}: {exc}") from None
        simple = {"path": make_path, "cycle": make_cycle, "complete": make_complete, "star": make_star,
                  "grid": make_grid}
        if name in simple:
            return simple[name](*_ints(arg, ",", 1, spec))
        if name == "substar":
            return make_subdivided_star(*_ints(arg, "x", 2, spec))
        if name == "caterpillar":
            return make_caterpillar(*_ints(arg, "x", 2, spec))
        if name == "tree":
            vals = _ints(arg, ":", arg.count(":") + 1, spec)
            if len(vals) == 1:
                return random_tree(vals[0], seed)
            if len(vals) == 2:
                return random_tree(vals[0], vals[1])
    except GraphError as exc:
        raise UsageError(f"bad graph spec {spec!r}: {exc}") from None
    raise UsageError(f"bad graph spec {spec!r}")


def family_graph(family: str, n: int, seed: int) -> Graph:
    """An ``n``-vertex member of a sweep family (stars get ``n - 1`` leaves)."""
    if family == "random-tree":
        return random_tree(n, seed)
    if family == "path":
        return make_path(n)
    if family == "star":
        return make_star(n - 1) if n > 1 else make_path(1)
    if family == "subdivided-star":
        # about sqrt(n) equal arms; leftover vertices extend the last arm
        if n == 1:
            return make_path(1)
        arms = max(1, round(sqrt(n - 1)))
        g = make_subdivided_star(arms, (n - 1) // arms)
        edges = list(g.edges)
        last = g.n - 1
        for v in range(g.n, n):
            edges.append((last, v))
            last = v
        return Graph(n, edges)
    if family == "caterpillar":
        # spine of n // 3 vertices, the rest dealt out as legs
        spine = max(1, n // 3)
        edges = list(make_path(spine).edges) + [(j % spine, v) for j, v in enumerate(range(spine, n))]
        return Graph(n, edges)
    raise UsageError(f"unknown family {family!r}")


def two_colouring(g: Graph) -> tuple[list[int], list[int]]:
    colour: dict[int, int] = {}
    for s in range(g.n):
        if s in colour:
            continue
        colour[s] = 0
        for u in bfs_order(g, s):
            for w in g.neighbors(u):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                elif colour[w] == colour[u]:
                    raise UsageError("graph is not bipartite")
    a = [v for v in range(g.n) if colour[v] == 0]
    b = [v for v in range(g.n) if colour[v] == 1]
    return a, b


# -- output -----------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _budget(args) -> SearchBudget:
    return SearchBudget(max_host_vertices=args.max_host, max_nodes=args.budget_nodes, time_limit=args.budget_secs)


def model_document(m: MinorModel, lemma: str, params: dict | None = None) -> dict:
    out = {"kind": "minor-model", "lemma": lemma, "parameters": params or {}}
    out.update(m.to_dict())
    return out


def bramble_document(b: Bramble, lemma: str = "bramble") -> dict:
    return {"kind": "bramble", "lemma": lemma, "host": b.host.to_dict(compact=True), "sets": [list(s) for s in b.sets]}


def bramble_from_dict(d: dict) -> Bramble:
    try:
        return Bramble(Graph.from_dict(d["host"]), tuple(tuple(int(v) for v in s) for s in d["sets"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedModelError(f"malformed bramble: {exc}") from exc


# -- commands ----------------------------------------------------------------


def cmd_product(args) -> int:
    g1 = parse_graph_spec(args.factor1, args.seed)
    g2 = parse_graph_spec(args.factor2, args.seed)
    g = product(g1, g2, args.kind)
    if args.format == "dot":
        _emit(g.to_dot(), args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("u", "v"))
        w.writerows(g.edges)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dumps(g.to_dict(compact=args.compact)), args.out)
    return 0


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.lemma}")


def build_certificate(args) -> dict:
    """Run one construction and return its JSON document; checks happen inside each construction."""
    lemma = args.lemma
    if lemma == "clique":
        _need(args, "graph")
        g = parse_graph_spec(args.graph, args.seed)
        return model_document(clique_in_product(g), "clique", {"n": g.n})
    if lemma == "bipartite":
        _need(args, "graph", "tree")
        g = parse_graph_spec(args.graph, args.seed)
        t = parse_graph_spec(args.tree, args.seed)
        a, b = two_colouring(g)
        if len(a) < len(b):
            a, b = b, a
        star = make_star(args.leaves if args.leaves is not None else max(1, len(a)))
        return model_document(bipartite_in_star_tree(g, (a, b), star, t), "bipartite", {"A": len(a), "B": len(b)})
    if lemma == "star-tree-cart":
        if args.tree is None and args.n is None:
            raise UsageError("star-tree-cart needs --tree or --n")
        t = parse_graph_spec(args.tree, args.seed) if args.tree else make_path(args.n)
        s = make_star(args.leaves) if args.leaves is not None else None
        return grid_in_star_tree_cartesian(t, s).to_dict()
    if lemma == "star-path-strong":
        _need(args, "n")
        return grid_in_star_path_strong(args.n).to_dict()
    if lemma == "lex-embed":
        _need(args, "n")
        return grid_subgraph_in_P3_lex_path(args.n).to_dict()
    if lemma == "star-times-star":
        _need(args, "tree", "s", "p")
        t = RootedTree(parse_graph_spec(args.tree, args.seed))
        order = 6 * args.p
        if check_height_hypothesis(t, order):
            paths = disjoint_p_paths(t, order)
        else:
            paths, _ = unrelated_vertical_paths(t, order)
        if len(paths) < args.s * args.s:
            raise UsageError(f"tree has only {len(paths)} disjoint paths of order {6 * args.p}, "
                             f"need {args.s * args.s}")
        return grid_in_tree_star_product(t, paths, args.s, args.p).to_dict()
    if lemma == "lower-bound":
        _need(args, "g1", "g2")
        g1 = parse_graph_spec(args.g1, args.seed)
        g2 = parse_graph_spec(args.g2, args.seed + 1)
        return omega_sqrt_n_grid(g1, g2, best=not args.single_branch).to_dict()
    if lemma == "bramble":
        _need(args, "g1", "g2")
        g1 = parse_graph_spec(args.g1, args.seed)
        g2 = parse_graph_spec(args.g2, args.seed + 1)
        b = product_bramble(g1, g2)
        report = validate_bramble(b)
        if not report:
            raise ModelError(f"bramble failed validation: {report.message}")
        return bramble_document(b)
    raise UsageError(f"unknown construction {lemma!r}")


def cmd_construct(args) -> int:
    try:
        doc = build_certificate(args)
    except (GraphError, ValueError) as exc:
        if isinstance(exc, ModelError) and not isinstance(exc, MalformedModelError):
            print(f"error: construction failed its own check: {exc}", file=sys.stderr)
            return 1
        raise UsageError(str(exc)) from None
    _emit(_dumps(doc), args.out)
    return 0


def verify_document(doc) -> dict:
    """Re-check a JSON document from scratch; raises :class:`MalformedModelError` on bad input."""
    if not isinstance(doc, dict):
        raise MalformedModelError("document must be a JSON object")
    kind = doc.get("kind", "grid-model")
    if kind == "minor-model":
        report = validate_model(MinorModel.from_dict(doc))
    elif kind == "bramble":
        report = validate_bramble(bramble_from_dict(doc))
    else:
        cert = certificate_from_dict(doc)
        report = cert.check()
        if report and isinstance(cert, SubgraphEmbedding) and cert.k is not None:
            if cert.pattern != make_grid(cert.k):
                report = report.__class__(False, "pattern", {"k": cert.k}, f"pattern is not the {cert.k}-grid")
    out = {"kind": kind, "lemma": doc.get("lemma"), "k": doc.get("k")}
    out.update(report.to_dict())
    return out


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc}") from None
    except json.JSONDecodeError as exc:
        print(_dumps({"ok": False, "clause": "malformed", "message": f"not JSON: {exc}"}), end="")
        return 2
    try:
        result = verify_document(doc)
    except (MalformedModelError, GraphError) as exc:
        print(_dumps({"ok": False, "clause": "malformed", "message": str(exc)}), end="")
        return 2
    print(_dumps(result), end="")
    return 0 if result["ok"] else 1


def cmd_oracle(args) -> int:
    budget = _budget(args)
    graphs = [parse_graph_spec(s, args.seed) for s in args.graphs]
    task = args.task
    want = 2 if task in ("minor", "bramble-order") else 1
    if len(graphs) != want:
        raise UsageError(f"{task} takes {want} graph argument(s)")
    if task == "gm":
        res = gm_exact(graphs[0], budget).to_dict()
    elif task == "tw":
        res = treewidth_exact(graphs[0], budget).to_dict()
    elif task == "fvs":
        res = min_fvs(graphs[0], budget).to_dict()
    elif task == "minor":
        res = has_minor(graphs[0], graphs[1], budget).to_dict()
    else:
        try:
            b = product_bramble(graphs[0], graphs[1])
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        res = bramble_order(b, budget).to_dict()
    res["task"] = task
    _emit(_dumps(res), args.out)
    return 0


def sweep_row(job) -> dict:
    """One sweep measurement; module level so it can run in a worker process."""
    family, n, seed, construction = job
    t0 = time.perf_counter()
    tree = family_graph(family, n, seed)
    if construction == "star-tree-cart":
        cert = grid_in_star_tree_cartesian(tree)
    elif construction == "star-path-strong":
        cert = grid_in_star_path_strong(n)
    elif construction == "lex-embed":
        cert = grid_subgraph_in_P3_lex_path(n)
    else:
        cert = omega_sqrt_n_grid(tree, family_graph(family, n, seed + 1_000_003))
    ok = bool(cert.check())
    elapsed = (time.perf_counter() - t0) * 1000
    k = cert.k
    return {
        "family": family, "n": n, "seed": seed, "k_achieved": k,
        "sqrt_n": f"{sqrt(n):.6f}", "ratio": f"{k / sqrt(SWEEP_CONSTRUCTIONS[construction] * n):.6f}",
        "validated": "true" if ok else "false", "elapsed_ms": f"{elapsed:.1f}",
    }


def run_sweep(family: str, sizes, seeds, construction: str, jobs: int = 1) -> list[dict]:
    if not sizes:
        raise UsageError("empty size list")
    if any(n < 1 for n in sizes):
        raise UsageError("sizes must be positive")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    if construction not in SWEEP_CONSTRUCTIONS:
        raise UsageError(f"construction {construction!r} cannot be swept")
    work = [(family, n, seed, construction) for n in sizes for seed in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(sweep_row, work))
    else:
        rows = [sweep_row(j) for j in work]
    rows.sort(key=lambda r: (r["n"], r["seed"]))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _int_list(text: str) -> list[int]:
    """``"1,4,9"`` or ranges such as ``"0-9"``, mixed freely."""
    out = []
    try:
        for part in (x.strip() for x in text.split(",")):
            if not part:
                continue
            lo, sep, hi = part.partition("-")
            out.extend(range(int(lo), int(hi) + 1) if sep and lo else [int(part)])
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def cmd_sweep(args) -> int:
    kind = SWEEP_KIND.get(args.construction)
    if args.product is not None and kind is not None and args.product != kind:
        raise UsageError(f"{args.construction} works in the {kind} product, not {args.product}")
    seeds = args.seeds if args.seeds is not None else [args.seed]
    rows = run_sweep(args.family, args.sizes, seeds, args.construction, args.jobs)
    if args.format == "json":
        _emit(_dumps(rows), args.out)
    else:
        _emit(rows_to_csv(rows), args.out)
    bad = [r for r in rows if r["validated"] != "true"]
    if bad:
        print(f"error: {len(bad)} certificate(s) failed validation", file=sys.stderr)
        return 1
    return 0


def cmd_heights(args) -> int:
    g = parse_graph_spec(args.tree, args.seed)
    try:
        t = RootedTree(g, args.root)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    hist = height_histogram(t)
    if args.format == "csv":
        _emit("height,count\n" + "".join(f"{i},{c}\n" for i, c in hist), args.out)
    else:
        _emit(_dumps({"n": t.n, "root": t.root, "histogram": [[i, c] for i, c in hist]}), args.out)
    return 0


# -- parser -------------------------------------------------------------------


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", "--max-nodes", dest="budget_nodes", type=int, default=None,
                   help="search-node cap")
    p.add_argument("--budget-secs", "--time-limit-s", dest="budget_secs", type=float, default=None,
                   help="wall-clock cap in seconds")
    p.add_argument("--max-host", type=int, default=64, help="largest host the exact solvers accept")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridminor", description="Grid minors in graph products.")
    parser.add_argument("--seed", type=int, default=0, help="seed for random trees")
    parser.add_argument("--out", default=None, help="write output here instead of stdout")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", parents=[common], help="build a graph product")
    p.add_argument("factor1")
    p.add_argument("factor2")
    p.add_argument("--kind", choices=PRODUCT_KINDS, default="cartesian")
    p.add_argument("--format", choices=("json", "dot", "csv"), default="json")
    p.add_argument("--compact", action="store_true", help="emit the product descriptor instead of edges")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("construct", parents=[common], help="run a construction and emit its certificate")
    p.add_argument("lemma", choices=("clique", "star-times-star", "lower-bound", "bipartite", "star-tree-cart",
                                     "star-path-strong", "lex-embed", "bramble"))
    p.add_argument("--n", type=int)
    p.add_argument("--graph")
    p.add_argument("--tree")
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--leaves", type=int)
    p.add_argument("--single-branch", action="store_true",
                   help="lower-bound: follow only the branch picked by the arm length")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="exact solvers")
    p.add_argument("task", choices=("gm", "tw", "minor", "fvs", "bramble-order"))
    p.add_argument("graphs", nargs="+", help="graph specs (minor: host then pattern)")
    p.add_argument("--format", choices=("json",), default="json")
    _budget_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", parents=[common], help="measure a construction over a family")
    p.add_argument("--family", choices=FAMILIES, default="random-tree")
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--seeds", type=_int_list, default=None)
    p.add_argument("--construction", choices=tuple(SWEEP_CONSTRUCTIONS), default="lower-bound")
    p.add_argument("--product", choices=PRODUCT_KINDS, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("heights", parents=[common], help="height histogram of a rooted tree")
    p.add_argument("tree")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_heights)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("GM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    log.debug("command %s", args.command)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
