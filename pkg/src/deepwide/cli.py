"""deepwide: command line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 error."""
import argparse
import json
import sys

from . import decomp as D
from . import pretree as P
from .cfi import cfi, cfi_pair
from .equiv import (enumerate_family, gc_equivalent, hom_indistinguishable,
                    separation_experiment)
from .game import CopStrategy, Solver, verify_strategy
from .graph import grid, set_label, to_dot, with_loops
from .grid_strategy import grid_cop_strategy, grid_strategy_rounds
from .hom import hom_count, hom_profile
from .iso import isomorphic
from .logic import (evaluate, formula_from_ct, in_fragment, is_guarded, parse, qg_from_formula,
                    qr, to_text, variables)
from .membership import membership
from .pebble import bijective_pebble_game
from .quantum import QuantumGraph, hom_count_quantum, interpolate, qg_product
from .serialize import (dumps, graph_to_json, load_graph, load_json, witness_from_json,
                        witness_to_dot, witness_to_json)


class Outcome:
    def __init__(self, ok=True, lines=(), data=None):
        self.ok = ok
        self.lines = list(lines)
        self.data = data if data is not None else {}


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def _save_witness(args, w):
    if getattr(args, "out", None):
        _write(args.out, dumps(witness_to_json(w)) + "\n")
    if getattr(args, "dot", None):
        _write(args.dot, witness_to_dot(w))


# ---------------------------------------------------------------------------
# handlers

def cmd_membership(args):
    g = load_graph(args.graph)
    res = membership(g, args.k, args.q, cap=args.cap)
    data = {"member": res.member, "k": args.k, "q": args.q}
    lines = [str(res)]
    if res.member:
        ct = res.witness
        data["elimination_depth"] = D.elimination_depth(ct)
        data["td_width"] = D.td_width(res.td)
        data["td_depth"] = D.td_depth(res.td)
        lines.append(f"witness: construction tree with {len(ct.parent)} nodes, "
                     f"elimination depth {data['elimination_depth']}")
        _save_witness(args, ct)
    return Outcome(res.member, lines, data)


def _witness_for(g, k, q, kind):
    res = membership(g, k, q)
    if not res.member:
        return res, None
    td = res.td
    if kind == "td":
        return res, td
    if kind == "ct":
        return res, res.witness
    if kind == "pfc":
        return res, D.td_to_pfc(g, td, k)
    if kind == "ptd":
        return res, P.td_to_exact_ptd(g, td)
    raise ValueError(f"unknown witness kind {kind!r}")


def _measure(g, w):
    if isinstance(w, D.TreeDecomposition):
        bad = D.validate_td(g, w)
        return bad, {"width": D.td_width(w), "depth": D.td_depth(w)}
    if isinstance(w, D.PebbleForestCover):
        bad = D.validate_pfc(g, w)
        return bad, {"pebbles": w.k, "depth": D.pfc_depth(w)}
    if isinstance(w, D.ConstructionTree):
        bad = D.validate_ct(w, g)
        return bad, {"k": w.k, "elimination_depth": D.elimination_depth(w)}
    H = with_loops(g)
    bad = P.validate_ptd(H, w)
    return bad, {"width": P.ptd_width(w), "depth": P.ptd_depth(w), "exact": P.is_exact(H, w)}


def cmd_decompose(args):
    g = load_graph(args.graph)
    res, w = _witness_for(g, args.k, args.q, args.kind)
    if w is None:
        return Outcome(False, [str(res)], {"member": False})
    bad, meas = _measure(g, w)
    _save_witness(args, w)
    lines = [f"{args.kind}: " + ", ".join(f"{k}={v}" for k, v in meas.items()),
             "valid" if bad is None else f"INVALID: {bad}"]
    return Outcome(bad is None, lines, {"kind": args.kind, **meas, "valid": bad is None,
                                        "witness": witness_to_json(w)})


def cmd_convert(args):
    g = load_graph(args.graph)
    w = witness_from_json(load_json(args.input))
    src = witness_to_json(w)["kind"]
    k = args.k
    # everything goes through a tree-decomposition
    if src == "td":
        td = w
    elif src == "pfc":
        td = D.pfc_to_td(g, w)
    elif src == "ct":
        td = D.ct_to_td(w)
    else:
        td = P.exact_ptd_to_td(with_loops(g), w)
    if args.to == "td":
        out = td
    elif args.to == "pfc":
        out = D.td_to_pfc(g, td, k)
    elif args.to == "ct":
        out = D.td_to_ct(g, td, k=k)
    else:
        out = P.td_to_exact_ptd(g, td)
    bad, meas = _measure(g, out)
    _save_witness(args, out)
    lines = [f"{src} -> {args.to}: " + ", ".join(f"{a}={b}" for a, b in meas.items()),
             "valid" if bad is None else f"INVALID: {bad}"]
    return Outcome(bad is None, lines, {"from": src, "to": args.to, **meas, "valid": bad is None,
                                        "witness": witness_to_json(out)})


def cmd_game(args):
    g = load_graph(args.graph)
    if args.verify:
        sigma = CopStrategy.from_json(load_json(args.verify), args.cops, args.variant, args.board)
        v = verify_strategy(g, sigma, args.cops, args.rounds, args.variant, args.board)
        lines = ["strategy wins" if v.ok else f"strategy fails: {v.reason}"]
        return Outcome(v.ok, lines, {"verified": v.ok, "reason": v.reason})
    solver = Solver(g, args.cops, args.variant, args.board)
    res = solver.solve(args.rounds)
    data = {"cop_wins": res.cop_wins, "variant": args.variant, "board": args.board}
    if res.cop_wins:
        data["rounds"] = res.rounds
        if args.strategy_out:
            _write(args.strategy_out, dumps(res.strategy.to_json()) + "\n")
    return Outcome(res.cop_wins, [str(res)], data)


def cmd_monotonize(args):
    if args.example:
        H = with_loops(P.contracted_grid())
        sigma = P.contracted_grid_strategy()
    else:
        g = load_graph(args.graph)
        H = with_loops(g)
        solver = Solver(g, args.k, "eCR", "G°")
        v = solver.value(args.q)
        if v is None:
            return Outcome(False, [f"Robber wins eCR with {args.k} cops in {args.q} rounds"],
                           {"cop_wins": False})
        sigma = solver.strategy(v)
    st = P.strategy_tree(H, sigma)
    ex, log = P.exactify(H, st, audit=True, check=True)
    before = {"nodes": len(st.parent), "width": P.ptd_width(st), "depth": P.ptd_depth(st),
              "exact": P.is_exact(H, st)}
    after = {"width": P.ptd_width(ex), "depth": P.ptd_depth(ex), "exact": P.is_exact(H, ex)}
    if args.audit:
        _write(args.audit, "".join(json.dumps(r, sort_keys=True) + "\n" for r in log))
    _save_witness(args, ex)
    td = P.exact_ptd_to_td(H, ex)
    ok = after["exact"] and after["width"] <= before["width"] and after["depth"] <= before["depth"]
    lines = [f"strategy tree: {before['nodes']} nodes, width {before['width']}, "
             f"depth {before['depth']}, exact {before['exact']}",
             f"exactified: width {after['width']}, depth {after['depth']}, exact {after['exact']}",
             f"tree-decomposition: width {D.td_width(td)}, depth {D.td_depth(td)}"]
    return Outcome(ok, lines, {"strategy_tree": before, "exact": after,
                               "td": {"width": D.td_width(td), "depth": D.td_depth(td)}})


def cmd_hom(args):
    f = load_graph(args.pattern)
    if args.root is not None:
        f = set_label(f, 1, args.root)
    g = load_graph(args.target)
    if args.profile:
        prof = hom_profile(f, g, args.method)
        return Outcome(True, [" ".join(map(str, prof))], {"profile": prof})
    c = hom_count(f, g, args.method)
    return Outcome(True, [str(c)], {"hom": c})


def _load_qg(path_):
    return QuantumGraph.from_json(load_json(path_))


def cmd_qg(args):
    if args.action == "product":
        out = qg_product(_load_qg(args.a), _load_qg(args.b))
    elif args.action == "interpolate":
        out = interpolate(_load_qg(args.a), _ints(args.plus), _ints(args.minus))
    elif args.action == "from-formula":
        phi = parse(args.formula)
        out = qg_from_formula(phi, args.n, args.k, args.q, guarded=args.guarded)
    else:
        qgr = _load_qg(args.a)
        g = load_graph(args.target)
        val = hom_count_quantum(qgr, g)
        return Outcome(True, [str(val)], {"hom": str(val)})
    if args.out:
        _write(args.out, dumps(out.to_json()) + "\n")
    lines = [f"{len(out)} terms"] + [f"{c} * {g!r}" for c, g in out.terms[:args.show]]
    return Outcome(True, lines, {"terms": out.to_json()})


def cmd_formula(args):
    if args.action == "eval":
        phi = parse(args.formula)
        g = load_graph(args.graph)
        val = evaluate(g, phi)
        return Outcome(val, ["true" if val else "false"],
                       {"value": val, "qr": qr(phi), "vars": sorted(variables(phi)),
                        "guarded": is_guarded(phi)})
    if args.action == "info":
        phi = parse(args.formula)
        data = {"qr": qr(phi), "vars": sorted(variables(phi)), "guarded": is_guarded(phi)}
        if args.k is not None and args.q is not None:
            data["in_fragment"] = in_fragment(phi, args.k, args.q)
        return Outcome(True, [", ".join(f"{a}={b}" for a, b in data.items())], data)
    if args.ct:
        ct = witness_from_json(load_json(args.ct))
    else:
        from .membership import elimination_ct, labelled_ct
        g = load_graph(args.graph)
        ct = labelled_ct(g, args.k, args.q, args.guarded) if g.labels else elimination_ct(g, args.k, args.q)
        if ct is None:
            return Outcome(False, ["graph has no construction tree with these parameters"], {})
    phi = formula_from_ct(ct, args.m, guarded=args.guarded)
    text = to_text(phi)
    return Outcome(True, [text], {"formula": text, "qr": qr(phi)})


def cmd_cfi(args):
    g = load_graph(args.graph)
    if args.twist is None:
        g0, g1 = cfi_pair(g)
        iso = isomorphic(g0, g1, cap=64) is not None
        data = {"sizes": [g0.n, g1.n], "isomorphic": iso}
        if args.hom:
            data["hom"] = [hom_count(g, g0), hom_count(g, g1)]
        lines = [f"G0: {g0.n} vertices, {g0.m} edges; G1: {g1.n} vertices, {g1.m} edges",
                 f"isomorphic: {iso}"]
        if args.hom:
            lines.append(f"hom(G, G0) = {data['hom'][0]}, hom(G, G1) = {data['hom'][1]}")
        out = g1
    else:
        c = cfi(g, _ints(args.twist))
        out = c.graph
        data = {"n": out.n, "m": out.m, "twist": sorted(c.twist)}
        lines = [f"CFI graph: {out.n} vertices, {out.m} edges"]
    if args.out:
        _write(args.out, dumps(graph_to_json(out)) + "\n")
    if args.dot:
        _write(args.dot, to_dot(out))
    return Outcome(True, lines, data)


def cmd_equiv(args):
    g = load_graph(args.g)
    h = load_graph(args.h)
    if args.action == "pebble":
        res = bijective_pebble_game(g, h, args.k, args.q)
        return Outcome(res.duplicator_wins, [str(res)], {"duplicator_wins": res.duplicator_wins})
    if args.action == "hom":
        fam = enumerate_family(args.family, args.k, args.q, args.max_n)
        res = hom_indistinguishable(g, h, fam)
        data = {"indistinguishable": res.indistinguishable, "checked": res.checked}
        if not res.indistinguishable:
            data["witness"] = graph_to_json(res.witness)
            data["counts"] = list(res.counts)
        return Outcome(res.indistinguishable, [str(res)], data)
    res = gc_equivalent(g, h, args.k, args.q, args.max_n)
    data = {"equivalent": res.equivalent, "bound": res.bound, "checked": res.checked}
    if res.bijection:
        data["bijection"] = res.bijection
    if res.witness is not None:
        data["witness"] = graph_to_json(res.witness)
    return Outcome(res.equivalent, [str(res)], data)


def cmd_grid_bounds(args):
    h, l = args.h, args.l
    lower = (h * (l - h + 2)) // 4
    data = {"h": h, "l": l, "cops": h + 1, "robber_wins_up_to": lower}
    lines = [f"grid({h},{l}) with {h + 1} cops: Robber wins for q <= {lower}"]
    ok = True
    if args.check:
        # Robber winning q rounds also wins every shorter game
        robber = not Solver(grid(h, l), h + 1, "CR", "G").cop_wins(lower)
        data["solver_confirms"] = robber
        ok = robber
        lines.append(f"solver confirms Robber wins at q = {lower}: {robber}")
    if 3 < h < l - 3:
        q = grid_strategy_rounds(h, l)
        v = verify_strategy(grid(h, l), grid_cop_strategy(h, l), h + 1, q)
        data["strategy_rounds"] = q
        data["strategy_verified"] = v.ok
        ok = ok and v.ok
        lines.append(f"explicit {h + 1}-cop strategy wins within {q} rounds: {v.ok}")
    return Outcome(ok, lines, data)


def cmd_separate(args):
    rep = separation_experiment(args.k, args.q, game_cap=args.game_cap)
    data = {"k": args.k, "q": args.q, "found": rep.found, "ok": rep.ok()}
    if rep.found:
        data.update({"witness": graph_to_json(rep.witness), "not_in_t": rep.not_in_t,
                     "treewidth": rep.treewidth, "treedepth": rep.treedepth,
                     "cfi_sizes": list(rep.cfi_sizes), "duplicator_wins": rep.duplicator_wins,
                     "hom_counts": list(rep.hom_counts) if rep.hom_counts else None})
    data["notes"] = rep.notes
    return Outcome(rep.ok() or not rep.found, rep.lines(), data)


# ---------------------------------------------------------------------------
# argument parsing

def _graph_args(p, flag="--graph"):
    p.add_argument(flag, required=True, help="graph file (text or JSON) or path:N, cycle:N, "
                   "complete:N, grid:HxL, contracted-grid")


def build_parser():
    ap = argparse.ArgumentParser(prog="deepwide", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="print a JSON report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("membership", help="decide membership in T^k_q")
    _graph_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--out", help="write the construction tree as JSON")
    p.add_argument("--dot", help="write the construction tree as DOT")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("decompose", help="produce a witness of T^k_q membership")
    _graph_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--kind", choices=["td", "pfc", "ct", "ptd"], default="td")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convert", help="convert a witness to another kind")
    _graph_args(p)
    p.add_argument("--input", required=True, help="witness JSON")
    p.add_argument("--to", choices=["td", "pfc", "ct", "ptd"], required=True)
    p.add_argument("-k", type=int, default=None, help="label / pebble budget")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("game", help="solve or verify a Cops-and-Robber game")
    _graph_args(p)
    p.add_argument("--cops", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--variant", choices=["CR", "monCR", "eCR", "moneCR"], default="CR")
    p.add_argument("--board", choices=["G", "G°", "Go"], default="G")
    p.add_argument("--verify", help="strategy JSON to verify instead of solving")
    p.add_argument("--strategy-out", help="write the winning strategy as JSON")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("monotonize", help="strategy tree and exactification")
    p.add_argument("--graph")
    p.add_argument("-k", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("--example", action="store_true",
                   help="use the contracted 2x5 grid with its 5-cop strategy")
    p.add_argument("--audit", help="write the per-step log as JSON lines")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_monotonize)

    p = sub.add_parser("hom", help="count homomorphisms")
    p.add_argument("--pattern", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--method", choices=["auto", "brute", "dp"], default="auto")
    p.add_argument("--profile", action="store_true", help="per-vertex counts with label 1 moved")
    p.add_argument("--root", type=int, help="put label 1 on this pattern vertex")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("qg", help="quantum graph operations")
    p.add_argument("action", choices=["product", "interpolate", "from-formula", "eval"])
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--plus", default="")
    p.add_argument("--minus", default="")
    p.add_argument("--formula")
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("--guarded", action="store_true")
    p.add_argument("--target")
    p.add_argument("--out")
    p.add_argument("--show", type=int, default=10)
    p.set_defaults(func=cmd_qg)

    p = sub.add_parser("formula", help="evaluate formulas or build them from construction trees")
    p.add_argument("action", choices=["eval", "info", "from-ct"])
    p.add_argument("--formula")
    p.add_argument("--graph")
    p.add_argument("--ct", help="construction tree JSON")
    p.add_argument("-k", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--guarded", action="store_true")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("cfi", help="CFI graphs")
    _graph_args(p)
    p.add_argument("--twist", help="comma separated twist set; default: the pair G0, G1")
    p.add_argument("--hom", action="store_true", help="also count hom(G, G0) and hom(G, G1)")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_cfi)

    p = sub.add_parser("equiv", help="equivalence deciders")
    p.add_argument("action", choices=["pebble", "hom", "gc"])
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--family", choices=["T", "GE", "TWTD"], default="T")
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("grid-bounds", help="grid lower bound and explicit strategy")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--check", action="store_true", help="confirm the lower bound with the solver")
    p.set_defaults(func=cmd_grid_bounds)

    p = sub.add_parser("separate", help="CFI separation experiment")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--game-cap", type=int, default=24)
    p.set_defaults(func=cmd_separate)
    return ap


def _check(args):
    need = {"monotonize": lambda a: a.example or (a.graph and a.k and a.q is not None),
            "qg": lambda a: {"product": a.a and a.b, "interpolate": a.a,
                             "from-formula": a.formula and a.n is not None,
                             "eval": a.a and a.target}[a.action],
            "formula": lambda a: {"eval": a.formula and a.graph, "info": a.formula,
                                  "from-ct": a.ct or (a.graph and a.k and a.q is not None)}[a.action]}
    test = need.get(args.command)
    if test and not test(args):
        raise ValueError(f"missing arguments for {args.command}"
                         + (f" {args.action}" if hasattr(args, "action") else ""))
    if getattr(args, "board", None) == "Go":
        args.board = "G°"


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _check(args)
        out = args.func(args)
    except (ValueError, KeyError, OSError, RecursionError) as e:
        print(f"deepwide: error: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(dumps({"command": args.command, "ok": out.ok, **out.data}))
    else:
        for line in out.lines:
            print(line)
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
