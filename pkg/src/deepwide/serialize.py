"""JSON and DOT for graphs and witnesses, plus graph loading for the CLI."""
import json
import os
from fractions import Fraction

from .decomp import ConstructionTree, PebbleForestCover, TreeDecomposition
from .graph import GraphError, LabelledGraph, complete, cycle, grid, parse_text, path
from .pretree import PreTreeDecomposition


def graph_to_json(g):
    d = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        d["labels"] = [list(x) for x in g.labels]
    if g.loops:
        d["loops"] = True
    return d


def graph_from_json(d):
    return LabelledGraph(d["n"], tuple(tuple(e) for e in d.get("edges", ())),
                         tuple(tuple(x) for x in d.get("labels", ())), bool(d.get("loops", False)))


def witness_to_json(w):
    if isinstance(w, TreeDecomposition):
        return {"kind": "td", "parent": list(w.parent), "bags": [sorted(b) for b in w.bags]}
    if isinstance(w, PebbleForestCover):
        return {"kind": "pfc", "parent": list(w.parent), "pebbles": list(w.pebbles)}
    if isinstance(w, ConstructionTree):
        return {"kind": "ct", "k": w.k, "parent": list(w.parent),
                "embed": [list(e) if e is not None else None for e in w.embed],
                "graphs": [graph_to_json(g) for g in w.graphs]}
    if isinstance(w, PreTreeDecomposition):
        return {"kind": "ptd", **w.to_json()}
    raise TypeError(f"cannot serialise {type(w).__name__}")


def witness_from_json(d):
    kind = d.get("kind")
    if kind == "td":
        return TreeDecomposition(d["parent"], [frozenset(b) for b in d["bags"]])
    if kind == "pfc":
        return PebbleForestCover(d["parent"], d["pebbles"])
    if kind == "ct":
        return ConstructionTree(list(d["parent"]), [graph_from_json(g) for g in d["graphs"]],
                                [tuple(e) if e is not None else None for e in d["embed"]], d["k"])
    if kind == "ptd":
        return PreTreeDecomposition.from_json(d)
    raise ValueError(f"unknown witness kind {kind!r}")


def witness_to_dot(w, name="W"):
    out = [f"digraph {name} {{"]
    if isinstance(w, ConstructionTree):
        ch = w.children()
        for t, g in enumerate(w.graphs):
            kind = w.kind(t, ch)
            labs = ",".join(f"{l}:{v}" for l, v in g.labels)
            out.append(f'  {t} [label="{kind} n={g.n} m={g.m}\\n{labs}"];')
    elif isinstance(w, PebbleForestCover):
        for v, p in enumerate(w.pebbles):
            out.append(f'  {v} [label="{v} / {p}"];')
    else:
        for t, b in enumerate(w.bags):
            out.append(f'  {t} [label="{{{", ".join(map(str, sorted(b)))}}}"];')
    for t, p in enumerate(w.parent):
        if p >= 0:
            out.append(f"  {p} -> {t};")
    out.append("}")
    return "\n".join(out) + "\n"


def _builtin(spec):
    name, _, arg = spec.partition(":")
    try:
        if name == "path":
            return path(int(arg))
        if name == "cycle":
            return cycle(int(arg))
        if name == "complete":
            return complete(int(arg))
        if name == "grid":
            h, l = arg.lower().split("x")
            return grid(int(h), int(l))
        if name == "contracted-grid":
            from .pretree import contracted_grid
            return contracted_grid()
    except ValueError:
        raise GraphError(f"bad built-in graph {spec!r}") from None
    raise GraphError(f"unknown graph {spec!r}; expected a file or path:N, cycle:N, "
                     "complete:N, grid:HxL, contracted-grid")


def load_graph(spec):
    """A graph from a text or JSON file, or a built-in like path:7."""
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return graph_from_json(json.loads(text))
        return parse_text(text)
    return _builtin(spec)


def load_json(path_):
    with open(path_) as fh:
        return json.load(fh)


def dumps(obj):
    def default(o):
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if isinstance(o, Fraction):
            return str(o)
        raise TypeError(f"not serialisable: {type(o).__name__}")
    return json.dumps(obj, indent=2, sort_keys=True, default=default)
