"""CFI graphs G_U and the path-twist isomorphism between them."""
from dataclasses import dataclass

from .graph import GraphError, LabelledGraph, is_connected


@dataclass(frozen=True)
class CfiGraph:
    base: LabelledGraph
    twist: frozenset
    graph: LabelledGraph   # names are (v, S) with S a bitmask over inc(v)
    rho: tuple             # projection vertex -> base vertex

    def vertex_of(self, v, s):
        return self.graph.names.index((v, s))


def incident(g, v):
    """Sorted neighbour list of v; bit i of a gadget subset S stands for
    the edge between v and incident(g, v)[i]."""
    return g.neighbours(v)


def cfi(g, twist=()):
    twist = frozenset(twist)
    if g.has_loops():
        raise GraphError("CFI base graph must be loopless")
    if not is_connected(g):
        raise GraphError("CFI base graph must be connected")
    for v in twist:
        if not 0 <= v < g.n:
            raise GraphError(f"twist vertex {v} not in base graph")
    inc = [incident(g, v) for v in range(g.n)]
    names = []
    for v in range(g.n):
        want = 1 if v in twist else 0
        for s in range(1 << len(inc[v])):
            if bin(s).count("1") % 2 == want:
                names.append((v, s))
    pos = {x: i for i, x in enumerate(names)}
    by_base = {}
    for (v, s), i in pos.items():
        by_base.setdefault(v, []).append((s, i))
    edges = []
    for u, v in g.edges:
        bu = inc[u].index(v)   # bit for uv inside u's gadget
        bv = inc[v].index(u)
        for s, i in by_base.get(u, ()):
            for t, j in by_base.get(v, ()):
                if (s >> bu) & 1 == (t >> bv) & 1:
                    edges.append((i, j))
    graph = LabelledGraph(len(names), tuple(edges), (), False, tuple(names))
    rho = tuple(v for v, _ in names)
    return CfiGraph(g, twist, graph, rho)


def cfi_pair(g):
    """(G_0, G_1) with G_1 twisted at the first vertex."""
    return cfi(g, ()).graph, cfi(g, (0,)).graph


def twist_isomorphism(g, u, v, path):
    """Isomorphism cfi(g,{u}) -> cfi(g,{v}) that toggles the path edges in
    every gadget on the path and fixes everything else.

    Returns a list mapping vertex ids of cfi(g,{u}) to vertex ids of
    cfi(g,{v})."""
    path = list(path)
    if not path or path[0] != u or path[-1] != v:
        raise GraphError("path must run from u to v")
    if len(set(path)) != len(path):
        raise GraphError("path must not repeat vertices")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b) or a == b:
            raise GraphError(f"{a}-{b} is not an edge")
    src, dst = cfi(g, (u,)), cfi(g, (v,))
    toggle = {w: 0 for w in path}
    for a, b in zip(path, path[1:]):
        toggle[a] |= 1 << incident(g, a).index(b)
        toggle[b] |= 1 << incident(g, b).index(a)
    where = {x: i for i, x in enumerate(dst.graph.names)}
    return [where[(w, s ^ toggle.get(w, 0))] for w, s in src.graph.names]


def _bfs_path(g, a, b):
    prev = {a: None}
    todo = [a]
    for x in todo:
        if x == b:
            break
        for y in g.neighbours(x):
            if y not in prev:
                prev[y] = x
                todo.append(y)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def cfi_isomorphism(g, u_set, v_set):
    """Isomorphism cfi(g, U) -> cfi(g, V) when |U| and |V| have the same
    parity, else None.  The vertices of U ^ V are paired up and the edge
    bits along a path between each pair are toggled; toggles compose by
    xor, so every gadget ends up flipped an odd number of times exactly
    when its vertex lies in U ^ V."""
    u_set, v_set = frozenset(u_set), frozenset(v_set)
    diff = sorted(u_set ^ v_set)
    if len(diff) % 2:
        return None
    src, dst = cfi(g, u_set), cfi(g, v_set)
    toggle = [0] * g.n
    for a, b in zip(diff[::2], diff[1::2]):
        p = _bfs_path(g, a, b)
        for x, y in zip(p, p[1:]):
            toggle[x] ^= 1 << incident(g, x).index(y)
            toggle[y] ^= 1 << incident(g, y).index(x)
    where = {x: i for i, x in enumerate(dst.graph.names)}
    return [where[(w, s ^ toggle[w])] for w, s in src.graph.names]
