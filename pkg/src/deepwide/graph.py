"""Labelled graphs: the value type every other module works on.

Vertices are dense ints 0..n-1.  Edges are sorted pairs (u, v) with u <= v;
a pair (v, v) is a self-loop and is only allowed when ``loops`` is set.
Labels are a function from label index to vertex (one vertex may carry
several labels).
"""
from dataclasses import dataclass, field
from functools import cached_property


class GraphError(ValueError):
    pass


def _norm_edge(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class LabelledGraph:
    n: int
    edges: tuple = ()
    labels: tuple = ()          # sorted (label, vertex) pairs
    loops: bool = False
    names: tuple = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        es = set()
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if u == v and not self.loops:
                raise GraphError(f"self-loop at {u} but loops are not allowed")
            es.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", tuple(sorted(es)))
        lab = dict(self.labels)
        if len(lab) != len(self.labels):
            raise GraphError("a label index is assigned twice")
        for l, v in lab.items():
            if l < 1:
                raise GraphError(f"label index {l} must be >= 1")
            if not 0 <= v < self.n:
                raise GraphError(f"label {l} points at unknown vertex {v}")
        object.__setattr__(self, "labels", tuple(sorted(lab.items())))
        if self.names is not None and len(self.names) != self.n:
            raise GraphError("names must have one entry per vertex")

    # -- basic accessors -------------------------------------------------
    @cached_property
    def adj(self):
        """Neighbour bitmask per vertex (a loop sets the vertex's own bit)."""
        a = [0] * self.n
        for u, v in self.edges:
            a[u] |= 1 << v
            a[v] |= 1 << u
        return tuple(a)

    @cached_property
    def label_map(self):
        return dict(self.labels)

    @cached_property
    def edge_set(self):
        return frozenset(self.edges)

    @property
    def vertices(self):
        return range(self.n)

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return (self.adj[u] >> v) & 1 == 1

    def neighbours(self, v):
        return [u for u in range(self.n) if (self.adj[v] >> u) & 1 and u != v]

    def degree(self, v):
        return len(self.neighbours(v))

    def has_loops(self):
        return any(u == v for u, v in self.edges)

    def labelled_vertices(self):
        return frozenset(self.label_map.values())

    def fully_labelled(self):
        return len(self.labelled_vertices()) == self.n

    def name(self, v):
        return self.names[v] if self.names is not None else v

    def index_of(self, name):
        if self.names is None:
            return name
        return self.names.index(name)

    def __repr__(self):
        extra = ", loops" if self.loops else ""
        lab = f", labels={dict(self.labels)}" if self.labels else ""
        return f"LabelledGraph(n={self.n}, m={self.m}{lab}{extra})"

    def unlabelled(self):
        return LabelledGraph(self.n, self.edges, (), self.loops, self.names)


# -- construction helpers -------------------------------------------------

def empty_graph(n=0, loops=False):
    return LabelledGraph(n, (), (), loops)


def from_edges(n, edges, labels=None, loops=None, names=None):
    edges = list(edges)
    if loops is None:
        loops = any(u == v for u, v in edges)
    lab = tuple(sorted((labels or {}).items()))
    return LabelledGraph(n, tuple(edges), lab, loops, tuple(names) if names else None)


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(h, l):
    """h x l grid.  Vertex (i, j), 1-indexed, gets id (i-1)*l + (j-1)."""
    if h < 1 or l < 1:
        raise GraphError("grid dimensions must be positive")
    vid = lambda i, j: (i - 1) * l + (j - 1)
    es = []
    for i in range(1, h + 1):
        for j in range(1, l + 1):
            if j < l:
                es.append((vid(i, j), vid(i, j + 1)))
            if i < h:
                es.append((vid(i, j), vid(i + 1, j)))
    names = [(i, j) for i in range(1, h + 1) for j in range(1, l + 1)]
    return from_edges(h * l, es, names=names, loops=False)


def disjoint_union(g, h):
    """Plain disjoint union; labels of h are dropped if they clash."""
    off = g.n
    es = list(g.edges) + [(u + off, v + off) for u, v in h.edges]
    lab = dict(g.label_map)
    for l, v in h.labels:
        lab.setdefault(l, v + off)
    return LabelledGraph(g.n + h.n, tuple(es), tuple(lab.items()), g.loops or h.loops)


# -- labels -----------------------------------------------------------------

def set_label(g, l, v):
    if not 0 <= v < g.n:
        raise GraphError(f"unknown vertex {v}")
    if l < 1:
        raise GraphError(f"label index {l} out of range")
    lab = dict(g.label_map)
    lab[l] = v
    return LabelledGraph(g.n, g.edges, tuple(lab.items()), g.loops, g.names)


def remove_label(g, l):
    if l < 1:
        raise GraphError(f"label index {l} out of range")
    if l not in g.label_map:
        return g
    lab = dict(g.label_map)
    del lab[l]
    return LabelledGraph(g.n, g.edges, tuple(lab.items()), g.loops, g.names)


def with_loops(g):
    """G° : add a self-loop at every vertex."""
    if g.has_loops():
        raise GraphError("input already has self-loops")
    es = list(g.edges) + [(v, v) for v in range(g.n)]
    return LabelledGraph(g.n, tuple(es), g.labels, True, g.names)


def without_loops(g):
    es = [(u, v) for u, v in g.edges if u != v]
    return LabelledGraph(g.n, tuple(es), g.labels, False, g.names)


# -- product ----------------------------------------------------------------

class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.p[b] = a


def product_many_with_maps(graphs):
    """Product of several labelled graphs.

    Returns (result, maps) where maps[i][v] is the vertex of the result
    that vertex v of graphs[i] ended up as.  Maps need not be injective:
    a vertex carrying two labels in one factor pulls together the two
    vertices carrying those labels in another factor.
    """
    offs, tot = [], 0
    for g in graphs:
        offs.append(tot)
        tot += g.n
    dsu = _DSU(tot)
    owner = {}
    for g, off in zip(graphs, offs):
        for l, v in g.labels:
            if l in owner:
                dsu.union(owner[l], v + off)
            else:
                owner[l] = v + off
    roots = sorted({dsu.find(x) for x in range(tot)})
    idx = {r: i for i, r in enumerate(roots)}
    maps = []
    es = set()
    loops = False
    for g, off in zip(graphs, offs):
        mp = tuple(idx[dsu.find(v + off)] for v in range(g.n))
        maps.append(mp)
        for u, v in g.edges:
            a, b = mp[u], mp[v]
            if a == b:
                loops = True
            es.add(_norm_edge(a, b))
        loops = loops or g.loops
    lab = tuple(sorted((l, idx[dsu.find(x)]) for l, x in owner.items()))
    return LabelledGraph(len(roots), tuple(es), lab, loops), maps


def product_with_maps(f, g):
    res, maps = product_many_with_maps([f, g])
    return res, maps[0], maps[1]


def product(f, g):
    return product_many_with_maps([f, g])[0]


# -- subgraphs and minors ---------------------------------------------------

def induced_subgraph(g, verts):
    """G[U] with vertices renumbered in increasing order; labels on U kept."""
    vs = sorted(set(verts))
    pos = {v: i for i, v in enumerate(vs)}
    es = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    lab = [(l, pos[v]) for l, v in g.labels if v in pos]
    names = tuple(g.name(v) for v in vs)
    return LabelledGraph(len(vs), tuple(es), tuple(lab), g.loops, names)


def relabel_vertices(g, perm):
    """Image of g under the bijection v -> perm[v]."""
    es = [(perm[u], perm[v]) for u, v in g.edges]
    lab = [(l, perm[v]) for l, v in g.labels]
    return LabelledGraph(g.n, tuple(es), tuple(lab), g.loops)


def delete_vertex(g, v):
    if not 0 <= v < g.n:
        raise GraphError(f"unknown vertex {v}")
    keep = [u for u in range(g.n) if u != v]
    return induced_subgraph(g, keep)


def delete_edge(g, u, v):
    e = _norm_edge(u, v)
    if e not in g.edge_set:
        raise GraphError(f"no edge {e}")
    es = [x for x in g.edges if x != e]
    return LabelledGraph(g.n, tuple(es), g.labels, g.loops, g.names)


def contract_edge(g, u, v):
    """Merge v into u.  Labels are united, parallel edges suppressed, and
    the contracted edge itself disappears (no loop is created from it)."""
    e = _norm_edge(u, v)
    if e not in g.edge_set or u == v:
        raise GraphError(f"no edge {e} to contract")
    a, b = e
    mp = {}
    i = 0
    for x in range(g.n):
        if x == b:
            continue
        mp[x] = i
        i += 1
    mp[b] = mp[a]
    es = set()
    for x, y in g.edges:
        if (x, y) == e:
            continue
        es.add(_norm_edge(mp[x], mp[y]))
    lab = [(l, mp[x]) for l, x in g.labels]
    names = None
    if g.names is not None:
        names = tuple(g.names[x] for x in range(g.n) if x != b)
    return LabelledGraph(g.n - 1, tuple(es), tuple(lab), g.loops, names)


# -- connectivity (bitmask based) -------------------------------------------

def bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(verts):
    m = 0
    for v in verts:
        m |= 1 << v
    return m


def components_mask(adj, allowed):
    """Connected components (as bitmasks) of the subgraph induced by the
    vertex bitmask ``allowed``."""
    out = []
    rest = allowed
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nb = 0
            for v in bits(frontier):
                nb |= adj[v]
            nb &= allowed & ~comp
            comp |= nb
            frontier = nb
        out.append(comp)
        rest &= ~comp
    return out


def components(g, verts=None):
    allowed = (1 << g.n) - 1 if verts is None else mask_of(verts)
    return [sorted(bits(c)) for c in components_mask(g.adj, allowed)]


def is_connected(g):
    return g.n <= 1 or len(components_mask(g.adj, (1 << g.n) - 1)) == 1


def neighbourhood_mask(adj, mask):
    nb = 0
    for v in bits(mask):
        nb |= adj[v]
    return nb & ~mask


# -- text I/O ----------------------------------------------------------------

def to_text(g):
    head = f"{g.n} {g.m}" + (" loops" if g.loops else "")
    lines = [head] + [f"{u} {v}" for u, v in g.edges]
    lines += [f"label {l} {v}" for l, v in g.labels]
    return "\n".join(lines) + "\n"


def parse_text(text):
    rows = [ln.split("#")[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise GraphError("empty graph file")
    head = rows[0].split()
    try:
        n, m = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise GraphError(f"bad header line: {rows[0]!r}") from None
    loops = len(head) > 2 and head[2] == "loops"
    edges, lab = [], {}
    body = rows[1:]
    if len(body) < m:
        raise GraphError(f"header promises {m} edges, found {len(body)} lines")
    for r in body[:m]:
        parts = r.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {r!r}")
        edges.append((int(parts[0]), int(parts[1])))
    for r in body[m:]:
        parts = r.split()
        if len(parts) != 3 or parts[0] != "label":
            raise GraphError(f"bad label line: {r!r}")
        lab[int(parts[1])] = int(parts[2])
    return LabelledGraph(n, tuple(edges), tuple(lab.items()), loops)


def read_graph(path):
    with open(path) as fh:
        return parse_text(fh.read())


def write_graph(g, path):
    with open(path, "w") as fh:
        fh.write(to_text(g))


def to_dot(g, name="G"):
    out = [f"graph {name} {{"]
    inv = {}
    for l, v in g.labels:
        inv.setdefault(v, []).append(l)
    for v in range(g.n):
        lab = str(g.name(v))
        if v in inv:
            lab += " [" + ",".join(map(str, inv[v])) + "]"
        out.append(f'  {v} [label="{lab}"];')
    for u, v in g.edges:
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
