"""Small-scale isomorphism and canonical forms.

Colour refinement followed by individualisation/backtracking.  Labels
and self-loops are part of the initial colouring, so labelled graphs are
compared label-preservingly.
"""
from .graph import GraphError, bits, relabel_vertices

DEFAULT_CAP = 16


def _check_cap(g, cap):
    if g.n > cap:
        raise GraphError(f"graph has {g.n} vertices, above the isomorphism cap {cap}")


def _initial_colours(graphs):
    sigs = []
    for g in graphs:
        inv = {}
        for l, v in g.labels:
            inv.setdefault(v, []).append(l)
        for v in range(g.n):
            sigs.append((tuple(sorted(inv.get(v, ()))), (g.adj[v] >> v) & 1))
    return _rank(sigs)


def _rank(sigs):
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(adjs, offs, colours):
    """Refine a colouring of the disjoint union of graphs until stable."""
    ncls = len(set(colours))
    while True:
        sigs = []
        for adj, off in zip(adjs, offs):
            for v in range(len(adj)):
                nbc = sorted(colours[off + u] for u in bits(adj[v] & ~(1 << v)))
                sigs.append((colours[off + v], tuple(nbc)))
        new = _rank(sigs)
        k = len(set(new))
        colours = new
        if k == ncls:
            return colours
        ncls = k


def _individualise(colours, idxs):
    sigs = [(c, 0 if i in idxs else 1) for i, c in enumerate(colours)]
    return _rank(sigs)


def _orbit_rep(gens, prefix, n):
    """Union-find over vertices using the automorphisms that fix prefix."""
    par = list(range(n))

    def find(x):
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    for p in gens:
        if all(p[x] == x for x in prefix):
            for x in range(n):
                a, b = find(x), find(p[x])
                if a != b:
                    par[max(a, b)] = min(a, b)
    return find


class _Canon:
    """Individualisation/refinement search keeping the least certificate;
    automorphisms found along the way prune equivalent branches."""

    def __init__(self, g):
        self.g = g
        self.best = None
        self.best_perm = None
        self.gens = []
        self.seen = set()

    def run(self):
        g = self.g
        if g.n == 0:
            return (0, (), ()), []
        colours = _initial_colours([g])
        self._seed_twins(colours)
        self._visit(colours, [])
        return self.best, self.best_perm

    def _seed_twins(self, colours):
        """Swapping two twins (same colour, same neighbours apart from each
        other) is an automorphism; seeding these prunes stars and other
        highly symmetric graphs before the search starts."""
        g = self.g
        for closed in (False, True):
            classes = {}
            for v in range(g.n):
                nb = g.adj[v] | (1 << v) if closed else g.adj[v] & ~(1 << v)
                classes.setdefault((colours[v], nb), []).append(v)
            for vs in classes.values():
                for a, b in zip(vs, vs[1:]):
                    if closed or not g.adj[a] >> b & 1:
                        auto = list(range(g.n))
                        auto[a], auto[b] = b, a
                        self._add_gen(tuple(auto))

    def _add_gen(self, auto):
        if auto not in self.seen:
            self.seen.add(auto)
            self.gens.append(auto)

    def _visit(self, colours, prefix):
        g = self.g
        colours = _refine([g.adj], [0], colours)
        if len(set(colours)) == g.n:
            cert = _certificate(g, colours)
            if self.best is None or cert < self.best:
                self.best, self.best_perm = cert, colours
            elif cert == self.best:
                inv = [0] * g.n
                for v, c in enumerate(self.best_perm):
                    inv[c] = v
                auto = tuple(inv[colours[v]] for v in range(g.n))
                if any(auto[v] != v for v in range(g.n)):
                    self._add_gen(auto)
            return
        cells = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        cell = min((c for c in cells.values() if len(c) > 1), key=lambda c: (len(c), colours[c[0]]))
        done = []
        find, known = None, -1
        for v in cell:
            if done:
                if known != len(self.gens):
                    find, known = _orbit_rep(self.gens, prefix, g.n), len(self.gens)
                if any(find(v) == find(u) for u in done):
                    continue
            self._visit(_individualise(colours, {v}), prefix + [v])
            done.append(v)


def _certificate(g, colours):
    perm = colours  # discrete colouring is a permutation of 0..n-1
    h = relabel_vertices(g, perm)
    return (h.n, h.edges, h.labels)


def canonical_labelling(g, cap=DEFAULT_CAP):
    """(certificate, perm) where perm[v] is v's position in canonical order."""
    _check_cap(g, cap)
    return _Canon(g).run()


def canonical_form(g, cap=DEFAULT_CAP):
    """A string key with equal keys exactly for isomorphic graphs."""
    (n, edges, labels), _ = canonical_labelling(g, cap)
    s = f"{n}:" + ",".join(f"{u}-{v}" for u, v in edges)
    if labels:
        s += "|" + ",".join(f"{l}@{v}" for l, v in labels)
    return s


def canonical_graph(g, cap=DEFAULT_CAP):
    _, perm = canonical_labelling(g, cap)
    return relabel_vertices(g, perm) if g.n else g


def isomorphic(g, h, cap=DEFAULT_CAP):
    """Return a bijection (list: g-vertex -> h-vertex) or None."""
    _check_cap(g, cap)
    _check_cap(h, cap)
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(l for l, _ in g.labels) != sorted(l for l, _ in h.labels):
        return None
    # cheap refinement check before the canonical search
    colours = _refine([g.adj, h.adj], [0, g.n], _initial_colours([g, h]))
    if not _balanced(colours, g.n):
        return None
    cg, pg = canonical_labelling(g, cap)
    ch, ph = canonical_labelling(h, cap)
    if cg != ch:
        return None
    inv = [0] * h.n
    for w, c in enumerate(ph):
        inv[c] = w
    f = [inv[pg[v]] for v in range(g.n)]
    assert is_isomorphism(g, h, f)
    return f


def _balanced(colours, n):
    a, b = {}, {}
    for c in colours[:n]:
        a[c] = a.get(c, 0) + 1
    for c in colours[n:]:
        b[c] = b.get(c, 0) + 1
    return a == b


def is_isomorphism(g, h, f):
    if g.n != h.n or len(set(f)) != g.n:
        return False
    for u, v in g.edges:
        if not h.has_edge(f[u], f[v]):
            return False
    if g.m != h.m:
        return False
    hl = h.label_map
    return all(hl.get(l) == f[v] for l, v in g.labels) and len(g.labels) == len(h.labels)
