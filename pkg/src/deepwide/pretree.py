"""Pre-tree-decompositions, strategy trees and the exactification that
turns a (possibly non-monotone) strategy tree into an exact one.

A pre-tree-decomposition of a graph H (usually G°, every vertex looped)
is a rooted tree with a bag of vertices at every node and a cone of edges
on every directed tree edge.  Edges of H are handled as bit positions in
``H.edges``; the public dataclass stores cones as frozensets of edges.
"""
from dataclasses import dataclass, field

from . import tree as T
from .decomp import TreeDecomposition, Violation, tighten, validate_td
from .game import Arena, CopStrategy, Solver, _fs
from .graph import (LabelledGraph, bits, components, from_edges,
                    mask_of, with_loops)


class PreTreeError(ValueError):
    pass


def looped(g):
    """g° for a loopless g; a graph with every loop already present is kept."""
    if g.has_loops():
        if any(not (g.adj[v] >> v) & 1 for v in range(g.n)):
            raise PreTreeError("graph has some but not all self-loops")
        return g
    return with_loops(g)


# ---------------------------------------------------------------------------
# edge sets as bitmasks

class EdgeIndex:
    """Bit positions of the edges of a graph and their incidences."""

    def __init__(self, g):
        self.g = g
        self.edges = g.edges
        self.pos = {e: i for i, e in enumerate(g.edges)}
        self.full = (1 << len(g.edges)) - 1
        self.inc = [0] * g.n
        for i, (u, v) in enumerate(g.edges):
            self.inc[u] |= 1 << i
            self.inc[v] |= 1 << i

    def mask(self, es):
        m = 0
        for u, v in es:
            e = (u, v) if u <= v else (v, u)
            if e not in self.pos:
                raise PreTreeError(f"{e} is not an edge")
            m |= 1 << self.pos[e]
        return m

    def edge_set(self, m):
        return frozenset(self.edges[i] for i in bits(m))

    def ends(self, m):
        out = 0
        for i in bits(m):
            u, v = self.edges[i]
            out |= (1 << u) | (1 << v)
        return out

    def boundary(self, parts):
        """Delta of an ordered partition: vertices meeting two or more parts."""
        out = 0
        for v in range(self.g.n):
            hit = 0
            for p in parts:
                if self.inc[v] & p:
                    hit += 1
                    if hit > 1:
                        out |= 1 << v
                        break
        return out

    def edge_boundary(self, X):
        """Delta(X): vertices incident to X and to its complement."""
        return self.boundary((X, self.full & ~X))


# ---------------------------------------------------------------------------
# ordered partitions

def is_partition(g, parts):
    seen = set()
    for p in parts:
        p = set(p)
        if seen & p:
            return False
        seen |= p
    return seen == set(g.edges)


def partition_boundary(g, parts):
    ix = EdgeIndex(g)
    return frozenset(bits(ix.boundary([ix.mask(p) for p in parts])))


def partition_width(g, parts):
    return len(partition_boundary(g, parts))


def f_extension(parts, i, F):
    """pi_{X_i -> F}: add F to part i and remove it from every other part."""
    F = frozenset(F)
    return tuple((frozenset(p) | F) if j == i else (frozenset(p) - F)
                 for j, p in enumerate(parts))


# ---------------------------------------------------------------------------
# the decomposition

@dataclass
class PreTreeDecomposition:
    parent: tuple
    bags: tuple                 # frozensets of vertices
    cones: dict                 # (s, t) -> frozenset of edges, both directions
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.parent = tuple(self.parent)
        self.bags = tuple(frozenset(b) for b in self.bags)
        self.cones = {k: frozenset(v) for k, v in self.cones.items()}

    @property
    def root(self):
        return T.find_root(self.parent)

    def __len__(self):
        return len(self.parent)

    def children(self):
        return T.children_lists(self.parent)

    def neighbours(self, t):
        out = list(self.children()[t])
        if self.parent[t] >= 0:
            out.append(self.parent[t])
        return out

    def node_partition(self, t, edges):
        """pi_t as a tuple of edge sets: cones to the children, then the cone
        to the parent.  A leaf gets its cone and the complement."""
        p = self.parent[t]
        ch = self.children()[t]
        if not ch and p >= 0:
            c = self.cones[(t, p)]
            return (c, frozenset(edges) - c)
        parts = [self.cones[(t, c)] for c in ch]
        if p >= 0:
            parts.append(self.cones[(t, p)])
        return tuple(parts)

    def to_json(self):
        return {"parent": list(self.parent),
                "bags": [sorted(b) for b in self.bags],
                "cones": {f"{s}->{t}": [list(e) for e in sorted(c)]
                          for (s, t), c in sorted(self.cones.items())}}

    @classmethod
    def from_json(cls, data):
        cones = {}
        for key, es in data["cones"].items():
            s, t = key.split("->")
            cones[(int(s), int(t))] = frozenset(tuple(sorted(e)) for e in es)
        return cls(data["parent"], [frozenset(b) for b in data["bags"]], cones)


def ptd_width(ptd):
    return max((len(b) for b in ptd.bags), default=0) - 1


def ptd_depth(ptd):
    """max over t of the sum of |beta(s) - beta(parent s)| on the root path."""
    r = ptd.root
    ch = ptd.children()
    best = 0
    stack = [(r, 0)]
    while stack:
        t, acc = stack.pop()
        best = max(best, acc)
        for c in ch[t]:
            stack.append((c, acc + len(ptd.bags[c] - ptd.bags[t])))
    return best


def _masks(ptd, ix):
    return {k: ix.mask(v) for k, v in ptd.cones.items()}


def _pi(t, parent, ch, cone, full):
    p = parent[t]
    if not ch[t] and p >= 0:
        return (cone[(t, p)], full & ~cone[(t, p)])
    parts = [cone[(t, c)] for c in ch[t]]
    if p >= 0:
        parts.append(cone[(t, p)])
    return parts


def validate_ptd(g, ptd):
    """None if ptd is a pre-tree-decomposition of g, else a Violation."""
    try:
        T.check_tree(ptd.parent)
    except ValueError as e:
        return Violation("tree", None, str(e))
    ix = EdgeIndex(g)
    parent = ptd.parent
    ch = ptd.children()
    r = ptd.root
    for t, b in enumerate(ptd.bags):
        if any(not 0 <= v < g.n for v in b):
            return Violation("bags", t, f"bag {t} holds an unknown vertex")
    for t, p in enumerate(parent):
        if p < 0:
            continue
        for key in ((p, t), (t, p)):
            if key not in ptd.cones:
                return Violation("cones", key, f"cone {key} is missing")
            if not ptd.cones[key] <= g.edge_set:
                return Violation("cones", key, f"cone {key} holds a non-edge")
    cone = _masks(ptd, ix)
    # PD.1
    if ptd.bags[r]:
        return Violation("PD.1", r, "root bag is not empty")
    root_cones = {cone[(r, c)] for c in ch[r]}
    for comp in components(g):
        E_C = ix.mask(e for e in g.edges if e[0] in comp)
        if E_C not in root_cones:
            return Violation("PD.1", sorted(comp), f"no root child carries the edges of component {sorted(comp)}")
    # PD.2
    for t in range(len(parent)):
        if parent[t] >= 0 and not ch[t] and bin(cone[(parent[t], t)]).count("1") > 1:
            return Violation("PD.2", t, f"leaf {t} has a cone with more than one edge")
    # PD.3
    for t in range(len(parent)):
        parts = _pi(t, parent, ch, cone, ix.full)
        acc = 0
        for p in parts:
            if acc & p:
                return Violation("PD.3", t, f"cones at node {t} overlap")
            acc |= p
        if acc != ix.full:
            return Violation("PD.3", t, f"cones at node {t} miss some edges")
        d = ix.boundary(parts)
        if d & ~mask_of(ptd.bags[t]):
            return Violation("PD.3", t, f"boundary at node {t} is not inside its bag")
    # PD.4
    for t, p in enumerate(parent):
        if p >= 0 and cone[(p, t)] & cone[(t, p)]:
            return Violation("PD.4", (p, t), f"cones on edge {p}-{t} overlap")
    return None


def is_exact_edge(g, ptd, s, t):
    return ptd.cones[(s, t)] | ptd.cones[(t, s)] == g.edge_set


def is_exact(g, ptd):
    ix = EdgeIndex(g)
    cone = _masks(ptd, ix)
    ch = ptd.children()
    for t, p in enumerate(ptd.parent):
        if p >= 0 and cone[(p, t)] | cone[(t, p)] != ix.full:
            return False
    for t in range(len(ptd.parent)):
        d = ix.boundary(_pi(t, ptd.parent, ch, cone, ix.full))
        if d != mask_of(ptd.bags[t]):
            return False
    return True


def with_boundary_bags(g, ptd):
    """The same tree and cones with every bag replaced by Delta(pi_t)."""
    ix = EdgeIndex(g)
    cone = _masks(ptd, ix)
    ch = ptd.children()
    bags = [_fs(ix.boundary(_pi(t, ptd.parent, ch, cone, ix.full)))
            for t in range(len(ptd.parent))]
    return PreTreeDecomposition(ptd.parent, bags, ptd.cones)


# ---------------------------------------------------------------------------
# strategy trees

def strategy_tree(g, strategy, max_nodes=200000):
    """Strategy tree of a positional cop strategy for the edge game.

    g is the board (G° when the strategy is for eCR on G°).  Each inner
    node below the root holds a cop position; its children are the places
    the robber can run to during the move into it: one leaf per caught edge
    and one child per escape space.  info["branching"] lists the nodes whose
    new cop lands inside the robber's escape space."""
    if strategy.board in ("G°", "Go"):
        g = looped(g)
    a = Arena(g, True)
    ix = EdgeIndex(g)
    moves = {(mask_of(X), mask_of(C)): mask_of(Y) for (X, C), Y in strategy.moves.items()}
    parent, bags, comp = [-1], [0], [None]
    cone = {}
    branching = []
    pos_of = {}

    def new(p, bag, C, c_mask):
        if len(parent) >= max_nodes:
            raise PreTreeError("strategy tree is too large")
        parent.append(p)
        bags.append(bag)
        comp.append(C)
        t = len(parent) - 1
        cone[(p, t)] = c_mask
        return t

    todo = []
    for C in components(g):
        Cm = mask_of(C)
        t = new(0, None, Cm, a.inc(Cm))
        if a.inc(Cm):
            todo.append(t)
        else:
            bags[t] = 0

    while todo:
        t = todo.pop()
        s = parent[t]
        X, C = bags[s], comp[t]
        key = (X, C)
        Xn = moves.get(key)
        if Xn is None:
            raise PreTreeError(f"strategy undefined at cops {sorted(bits(X))}, robber {sorted(bits(C))}")
        if bin(Xn & ~X).count("1") > 1:
            raise PreTreeError("strategy places more than one cop in a move")
        # a position repeated on a root path means the robber is never caught
        chain = set()
        u = s
        while u > 0:
            chain.add((bags[parent[u]], comp[u]))
            u = parent[u]
        if key in chain:
            raise PreTreeError("strategy revisits a position; it does not win")
        bags[t] = Xn
        if Xn & ~X & C:
            branching.append(t)
        R = a.region(X & Xn, C)
        reach = a.inc(R)
        kids = []
        for i in bits(reach):
            uu, vv = ix.edges[i]
            if (Xn >> uu) & 1 and (Xn >> vv) & 1:
                kids.append((1 << i, None))
        for c in a.robber_comps(Xn, within=R):
            kids.append((a.inc(c), c))
        kids.sort(key=lambda kc: (kc[0] & -kc[0]).bit_length())
        union = 0
        for cm, c in kids:
            union |= cm
            if c is None:
                leaf = new(t, ix.ends(cm), None, cm)
                cone[(leaf, t)] = ix.full & ~cm
            else:
                todo.append(new(t, None, c, cm))
        cone[(t, s)] = ix.full & ~union
        pos_of[t] = (X, C)
    # children of the root: the cone back is everything outside the component
    for t, p in enumerate(parent):
        if p == 0 and (t, 0) not in cone:
            cone[(t, 0)] = ix.full & ~cone[(0, t)]
    # renumber in BFS order so node ids read top-down
    order = T.bfs_order(parent, 0, key=lambda v: (cone[(parent[v], v)] & -cone[(parent[v], v)]).bit_length())
    ren = {old: new_id for new_id, old in enumerate(order)}
    P = [-1] * len(order)
    B = [None] * len(order)
    for old, nid in ren.items():
        P[nid] = ren[parent[old]] if parent[old] >= 0 else -1
        B[nid] = _fs(bags[old])
    cones = {(ren[s], ren[t]): ix.edge_set(m) for (s, t), m in cone.items()}
    info = {"branching": sorted(ren[t] for t in branching),
            "positions": {ren[t]: (_fs(X), _fs(C)) for t, (X, C) in pos_of.items()}}
    return PreTreeDecomposition(P, B, cones, info)


# ---------------------------------------------------------------------------
# exactification

def _choose(ix, parts, home, cand, options):
    """Branch and bound over the extension choices.

    parts: the partition at the node (children first, parent last);
    home[e]: part index currently holding candidate edge e;
    options[e]: child indices e may move to.  Returns the chosen targets
    (None = stay) minimising |boundary|, then the number of moved edges,
    then the choice vector in edge order."""
    n = ix.g.n
    cand_mask = 0
    for e in cand:
        cand_mask |= 1 << e
    # part counts per vertex from the edges that never move
    counts = [dict() for _ in range(n)]
    for j, p in enumerate(parts):
        fixed = p & ~cand_mask
        for v in range(n):
            if ix.inc[v] & fixed:
                counts[v][j] = counts[v].get(j, 0) + bin(ix.inc[v] & fixed).count("1")
    spread = sum(1 for v in range(n) if len(counts[v]) > 1)
    ends = [ix.edges[e] for e in cand]
    best = [None, None, None]   # boundary, moved, choice
    choice = [None] * len(cand)

    def add(v, j, d):
        nonlocal spread
        c = counts[v]
        before = len(c) > 1
        k = c.get(j, 0) + d
        if k:
            c[j] = k
        else:
            del c[j]
        after = len(c) > 1
        spread += after - before

    def place(i, j, d):
        u, v = ends[i]
        add(u, j, d)
        if v != u:
            add(v, j, d)

    def rec(i, moved):
        if best[0] is not None and (spread, moved) >= (best[0], best[1]):
            return
        if i == len(cand):
            best[0], best[1], best[2] = spread, moved, list(choice)
            return
        e = cand[i]
        for j in [None] + options[e]:
            tgt = home[e] if j is None else j
            place(i, tgt, 1)
            choice[i] = j
            rec(i + 1, moved + (j is not None))
            place(i, tgt, -1)
        choice[i] = None

    rec(0, 0)
    return best[2]


def _select(ix, child_cones, back_cones, parent_cone):
    a = len(child_cones)
    parts = list(child_cones) + ([parent_cone] if parent_cone is not None else [])
    U = [ix.full & ~(child_cones[j] | back_cones[j]) for j in range(a)]
    allu = 0
    for u in U:
        allu |= u
    cand = list(bits(allu))
    if not cand:
        return [0] * a, U
    home = {}
    for e in cand:
        for j, p in enumerate(parts):
            if (p >> e) & 1:
                home[e] = j
                break
        else:
            raise PreTreeError("node partition does not cover every edge")
    options = {e: [j for j in range(a) if (U[j] >> e) & 1] for e in cand}
    ch = _choose(ix, parts, home, cand, options)
    F = [0] * a
    for e, j in zip(cand, ch):
        if j is not None:
            F[j] |= 1 << e
    return F, U


def select_extensions(g, ptd, s):
    """The extension sets F_1..F_a for the children of node s (in child
    order), computed from the current cones of ptd."""
    ix = EdgeIndex(g)
    cone = _masks(ptd, ix)
    ch = ptd.children()[s]
    p = ptd.parent[s]
    F, _ = _select(ix, [cone[(s, c)] for c in ch], [cone[(c, s)] for c in ch],
                   cone[(s, p)] if p >= 0 else None)
    return [ix.edge_set(f) for f in F]


def _child_key(cone, parent):
    def key(v):
        m = cone[(parent[v], v)]
        return ((m & -m).bit_length() if m else 1 << 30, v)
    return key


def exactify(g, ptd, audit=False, check=False):
    """Make every tree edge exact, node by node in breadth-first order.

    At each node the unassigned edges of each child edge may be pulled into
    that child's cone; the choice minimises the boundary of the node's new
    partition, then the number of moved edges.  The change is pushed
    through the part of the tree handled so far.  Returns the exact
    decomposition; with audit=True also a list of per-step records.
    check=True asserts that cones of unprocessed parent edges only shrink."""
    bad = validate_ptd(g, ptd)
    if bad is not None:
        raise PreTreeError(f"input is not a pre-tree-decomposition: {bad.axiom}: {bad.message}")
    ix = EdgeIndex(g)
    parent = ptd.parent
    ch0 = ptd.children()
    orig = _masks(ptd, ix)
    cone = dict(orig)
    key = _child_key(orig, parent)
    ch = [sorted(c, key=key) for c in ch0]
    r = ptd.root
    order = T.bfs_order(parent, r, key=key)
    bags = [mask_of(b) for b in ptd.bags]
    in_T = [False] * len(parent)
    members = []
    done = [False] * len(parent)
    log = []

    def join(t):
        if not in_T[t]:
            in_T[t] = True
            members.append(t)

    def refresh(t):
        bags[t] = ix.boundary(_pi(t, parent, ch, cone, ix.full))

    for i, s in enumerate(order, 1):
        join(s)
        if parent[s] >= 0:
            join(parent[s])
        kids = ch[s]
        for c in kids:
            join(c)
        done[s] = True
        if not kids:
            if audit:
                log.append({"step": i, "node": s, "leaf": True})
            continue
        p = parent[s]
        F_list, U = _select(ix, [cone[(s, c)] for c in kids], [cone[(c, s)] for c in kids],
                            cone[(s, p)] if p >= 0 else None)
        F = 0
        for f in F_list:
            F |= f
        touched = {s}
        anc = set(T.ancestors(parent, s))
        for j, c in enumerate(kids):
            Fs = (U[j] | F) & ~F_list[j]
            cone[(s, c)] = (cone[(s, c)] & ~F) | F_list[j]
            cone[(c, s)] |= Fs
            touched.add(c)
            for d in ch[c]:
                cone[(c, d)] &= ~Fs
        if F:
            kidset = set(kids)
            for q in members:
                if q == s or q in kidset:
                    continue
                for c in ch[q]:
                    if c in anc:
                        cone[(q, c)] |= F
                        cone[(c, q)] &= ~F
                    elif in_T[c]:
                        cone[(q, c)] &= ~F
                        cone[(c, q)] |= F
                    else:
                        # leaving T_i: only the cone into the unprocessed
                        # part shrinks, as for the children of the t_j
                        cone[(q, c)] &= ~F
            touched = set(members)
        for t in touched:
            if in_T[t]:
                refresh(t)
        if check:
            for t in range(len(parent)):
                q = parent[t]
                if q >= 0 and not done[q] and cone[(q, t)] & ~orig[(q, t)]:
                    raise AssertionError(f"cone {q}->{t} grew before {q} was considered")
        if audit:
            log.append({"step": i, "node": s, "leaf": False,
                        "children": list(kids),
                        "unassigned": [sorted(ix.edge_set(u)) for u in U],
                        "F": [sorted(ix.edge_set(f)) for f in F_list],
                        "boundary": sorted(bits(bags[s])),
                        "bags": [sorted(bits(b)) for b in bags],
                        "cones": {f"{a}->{b}": sorted(ix.edge_set(m)) for (a, b), m in cone.items()}})
    out = PreTreeDecomposition(parent, [_fs(b) for b in bags],
                               {k: ix.edge_set(m) for k, m in cone.items()})
    return (out, log) if audit else out


# ---------------------------------------------------------------------------
# exact pre-tree-decompositions <-> tree-decompositions

def _base(g):
    """The loopless graph and its looped version."""
    if g.has_loops():
        h = looped(g)
        base = LabelledGraph(g.n, tuple(e for e in g.edges if e[0] != e[1]), g.labels, False, g.names)
        return base, h
    return g, with_loops(g)


def exact_ptd_to_td(g, ptd):
    """Tree-decomposition of G from an exact pre-tree-decomposition of G°.
    Bags are kept, except that a leaf carrying the loop vv gets {v}; this
    only matters for isolated v, which no boundary ever contains."""
    G, H = _base(g)
    if not is_exact(H, ptd):
        raise PreTreeError("pre-tree-decomposition is not exact")
    ch = ptd.children()
    bags = list(ptd.bags)
    for t, p in enumerate(ptd.parent):
        if p >= 0 and not ch[t]:
            c = ptd.cones[(p, t)]
            if len(c) == 1:
                (u, v), = c
                if u == v:
                    bags[t] = frozenset([v])
    td = TreeDecomposition(ptd.parent, bags)
    bad = validate_td(G, td)
    if bad is not None:
        raise PreTreeError(f"derived tree-decomposition is invalid: {bad.axiom}: {bad.message}")
    return td


def td_to_exact_ptd(g, td):
    """Exact pre-tree-decomposition of G° from a tree-decomposition of G:
    one copy of the part of the tree meeting each component, plus a leaf
    for every loop and every edge."""
    G, H = _base(g)
    bad = validate_td(G, td)
    if bad is not None:
        raise PreTreeError(f"invalid tree-decomposition: {bad.axiom}: {bad.message}")
    td = tighten(td, G)
    ix = EdgeIndex(H)
    order = T.bfs_order(td.parent)
    parent, kind = [-1], [None]
    leaf_edge = {}

    def add(p, what):
        parent.append(p)
        kind.append(what)
        return len(parent) - 1

    root_children = []
    for comp in sorted(components(G), key=min):
        comp = set(comp)
        if len(comp) == 1:
            v = next(iter(comp))
            t = add(0, None)
            leaf_edge[t] = ix.pos[(v, v)]
            root_children.append(t)
            continue
        meet = [t for t in order if td.bags[t] & comp]
        inside = set(meet)
        copy = {}
        for t in meet:      # BFS order: parents come first
            p = td.parent[t]
            copy[t] = add(copy[p] if p in inside else 0, t)
            if p not in inside:
                root_children.append(copy[t])
        for v in sorted(comp):
            home = next(t for t in meet if v in td.bags[t])
            leaf_edge[add(copy[home], None)] = ix.pos[(v, v)]
        for u, v in G.edges:
            if u in comp:
                home = next(t for t in meet if u in td.bags[t] and v in td.bags[t])
                leaf_edge[add(copy[home], None)] = ix.pos[(u, v)]
    ch = T.children_lists(parent)
    below = [0] * len(parent)
    for t in reversed(T.bfs_order(parent, 0)):
        if t in leaf_edge:
            below[t] = 1 << leaf_edge[t]
        for c in ch[t]:
            below[t] |= below[c]
    cone = {}
    for t in range(1, len(parent)):
        cone[(parent[t], t)] = below[t]
        cone[(t, parent[t])] = ix.full & ~below[t]
    bags = [_fs(ix.boundary(_pi(t, parent, ch, cone, ix.full))) for t in range(len(parent))]
    return PreTreeDecomposition(parent, bags, {k: ix.edge_set(m) for k, m in cone.items()})


def cop_win_to_td(g, k, q, audit=False):
    """Tree-decomposition of width <= k-1 and depth <= q built from a
    winning cop strategy: solve the edge game on G°, take its strategy
    tree, make it exact and read off the bags."""
    if g.has_loops():
        raise PreTreeError("cop_win_to_td needs a loopless graph")
    if g.n == 0:
        return TreeDecomposition([-1], [frozenset()])
    solver = Solver(g, k, "eCR", "G°")
    v = solver.value(q)
    if v is None:
        raise PreTreeError(f"Cop does not win with {k} cops within {q} rounds")
    sigma = solver.strategy(v)
    H = with_loops(g)
    st = strategy_tree(H, sigma)
    res = exactify(H, st, audit=audit)
    ex, log = res if audit else (res, None)
    td = exact_ptd_to_td(H, ex)
    if audit:
        return td, {"strategy_tree": st, "exact": ex, "log": log}
    return td


# ---------------------------------------------------------------------------
# the worked example: a 2 x 5 grid with its middle column contracted

CONTRACTED_GRID_NAMES = ("(1,1)", "(2,1)", "(1,2)", "(2,2)", "3",
                         "(1,4)", "(2,4)", "(1,5)", "(2,5)")


def contracted_grid():
    a1, b1, a2, b2, m, a4, b4, a5, b5 = range(9)
    es = [(a1, b1), (a1, a2), (b1, b2), (a2, b2), (a2, m), (b2, m),
          (m, a4), (m, b4), (a4, b4), (a4, a5), (b4, b5), (a5, b5)]
    return from_edges(9, es, names=CONTRACTED_GRID_NAMES)


def contracted_grid_strategy():
    """Five cops, nine rounds, not monotone: after walling off the left
    part the cops leave the middle and approach from the far side."""
    a1, b1, a2, b2, m, a4, b4, a5, b5 = range(9)
    allv = set(range(9))
    table = [
        ((), allv, {a2}),
        ({a2}, allv - {a2}, {a2, a4}),
        ({a2, a4}, allv - {a2, a4}, {a2, a4, b2}),
        ({a2, b2, a4}, {a1, b1}, {a2, b2, a4, b4}),
        ({a2, b2, a4}, {m, b4, a5, b5}, {a2, b2, a4, b4}),
        ({a2, b2, a4, b4}, {a1, b1}, {a4, b4, a1}),
        ({a4, b4, a1}, {b1, a2, b2, m}, {a4, b4, a1, b1}),
        ({a4, b4, a1, b1}, {a2, b2, m}, {a1, b1, a4, b4, m}),
        ({a1, b1, a4, b4, m}, {a2, b2}, {a1, b1, a2, a4, m}),
        ({a1, b1, a2, a4, m}, {b2}, {a1, b1, a2, b2, m}),
        ({a2, b2, a4, b4}, {m}, {a2, b2, m}),
        ({a2, b2, a4, b4}, {a5, b5}, {a2, b2, a5}),
        ({a2, b2, m}, {a4, b4, a5, b5}, {a4, m}),
        ({a4, m}, {b4, a5, b5}, {a4, b4, m}),
        ({a4, b4, m}, {a5, b5}, {a4, b4, a5}),
        ({a4, b4, a5}, {b5}, {b4, a5, b5}),
        ({a2, b2, a5}, {m, a4, b4, b5}, {a2, b2, a5, b5}),
        ({a2, b2, a5, b5}, {m, a4, b4}, {a5, b5, a2, b2, m}),
        ({a5, b5, a2, b2, m}, {a4, b4}, {a5, b5, a4, a2, m}),
        ({a5, b5, a4, a2, m}, {b4}, {a5, b5, a4, b4, m}),
    ]
    moves = {(frozenset(X), frozenset(C)): frozenset(Y) for X, C, Y in table}
    return CopStrategy(moves, 5, "eCR", "G°", 9)
