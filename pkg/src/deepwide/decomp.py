"""Tree-decompositions, pebble forest covers and construction trees.

Each of the three witness types has a validator that returns ``None``
when the witness is fine and a ``Violation`` naming the broken axiom
otherwise.  The conversions between them keep the (k, q) bounds.
"""
from collections import namedtuple
from dataclasses import dataclass

from . import tree as T
from .graph import (LabelledGraph, induced_subgraph, product_many_with_maps,
                    remove_label, bits)

Violation = namedtuple("Violation", "axiom witness message")


class DecompositionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tree-decompositions

@dataclass(frozen=True)
class TreeDecomposition:
    parent: tuple
    bags: tuple     # tuple of frozensets

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        if len(self.parent) != len(self.bags):
            raise DecompositionError("parent and bags differ in length")

    @property
    def root(self):
        return T.find_root(self.parent)

    def __len__(self):
        return len(self.parent)

    def children(self):
        return T.children_lists(self.parent)


def td_width(td):
    return max((len(b) for b in td.bags), default=0) - 1


def td_depth(td, root=None):
    """max over nodes t of |union of bags on the root-to-t path|."""
    parent = td.parent if root is None else T.reroot(td.parent, root)
    r = T.find_root(parent)
    ch = T.children_lists(parent)
    best = 0
    stack = [(r, td.bags[r])]
    while stack:
        t, acc = stack.pop()
        best = max(best, len(acc))
        for c in ch[t]:
            stack.append((c, acc | td.bags[c]))
    return best


def td_depth_unrooted(td):
    return min(td_depth(td, r) for r in range(len(td)))


def validate_td(g, td):
    try:
        T.check_tree(td.parent)
    except ValueError as e:
        return Violation("tree", None, str(e))
    for t, b in enumerate(td.bags):
        for v in b:
            if not 0 <= v < g.n:
                return Violation("bags", t, f"bag {t} holds unknown vertex {v}")
    seen = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in seen:
            return Violation("TD.1", v, f"vertex {v} lies in no bag")
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            return Violation("TD.1", (u, v), f"edge {u}-{v} lies in no bag")
    for v in range(g.n):
        tops = [t for t, b in enumerate(td.bags)
                if v in b and (td.parent[t] < 0 or v not in td.bags[td.parent[t]])]
        if len(tops) != 1:
            return Violation("TD.2", v, f"nodes containing {v} are not connected")
    return None


def reroot_td(td, r):
    return TreeDecomposition(T.reroot(td.parent, r), td.bags)


def meeting_subtree_connected(td, verts):
    """Nodes whose bags meet verts induce a connected subtree."""
    vs = set(verts)
    hit = [bool(vs & b) for b in td.bags]
    tops = [t for t in range(len(td)) if hit[t] and (td.parent[t] < 0 or not hit[td.parent[t]])]
    return len(tops) <= 1


def tighten(td, g):
    """Drop vertices from bags while the result stays a tree-decomposition."""
    bags = [set(b) for b in td.bags]
    changed = True
    while changed:
        changed = False
        for t in range(len(bags)):
            for v in sorted(bags[t]):
                bags[t].discard(v)
                if validate_td(g, TreeDecomposition(td.parent, bags)) is None:
                    changed = True
                else:
                    bags[t].add(v)
    return TreeDecomposition(td.parent, bags)


# ---------------------------------------------------------------------------
# nice decompositions

def node_kind(td, t, ch=None):
    ch = ch or td.children()
    kids = ch[t]
    b = td.bags[t]
    if not kids:
        return "leaf"
    if len(kids) >= 2:
        return "join" if all(td.bags[c] == b for c in kids) else None
    s = td.bags[kids[0]]
    if len(b) == len(s) + 1 and s < b:
        return "introduce"
    if len(s) == len(b) + 1 and b < s:
        return "forget"
    return None


def is_nice(td):
    ch = td.children()
    if td.bags[td.root]:
        return False
    for t in range(len(td)):
        kind = node_kind(td, t, ch)
        if kind is None:
            return False
        if kind == "leaf" and td.bags[t]:
            return False
        if kind == "join" and len(ch[t]) != 2:
            return False
    return True


def make_nice(td):
    """Equivalent nice decomposition: empty root and leaf bags, every other
    node an introduce, forget or binary join node.  Width and depth are
    unchanged (every new bag sits between two old bags on one path)."""
    ch = td.children()
    parent, bags = [], []

    def new(bag, kids=()):
        parent.append(-1)
        bags.append(frozenset(bag))
        t = len(parent) - 1
        for c in kids:
            parent[c] = t
        return t

    def chain(top_bag, low, low_bag):
        # nodes strictly between a node with bag top_bag and node low
        cur, cur_bag = low, set(low_bag)
        for v in sorted(cur_bag - top_bag):
            cur_bag.discard(v)
            if cur_bag != top_bag:
                cur = new(cur_bag, [cur])
        for v in sorted(top_bag - cur_bag):
            cur_bag.add(v)
            if cur_bag != top_bag:
                cur = new(cur_bag, [cur])
        return cur

    def build(t):
        b = td.bags[t]
        tops = []
        for c in ch[t]:
            low = build(c)
            tops.append((chain(b, low, td.bags[c]), c))
        if not tops:
            if not b:
                return new(b)
            leaf = new(frozenset())
            return new(b, [chain(b, leaf, frozenset())])
        if len(tops) == 1:
            top, c = tops[0]
            if td.bags[c] == b and bags[top] == b:
                return top
            return new(b, [top])
        heads = []
        for top, c in tops:
            heads.append(top if bags[top] == b else new(b, [top]))
        cur = heads[0]
        for h in heads[1:]:
            cur = new(b, [cur, h])
        return cur

    top = build(td.root)
    if bags[top]:
        top = new(frozenset(), [chain(frozenset(), top, bags[top])])
    return TreeDecomposition(parent, bags)


# ---------------------------------------------------------------------------
# pebble forest covers

@dataclass(frozen=True)
class PebbleForestCover:
    parent: tuple    # forest over V(G); -1 marks roots
    pebbles: tuple   # values in 1..k

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        object.__setattr__(self, "pebbles", tuple(self.pebbles))

    @property
    def k(self):
        return max(self.pebbles, default=0)


def _forest_ok(parent):
    n = len(parent)
    for v in range(n):
        x, steps = v, 0
        while parent[x] >= 0:
            x = parent[x]
            steps += 1
            if steps > n:
                return False
    return True


def pfc_depth(pfc):
    best = 0
    for v in range(len(pfc.parent)):
        best = max(best, len(T.ancestors(pfc.parent, v)))
    return best


def validate_pfc(g, pfc, k=None):
    n = g.n
    if len(pfc.parent) != n or len(pfc.pebbles) != n:
        return Violation("shape", None, "cover must assign a parent and a pebble to every vertex")
    if any(not (-1 <= p < n) for p in pfc.parent) or not _forest_ok(pfc.parent):
        return Violation("forest", None, "parent array is not a forest")
    if k is not None and any(not 1 <= p <= k for p in pfc.pebbles):
        return Violation("pebbles", None, f"pebble outside 1..{k}")
    for u, v in g.edges:
        if u == v:
            continue
        if T.is_ancestor(pfc.parent, u, v):
            top, low = u, v
        elif T.is_ancestor(pfc.parent, v, u):
            top, low = v, u
        else:
            return Violation("FC.1", (u, v), f"endpoints of {u}-{v} are incomparable")
        w = low
        while w != top:
            if pfc.pebbles[w] == pfc.pebbles[top]:
                return Violation("FC.2", (u, v, w), f"{w} reuses the pebble of {top} below edge {u}-{v}")
            w = pfc.parent[w]
    return None


def pebble_forest(g, parent):
    """Greedy pebbling of a forest cover: each vertex takes the smallest
    pebble not held by an ancestor adjacent to its subtree."""
    n = g.n
    parent = list(parent)
    ch = T.children_lists(parent)
    order = sorted(range(n), key=lambda v: len(T.ancestors(parent, v)))
    sub = [0] * n
    for v in reversed(order):
        m = 1 << v
        for c in ch[v]:
            m |= sub[c]
        sub[v] = m
    peb = [0] * n
    for v in order:
        nbhd = 0
        for x in bits(sub[v]):
            nbhd |= g.adj[x]
        used = {peb[u] for u in T.ancestors(parent, v)[1:] if (nbhd >> u) & 1}
        p = 1
        while p in used:
            p += 1
        peb[v] = p
    return PebbleForestCover(parent, peb)


def td_to_pfc(g, td, k=None):
    """Forest on the topmost nodes tau(v) of a nice decomposition."""
    nice = td if is_nice(td) else make_nice(td)
    if k is None:
        k = td_width(nice) + 1
    order = T.preorder(nice.parent)
    tau = {}
    owner = {}
    for t in order:
        for v in nice.bags[t]:
            if v not in tau:
                tau[v] = t
                owner[t] = v
    fparent = [-1] * g.n
    for v in range(g.n):
        t = nice.parent[tau[v]]
        while t >= 0 and t not in owner:
            t = nice.parent[t]
        fparent[v] = owner[t] if t >= 0 else -1
    peb = [0] * g.n
    for t in order:
        if t in owner:
            v = owner[t]
            used = {peb[u] for u in nice.bags[t] if u != v}
            free = [p for p in range(1, k + 1) if p not in used]
            if not free:
                raise DecompositionError(f"bag at node {t} needs more than {k} pebbles")
            peb[v] = free[0]
    return PebbleForestCover(fparent, peb)


def pfc_to_td(g, pfc):
    """Tree on V(G) plus a fresh root; bag of t collects the ancestors of t
    whose pebble is not reused further down towards t."""
    n = g.n
    parent = [p if p >= 0 else n for p in pfc.parent] + [-1]
    bags = []
    for t in range(n):
        chain = T.ancestors(pfc.parent, t)   # t first, root last
        bag = set()
        below = set()
        for u in chain:
            if pfc.pebbles[u] not in below:
                bag.add(u)
            below.add(pfc.pebbles[u])
        bags.append(bag)
    bags.append(set())
    return TreeDecomposition(parent, bags)


# ---------------------------------------------------------------------------
# construction trees

@dataclass
class ConstructionTree:
    parent: list
    graphs: list        # LabelledGraph per node
    embed: list         # embed[t][v] = vertex of graphs[parent[t]]; None at root
    k: int

    @property
    def root(self):
        return T.find_root(self.parent)

    def children(self):
        return T.children_lists(self.parent)

    def kind(self, t, ch=None):
        ch = ch or self.children()
        return "leaf" if not ch[t] else ("elim" if len(ch[t]) == 1 else "product")


def elimination_depth(ct):
    ch = ct.children()
    best = 0
    stack = [(ct.root, 0)]
    while stack:
        t, d = stack.pop()
        if len(ch[t]) == 1:
            d += 1
        best = max(best, d)
        for c in ch[t]:
            stack.append((c, d))
    return best


def _same_graph(a, b):
    return a.n == b.n and a.edges == b.edges and a.labels == b.labels


def _push(g, mp, n_target, loops):
    es = [(mp[u], mp[v]) for u, v in g.edges]
    lab = [(l, mp[v]) for l, v in g.labels]
    return LabelledGraph(n_target, tuple(es), tuple(lab), loops)


def validate_ct(ct, g=None, guarded=False):
    try:
        T.check_tree(ct.parent)
    except ValueError as e:
        return Violation("tree", None, str(e))
    ch = ct.children()
    root = ct.root
    if g is not None:
        top = ct.graphs[root]
        if not g.labels:
            top = top.unlabelled()
        if not _same_graph(top, g):
            from .iso import isomorphic
            if isomorphic(top, g, cap=max(16, g.n)) is None:
                return Violation("CT.1", root, "root graph differs from the target graph")
    for t, lam in enumerate(ct.graphs):
        for l, _ in lam.labels:
            if not 1 <= l <= ct.k:
                return Violation("labels", t, f"label {l} outside 1..{ct.k}")
        kids = ch[t]
        if not kids:
            if not lam.fully_labelled():
                return Violation("CT.2", t, f"leaf {t} is not fully labelled")
            continue
        if len(kids) == 1:
            s = kids[0]
            sub = ct.graphs[s]
            mp = ct.embed[s]
            if mp is None or sorted(mp) != list(range(lam.n)) or sub.n != lam.n:
                return Violation("CT.3", t, f"child of elimination node {t} must map bijectively")
            moved = _push(sub, mp, lam.n, lam.loops or sub.loops)
            gone = set(moved.label_map) - set(lam.label_map)
            if len(gone) != 1 or any(moved.label_map.get(l) != v for l, v in lam.labels):
                return Violation("CT.3", t, f"node {t} does not remove exactly one label")
            l = gone.pop()
            if moved.edges != lam.edges or not _same_graph(remove_label(moved, l), lam):
                return Violation("CT.3", t, f"node {t} is not its child minus label {l}")
            if guarded:
                v = moved.label_map[l]
                others = {x for ll, x in moved.labels if ll != l}
                if not any(lam.has_edge(v, x) for x in others if x != v):
                    return Violation("guard", t, f"label {l} removed at {t} has no labelled neighbour")
            continue
        prod, maps = product_many_with_maps([ct.graphs[s] for s in kids])
        phi = {}
        for s, mp in zip(kids, maps):
            emb = ct.embed[s]
            if emb is None or len(emb) != ct.graphs[s].n:
                return Violation("CT.4", t, f"child {s} lacks an embedding")
            for v in range(len(mp)):
                x, y = mp[v], emb[v]
                if phi.setdefault(x, y) != y:
                    return Violation("CT.4", t, f"embeddings of children of {t} disagree")
        if sorted(phi.values()) != list(range(lam.n)) or len(phi) != prod.n:
            return Violation("CT.4", t, f"node {t} is not the product of its children")
        moved = _push(prod, phi, lam.n, True)
        if moved.edges != lam.edges or moved.labels != lam.labels:
            return Violation("CT.4", t, f"node {t} is not the product of its children")
    return None


def ct_to_td(ct):
    """Bags are the labelled vertices of each node, carried up to the root."""
    root = ct.root
    to_root = {root: list(range(ct.graphs[root].n))}
    for t in T.preorder(ct.parent):
        if t == root:
            continue
        up = to_root[ct.parent[t]]
        to_root[t] = [up[x] for x in ct.embed[t]]
    bags = [frozenset(to_root[t][v] for v in ct.graphs[t].labelled_vertices())
            for t in range(len(ct.parent))]
    return TreeDecomposition(ct.parent, bags)


def td_to_ct(g, td, k=None, q=None):
    """Construction tree of g from a rooted tree-decomposition.

    The decomposition is made nice; every introduce node gets an extra
    fully labelled leaf for its bag, forget nodes become label removals and
    labels are chosen greedily from the top."""
    g = g.unlabelled()
    if k is None:
        k = td_width(td) + 1
    if td_width(td) > k - 1:
        raise DecompositionError(f"width {td_width(td)} exceeds {k - 1}")
    if q is not None and td_depth(td) > q:
        raise DecompositionError(f"depth {td_depth(td)} exceeds {q}")
    nice = make_nice(td)
    ch = nice.children()
    order = T.preorder(nice.parent)
    colour = {}
    for t in order:
        if len(ch[t]) == 1:
            s = ch[t][0]
            extra = nice.bags[s] - nice.bags[t]
            if extra:
                (v,) = extra
                used = {colour[u] for u in nice.bags[t]}
                free = [c for c in range(1, k + 1) if c not in used]
                colour[v] = free[0]
    below = {}
    for t in reversed(order):
        acc = set(nice.bags[t])
        for c in ch[t]:
            acc |= below[c]
        below[t] = frozenset(acc)

    parent, graphs, embed, verts = [], [], [], []

    def add(vset, bag, par):
        vs = sorted(vset)
        h = induced_subgraph(g, vs)
        pos = {v: i for i, v in enumerate(vs)}
        lab = tuple((colour[v], pos[v]) for v in bag)
        graphs.append(LabelledGraph(h.n, h.edges, lab, h.loops, h.names))
        parent.append(par)
        verts.append(vs)
        embed.append(None)
        return len(parent) - 1

    def link(child, par):
        ppos = {v: i for i, v in enumerate(verts[par])}
        embed[child] = tuple(ppos[v] for v in verts[child])

    stack = [(nice.root, -1)]
    while stack:
        t, par = stack.pop()
        kids = ch[t]
        kind = node_kind(nice, t, ch)
        if kind == "introduce" and not ch[kids[0]] and not nice.bags[kids[0]]:
            kind, kids = "leaf", []
        me = add(below[t], nice.bags[t], par)
        if par >= 0:
            link(me, par)
        if kind == "introduce":
            leaf = add(nice.bags[t], nice.bags[t], me)
            link(leaf, me)
        for c in kids:
            stack.append((c, me))
    ct = ConstructionTree(parent, graphs, embed, k)
    return ct


def ct_from_pfc(g, pfc):
    td = pfc_to_td(g, pfc)
    return td_to_ct(g, td, k=max(pfc.k, 1))
