"""Membership in T^k_q (decided by the Cops-and-Robber game, witnessed by a
construction tree) and in the guarded classes GL^k_q / GE^k_q.

Guarded recursion: a labelled graph whose unlabelled part C is connected and
whose labelled part S = N(C) is used in full is built by labelling one more
vertex v of C, then taking the product of a fully labelled leaf on S + v with
one subtree per component of C - v.  Unguarded, this is the monotone game;
guarded, v must have a labelled neighbour, i.e. v lies in N(S).
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .decomp import (ConstructionTree, DecompositionError, elimination_depth, td_depth,
                     td_to_ct, td_width, validate_ct, validate_td)
from .game import GameError, RobberWins, Solver
from .graph import LabelledGraph, bits, components_mask, induced_subgraph, neighbourhood_mask
from .pretree import cop_win_to_td

INF = float("inf")


@dataclass
class Membership:
    member: bool
    k: int
    q: int
    witness: ConstructionTree = None
    td: object = None
    evidence: object = None          # RobberWins when not a member
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.member

    def __str__(self):
        if self.member:
            return f"in T^{self.k}_{self.q}"
        return f"not in T^{self.k}_{self.q} ({self.evidence})"


def membership(g, k, q, cap=16, witness=True):
    """Decide g in T^k_q.  A member gets a construction tree built from the
    cop strategy (strategy tree, exactify, tree-decomposition); a non-member
    gets the robber's winning certificate."""
    if g.n > cap:
        raise GameError(f"graph has {g.n} vertices, above the membership cap {cap}")
    if k < 1 or q < 0:
        raise GameError("need k >= 1 and q >= 0")
    g = g.unlabelled()
    res = Solver(g, k, "CR", "G").solve(q)
    if isinstance(res, RobberWins):
        return Membership(False, k, q, evidence=res)
    out = Membership(True, k, q, info={"rounds": res.rounds})
    if not witness:
        return out
    td = cop_win_to_td(g, k, q)
    bad = validate_td(g, td)
    if bad is not None:
        raise DecompositionError(f"pipeline produced an invalid decomposition: {bad}")
    if td_width(td) > k - 1 or td_depth(td) > q:
        raise DecompositionError("pipeline decomposition exceeds (k, q)")
    ct = td_to_ct(g, td, k=k, q=q)
    bad = validate_ct(ct, g)
    if bad is not None:
        raise DecompositionError(f"construction tree does not validate: {bad}")
    out.td, out.witness = td, ct
    out.info["elimination_depth"] = elimination_depth(ct)
    return out


def treedepth_by_elimination(g):
    """td(C) = 1 + min over v of the worst component of C - v."""
    adj = tuple(a & ~(1 << v) for v, a in enumerate(g.adj))

    @lru_cache(maxsize=None)
    def td(C):
        best = INF
        for v in bits(C):
            worst = 0
            for c in components_mask(adj, C & ~(1 << v)):
                worst = max(worst, td(c))
                if worst + 1 >= best:
                    break
            best = min(best, worst + 1)
        return best

    return max((td(c) for c in components_mask(adj, (1 << g.n) - 1)), default=0)


# ---------------------------------------------------------------------------
# the elimination recursion, plain or guarded

class _Elimination:
    def __init__(self, g, k, guarded):
        self.adj = tuple(a & ~(1 << v) for v, a in enumerate(g.adj))
        self.k = k
        self.guarded = guarded
        self.memo = {}

    def depth(self, C):
        """Eliminations needed for the unlabelled connected part C with
        N(C) labelled."""
        hit = self.memo.get(C)
        if hit is not None:
            return hit[0]
        S = neighbourhood_mask(self.adj, C)
        best, arg = INF, None
        if bin(S).count("1") + 1 <= self.k:
            cand = C & neighbourhood_mask(self.adj, S) if self.guarded else C
            for v in bits(cand):
                worst = 0
                for c in components_mask(self.adj, C & ~(1 << v)):
                    worst = max(worst, self.depth(c))
                    if worst + 1 >= best:
                        break
                if worst + 1 < best:
                    best, arg = worst + 1, v
        self.memo[C] = (best, arg)
        return best

    def top(self, S):
        """Depth of the graph with S labelled at the root."""
        rest = ((1 << len(self.adj)) - 1) & ~S
        return max((self.depth(c) for c in components_mask(self.adj, rest)), default=0)


def _build_ct(g, k, rec, S0):
    """Root carries g's own labels; below it each labelled vertex keeps its
    smallest label and every eliminated vertex takes the smallest label not
    used on its labelled neighbourhood."""
    full = {}
    for l, v in g.labels:
        full.setdefault(v, []).append(l)
    colour = {v: min(ls) for v, ls in full.items()}
    parent, graphs, embed, verts = [], [], [], []

    def add(vs, lab_verts, par, keep_all=False):
        vs = sorted(vs)
        h = induced_subgraph(g, vs)
        pos = {v: i for i, v in enumerate(vs)}
        if keep_all:
            lab = tuple((l, pos[v]) for v in lab_verts for l in full[v])
        else:
            lab = tuple((colour[v], pos[v]) for v in lab_verts)
        graphs.append(LabelledGraph(h.n, h.edges, lab, h.loops, h.names))
        parent.append(par)
        verts.append(vs)
        if par < 0:
            embed.append(None)
        else:
            ppos = {v: i for i, v in enumerate(verts[par])}
            embed.append(tuple(ppos[v] for v in vs))
        return len(parent) - 1

    def glue(S, C, par, root=False):
        """Product of a leaf on S with one subtree per component of C."""
        comps = components_mask(rec.adj, C)
        if not comps:
            add(bits(S), bits(S), par, root)
            return
        me = add(bits(S | C), bits(S), par, root)
        add(bits(S), bits(S), me, root)
        for c in comps:
            sub(c, me)

    def sub(C, par):
        S = neighbourhood_mask(rec.adj, C)
        rec.depth(C)
        v = rec.memo[C][1]
        used = {colour[u] for u in bits(S)}
        colour[v] = min(set(range(1, k + 1)) - used)
        top = add(bits(S | C), bits(S), par)
        glue(S | (1 << v), C & ~(1 << v), top)

    rest = ((1 << g.n) - 1) & ~S0
    comps = components_mask(rec.adj, rest)
    if S0:
        glue(S0, rest, -1, True)
    elif len(comps) == 1:
        sub(comps[0], -1)
    else:
        me = add(range(g.n), (), -1)
        for c in comps:
            sub(c, me)
    return ConstructionTree(parent, graphs, embed, k)


def _label_mask(f):
    return sum(1 << v for v in f.labelled_vertices())


def labelled_depth(f, k, guarded=False):
    """Least elimination depth of a (guarded) k-construction tree for the
    labelled graph f; infinite when there is none."""
    if any(l > k for l, _ in f.labels):
        return INF
    rec = _Elimination(f, k, guarded)
    S0 = _label_mask(f)
    if guarded:
        adj = rec.adj
        if any(not c & S0 for c in components_mask(adj, (1 << f.n) - 1)):
            return INF
    return rec.top(S0)


def labelled_ct(f, k, q, guarded=False):
    """(Guarded) k-construction tree for f of elimination depth <= q, or None."""
    if f.n == 0:
        return ConstructionTree([-1], [f], [None], k)
    if labelled_depth(f, k, guarded) > q:
        return None
    rec = _Elimination(f, k, guarded)
    return _build_ct(f, k, rec, _label_mask(f))


def elimination_ct(g, k, q):
    """Construction tree for g in T^k_q straight from the elimination
    recursion, or None."""
    return labelled_ct(g.unlabelled(), k, q)


def _place_labels(g, labelled):
    labs = tuple((i + 1, v) for i, v in enumerate(sorted(set(labelled))))
    return LabelledGraph(g.n, g.edges, labs, g.loops, g.names)


def guarded_depth(g, k, labelled):
    """Least elimination depth of a guarded k-construction tree for g with
    labels 1, 2, ... on the vertices in ``labelled``."""
    return labelled_depth(_place_labels(g, labelled), k, True)


def guarded_ct(g, k, q, labelled):
    return labelled_ct(_place_labels(g, labelled), k, q, True)


def in_guarded_labelled(f, k, q):
    """f (labelled) in GL^k_q.  Every component must carry a label, since
    the last label of a component can never be removed."""
    return labelled_depth(f, k, True) <= q


def in_guarded_class(g, k, q):
    """Unlabelled g in GE^k_q: some placement of at most k labels makes it a
    member of GL^k_q.  Returns the labelled vertex set or None."""
    g = g.unlabelled()
    if g.n == 0:
        return ()
    adj = tuple(a & ~(1 << v) for v, a in enumerate(g.adj))
    comps = components_mask(adj, (1 << g.n) - 1)
    if len(comps) > k:
        return None
    rec = _Elimination(g, k, True)
    for size in range(len(comps), k + 1):
        for pick in combinations(range(g.n), size):
            S0 = sum(1 << v for v in pick)
            if any(not c & S0 for c in comps):
                continue
            if rec.top(S0) <= q:
                return pick
    return None


def single_labelled_guarded(g, k, q):
    """Vertices v such that g with label 1 on v lies in GL^k_q."""
    if g.n == 0:
        return []
    rec = _Elimination(g, k, True)
    adj = rec.adj
    if len(components_mask(adj, (1 << g.n) - 1)) != 1:
        return []
    return [v for v in range(g.n) if rec.top(1 << v) <= q]
