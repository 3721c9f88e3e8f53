"""Brute-force search for a tree-decomposition of width <= k-1 and depth
<= q, independent of the game solver.

Normal form: below a bag, every component C of what is left is handled by
its own subtree whose top bag contains N(C) and at least one vertex of C.
(Take the topmost node whose bag meets C: every vertex of N(C) reaches it
by the connectivity of its bags.)  Depth along a path is the number of
vertices of C taken into bags, summed over the levels.  The search tries
every such top bag.
"""
from itertools import combinations

from .decomp import TreeDecomposition
from .graph import bits, components_mask, neighbourhood_mask


class _Oracle:
    def __init__(self, g, k):
        self.adj = tuple(a & ~(1 << v) for v, a in enumerate(g.adj))
        self.k = k
        self.memo = {}

    def ok(self, C, budget):
        key = (C, budget)
        if key in self.memo:
            return self.memo[key] is not None
        S = neighbourhood_mask(self.adj, C)
        room = self.k - bin(S).count("1")
        cv = list(bits(C))
        found = None
        for size in range(1, min(room, budget, len(cv)) + 1):
            for pick in combinations(cv, size):
                B = 0
                for v in pick:
                    B |= 1 << v
                rest = C & ~B
                subs = components_mask(self.adj, rest)
                if all(self.ok(c, budget - size) for c in subs):
                    found = (S | B, subs, budget - size)
                    break
            if found:
                break
        self.memo[key] = found
        return found is not None

    def build(self, C, budget, parent, out_parent, out_bags):
        bag, subs, left = self.memo[(C, budget)]
        out_parent.append(parent)
        out_bags.append(frozenset(bits(bag)))
        me = len(out_parent) - 1
        for c in subs:
            self.build(c, left, me, out_parent, out_bags)


def td_exists(g, k, q, witness=False):
    """True iff g has a tree-decomposition of width <= k-1 and depth <= q.
    With witness=True returns (bool, TreeDecomposition or None)."""
    o = _Oracle(g, k)
    full = (1 << g.n) - 1
    comps = components_mask(o.adj, full)
    res = all(o.ok(c, q) for c in comps)
    if not witness:
        return res
    if not res:
        return False, None
    parent, bags = [-1], [frozenset()]
    for c in comps:
        o.build(c, q, 0, parent, bags)
    return True, TreeDecomposition(parent, bags)


def treewidth(g):
    """Exact treewidth by the same search with unbounded depth."""
    if g.n == 0:
        return -1
    for k in range(1, g.n + 1):
        if td_exists(g, k, g.n):
            return k - 1


def treedepth(g):
    for q in range(0, g.n + 1):
        if td_exists(g, g.n, q):
            return q
