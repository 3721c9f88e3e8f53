"""Homomorphism counts between labelled graphs.

Labelled vertices of F must go to the equally labelled vertices of G.
Brute force (backtracking over candidate bitmasks) is the reference
count; elimination over factor tables is the fast route for large
targets and is checked against it in the tests."""
from .graph import GraphError, bits, components, induced_subgraph, set_label


def _check_labels(f, g):
    gl = g.label_map
    for l, _ in f.labels:
        if l not in gl:
            raise GraphError(f"label {l} of the pattern is not assigned in the target")
    return gl


def _split(f):
    """Connected components of f as induced labelled subgraphs."""
    if f.n == 0:
        return []
    return [induced_subgraph(f, sorted(c)) for c in components(f)]


def _brute_connected(f, g, gl):
    n = f.n
    fixed = {}
    for l, v in f.labels:
        w = gl[l]
        if fixed.setdefault(v, w) != w:
            return 0
    loops = [(f.adj[v] >> v) & 1 for v in range(n)]
    gloop = 0
    for w in range(g.n):
        if (g.adj[w] >> w) & 1:
            gloop |= 1 << w
    full = (1 << g.n) - 1
    # order: labelled vertices first, then greedily most-constrained
    order, placed = [], 0
    rest = set(range(n))
    for v in sorted(fixed):
        order.append(v)
        placed |= 1 << v
        rest.discard(v)
    while rest:
        v = max(rest, key=lambda x: (bin(f.adj[x] & placed).count("1"), -x))
        order.append(v)
        placed |= 1 << v
        rest.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    back = [[u for u in bits(f.adj[v]) if u != v and pos[u] < pos[v]] for v in order]
    img = [0] * n

    def go(i):
        v = order[i]
        cand = full
        for u in back[i]:
            cand &= g.adj[img[u]]
        if loops[v]:
            cand &= gloop
        if v in fixed:
            cand &= 1 << fixed[v]
        if i == n - 1:
            return bin(cand).count("1")
        total = 0
        for w in bits(cand):
            img[v] = w
            total += go(i + 1)
        return total

    return go(0)


def hom_brute(f, g):
    gl = _check_labels(f, g)
    total = 1
    for part in _split(f):
        total *= _brute_connected(part, g, gl)
        if total == 0:
            return 0
    return total


# ---------------------------------------------------------------------------
# elimination over factor tables

def _join(a, b):
    va, ta = a
    vb, tb = b
    shared = [x for x in va if x in vb]
    extra = [x for x in vb if x not in va]
    ia = [va.index(x) for x in shared]
    ib = [vb.index(x) for x in shared]
    ie = [vb.index(x) for x in extra]
    index = {}
    for key, val in tb.items():
        index.setdefault(tuple(key[i] for i in ib), []).append((tuple(key[i] for i in ie), val))
    out = {}
    for key, val in ta.items():
        for ext, v2 in index.get(tuple(key[i] for i in ia), ()):
            out[key + ext] = val * v2
    return (va + tuple(extra), out)


def _sum_out(fac, x):
    vs, tab = fac
    i = vs.index(x)
    out = {}
    for key, val in tab.items():
        k2 = key[:i] + key[i + 1:]
        out[k2] = out.get(k2, 0) + val
    return (vs[:i] + vs[i + 1:], out)


def hom_dp(f, g):
    gl = _check_labels(f, g)
    fixed = {}
    for l, v in f.labels:
        if fixed.setdefault(v, gl[l]) != gl[l]:
            return 0
    dom = {}
    for v in range(f.n):
        d = [fixed[v]] if v in fixed else list(range(g.n))
        if (f.adj[v] >> v) & 1:
            d = [w for w in d if (g.adj[w] >> w) & 1]
        dom[v] = d
    factors = [((v,), {(w,): 1 for w in dom[v]}) for v in range(f.n)]
    for u, v in f.edges:
        if u == v:
            continue
        tab = {(a, b): 1 for a in dom[u] for b in dom[v] if g.has_edge(a, b)}
        factors.append(((u, v), tab))
    live = set(range(f.n))
    result = 1
    while live:
        nbrs = {x: set() for x in live}
        for vs, _ in factors:
            for x in vs:
                nbrs[x].update(vs)
        x = min(live, key=lambda y: (len(nbrs[y]), y))
        mine = [fc for fc in factors if x in fc[0]]
        factors = [fc for fc in factors if x not in fc[0]]
        mine.sort(key=lambda fc: len(fc[1]))
        acc = mine[0]
        for fc in mine[1:]:
            acc = _join(acc, fc)
        acc = _sum_out(acc, x)
        live.discard(x)
        if acc[0]:
            factors.append(acc)
        else:
            result *= acc[1].get((), 0)
            if result == 0:
                return 0
    for vs, tab in factors:
        result *= tab.get((), 0)
    return result


def hom_count(f, g, method="auto"):
    """Number of homomorphisms f -> g respecting labels."""
    if method == "brute":
        return hom_brute(f, g)
    if method == "dp":
        return hom_dp(f, g)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return hom_dp(f, g) if f.n > 6 else hom_brute(f, g)


def hom_profile(f, g, method="auto"):
    """v -> hom(f, g with label 1 moved to v), for f carrying label 1."""
    if 1 not in f.label_map:
        raise GraphError("the pattern must carry label 1")
    return [hom_count(f, set_label(g, 1, v), method) for v in range(g.n)]
