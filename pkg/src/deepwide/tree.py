"""Rooted trees stored as parent arrays (root has parent -1)."""


def children_lists(parent):
    ch = [[] for _ in parent]
    for v, p in enumerate(parent):
        if p >= 0:
            ch[p].append(v)
    return ch


def find_root(parent):
    roots = [v for v, p in enumerate(parent) if p < 0]
    if len(roots) != 1:
        raise ValueError(f"expected exactly one root, found {len(roots)}")
    return roots[0]


def check_tree(parent):
    """Raise unless parent describes a single rooted tree."""
    root = find_root(parent)
    n = len(parent)
    for v in range(n):
        seen = 0
        x = v
        while x != root:
            x = parent[x]
            if not 0 <= x < n:
                raise ValueError(f"node {v} has a parent chain leaving the tree")
            seen += 1
            if seen > n:
                raise ValueError(f"node {v} lies on a cycle")
    return root


def preorder(parent, root=None):
    if root is None:
        root = find_root(parent)
    ch = children_lists(parent)
    out, stack = [], [root]
    while stack:
        t = stack.pop()
        out.append(t)
        stack.extend(reversed(ch[t]))
    return out


def bfs_order(parent, root=None, key=None):
    if root is None:
        root = find_root(parent)
    ch = children_lists(parent)
    out, i = [root], 0
    while i < len(out):
        kids = ch[out[i]]
        if key is not None:
            kids = sorted(kids, key=key)
        out.extend(kids)
        i += 1
    return out


def ancestors(parent, t):
    """t, parent(t), ..., root."""
    out = [t]
    while parent[t] >= 0:
        t = parent[t]
        out.append(t)
    return out


def is_ancestor(parent, a, t):
    """a is t or an ancestor of t."""
    while t >= 0:
        if t == a:
            return True
        t = parent[t]
    return False


def reroot(parent, r):
    """Parent array of the same tree rooted at r."""
    n = len(parent)
    nb = [[] for _ in range(n)]
    for v, p in enumerate(parent):
        if p >= 0:
            nb[v].append(p)
            nb[p].append(v)
    new = [-2] * n
    new[r] = -1
    stack = [r]
    while stack:
        t = stack.pop()
        for u in nb[t]:
            if new[u] == -2:
                new[u] = t
                stack.append(u)
    return new


def leaves(parent):
    ch = children_lists(parent)
    return [v for v in range(len(parent)) if not ch[v] and parent[v] >= 0]
