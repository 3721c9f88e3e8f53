"""Counting logic: formulas, evaluation on labelled graphs, and the
translations between construction trees, formulas and quantum graphs.

Variable x_i is interpreted by label i of the graph.  Formulas are
hash-consed, so equal subformulas are the same object and memo tables
key on identity."""
from functools import lru_cache

from .decomp import validate_ct
from .graph import LabelledGraph
from .quantum import QuantumGraph, interpolate, qg_product, remove_label_qg


class FormulaError(ValueError):
    pass


class Formula:
    __slots__ = ("op", "args", "qr", "vars", "free", "__weakref__")
    _table = {}

    def __new__(cls, op, *args):
        key = (op,) + tuple(id(a) if isinstance(a, Formula) else a for a in args)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.op, self.args = op, args
        subs = [a for a in args if isinstance(a, Formula)]
        if op in ("eq", "E"):
            self.qr, self.vars, self.free = 0, frozenset(args), frozenset(args)
        elif op == "ex":
            sub = args[2]
            self.qr = 1 + sub.qr
            self.vars = sub.vars | {args[1]}
            self.free = sub.free - {args[1]}
        else:
            self.qr = max((s.qr for s in subs), default=0)
            self.vars = frozenset().union(*(s.vars for s in subs))
            self.free = frozenset().union(*(s.free for s in subs))
        cls._table[key] = self
        return self

    def __repr__(self):
        return to_text(self)

    def __reduce__(self):
        return (parse, (to_text(self),))


TOP = Formula("top")
BOT = Formula("bot")


def Eq(i, j):
    return Formula("eq", i, j)


def Edge(i, j):
    return Formula("E", i, j)


def Not(a):
    if a is TOP:
        return BOT
    if a is BOT:
        return TOP
    if a.op == "not":
        return a.args[0]
    return Formula("not", a)


def _flat(op, parts, unit, absorb):
    out = []
    for p in parts:
        if p is absorb:
            return absorb
        if p is unit:
            continue
        for q in (p.args if p.op == op else (p,)):
            if q not in out:
                out.append(q)
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return Formula(op, *out)


def And(*parts):
    return _flat("and", parts, TOP, BOT)


def Or(*parts):
    return _flat("or", parts, BOT, TOP)


def Exists(t, l, a):
    """At least t vertices for x_l satisfy a (t >= 1)."""
    if t < 1:
        raise FormulaError("counting quantifiers need t >= 1")
    if a is BOT:
        return BOT
    return Formula("ex", t, l, a)


def Exactly(t, l, a):
    if t == 0:
        return Not(Exists(1, l, a))
    return And(Exists(t, l, a), Not(Exists(t + 1, l, a)))


def qr(a):
    return a.qr


def variables(a):
    return set(a.vars)


def free_variables(a):
    return set(a.free)


def in_fragment(a, k, q):
    return a.qr <= q and all(1 <= i <= k for i in a.vars)


def is_guarded(a):
    """Every quantifier has the shape exists>=t x_l (E x_l x_l' & psi)
    with l' different from l."""
    seen = set()

    def ok(f):
        if f in seen:
            return True
        seen.add(f)
        if f.op == "ex":
            _, l, body = f.args
            if guard_of(l, body) is None:
                return False
        return all(ok(s) for s in f.args if isinstance(s, Formula))

    return ok(a)


def guard_of(l, body):
    parts = body.args if body.op == "and" else (body,)
    for p in parts:
        if p.op == "E":
            i, j = p.args
            if i == l and j != l:
                return j
            if j == l and i != l:
                return i
    return None


# ---------------------------------------------------------------------------
# text syntax

def to_text(a):
    op = a.op
    if op == "top":
        return "true"
    if op == "bot":
        return "false"
    if op == "eq":
        return f"(= {a.args[0]} {a.args[1]})"
    if op == "E":
        return f"(E {a.args[0]} {a.args[1]})"
    if op == "not":
        return f"(not {to_text(a.args[0])})"
    if op in ("and", "or"):
        return f"({op} " + " ".join(to_text(s) for s in a.args) + ")"
    t, l, body = a.args
    return f"(exists>= {t} {l} {to_text(body)})"


def _tokens(text):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse(text):
    toks = _tokens(text)
    pos = 0

    def need_int():
        nonlocal pos
        try:
            v = int(toks[pos])
        except (IndexError, ValueError):
            raise FormulaError(f"expected an integer at token {pos}") from None
        pos += 1
        return v

    def expr():
        nonlocal pos
        if pos >= len(toks):
            raise FormulaError("unexpected end of formula")
        tok = toks[pos]
        pos += 1
        if tok == "true":
            return TOP
        if tok == "false":
            return BOT
        if tok != "(":
            raise FormulaError(f"unexpected token {tok!r}")
        if pos >= len(toks):
            raise FormulaError("unexpected end of formula")
        head = toks[pos]
        pos += 1
        if head in ("=", "E"):
            i, j = need_int(), need_int()
            out = Eq(i, j) if head == "=" else Edge(i, j)
        elif head == "not":
            out = Not(expr())
        elif head in ("and", "or"):
            parts = []
            while pos < len(toks) and toks[pos] != ")":
                parts.append(expr())
            out = And(*parts) if head == "and" else Or(*parts)
        elif head in ("exists>=", "exists="):
            t, l = need_int(), need_int()
            body = expr()
            out = Exists(t, l, body) if head == "exists>=" else Exactly(t, l, body)
        elif head == "exists":
            l = need_int()
            out = Exists(1, l, expr())
        elif head == "forall":
            l = need_int()
            out = Not(Exists(1, l, Not(expr())))
        else:
            raise FormulaError(f"unknown connective {head!r}")
        if pos >= len(toks) or toks[pos] != ")":
            raise FormulaError("missing closing parenthesis")
        pos += 1
        return out

    out = expr()
    if pos != len(toks):
        raise FormulaError("trailing tokens after formula")
    return out


# ---------------------------------------------------------------------------
# semantics

class Evaluator:
    """Evaluates formulas on one graph, memoising on (subformula, labels)."""

    def __init__(self, g):
        self.g = g
        self.memo = {}

    def __call__(self, a, assign=None):
        if assign is None:
            assign = dict(self.g.labels)
        missing = [i for i in a.free if i not in assign]
        if missing:
            raise FormulaError(f"free variables {sorted(missing)} are not labelled")
        return self._ev(a, _restrict(assign, a.free))

    def _ev(self, a, env):
        key = (a, env)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        op = a.op
        if op == "top":
            r = True
        elif op == "bot":
            r = False
        elif op == "eq":
            d = dict(env)
            r = d[a.args[0]] == d[a.args[1]]
        elif op == "E":
            d = dict(env)
            r = self.g.has_edge(d[a.args[0]], d[a.args[1]])
        elif op == "not":
            r = not self._ev(a.args[0], env)
        elif op == "and":
            r = all(self._ev(s, env) for s in a.args)
        elif op == "or":
            r = any(self._ev(s, env) for s in a.args)
        else:
            t, l, body = a.args
            d = dict(env)
            count = 0
            r = False
            for v in range(self.g.n):
                d[l] = v
                if self._ev(body, _restrict(d, body.free)):
                    count += 1
                    if count >= t:
                        r = True
                        break
        self.memo[key] = r
        return r


def _restrict(d, keep):
    return tuple(sorted((i, v) for i, v in d.items() if i in keep))


def evaluate(g, a):
    """g |= a, with x_i read as the vertex carrying label i."""
    return Evaluator(g)(a)


# ---------------------------------------------------------------------------
# construction tree -> formula

def _partitions(m, top=None):
    """Ways to write m as sum of c_i * m_i with distinct m_i >= 1, c_i >= 1;
    yields tuples of (m_i, c_i) with m_i decreasing."""
    if top is None:
        top = m
    if m == 0:
        yield ()
        return
    for part in range(min(m, top), 0, -1):
        for c in range(m // part, 0, -1):
            for rest in _partitions(m - c * part, part - 1):
                yield ((part, c),) + rest


def _leaf_formula(h):
    by_vertex = {}
    for l, v in h.labels:
        by_vertex.setdefault(v, []).append(l)
    parts = []
    for ls in by_vertex.values():
        for l in ls[1:]:
            parts.append(Eq(ls[0], l))
    for u, v in h.edges:
        parts.append(Edge(by_vertex[u][0], by_vertex[v][0]))
    return And(*parts)


def formula_from_ct(ct, m, guarded=False, check=True):
    """A formula true exactly on the (appropriately labelled) graphs G with
    hom(root graph, G) = m.  Guarded trees give guarded formulas."""
    if check:
        bad = validate_ct(ct, None, guarded=guarded)
        if bad is not None:
            raise FormulaError(f"invalid construction tree: {bad}")
    ch = ct.children()

    @lru_cache(maxsize=None)
    def node(t, m):
        kids = ch[t]
        if not kids:
            one = _leaf_formula(ct.graphs[t])
            return Not(one) if m == 0 else one if m == 1 else BOT
        if len(kids) == 1:
            return elim(t, kids[0], m)
        return prod(tuple(kids), m)

    @lru_cache(maxsize=None)
    def prod(ws, m):
        if len(ws) == 1:
            return node(ws[0], m)
        if m == 0:
            return Or(node(ws[0], 0), prod(ws[1:], 0))
        return Or(*(And(node(ws[0], d), prod(ws[1:], m // d))
                    for d in range(1, m + 1) if m % d == 0))

    def elim(t, w, m):
        above = ct.graphs[t]
        below = ct.graphs[w]
        (l,) = set(below.label_map) - set(above.label_map)
        guard = TOP
        if guarded:
            lm = below.label_map
            partner = min(j for j, x in lm.items() if j != l and x != lm[l] and below.has_edge(lm[l], x))
            guard = Edge(l, partner)
        nonzero = And(guard, Not(node(w, 0)))
        opts = []
        for dec in _partitions(m):
            c = sum(ci for _, ci in dec)
            opts.append(And(Exactly(c, l, nonzero),
                            *(Exactly(ci, l, And(guard, node(w, mi))) for mi, ci in dec)))
        return Or(*opts)

    return node(ct.root, m)


def guarded_formula_from_ct(ct, m, check=True):
    return formula_from_ct(ct, m, guarded=True, check=check)


# ---------------------------------------------------------------------------
# formula -> quantum graph

def _vertex_graph(labels):
    return LabelledGraph(1, (), tuple((l, 0) for l in sorted(set(labels))))


def _edge_graph(i, j):
    return LabelledGraph(2, ((0, 1),), ((i, 0), (j, 1)))


_QG_MEMO = {}


def qg_from_formula(a, n, k=None, q=None, guarded=False):
    """Quantum graph whose hom count into any appropriately labelled graph
    with n vertices is 1 if the graph satisfies a and 0 otherwise."""
    if k is not None and q is not None and not in_fragment(a, k, q):
        raise FormulaError(f"formula is not in the fragment with {k} variables and rank {q}")
    if guarded and not is_guarded(a):
        raise FormulaError("formula is not guarded")
    # formulas are interned, so subformula results can be shared between calls
    memo = _QG_MEMO.setdefault((n, guarded), {})

    def go(f):
        hit = memo.get(f)
        if hit is not None:
            return hit
        op = f.op
        if op == "top":
            r = QuantumGraph.unit()
        elif op == "bot":
            r = QuantumGraph.zero()
        elif op == "eq":
            r = QuantumGraph.of(_vertex_graph(f.args))
        elif op == "E":
            i, j = f.args
            r = QuantumGraph.zero() if i == j else QuantumGraph.of(_edge_graph(i, j))
        elif op == "not":
            r = interpolate(go(f.args[0]), [0], [1])
        elif op == "and":
            r = QuantumGraph.unit()
            for s in f.args:
                r = qg_product(r, go(s))
        elif op == "or":
            r = QuantumGraph.unit()
            for s in f.args:
                r = qg_product(r, interpolate(go(s), [0], [1]))
            r = interpolate(r, [0], [1])
        else:
            t, l, body = f.args
            if guarded:
                partner = guard_of(l, body)
                rest = [p for p in (body.args if body.op == "and" else (body,))
                        if p is not Edge(l, partner) and p is not Edge(partner, l)]
                inner = qg_product(go(And(*rest)), QuantumGraph.of(_edge_graph(l, partner)))
            else:
                inner = qg_product(go(body), QuantumGraph.of(_vertex_graph([l])))
            counted = remove_label_qg(inner, l)
            if t > n:
                r = QuantumGraph.zero()
            else:
                r = interpolate(counted, range(t, n + 1), range(0, t))
        memo[f] = r
        return r

    return go(a)


def qg_from_guarded_formula(a, n, k=None, q=None):
    return qg_from_formula(a, n, k, q, guarded=True)


def term_witnesses(qg, k, q, guarded=False):
    """A (guarded) construction tree of depth <= q for every term, or the
    first term that has none."""
    from .membership import labelled_ct
    out = []
    for _, g in qg.terms:
        ct = labelled_ct(g, k, q, guarded)
        if ct is None:
            return None, g
        out.append(ct)
    return out, None
