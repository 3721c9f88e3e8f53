"""Quantum graphs: finite rational combinations of labelled graphs.

Terms are merged up to label-preserving isomorphism; terms whose graph
picked up a self-loop in a product are dropped, since they have no
homomorphism into a loopless target."""
from fractions import Fraction
from functools import lru_cache

from .graph import LabelledGraph, components, induced_subgraph, product, remove_label
from .hom import hom_count
from .iso import canonical_form

UNIT_GRAPH = LabelledGraph(0)

# A term is stored as the sorted tuple of the canonical keys of its
# connected components.  Each key maps to one representative graph and the
# set of labels it carries, so products and label removal only need to
# re-canonicalise the components that actually change.
_PART_REP = {}
_PART_LABELS = {}


def _parts(g):
    if g.n == 0:
        return []
    return [induced_subgraph(g, c) for c in components(g)]


@lru_cache(maxsize=None)
def _part_key(n, edges, labels):
    key = canonical_form(LabelledGraph(n, edges, labels), cap=64)
    if key not in _PART_REP:
        _PART_REP[key] = LabelledGraph(n, edges, labels)
        _PART_LABELS[key] = frozenset(l for l, _ in labels)
    return key


def term_key(g):
    """Isomorphism type of a labelled graph as the sorted types of its
    components (labels are distinct indices, so this is exact)."""
    return tuple(sorted(_part_key(p.n, p.edges, p.labels) for p in _parts(g)))


def _term_graph(key):
    n, es, lab = 0, [], []
    for k in key:
        p = _PART_REP[k]
        es.extend((u + n, v + n) for u, v in p.edges)
        lab.extend((l, v + n) for l, v in p.labels)
        n += p.n
    return LabelledGraph(n, tuple(es), tuple(lab))


def _key_labels(key):
    out = set()
    for k in key:
        out |= _PART_LABELS[k]
    return out


@lru_cache(maxsize=None)
def _glue(left, right):
    """Component keys of the product of two groups of components, or None
    if the product has a self-loop."""
    g = product(_term_graph(left), _term_graph(right))
    if g.has_loops():
        return None
    return term_key(g)


def _term_product(ka, kb):
    la, lb = _key_labels(ka), _key_labels(kb)
    if not la & lb:
        return tuple(sorted(ka + kb))
    ta = tuple(k for k in ka if _PART_LABELS[k] & lb)
    tb = tuple(k for k in kb if _PART_LABELS[k] & la)
    glued = _glue(ta, tb)
    if glued is None:
        return None
    rest = [k for k in ka if not _PART_LABELS[k] & lb] + [k for k in kb if not _PART_LABELS[k] & la]
    return tuple(sorted(rest + list(glued)))


@lru_cache(maxsize=None)
def _drop_label(k, l):
    p = _PART_REP[k]
    return _part_key(p.n, p.edges, remove_label(p, l).labels)


class QuantumGraph:
    __slots__ = ("keys", "coeffs", "_terms")

    def __init__(self, terms=()):
        acc = {}
        for c, g in terms:
            c = Fraction(c)
            if c == 0 or g.has_loops():
                continue
            key = term_key(LabelledGraph(g.n, g.edges, g.labels, False))
            acc[key] = acc.get(key, 0) + c
        self._set(acc)

    def _set(self, acc):
        self.keys = tuple(k for k in sorted(acc) if acc[k] != 0)
        self.coeffs = tuple(acc[k] for k in self.keys)
        self._terms = None

    @classmethod
    def _from_acc(cls, acc):
        out = cls.__new__(cls)
        out._set(acc)
        return out

    @property
    def terms(self):
        """(coefficient, graph) pairs, one graph per isomorphism type."""
        if self._terms is None:
            self._terms = tuple((c, _term_graph(k)) for c, k in zip(self.coeffs, self.keys))
        return self._terms

    @classmethod
    def of(cls, g, c=1):
        return cls([(c, g)])

    @classmethod
    def unit(cls):
        return cls([(1, UNIT_GRAPH)])

    @classmethod
    def zero(cls):
        return cls()

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return (isinstance(other, QuantumGraph) and self.keys == other.keys
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.keys, self.coeffs))

    def __repr__(self):
        return f"QuantumGraph({len(self.keys)} terms)"

    def _items(self):
        return zip(self.keys, self.coeffs)

    def __add__(self, other):
        acc = dict(self._items())
        for k, c in other._items():
            acc[k] = acc.get(k, 0) + c
        return QuantumGraph._from_acc(acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = Fraction(a)
        return QuantumGraph._from_acc({k: a * c for k, c in self._items()})

    def __mul__(self, other):
        if not isinstance(other, QuantumGraph):
            return self.scale(other)
        return qg_product(self, other)

    __rmul__ = scale

    def labels(self):
        out = set()
        for k in self.keys:
            out |= _key_labels(k)
        return out

    def to_json(self):
        return [{"coefficient": str(c), "n": g.n, "edges": [list(e) for e in g.edges],
                 "labels": [list(x) for x in g.labels]} for c, g in self.terms]

    @classmethod
    def from_json(cls, data):
        return cls((Fraction(d["coefficient"]),
                    LabelledGraph(d["n"], tuple(map(tuple, d["edges"])),
                                  tuple(map(tuple, d["labels"])))) for d in data)


def qg_product(a, b):
    acc = {}
    for ka, ca in a._items():
        for kb, cb in b._items():
            k = _term_product(ka, kb)
            if k is not None:
                acc[k] = acc.get(k, 0) + ca * cb
    return QuantumGraph._from_acc(acc)


def qg_power(a, j):
    out = QuantumGraph.unit()
    for _ in range(j):
        out = qg_product(out, a)
    return out


def hom_count_quantum(a, g, method="auto"):
    """Sum of c * hom(F, g); counts are taken per component and shared
    between terms."""
    cache = {}
    total = Fraction(0)
    for parts, c in a._items():
        val = 1
        for key in parts:
            if key not in cache:
                cache[key] = hom_count(_PART_REP[key], g, method)
            val *= cache[key]
            if not val:
                break
        total += c * val
    return total


def remove_label_qg(a, l):
    """Removes label l from every term.  For terms carrying l this turns
    hom(., G) into the sum over v of hom(., G(l -> v)); a term without l
    is left alone."""
    acc = {}
    for key, c in a._items():
        k = tuple(sorted(_drop_label(p, l) if l in _PART_LABELS[p] else p for p in key))
        acc[k] = acc.get(k, 0) + c
    return QuantumGraph._from_acc(acc)


def indicator_polynomial(plus, minus):
    """Coefficients (lowest degree first) of the least-degree polynomial that
    is 1 on ``plus`` and 0 on ``minus``."""
    plus = [Fraction(s) for s in plus]
    minus = [Fraction(s) for s in minus]
    if set(plus) & set(minus):
        raise ValueError("the two interpolation sets overlap")
    pts = sorted(set(plus) | set(minus))
    coeffs = [Fraction(0)] * len(pts)
    for s in plus:
        # Lagrange basis polynomial at s
        basis = [Fraction(1)]
        denom = Fraction(1)
        for r in pts:
            if r == s:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= r * basis[i + 1]
            denom *= s - r
        for i, b in enumerate(basis):
            coeffs[i] += b / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def interpolate(a, plus, minus):
    """p(a) for the polynomial p that is 1 on ``plus`` and 0 on ``minus``, so
    hom(result, G) = p(hom(a, G)) for every G."""
    coeffs = indicator_polynomial(plus, minus)
    out = QuantumGraph.zero()
    power = QuantumGraph.unit()
    for i, c in enumerate(coeffs):
        if i:
            power = qg_product(power, a)
        if c:
            out = out + power.scale(c)
    return out
