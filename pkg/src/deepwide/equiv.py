"""Equivalence deciders over bounded families, graph enumeration and the
CFI separation experiment."""
from dataclasses import dataclass, field
from functools import lru_cache

from .cfi import cfi_pair
from .game import Solver
from .graph import LabelledGraph, is_connected, path, set_label
from .hom import hom_count, hom_profile
from .iso import canonical_form
from .membership import (in_guarded_class, membership, single_labelled_guarded,
                         treedepth_by_elimination)
from .pebble import bijective_pebble_game, perfect_matching
from .td_oracle import treewidth


class EquivError(ValueError):
    pass


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def _graphs_of_order(n):
    """Non-isomorphic graphs on exactly n vertices, each extended from one on
    n - 1 vertices by a new vertex joined to a subset; duplicates removed by
    canonical form."""
    if n == 0:
        return (LabelledGraph(0),)
    seen = {}
    for g in _graphs_of_order(n - 1):
        for mask in range(1 << (n - 1)):
            es = g.edges + tuple((v, n - 1) for v in range(n - 1) if mask >> v & 1)
            h = LabelledGraph(n, es)
            key = canonical_form(h)
            if key not in seen:
                seen[key] = h
    return tuple(seen[k] for k in sorted(seen, key=lambda s: (len(s), s)))


def enumerate_graphs(max_n, min_n=0, connected=False):
    out = []
    for n in range(min_n, max_n + 1):
        for g in _graphs_of_order(n):
            if connected and (n == 0 or not is_connected(g)):
                continue
            out.append(g)
    return out


def in_t(g, k, q):
    """g in T^k_q by the monotone game value."""
    return Solver(g, k, "monCR", "G").cop_wins(q)


def in_tw_td(g, k, q):
    return treewidth(g) <= k - 1 and treedepth_by_elimination(g) <= q


@dataclass
class FamilyEnumeration:
    kind: str
    k: int
    q: int
    max_n: int
    members: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


FAMILY_KINDS = ("T", "GE", "TWTD")


def enumerate_family(kind, k, q, max_n):
    """Canonical representatives, up to max_n vertices, of T^k_q ("T"),
    GE^k_q ("GE") or TW_{k-1} ∩ TD_q ("TWTD")."""
    test = {"T": in_t, "GE": lambda g, k, q: in_guarded_class(g, k, q) is not None,
            "TWTD": in_tw_td}.get(kind)
    if test is None:
        raise EquivError(f"unknown family {kind!r}; expected one of {FAMILY_KINDS}")
    members = [g for g in enumerate_graphs(max_n, 1) if test(g, k, q)]
    return FamilyEnumeration(kind, k, q, max_n, members)


def single_labelled_family(k, q, max_n):
    """Connected graphs up to max_n vertices with label 1 on one vertex, in
    GL^k_q, one per label-preserving isomorphism type."""
    out, seen = [], set()
    for g in enumerate_graphs(max_n, 1, connected=True):
        for v in single_labelled_guarded(g, k, q):
            f = set_label(g, 1, v)
            key = canonical_form(f)
            if key not in seen:
                seen.add(key)
                out.append(f)
    return out


# ---------------------------------------------------------------------------
# homomorphism indistinguishability

@dataclass
class HomVerdict:
    indistinguishable: bool
    witness: LabelledGraph = None
    counts: tuple = None
    checked: int = 0
    bound: int = None

    def __bool__(self):
        return self.indistinguishable

    def __str__(self):
        if self.indistinguishable:
            return f"indistinguishable over {self.checked} graphs up to {self.bound} vertices"
        return f"distinguished by {self.witness!r}: {self.counts[0]} vs {self.counts[1]}"


def hom_indistinguishable(g, h, family):
    members = list(family)
    bound = getattr(family, "max_n", max((f.n for f in members), default=0))
    for i, f in enumerate(members):
        a, b = hom_count(f, g), hom_count(f, h)
        if a != b:
            return HomVerdict(False, f, (a, b), i + 1, bound)
    return HomVerdict(True, checked=len(members), bound=bound)


# ---------------------------------------------------------------------------
# guarded counting logic equivalence via vertex profiles

@dataclass
class GcVerdict:
    equivalent: bool
    bijection: list = None
    witness: LabelledGraph = None
    profiles: tuple = None          # sorted profile multisets of the witness
    bound: int = 0
    checked: int = 0

    def __bool__(self):
        return self.equivalent

    def __str__(self):
        if self.equivalent:
            return f"equivalent up to size bound {self.bound} ({self.checked} labelled graphs)"
        if self.witness is not None:
            return f"refuted by {self.witness!r}"
        return "refuted: no bijection matches the joint profiles"


def gc_equivalent(g, h, k, q, max_n):
    """Bounded check of GC^k_q-equivalence: a bijection preserving
    hom(F, .(1 -> v)) for every single-labelled F in GL^k_q up to max_n
    vertices.  Refutations are final; agreement holds up to the bound."""
    g, h = g.unlabelled(), h.unlabelled()
    fam = single_labelled_family(k, q, max_n)
    if g.n != h.n:
        return GcVerdict(False, bound=max_n, checked=0)
    pg = [[] for _ in range(g.n)]
    ph = [[] for _ in range(h.n)]
    for f in fam:
        a, b = hom_profile(f, g), hom_profile(f, h)
        if sorted(a) != sorted(b):
            return GcVerdict(False, witness=f, profiles=(sorted(a), sorted(b)),
                             bound=max_n, checked=len(fam))
        for v in range(g.n):
            pg[v].append(a[v])
            ph[v].append(b[v])
    match = perfect_matching(g.n, lambda v, w: pg[v] == ph[w])
    if match is None:
        return GcVerdict(False, bound=max_n, checked=len(fam))
    return GcVerdict(True, bijection=match, bound=max_n, checked=len(fam))


def verify_gc_witness(verdict, g, h):
    """A refutation witness must independently give different profile
    multisets on the two graphs."""
    f = verdict.witness
    return sorted(hom_profile(f, g)) != sorted(hom_profile(f, h))


# ---------------------------------------------------------------------------
# separation experiment

@dataclass
class SeparationReport:
    k: int
    q: int
    witness: LabelledGraph = None
    found: bool = False
    not_in_t: bool = None
    treewidth: int = None
    treedepth: int = None
    cfi_sizes: tuple = None
    duplicator_wins: bool = None
    hom_counts: tuple = None
    notes: list = field(default_factory=list)

    def ok(self):
        if not self.found:
            return False
        good = self.not_in_t and self.treewidth <= self.k - 1 and self.treedepth <= self.q
        if self.duplicator_wins is not None:
            good = good and self.duplicator_wins
        if self.hom_counts is not None:
            good = good and self.hom_counts[0] != self.hom_counts[1]
        return good

    def lines(self):
        if not self.found:
            return [f"k={self.k} q={self.q}: no witness exists"] + self.notes
        out = [f"witness F: {self.witness.n} vertices, {self.witness.m} edges",
               f"F in T^{self.k}_{self.q}: {'no (Robber wins)' if self.not_in_t else 'yes'}",
               f"tw(F) = {self.treewidth}, td(F) = {self.treedepth}",
               f"CFI pair sizes: {self.cfi_sizes[0]} + {self.cfi_sizes[1]}"]
        if self.duplicator_wins is not None:
            who = "Duplicator" if self.duplicator_wins else "Spoiler"
            out.append(f"bijective {self.k}-pebble {self.q}-round game on the CFI pair: {who} wins")
        if self.hom_counts is not None:
            out.append(f"hom(F, G0) = {self.hom_counts[0]}, hom(F, G1) = {self.hom_counts[1]}")
        return out + self.notes


def default_witness(k, q, max_n=7):
    """A graph in TW_{k-1} ∩ TD_q outside T^k_q, or None.  For k = 2 this is
    the longest path of treedepth q; otherwise the first graph found up to
    max_n vertices."""
    if k >= q:
        return None
    if k == 2:
        return path(2 ** q - 1)
    for g in enumerate_graphs(max_n, 1, connected=True):
        if in_tw_td(g, k, q) and not in_t(g, k, q):
            return g
    return None


def separation_experiment(k, q, witness=None, game_cap=24, hom=True):
    rep = SeparationReport(k, q)
    if witness is None:
        if k >= q:
            rep.notes.append("T^q_q = TD_q, so for k >= q the two classes coincide")
            return rep
        witness = default_witness(k, q)
        if witness is None:
            raise EquivError(f"no witness found for k={k}, q={q} within the search bound")
    f = witness.unlabelled()
    rep.witness, rep.found = f, True
    res = membership(f, k, q, cap=max(16, f.n), witness=False)
    rep.not_in_t = not res.member
    rep.treewidth = treewidth(f)
    rep.treedepth = treedepth_by_elimination(f)
    g0, g1 = cfi_pair(f)
    rep.cfi_sizes = (g0.n, g1.n)
    if g0.n <= game_cap:
        rep.duplicator_wins = bijective_pebble_game(g0, g1, k, q).duplicator_wins
    else:
        rep.notes.append(f"pebble game skipped: CFI graphs have {g0.n} vertices (cap {game_cap})")
    if hom:
        rep.hom_counts = (hom_count(f, g0), hom_count(f, g1))
    return rep
