"""Cops-and-Robber games with a bounded number of cops and rounds.

Positions are (X, C): the cop set X and the robber's escape space, kept
as the component C of G - X he is in.  In the edge game the robber hides
on edges; a component then stands for the edges incident to it, and only
components with at least one incident edge are robber positions.  On G°
(loops everywhere) the edge game is the vertex game.

Each cop move places exactly one new cop and may lift any number of cops
at the same time.
"""
from dataclasses import dataclass, field

from .graph import (GraphError, bits, components_mask, mask_of, with_loops,
                    neighbourhood_mask)

VARIANTS = ("CR", "monCR", "eCR", "moneCR")
BOARDS = ("G", "G°")


class GameError(ValueError):
    pass


def _fs(mask):
    return frozenset(bits(mask))


# ---------------------------------------------------------------------------
# escape spaces, literal form

def escape(g, X, v):
    X = set(X)
    if v in X:
        return frozenset([v])
    allowed = ((1 << g.n) - 1) & ~mask_of(X)
    for c in components_mask(g.adj, allowed):
        if (c >> v) & 1:
            return _fs(c)
    raise GraphError(f"unknown vertex {v}")


def escape_edges(g, X, e):
    """Edges the robber on edge e can reach without passing a cop, or {e}
    when both ends of e are occupied."""
    u, v = e
    X = set(X)
    if u in X and v in X:
        return frozenset([tuple(sorted(e))])
    free = v if u in X else u
    comp = escape(g, X, free)
    return frozenset(ed for ed in g.edges if ed[0] in comp or ed[1] in comp)


# ---------------------------------------------------------------------------
# the board

class Arena:
    """Bitmask view of the board shared by solver and verifier."""

    def __init__(self, g, edge_mode):
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.adj = tuple(a & ~(1 << v) for v, a in enumerate(g.adj))
        self.edge_mode = edge_mode
        if edge_mode:
            self.active = mask_of(v for v in range(g.n) if g.adj[v])
        else:
            self.active = self.full
        self.looped = all((g.adj[v] >> v) & 1 for v in range(g.n))
        # vertex-like: positions and monotonicity behave as in the vertex game
        self.vertex_like = (not edge_mode) or self.looped
        self.einc = [0] * g.n
        for i, (u, v) in enumerate(g.edges):
            self.einc[u] |= 1 << i
            self.einc[v] |= 1 << i
        self._comps = {}

    def comps(self, X):
        c = self._comps.get(X)
        if c is None:
            c = tuple(components_mask(self.adj, self.full & ~X))
            self._comps[X] = c
        return c

    def region(self, Y, C):
        for c in self.comps(Y):
            if c & C:
                return c
        return 0

    def robber_comps(self, X, within=None):
        out = []
        for c in self.comps(X):
            if c & self.active and (within is None or c & within == c):
                out.append(c)
        return out

    def inc(self, C):
        m = 0
        for v in bits(C):
            m |= self.einc[v]
        return m

    def is_monotone(self, region, C):
        if self.vertex_like:
            return region == C
        return self.inc(region) == self.inc(C)

    def escape_edge_set(self, C):
        return frozenset(self.g.edges[i] for i in bits(self.inc(C)))


def _prepare(g, variant, board):
    if variant not in VARIANTS:
        raise GameError(f"unknown variant {variant!r}")
    if board not in BOARDS and board != "Go":
        raise GameError(f"unknown board {board!r}")
    edge = variant in ("eCR", "moneCR")
    mono = variant in ("monCR", "moneCR")
    if board in ("G°", "Go"):
        if g.has_loops():
            raise GameError("board G° needs a loopless input graph")
        g = with_loops(g)
    return Arena(g, edge), mono


# ---------------------------------------------------------------------------
# results

@dataclass
class CopStrategy:
    moves: dict                 # (frozenset X, frozenset C) -> frozenset X'
    k: int
    variant: str = "CR"
    board: str = "G"
    rounds: int = None          # rounds the strategy needs in the worst case

    def next(self, X, C):
        return self.moves.get((frozenset(X), frozenset(C)))

    def to_json(self):
        return [{"cops": sorted(X), "component": sorted(C), "robber": min(C),
                 "next": sorted(Y)} for (X, C), Y in sorted(
                     self.moves.items(), key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1])))]

    @classmethod
    def from_json(cls, data, k, variant="CR", board="G"):
        mv = {(frozenset(d["cops"]), frozenset(d["component"])): frozenset(d["next"]) for d in data}
        return cls(mv, k, variant, board)


@dataclass
class CopWins:
    strategy: CopStrategy
    rounds: int

    cop_wins = True

    def __bool__(self):
        return True

    def __str__(self):
        return f"Cop wins (within {self.rounds} rounds)"


@dataclass
class RobberWins:
    certificate: object
    cop_wins = False

    def __bool__(self):
        return False

    def __str__(self):
        return "Robber wins"


# ---------------------------------------------------------------------------
# monotone vertex game: the robber never regains ground, so only the
# component matters and the cops sit on N(C).

class _MonotoneValue:
    def __init__(self, arena, k):
        self.a = arena
        self.k = k
        self.memo = {}
        self.best = {}

    def value(self, C):
        """Rounds Cop needs against a robber confined to C, with N(C) occupied."""
        r = self.memo.get(C)
        if r is not None:
            return r
        a = self.a
        nb = neighbourhood_mask(a.adj, C)
        INF = float("inf")
        best, arg = INF, None
        if bin(nb).count("1") + 1 <= self.k:
            for w in bits(C):
                rest = C & ~(1 << w)
                worst = 0
                for c in components_mask(a.adj, rest):
                    if not c & a.active:
                        continue
                    worst = max(worst, self.value(c))
                    if worst + 1 >= best:
                        break
                if worst + 1 < best:
                    best, arg = worst + 1, w
        self.memo[C] = best
        self.best[C] = arg
        return best

    def move(self, X, C):
        nb = neighbourhood_mask(self.a.adj, C)
        self.value(C)
        w = self.best[C]
        return (nb | (1 << w)) if w is not None else None


# ---------------------------------------------------------------------------
# general search

class _Search:
    def __init__(self, arena, k, mono):
        self.a = arena
        self.k = k
        self.mono = mono
        self.memo = {}       # (X, C) -> [least winning budget, largest losing budget]
        self.nodes = 0

    def moves(self, X, C):
        a = self.a
        nx = bin(X).count("1")
        near = neighbourhood_mask(a.adj, C)
        order = list(bits(C)) + list(bits(near & ~X)) + list(bits(a.full & ~(C | near | X)))
        if not self.mono:
            if nx < self.k:
                for w in order:
                    yield X | (1 << w)
            else:
                xs = list(bits(X))
                for w in order:
                    for x in xs:
                        yield (X & ~(1 << x)) | (1 << w)
        else:
            xs = list(bits(X))
            need = nx + 1 - self.k
            for w in order:
                for sub in range(1 << len(xs)):
                    if bin(sub).count("1") < need:
                        continue
                    R = 0
                    for i, x in enumerate(xs):
                        if (sub >> i) & 1:
                            R |= 1 << x
                    yield (X & ~R) | (1 << w)

    def outcome(self, X, C, Xn):
        """None for an illegal (non-monotone) move, else the robber's options."""
        a = self.a
        R = a.region(X & Xn, C)
        if self.mono and not a.is_monotone(R, C):
            return None
        resp = a.robber_comps(Xn, within=R)
        resp.sort(key=lambda c: -bin(c).count("1"))
        return resp

    def win(self, X, C, r):
        if r <= 0:
            return False
        key = (X, C)
        e = self.memo.get(key)
        if e is not None:
            if e[0] <= r:
                return True
            if e[1] >= r:
                return False
        else:
            e = [float("inf"), 0]
            self.memo[key] = e
        self.nodes += 1
        res = False
        for Xn in self.moves(X, C):
            resp = self.outcome(X, C, Xn)
            if resp is None:
                continue
            if not resp:
                res = True
                break
            if r == 1:
                continue
            if all(self.win(Xn, c, r - 1) for c in resp):
                res = True
                break
        if res:
            e[0] = min(e[0], r)
        else:
            e[1] = max(e[1], r)
        return res

    def value(self, X, C, qmax):
        for r in range(1, qmax + 1):
            if self.win(X, C, r):
                return r
        return None

    def best_move(self, X, C, qmax):
        d = self.value(X, C, qmax)
        if d is None:
            return None, None
        for Xn in self.moves(X, C):
            resp = self.outcome(X, C, Xn)
            if resp is None:
                continue
            if all(self.win(Xn, c, d - 1) for c in resp):
                return Xn, d
        raise AssertionError("winning move vanished")

    def robber_reply(self, X, C, r, Xn):
        resp = self.outcome(X, C, Xn)
        if resp is None:
            raise GameError("illegal cop move")
        for c in resp:
            if not self.win(Xn, c, r - 1):
                return c
        return None


@dataclass
class RobberCertificate:
    """Answers every cop move with a robber move that keeps him alive."""
    search: object
    arena: object
    start: int          # initial component (bitmask)
    q: int

    @property
    def component(self):
        return _fs(self.start)

    def reply(self, X, C, rounds_left, Xn):
        c = self.search.robber_reply(mask_of(X), mask_of(C), rounds_left, mask_of(Xn))
        return _fs(c) if c is not None else None


class Solver:
    """Exact solver for one (graph, k, variant, board); reusable across q."""

    def __init__(self, g, k, variant="CR", board="G"):
        if k < 1:
            raise GameError("need at least one cop")
        self.g = g
        self.k = k
        self.variant = variant
        self.board = board
        self.arena, self.mono = _prepare(g, variant, board)
        self.fast = self.mono and self.arena.vertex_like
        if self.fast:
            self.mv = _MonotoneValue(self.arena, k)
        self.search = _Search(self.arena, k, self.mono)

    def starts(self):
        return self.arena.robber_comps(0)

    def value(self, qmax):
        """Least q <= qmax for which Cop wins, or None."""
        worst = 0
        for C in self.starts():
            if self.fast:
                v = self.mv.value(C)
                v = v if v <= qmax else None
            else:
                v = self.search.value(0, C, qmax)
            if v is None:
                return None
            worst = max(worst, v)
        return worst

    def cop_wins(self, q):
        v = self.value(q)
        return v is not None

    def strategy(self, qmax):
        """Positional strategy on all positions reachable against any robber."""
        a = self.arena
        moves = {}
        worst = 0
        todo = [(0, C) for C in self.starts()]
        seen = set()
        while todo:
            X, C = todo.pop()
            if (X, C) in seen:
                continue
            seen.add((X, C))
            if self.fast:
                Xn = self.mv.move(X, C)
                d = self.mv.value(C)
                if d > qmax:
                    return None
            else:
                Xn, d = self.search.best_move(X, C, qmax)
                if Xn is None:
                    return None
            if X == 0:
                worst = max(worst, d)
            moves[(_fs(X), _fs(C))] = _fs(Xn)
            R = a.region(X & Xn, C)
            for c in a.robber_comps(Xn, within=R):
                todo.append((Xn, c))
        return CopStrategy(moves, self.k, self.variant, self.board, worst)

    def solve(self, q):
        v = self.value(q)
        if v is not None:
            return CopWins(self.strategy(v), v)
        for C in self.starts():
            if self.fast:
                ok = self.mv.value(C) <= q
            else:
                ok = self.search.win(0, C, q)
            if not ok:
                return RobberWins(RobberCertificate(self.search, self.arena, C, q))
        raise AssertionError("inconsistent game value")


def solve(g, k, q, variant="CR", board="G", cap=30):
    if g.n > cap:
        raise GameError(f"graph has {g.n} vertices, above the solver cap {cap}")
    if q < 0:
        raise GameError("rounds must be non-negative")
    return Solver(g, k, variant, board).solve(q)


def cop_wins(g, k, q, variant="CR", board="G"):
    return Solver(g, k, variant, board).cop_wins(q)


# ---------------------------------------------------------------------------
# verification by exhaustive playout

@dataclass
class Verdict:
    ok: bool
    reason: str = ""
    line: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_strategy(g, strategy, k, q, variant=None, board=None):
    """Play the strategy against every robber; ok iff every play ends in a
    catch within q rounds.  Monotone variants also check each move."""
    variant = variant or strategy.variant
    board = board or strategy.board
    a, mono = _prepare(g, variant, board)
    moves = {(mask_of(X), mask_of(C)): mask_of(Y) for (X, C), Y in strategy.moves.items()}
    seen = {}

    def play(X, C, r, line):
        key = (X, C)
        if seen.get(key, -1) >= r:
            return None
        Xn = moves.get(key)
        here = line + [(sorted(bits(X)), sorted(bits(C)))]
        if Xn is None:
            return Verdict(False, "strategy undefined at position", here)
        if bin(Xn).count("1") > k:
            return Verdict(False, f"more than {k} cops", here)
        if bin(Xn & ~X).count("1") > 1:
            return Verdict(False, "more than one new cop in a move", here)
        R = a.region(X & Xn, C)
        if mono and not a.is_monotone(R, C):
            return Verdict(False, "non-monotone move", here)
        resp = a.robber_comps(Xn, within=R)
        if resp and r <= 1:
            return Verdict(False, f"robber survives {q} rounds", here)
        for c in resp:
            bad = play(Xn, c, r - 1, here)
            if bad is not None:
                return bad
        seen[key] = r
        return None

    for C in a.robber_comps(0):
        if q <= 0:
            return Verdict(False, "robber survives 0 rounds", [([], sorted(bits(C)))])
        bad = play(0, C, q, [])
        if bad is not None:
            return bad
    return Verdict(True)


def play_certificate(cert, strategy, q):
    """Run a cop strategy against a robber certificate; True if the robber
    survives (as the certificate promises)."""
    X, C = frozenset(), cert.component
    for r in range(q, 0, -1):
        Xn = strategy.next(X, C)
        if Xn is None:
            return True
        c = cert.reply(X, C, r, Xn)
        if c is None:
            return False
        X, C = Xn, c
    return True


# ---------------------------------------------------------------------------
# strategy read off a pebble forest cover

def cop_strategy_from_pfc(g, pfc):
    """Cops follow the forest from the root towards the robber, always
    standing on the bag of the current forest vertex."""
    from .decomp import validate_pfc, pfc_depth
    from . import tree as T
    bad = validate_pfc(g, pfc)
    if bad is not None:
        raise GameError(f"invalid forest cover: {bad.message}")
    n = g.n
    parent = list(pfc.parent)
    anc = [T.ancestors(parent, v) for v in range(n)]

    def bag(t):
        out, used = set(), set()
        for u in anc[t]:
            if pfc.pebbles[u] not in used:
                out.add(u)
            used.add(pfc.pebbles[u])
        return frozenset(out)

    bags = [bag(t) for t in range(n)]
    at_bag = {}
    for t in range(n):
        at_bag.setdefault(bags[t], t)
    a = Arena(g, False)
    moves = {}
    todo = [(0, C) for C in a.robber_comps(0)]
    seen = set()
    while todo:
        X, C = todo.pop()
        if (X, C) in seen:
            continue
        seen.add((X, C))
        y = min(bits(C))
        if X == 0:
            nxt = anc[y][-1]
        else:
            cur = at_bag[_fs(X)]
            chain = anc[y]
            if cur not in chain:
                raise GameError("robber left the subtree of the current forest vertex")
            nxt = chain[chain.index(cur) - 1]
        Xn = mask_of(bags[nxt])
        moves[(_fs(X), _fs(C))] = _fs(Xn)
        R = a.region(X & Xn, C)
        for c in a.robber_comps(Xn, within=R):
            todo.append((Xn, c))
    return CopStrategy(moves, max(pfc.k, 1), "monCR", "G", pfc_depth(pfc))
