"""The bijective k-pebble game with a bounded number of rounds.

A round: Spoiler picks a pebble pair, Duplicator answers with a bijection
f: V(G) -> V(H), Spoiler puts the pair on (v, f(v)).  Duplicator survives
a round iff, for every pebble choice, the relation {(v, w): Duplicator
survives the remaining rounds after placing on (v, w)} has a perfect
matching.  Positions are memoised as multisets of pebbled pairs, which is
sound because pebbles are interchangeable."""
from dataclasses import dataclass

from .graph import GraphError


class PebbleError(ValueError):
    pass


def is_partial_isomorphism(g, h, pairs):
    """pairs: iterable of (v, w).  Equality and adjacency must agree."""
    pairs = list(pairs)
    for i, (a, b) in enumerate(pairs):
        if g.has_edge(a, a) != h.has_edge(b, b):
            return False
        for c, d in pairs[i + 1:]:
            if (a == c) != (b == d):
                return False
            if g.has_edge(a, c) != h.has_edge(b, d):
                return False
    return True


def perfect_matching(n, edge, order=None):
    """Kuhn's augmenting paths on an n x n relation given by edge(v, w),
    evaluated lazily.  Returns match (list v -> w) or None."""
    cache = {}

    def ok(v, w):
        key = (v, w)
        if key not in cache:
            cache[key] = edge(v, w)
        return cache[key]

    owner = [-1] * n
    for v in order or range(n):
        seen = [False] * n

        def aug(x):
            for w in range(n):
                if not seen[w] and ok(x, w):
                    seen[w] = True
                    if owner[w] < 0 or aug(owner[w]):
                        owner[w] = x
                        return True
            return False

        if not aug(v):
            return None
    match = [0] * n
    for w, v in enumerate(owner):
        match[v] = w
    return match


@dataclass
class PebbleResult:
    duplicator_wins: bool
    k: int
    q: int
    spoiler_line: list = None      # positions along one Spoiler win, if any

    def __bool__(self):
        return self.duplicator_wins

    def __str__(self):
        who = "Duplicator" if self.duplicator_wins else "Spoiler"
        return f"{who} wins the {self.q}-round bijective {self.k}-pebble game"


class PebbleGame:
    def __init__(self, g, h, k, symmetric=True, cap=64):
        if g.n > cap or h.n > cap:
            raise PebbleError(f"graphs above the pebble game cap {cap}")
        if k < 1:
            raise PebbleError("need at least one pebble")
        self.g, self.h, self.k = g, h, k
        self.symmetric = symmetric
        self.memo = {}

    def _key(self, pos, r):
        placed = tuple(sorted(p for p in pos if p is not None)) if self.symmetric else pos
        return (placed, r)

    def wins(self, pos, r):
        """Duplicator survives r more rounds from pos (tuple of k entries,
        each None or a pair)."""
        key = self._key(pos, r)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        placed = [p for p in pos if p is not None]
        if not is_partial_isomorphism(self.g, self.h, placed):
            res = False
        elif r == 0:
            res = True
        elif self.g.n != self.h.n:
            res = False
        else:
            res = True
            for i in self._choices(pos):
                if self._matching(pos, i, r) is None:
                    res = False
                    break
        self.memo[key] = res
        return res

    def _choices(self, pos):
        """Pebble indices worth lifting: one free pebble, and one per
        distinct pebbled pair when pebbles are interchangeable."""
        out, seen = [], set()
        for i, p in enumerate(pos):
            tag = p if self.symmetric else i
            if tag in seen:
                continue
            seen.add(tag)
            out.append(i)
        return out

    def _matching(self, pos, i, r):
        def edge(v, w):
            nxt = pos[:i] + ((v, w),) + pos[i + 1:]
            return self.wins(nxt, r - 1)
        return perfect_matching(self.g.n, edge)

    def spoiler_line(self, pos, r):
        """A pebble choice and a vertex Spoiler can pick against any
        bijection, repeated until the position breaks."""
        line = []
        while r > 0 and self.wins(pos, r) is False:
            placed = [p for p in pos if p is not None]
            if not is_partial_isomorphism(self.g, self.h, placed):
                break
            for i in self._choices(pos):
                if self._matching(pos, i, r) is None:
                    line.append({"lift": i, "position": [list(p) if p else None for p in pos]})
                    break
            break
        return line


def bijective_pebble_game(g, h, k, q, start=None, symmetric=True, cap=64):
    """Winner of the q-round bijective k-pebble game on (g, h) from start
    (a dict pebble index -> (v, w), indices 1..k)."""
    start = start or {}
    for i in start:
        if not 1 <= i <= k:
            raise PebbleError(f"pebble index {i} outside 1..{k}")
    for i, (v, w) in start.items():
        if not (0 <= v < g.n and 0 <= w < h.n):
            raise GraphError(f"pebble {i} sits on an unknown vertex")
    pos = tuple(tuple(start[i]) if i in start else None for i in range(1, k + 1))
    game = PebbleGame(g, h, k, symmetric, cap)
    ok = game.wins(pos, q)
    return PebbleResult(ok, k, q, None if ok else game.spoiler_line(pos, q))
