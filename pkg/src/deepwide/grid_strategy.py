"""Explicit h+1 cop strategy on the h x l grid: place a diagonal that cuts
the grid in two, then sweep a diagonal two columns at a time towards the
corner of the robber's side.  Cells are 1-indexed (row, column)."""
from .game import Arena, CopStrategy, GameError, _fs
from .graph import bits, grid, mask_of


def grid_strategy_rounds(h, l):
    return (l * h) // 4 + h + 1


def grid_cop_strategy(h, l, clamp=False):
    """clamp=True moves cops that would leave the grid to column 1 instead
    of skipping them; it is kept for comparison and is one round slower on
    some grids."""
    if not 3 < h < l - 3:
        raise GameError(f"need 3 < h < l - 3, got h={h}, l={l}")
    g = grid(h, l)
    vid = {name: v for v, name in enumerate(g.names)}
    a = Arena(g, False)
    off = l // 2 - h // 2
    diag = [(i, off + i) for i in range(1, h + 1)]

    def frame_map(side):
        if side == "left":
            return lambda c: c
        return lambda c: (h + 1 - c[0], l + 1 - c[1])

    def cell_mask(cells, side):
        f = frame_map(side)
        return mask_of(vid[f(c)] for c in cells)

    moves = {}

    def record(X, C, Xn):
        key = (_fs(X), _fs(C))
        old = moves.get(key)
        if old is not None and old != _fs(Xn):
            raise GameError(f"strategy is not positional at {sorted(key[0])}")
        moves[key] = _fs(Xn)

    def sweep_set(i, j):
        cells = [(r, max(1, j + r - 1)) for r in range(1, i + 1)]
        cells += [(r, max(1, j + r - 3)) for r in range(i, h + 1)]
        return cells

    todo = [(0, C, ("place", 0)) for C in a.robber_comps(0)]
    seen = set()
    while todo:
        X, C, st = todo.pop()
        if (X, C, st) in seen:
            continue
        seen.add((X, C, st))
        if st[0] == "place":
            t = st[1]
            Xn = X | (1 << vid[diag[t]])
            nxt = ("place", t + 1) if t + 1 < h else ("side",)
        elif st[0] == "side":
            side = "left" if (C >> vid[(h, 1)]) & 1 else "right"
            if side == "right" and not (C >> vid[(1, l)]) & 1:
                raise GameError("robber is on neither side of the diagonal")
            fa = off if side == "left" else l - off - h
            Xn = X | cell_mask([(h, fa + h - 2)], side)
            nxt = ("sweep", side, h, fa + 1)
        else:
            _, side, i, j = st
            single = cell_mask([(i, max(1, j + i - 2))], side)
            if C == single or bin(C).count("1") == 1:
                s = C.bit_length() - 1
                spare = [x for x in bits(X) if not (a.adj[s] >> x) & 1]
                Xn = (X & ~(1 << spare[0])) | (1 << s)
                nxt = ("done",)
            else:
                # cells left of column 1 belong to the part of the diagonal
                # that no longer exists; skip them without spending a round
                for _ in range(h + 1):
                    if i > 1:
                        src, tgt, nxt = (i, j + i - 1), (i - 1, j + i - 4), ("sweep", side, i - 1, j)
                    else:
                        src, tgt, nxt = (i, j + i - 1), (h, j + h - 5), ("sweep", side, h, j - 2)
                    if clamp:
                        tgt = (tgt[0], max(1, tgt[1]))
                    if tgt[1] >= 1:
                        break
                    _, _, i, j = nxt
                else:
                    raise GameError("sweep ran off the grid")
                drop = cell_mask([src], side) if src[1] >= 1 else 0
                Xn = (X & ~drop) | cell_mask([tgt], side)
        record(X, C, Xn)
        R = a.region(X & Xn, C)
        for c in a.robber_comps(Xn, within=R):
            todo.append((Xn, c, nxt))
    return CopStrategy(moves, h + 1, "CR", "G", grid_strategy_rounds(h, l))
