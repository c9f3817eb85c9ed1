"""Derive the 3x3 production matrices of the iterated claw by enumeration.

Fixture provenance only.  Partial type of an embedding of Y_n = number of
distinct faces met by its three feet (1, 2 or 3).  Every embedding of Y_n
restricts to an embedding of Y_{n-1}; counting (type of restriction, type of
extension, genus increase) and dividing by the number of restrictions of
each type gives the matrix column by column.
"""

import sys
from collections import Counter, defaultdict

from embedlimit.enumerator import (
    MultiGraph, _successors, count_faces, cotree_edges, face_ids, iter_rotations,
)


def claw(n):
    edges = [(0, 1), (0, 2), (0, 3)]
    feet = [1, 2, 3]
    count = 4
    for _ in range(n - 1):
        w = count
        new = [count + 1, count + 2, count + 3]
        count += 4
        for f, g in zip(feet, new):
            edges += [(f, w), (f, g)]
        feet = new
    return MultiGraph(count, tuple(edges)), feet


def feet_type(G, feet, succ, pred, tw):
    fid = face_ids(succ, pred, tw)
    darts = G.darts_at()
    return len({fid[darts[f][0] << 1] for f in feet}) - 1


def derive(n, euler):
    G, feet = claw(n)
    Gp, feet_p = claw(n - 1)
    Ep = Gp.edge_count
    cot = cotree_edges(G)
    assert set(cotree_edges(Gp)) == {e for e in cot if e < Ep}
    col = defaultdict(Counter)
    base = Counter()
    twist_sets = [[0] * G.edge_count]
    if euler:
        import itertools
        twist_sets = []
        for bits in itertools.product((0, 1), repeat=len(cot)):
            tw = [0] * G.edge_count
            for e, b in zip(cot, bits):
                tw[e] = b
            twist_sets.append(tw)
    V, E, Vp = G.vertex_count, G.edge_count, Gp.vertex_count
    for rot in iter_rotations(G):
        succ, pred = _successors(rot, 2 * E)
        rp = [[d for d in cyc if d < 2 * Ep] for cyc in rot[:Vp]]
        sp, pp = _successors(rp, 2 * Ep)
        for tw in twist_sets:
            twp = tw[:Ep]
            egp = 2 - Vp + Ep - count_faces(sp, pp, twp)
            eg = 2 - V + E - count_faces(succ, pred, tw)
            j = feet_type(Gp, feet_p, sp, pp, twp)
            i = feet_type(G, feet, succ, pred, tw)
            delta = eg - egp if euler else (eg - egp) // 2
            col[(i, j)][delta] += 1
    # restriction multiplicity: each Y_{n-1} embedding extends in `ext` ways
    ext = 16 * (4 if euler else 1)
    mats = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            mats[i][j] = dict(col[(i, j)])
    counts = Counter()
    for (i, j), c in col.items():
        counts[j] += sum(c.values())
    return mats, {j: counts[j] // ext for j in counts}


if __name__ == "__main__":
    n = int(sys.argv[1])
    euler = len(sys.argv) > 2 and sys.argv[2] == "euler"
    mats, restr = derive(n, euler)
    print("restrictions per type", restr)
    for i in range(3):
        row = []
        for j in range(3):
            c = mats[i][j]
            if restr.get(j):
                deg = max(c) if c else -1
                coeffs = [c.get(d, 0) / restr[j] for d in range(deg + 1)]
            else:
                coeffs = None
            row.append(coeffs)
        print(row)
