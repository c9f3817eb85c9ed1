"""Brute-force census of 2-cell embeddings via rotation systems.

Orientable embeddings are the pure rotation systems.  General embeddings are
T-rotation systems: a rotation system plus a twist bit on every co-tree edge
of a fixed spanning tree T.  With tree edges untwisted, an embedding is
orientable exactly when every co-tree bit is 0, so the crosscap census is the
set of pairs with at least one twist.

Faces are counted by tracing flags (dart, local orientation).  Every face is
traced once in each direction, so the number of faces is half the number of
orbits of the tracing permutation.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .poly import IntPolynomial

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "EMBEDLIMIT_BUDGET"


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} embeddings, budget is {budget}")
        self.required = required
        self.budget = budget


class Disconnected(ValueError):
    pass


def budget_from_env() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class MultiGraph:
    """Connected multigraph; loops and repeated edges are allowed.

    Edge i has dart 2i at its first endpoint and dart 2i+1 at its second.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    roots: Optional[tuple[int, int]] = None

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        for i, (u, v) in enumerate(edges):
            for w in (u, v):
                if not 0 <= w < self.vertex_count:
                    raise ValueError(f"edge {i} endpoint {w} out of range 0..{self.vertex_count - 1}")
        if self.roots is not None:
            roots = tuple(int(r) for r in self.roots)
            if len(roots) != 2 or not all(0 <= r < self.vertex_count for r in roots):
                raise ValueError(f"roots {self.roots} invalid")
            object.__setattr__(self, "roots", roots)
        if not self._connected():
            raise Disconnected("graph is not connected")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for _, w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def cycle_rank(self) -> int:
        return self.edge_count - self.vertex_count + 1

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """adj[u] = [(edge index, neighbour)] in edge-index order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((i, v))
            if u != v:
                adj[v].append((i, u))
        return adj

    def darts_at(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            out[u].append(2 * i)
            out[v].append(2 * i + 1)
        return out

    def degrees(self) -> list[int]:
        return [len(d) for d in self.darts_at()]

    def rotation_count(self) -> int:
        return math.prod(math.factorial(d - 1) for d in self.degrees() if d > 0)

    def embedding_count(self) -> int:
        """Number of general (T-rotation) embeddings."""
        return self.rotation_count() << self.cycle_rank


def spanning_tree(G: MultiGraph) -> list[int]:
    """Edge indices of the BFS tree from vertex 0, scanning edges by index."""
    adj = G.adjacency()
    seen = [False] * G.vertex_count
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for e, w in adj[u]:
            if not seen[w]:
                seen[w] = True
                tree.append(e)
                queue.append(w)
    if len(tree) != G.vertex_count - 1:
        raise Disconnected("graph is not connected")
    return sorted(tree)


def cotree_edges(G: MultiGraph) -> list[int]:
    tree = set(spanning_tree(G))
    return [e for e in range(G.edge_count) if e not in tree]


def iter_rotations(G: MultiGraph) -> Iterator[list[list[int]]]:
    """All rotation systems; each vertex's first dart stays first."""
    per_vertex = []
    for darts in G.darts_at():
        if len(darts) <= 1:
            per_vertex.append([list(darts)])
        else:
            head, rest = darts[0], darts[1:]
            per_vertex.append([[head, *p] for p in itertools.permutations(rest)])
    for combo in itertools.product(*per_vertex):
        yield list(combo)


def _successors(rotation: Sequence[Sequence[int]], n_darts: int) -> tuple[list[int], list[int]]:
    succ = [0] * n_darts
    pred = [0] * n_darts
    for cyc in rotation:
        m = len(cyc)
        for i, d in enumerate(cyc):
            nxt = cyc[(i + 1) % m]
            succ[d] = nxt
            pred[nxt] = d
    return succ, pred


def trace_orbits(succ: Sequence[int], pred: Sequence[int], twist: Sequence[int]) -> list[int]:
    """Orbit id of every flag 2*dart + s under face tracing.

    From flag (d, s) the walk crosses the edge of d to dart d^1, flips s if
    the edge is twisted, then leaves along the rotation successor (s = 0) or
    predecessor (s = 1) of d^1.
    """
    n = 2 * len(succ)
    orbit = [-1] * n
    count = 0
    for start in range(n):
        if orbit[start] >= 0:
            continue
        st = start
        while orbit[st] < 0:
            orbit[st] = count
            d, s = st >> 1, st & 1
            o = d ^ 1
            s ^= twist[d >> 1]
            st = ((succ[o] if s == 0 else pred[o]) << 1) | s
        count += 1
    return orbit


def face_ids(succ: Sequence[int], pred: Sequence[int], twist: Sequence[int]) -> list[int]:
    """Face id of every flag; a face is an orbit together with its reverse."""
    orbit = trace_orbits(succ, pred, twist)
    out = []
    for st, oid in enumerate(orbit):
        d, s = st >> 1, st & 1
        rev = ((d ^ 1) << 1) | (s ^ twist[d >> 1] ^ 1)
        out.append(min(oid, orbit[rev]))
    return out


def count_faces(succ: Sequence[int], pred: Sequence[int], twist: Sequence[int]) -> int:
    n = 2 * len(succ)
    if n == 0:
        return 1
    if not any(twist):
        # orientable: one direction of every face lives on the s = 0 flags
        seen = bytearray(len(succ))
        faces = 0
        for start in range(len(succ)):
            if seen[start]:
                continue
            d = start
            while not seen[d]:
                seen[d] = 1
                d = succ[d ^ 1]
            faces += 1
        return faces
    seen = bytearray(n)
    orbits = 0
    for start in range(n):
        if seen[start]:
            continue
        st = start
        while not seen[st]:
            seen[st] = 1
            d, s = st >> 1, st & 1
            o = d ^ 1
            s ^= twist[d >> 1]
            st = ((succ[o] if s == 0 else pred[o]) << 1) | s
        orbits += 1
    return orbits // 2


def face_trace(G: MultiGraph, rotation: Sequence[Sequence[int]], twist: Optional[Sequence[int]] = None) -> int:
    """Number of faces of the embedding (rotation, twist); twist is per edge."""
    if twist is None:
        twist = [0] * G.edge_count
    succ, pred = _successors(rotation, 2 * G.edge_count)
    return count_faces(succ, pred, twist)


# --- census -----------------------------------------------------------------

# classifier specs: None, ("vertices", u, v) or ("edge", e)
Classifier = Optional[tuple]


def _classify(cls: Classifier, G: MultiGraph, succ, pred, twist) -> int:
    """0 when the roots are on different faces, 1 when they share one."""
    fid = face_ids(succ, pred, twist)
    if cls[0] == "edge":
        e = cls[1]
        return 1 if fid[(2 * e) << 1] == fid[((2 * e) << 1) | 1] else 0
    _, u, v = cls
    darts = G.darts_at()
    fu = {fid[(d << 1) | s] for d in darts[u] for s in (0, 1)}
    fv = {fid[(d << 1) | s] for d in darts[v] for s in (0, 1)}
    return 1 if fu & fv else 0


def _census_chunk(G: MultiGraph, general: bool, cls: Classifier, first_choice: Optional[int]) -> Counter:
    """Histogram {(class, euler_genus, twisted): count} over one slice of rotations."""
    V, E = G.vertex_count, G.edge_count
    n_darts = 2 * E
    cotree = cotree_edges(G) if general else []
    hist: Counter = Counter()
    if E == 0:
        hist[(1 if cls else 0, 0, False)] += 1
        return hist
    twists = []
    for bits in itertools.product((0, 1), repeat=len(cotree)):
        tw = [0] * E
        for e, b in zip(cotree, bits):
            tw[e] = b
        twists.append((tw, any(bits)))
    for idx, rotation in enumerate(iter_rotations(G)):
        if first_choice is not None and idx % _CHUNKS != first_choice:
            continue
        succ, pred = _successors(rotation, n_darts)
        for tw, twisted in twists:
            faces = count_faces(succ, pred, tw)
            eg = 2 - V + E - faces
            c = _classify(cls, G, succ, pred, tw) if cls else 0
            hist[(c, eg, twisted)] += 1
    return hist


_CHUNKS = 64


def _census(G: MultiGraph, general: bool, cls: Classifier, budget: Optional[int], workers: int) -> Counter:
    required = G.embedding_count() if general else G.rotation_count()
    budget = budget_from_env() if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)
    if workers <= 1 or required < 20000:
        return _census_chunk(G, general, cls, None)
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_census_chunk, G, general, cls, i) for i in range(_CHUNKS)]
        for f in futures:
            total.update(f.result())
    return total


def _poly(hist: dict[int, int]) -> IntPolynomial:
    if not hist:
        return IntPolynomial()
    out = [0] * (max(hist) + 1)
    for i, c in hist.items():
        out[i] += c
    return IntPolynomial(out)


def genus_polynomial(G: MultiGraph, budget: Optional[int] = None, workers: int = 1) -> IntPolynomial:
    hist = _census(G, False, None, budget, workers)
    by_genus: Counter = Counter()
    for (_, eg, _), c in hist.items():
        if eg % 2 or eg < 0:
            raise AssertionError(f"orientable embedding with Euler genus {eg}")
        by_genus[eg // 2] += c
    return _poly(by_genus)


def euler_and_crosscap_polynomials(
    G: MultiGraph, budget: Optional[int] = None, workers: int = 1
) -> tuple[IntPolynomial, IntPolynomial]:
    hist = _census(G, True, None, budget, workers)
    euler: Counter = Counter()
    crosscap: Counter = Counter()
    for (_, eg, twisted), c in hist.items():
        euler[eg] += c
        if twisted:
            crosscap[eg] += c
    return _poly(euler), _poly(crosscap)


def partial_polynomials(
    G: MultiGraph,
    roots: Optional[tuple[int, int]] = None,
    *,
    root_edge: Optional[int] = None,
    euler: bool = False,
    budget: Optional[int] = None,
    workers: int = 1,
) -> tuple[IntPolynomial, IntPolynomial]:
    """Split the genus (or Euler-genus) polynomial into (different, same).

    With ``roots`` the split is whether the two root vertices lie on a common
    face boundary walk.  With ``root_edge`` it is whether the two sides of that
    edge lie on the same face.
    """
    if root_edge is not None:
        if not 0 <= root_edge < G.edge_count:
            raise ValueError(f"root_edge {root_edge} out of range")
        cls: tuple = ("edge", root_edge)
    else:
        roots = roots or G.roots
        if roots is None:
            raise ValueError("partial split needs roots or a root edge")
        cls = ("vertices", roots[0], roots[1])
    hist = _census(G, euler, cls, budget, workers)
    parts: tuple[Counter, Counter] = (Counter(), Counter())
    for (c, eg, _), cnt in hist.items():
        parts[c][eg if euler else eg // 2] += cnt
    return _poly(parts[0]), _poly(parts[1])


# --- EmbeddingDistribution wrappers ----------------------------------------


def genus_distribution(G: MultiGraph, budget: Optional[int] = None, workers: int = 1):
    from .distributions import EmbeddingDistribution, Kind

    return EmbeddingDistribution.from_polynomial(genus_polynomial(G, budget, workers), Kind.GENUS)


def euler_and_crosscap_distributions(G: MultiGraph, budget: Optional[int] = None, workers: int = 1):
    """(Euler-genus distribution, crosscap distribution or None if G is a tree)."""
    from .distributions import EmbeddingDistribution, Kind

    euler, crosscap = euler_and_crosscap_polynomials(G, budget, workers)
    cc = None if crosscap.is_zero() else EmbeddingDistribution.from_polynomial(crosscap, Kind.CROSSCAP)
    return EmbeddingDistribution.from_polynomial(euler, Kind.EULER), cc


def partial_distributions(G: MultiGraph, root_u: int, root_v: int, *, euler: bool = False, budget=None):
    """(D_H, S_H): roots on different face walks / on a common face walk."""
    return partial_polynomials(G, (root_u, root_v), euler=euler, budget=budget)


# --- graph builders ---------------------------------------------------------


def amalgamate(
    H: MultiGraph,
    u: Sequence[int],
    v: Sequence[int],
    n: int,
    left_spider: Optional[tuple[MultiGraph, Sequence[int]]] = None,
    right_spider: Optional[tuple[MultiGraph, Sequence[int]]] = None,
) -> tuple[MultiGraph, list[int], list[int]]:
    """Build G_n of an H-linear family, optionally with spiders at both ends.

    Copy i of H has its u-roots merged with the v-roots of copy i-1.  A spider
    (J, t) is merged by identifying t[j] with the j-th left root u_{1,j}
    (left) or right root v_{n,j} (right).  Returns the graph and the final
    vertex ids of the left and right roots.  With n = 0 the result is the
    left spider itself.
    """
    if n < 0 or (n == 0 and left_spider is None):
        raise ValueError("n must be >= 1 (or 0 with a left spider)")
    if len(u) != len(v):
        raise ValueError("u and v root lists must have equal length")
    if set(u) & set(v):
        raise ValueError("u and v roots must be disjoint")
    edges: list[tuple[int, int]] = []
    count = 0
    prev_v: list[int] = []
    first_u: list[int] = []
    for i in range(n):
        mapping = {}
        for j, r in enumerate(u):
            if i > 0:
                mapping[r] = prev_v[j]
        for w in range(H.vertex_count):
            if w not in mapping:
                mapping[w] = count
                count += 1
        edges.extend((mapping[a], mapping[b]) for a, b in H.edges)
        if i == 0:
            first_u = [mapping[r] for r in u]
        prev_v = [mapping[r] for r in v]

    if n == 0:
        # the left spider alone; its roots serve as both ends
        if right_spider is not None:
            raise ValueError("n = 0 supports only a left spider")
        J, t = left_spider
        return J, list(t), list(t)

    def attach(spider, anchors):
        nonlocal count
        J, t = spider
        if len(t) > len(anchors):
            raise ValueError("spider has more roots than the family has attachment points")
        mapping = {r: anchors[j] for j, r in enumerate(t)}
        for w in range(J.vertex_count):
            if w not in mapping:
                mapping[w] = count
                count += 1
        edges.extend((mapping[a], mapping[b]) for a, b in J.edges)

    if left_spider is not None:
        attach(left_spider, first_u)
    if right_spider is not None:
        attach(right_spider, prev_v)
    return MultiGraph(count, tuple(edges)), first_u, prev_v
