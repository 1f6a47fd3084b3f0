"""Girth, shortest cycles, density, and the girth-refined coloring bound.

Girth is always computed on the underlying simple graph: parallel pairs never
count as 2-cycles (cycles start at length 3).  Acyclic graphs have infinite
girth, represented as math.inf.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import InstanceTooLarge, NotShortestCycle
from .multigraph import Multigraph, SimpleGraphView, underlying_simple

INFINITE_GIRTH = math.inf

DENSITY_ENUMERATION_CAP = 22


@dataclass(frozen=True)
class CycleSeq:
    """A simple cycle as an ordered vertex sequence (consecutive + wraparound adjacent)."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Consecutive pairs (including wraparound) as sorted (u, v)."""
        vs = self.vertices
        out = []
        for i in range(len(vs)):
            u, v = vs[i], vs[(i + 1) % len(vs)]
            out.append((u, v) if u < v else (v, u))
        return out

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class DensityWitness:
    gamma: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ShortCycleViolation:
    """One failed clause of the shortest-cycle neighborhood bounds."""

    clause: int
    vertices: tuple[int, ...]
    value: int
    limit: int

    def to_json_obj(self) -> dict:
        return {
            "clause": self.clause,
            "vertices": list(self.vertices),
            "value": self.value,
            "limit": self.limit,
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def subgraph_girth(view: SimpleGraphView, within: frozenset[int]) -> int | float:
    """BFS from every root; min closed-walk bound over non-tree edges is exact."""
    best: int | float = INFINITE_GIRTH
    members = sorted(within)
    for root in members:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in view.adj[x]:
                if y not in within:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y and parent[y] != x:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    return best


def girth(G: Multigraph) -> int | float:
    """Length of a shortest cycle (>= 3) of the underlying simple graph, or inf."""
    view = underlying_simple(G)
    return subgraph_girth(view, frozenset(range(G.n)))


def shortest_cycle(view: SimpleGraphView, within: frozenset[int] | set[int]) -> CycleSeq | None:
    """Canonical shortest cycle of the subgraph induced on `within`, or None.

    Tie-break among minimum-length cycles: each cycle is rotated/reflected to
    start at its smallest vertex; the lexicographically least sequence wins.
    """
    within = frozenset(within)
    g = subgraph_girth(view, within)
    if g == INFINITE_GIRTH:
        return None
    g = int(g)
    for start in sorted(within):
        best = _best_cycle_from(view, within, start, g)
        if best is not None:
            return CycleSeq(best)
    return None  # unreachable: finite girth guarantees a cycle


def _best_cycle_from(
    view: SimpleGraphView, within: frozenset[int], start: int, length: int
) -> tuple[int, ...] | None:
    """Lex-least cycle sequence of exactly `length` whose minimum vertex is `start`."""
    allowed = {v for v in within if v > start}
    dist = _bfs_dist(view, allowed | {start}, start)
    best: tuple[int, ...] | None = None
    path = [start]
    on_path = {start}

    def extend():
        nonlocal best
        depth = len(path)
        cur = path[-1]
        if depth == length:
            # close the cycle; keep the lex-least of the two orientations
            if start in view.adj[cur] and path[1] < path[-1]:
                cand = tuple(path)
                if best is None or cand < best:
                    best = cand
            return
        for y in sorted(view.adj[cur]):
            if y not in allowed or y in on_path:
                continue
            if dist.get(y, length + 1) > length - depth:
                continue
            path.append(y)
            on_path.add(y)
            extend()
            path.pop()
            on_path.remove(y)

    extend()
    return best


def _bfs_dist(view: SimpleGraphView, allowed: set[int], src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in view.adj[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def density(G: Multigraph, cap: int = DENSITY_ENUMERATION_CAP) -> DensityWitness:
    """Exact max over odd vertex sets S, |S| >= 3, of ceil(2|E(G[S])| / (|S|-1)).

    Induced subgraphs dominate all subgraphs on a fixed vertex set, so this
    realizes the maximum over all odd-order subgraphs.
    """
    if G.n > cap:
        raise InstanceTooLarge(f"density enumeration needs n <= {cap}, got {G.n}")
    if G.n < 3 or not G.edges:
        return DensityWitness(0, (0, 1, 2) if G.n >= 3 else ())
    total = G.edge_count
    best_gamma = 0
    best_set: tuple[int, ...] = (0, 1, 2)
    mult_map = G.mult_map
    for size in range(3, G.n + 1, 2):
        # no subset of this size can beat the incumbent: skip the whole size
        if _ceil_div(2 * total, size - 1) <= best_gamma:
            continue
        for S in combinations(range(G.n), size):
            inside = 0
            for i, u in enumerate(S):
                for v in S[i + 1 :]:
                    inside += mult_map.get((u, v), 0)
            gamma = _ceil_div(2 * inside, size - 1)
            if gamma > best_gamma or (gamma == best_gamma and S < best_set):
                best_gamma = gamma
                best_set = S
    return DensityWitness(best_gamma, best_set)


def steffen_bound(G: Multigraph) -> int:
    """Delta + ceil(mu / floor(g/2)); Delta + 1 for acyclic graphs with an edge.

    The acyclic case takes the g -> inf limit of the ceiling term, which is 1
    for mu >= 1 (sound: Vizing gives chi' <= Delta + 1 when mu = 1, and
    bipartite acyclic graphs have chi' = Delta anyway).  Edgeless graphs
    return Delta = 0.
    """
    delta_max = max(G.degrees, default=0)
    mu = G.max_mult
    if mu == 0:
        return delta_max
    g = girth(G)
    if g == INFINITE_GIRTH:
        return delta_max + 1
    return delta_max + _ceil_div(mu, int(g) // 2)


def check_short_cycle_properties(
    G: Multigraph, C: CycleSeq, within: frozenset[int] | set[int]
) -> list[ShortCycleViolation]:
    """Evaluate the neighbor-count bounds a shortest cycle forces on outside vertices.

    Clauses, by cycle length threshold (all neighborhoods taken in the
    subgraph induced on `within`):
      1. |C| >= 5: every outside vertex has at most 1 neighbor on C.
      2. |C| >= 7: every adjacent outside pair has at most 1 C-neighbor total.
      3. |C| >= 8: every outside 5-vertex path has at most 2 C-neighbors total.
      4. |C| >= 6: every outside 3-vertex path has at most 2 C-neighbors total.

    Returns the list of violated clause instances (empty when all bounds hold;
    they always hold for genuine shortest cycles, so any violation is a bug).
    """
    within = frozenset(within)
    view = underlying_simple(G)
    _require_shortest_cycle(view, C, within)
    cyc = C.vertex_set()
    outside = sorted(within - cyc)
    ncount = {
        v: sum(1 for c in cyc if view.has_edge(v, c)) for v in outside
    }
    length = len(C)
    violations: list[ShortCycleViolation] = []

    if length >= 5:
        for v in outside:
            if ncount[v] > 1:
                violations.append(ShortCycleViolation(1, (v,), ncount[v], 1))
    if length >= 7:
        for u in outside:
            for v in sorted(view.adj[u]):
                if v in within and v not in cyc and u < v:
                    val = ncount[u] + ncount[v]
                    if val > 1:
                        violations.append(ShortCycleViolation(2, (u, v), val, 1))
    if length >= 6:
        for p in _outside_paths(view, outside, set(outside), 3):
            val = sum(ncount[v] for v in p)
            if val > 2:
                violations.append(ShortCycleViolation(4, p, val, 2))
    if length >= 8:
        for p in _outside_paths(view, outside, set(outside), 5):
            val = sum(ncount[v] for v in p)
            if val > 2:
                violations.append(ShortCycleViolation(3, p, val, 2))
    return violations


def _require_shortest_cycle(view: SimpleGraphView, C: CycleSeq, within: frozenset[int]) -> None:
    vs = C.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise NotShortestCycle("not a simple cycle sequence")
    for v in vs:
        if v not in within:
            raise NotShortestCycle(f"cycle vertex {v} outside the given vertex set")
    for i in range(len(vs)):
        u, v = vs[i], vs[(i + 1) % len(vs)]
        if not view.has_edge(u, v):
            raise NotShortestCycle(f"consecutive vertices {u}, {v} not adjacent")
    g = subgraph_girth(view, within)
    if g != len(vs):
        raise NotShortestCycle(f"cycle has length {len(vs)} but girth is {g}")


def _outside_paths(
    view: SimpleGraphView, outside: list[int], allowed: set[int], k: int
) -> list[tuple[int, ...]]:
    """All simple k-vertex paths inside `allowed`, one orientation per path."""
    paths: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path: set[int] = set()

    def extend():
        if len(path) == k:
            if path[0] < path[-1]:
                paths.append(tuple(path))
            return
        for y in sorted(view.adj[path[-1]]):
            if y in allowed and y not in on_path:
                path.append(y)
                on_path.add(y)
                extend()
                path.pop()
                on_path.remove(y)

    for v in outside:
        path = [v]
        on_path = {v}
        extend()
    return paths
