"""Named multigraph families, canonical forms, and exhaustive enumeration.

Canonical forms: iterated neighborhood refinement partitions the vertices
into structurally distinct classes; remaining symmetry is resolved by
individualizing one vertex of the first non-singleton class and recursing,
taking the minimum multiplicity-matrix key over all completions.  This is an
exhaustive permutation search pruned to class-respecting relabelings, exact
for every multigraph (n <= 10 keeps even the fully symmetric cases cheap).

Enumeration proceeds in two layers: non-isomorphic simple graphs grown one
edge at a time with canonical-key deduplication (girth constraints prune
whole branches, since adding edges never increases girth), then multiplicity
assignments on each simple representative, deduplicated by full canonical
form of the resulting multigraph.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BadParameter, ConfigError, InstanceTooLarge
from .invariants import INFINITE_GIRTH, girth
from .multigraph import Multigraph, build, underlying_simple

CANONICAL_N_CAP = 10


@dataclass(frozen=True)
class CanonicalForm:
    key: str


@dataclass(frozen=True)
class EnumSpec:
    """Bounds for exhaustive enumeration of non-isomorphic multigraphs.

    Emits one representative per isomorphism class of graphs with minimum
    degree >= 1 (isolated vertices never change any invariant in scope) on
    exactly n vertices for each n in n_min..n_max, with per-pair multiplicity
    <= max_mu, total edge copies <= max_edge_copies, and girth >= girth_min
    (infinite girth passes unless require_cycle is set).
    """

    n_min: int = 2
    n_max: int = 6
    max_mu: int = 1
    girth_min: int = 3
    max_edge_copies: int = 64
    require_cycle: bool = False
    connected_only: bool = False

    def __post_init__(self):
        if self.n_max > CANONICAL_N_CAP:
            raise InstanceTooLarge(f"enumeration needs n <= {CANONICAL_N_CAP}")
        if self.n_min < 0 or self.n_min > self.n_max:
            raise ConfigError(f"bad vertex range {self.n_min}..{self.n_max}")
        if self.max_mu < 1 or self.girth_min < 3 or self.max_edge_copies < 0:
            raise ConfigError("max_mu >= 1, girth_min >= 3, max_edge_copies >= 0 required")

    def to_json_obj(self) -> dict:
        return {
            "nRange": [self.n_min, self.n_max],
            "maxMu": self.max_mu,
            "girthMin": self.girth_min,
            "maxEdgeCopies": self.max_edge_copies,
            "requireCycle": self.require_cycle,
            "connectedOnly": self.connected_only,
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "EnumSpec":
        try:
            lo, hi = obj["nRange"]
            return EnumSpec(
                n_min=int(lo),
                n_max=int(hi),
                max_mu=int(obj["maxMu"]),
                girth_min=int(obj["girthMin"]),
                max_edge_copies=int(obj["maxEdgeCopies"]),
                require_cycle=bool(obj.get("requireCycle", False)),
                connected_only=bool(obj.get("connectedOnly", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad enumeration spec: {exc}") from exc


def mu_cycle(g: int, mu: int) -> Multigraph:
    """Cycle of length g with every edge duplicated mu times."""
    if g < 3 or mu < 1:
        raise BadParameter(f"need g >= 3 and mu >= 1, got g={g}, mu={mu}")
    return build(g, [(i, (i + 1) % g, mu) for i in range(g)])


def mu_complete(n: int, mu: int) -> Multigraph:
    """Complete graph on n vertices with every edge duplicated mu times."""
    if n < 2 or mu < 1:
        raise BadParameter(f"need n >= 2 and mu >= 1, got n={n}, mu={mu}")
    return build(n, [(u, v, mu) for u in range(n) for v in range(u + 1, n)])


def ring(g: int, mults: list[int] | tuple[int, ...]) -> Multigraph:
    """Ring graph: cycle of length g with consecutive pair i of multiplicity mults[i]."""
    if g < 3 or len(mults) != g:
        raise BadParameter(f"need g >= 3 and exactly g multiplicities, got g={g}")
    if any(m < 1 for m in mults):
        raise BadParameter("all ring multiplicities must be >= 1")
    return build(g, [(i, (i + 1) % g, mults[i]) for i in range(g)])


def _refine(colors: list[int], adj: list[list[tuple[int, int]]]) -> list[int]:
    """Stable neighborhood refinement of an integer vertex coloring."""
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v])))
            for v in range(n)
        ]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _matrix_key(G: Multigraph, perm: list[int]) -> bytes:
    """Row-major upper triangle of the relabeled multiplicity matrix."""
    n = G.n
    mat = bytearray((n * (n - 1)) // 2)
    for u, v, m in G.edges:
        a, b = perm[u], perm[v]
        if a > b:
            a, b = b, a
        mat[(a * (2 * n - a - 1)) // 2 + (b - a - 1)] = m
    return bytes(mat)


def _interchangeable(members: list[int], adj, mult_map) -> bool:
    """True when every permutation of `members` (fixing the rest) is an automorphism.

    Holds iff the members induce a uniform pattern among themselves and have
    identical external neighborhoods; then one branch represents them all.
    """
    mset = set(members)
    first = members[0]
    ext_first = sorted((u, m) for u, m in adj[first] if u not in mset)
    for v in members[1:]:
        if sorted((u, m) for u, m in adj[v] if u not in mset) != ext_first:
            return False
    internal = {
        mult_map.get((min(a, b), max(a, b)), 0)
        for i, a in enumerate(members)
        for b in members[i + 1 :]
    }
    return len(internal) <= 1


def _canonical_search(G: Multigraph, colors: list[int], adj) -> tuple[bytes, list[int]]:
    colors = _refine(colors, adj)
    n = G.n
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    split_class = None
    for c in sorted(classes):
        if len(classes[c]) > 1:
            split_class = c
            break
    if split_class is None:
        rank = {c: i for i, c in enumerate(sorted(classes))}
        perm = [rank[colors[v]] for v in range(n)]
        return _matrix_key(G, perm), perm
    best: tuple[bytes, list[int]] | None = None
    fresh = max(colors) + 1
    members = classes[split_class]
    if _interchangeable(members, adj, G.mult_map):
        members = members[:1]
    for v in members:
        branch = colors[:]
        branch[v] = fresh
        cand = _canonical_search(G, branch, adj)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _canonicalize(G: Multigraph) -> tuple[str, Multigraph]:
    """Canonical key string plus the canonically relabeled graph."""
    if G.n > CANONICAL_N_CAP:
        raise InstanceTooLarge(f"canonical form needs n <= {CANONICAL_N_CAP}, got {G.n}")
    if G.max_mult > 255:
        raise InstanceTooLarge("multiplicities above 255 not supported in keys")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for u, v, m in G.edges:
        adj[u].append((v, m))
        adj[v].append((u, m))
    key_bytes, perm = _canonical_search(G, [0] * G.n, adj)
    key = f"{G.n:02d}." + key_bytes.hex()
    relabeled = build(G.n, [(perm[u], perm[v], m) for u, v, m in G.edges])
    return key, relabeled


def canonical_form(G: Multigraph) -> CanonicalForm:
    """Isomorphism-class key: equal keys iff isomorphic with multiplicities."""
    return CanonicalForm(_canonicalize(G)[0])


def _is_connected(G: Multigraph) -> bool:
    if G.n == 0:
        return True
    view = underlying_simple(G)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in view.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == G.n


def _simple_graphs(n: int, girth_min: int, max_edges: int) -> Iterator[Multigraph]:
    """Non-isomorphic simple graphs on exactly n labeled-canonical vertices.

    Grown one edge at a time with canonical dedup; intermediate graphs may
    have isolated vertices (callers filter at emission).  Branches whose
    girth already dropped below girth_min are pruned: more edges never help.
    """
    level: dict[str, Multigraph] = {}
    empty = build(n, [])
    level[_canonicalize(empty)[0]] = empty
    yield empty
    edge_budget = min(max_edges, n * (n - 1) // 2)
    for _ in range(edge_budget):
        nxt: dict[str, Multigraph] = {}
        for G in level.values():
            present = set(G.pairs())
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) in present:
                        continue
                    H = build(n, list(G.edges) + [(u, v, 1)])
                    g = girth(H)
                    if g != INFINITE_GIRTH and g < girth_min:
                        continue
                    key, rep = _canonicalize(H)
                    if key not in nxt:
                        nxt[key] = rep
        level = nxt
        for key in sorted(level):
            yield level[key]
        if not level:
            break


def _assignments(m: int, max_mu: int, budget: int) -> Iterator[tuple[int, ...]]:
    """All multiplicity vectors in {1..max_mu}^m with sum <= budget."""
    if m > budget:
        return
    vec = [1] * m

    def fill(i: int, spent: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(vec)
            return
        # each later edge still needs at least one copy
        cap = min(max_mu, budget - spent - (m - i - 1))
        for x in range(1, cap + 1):
            vec[i] = x
            yield from fill(i + 1, spent + x)

    yield from fill(0, 0)


def enumerate_with_keys(spec: EnumSpec) -> Iterator[tuple[str, Multigraph]]:
    """(canonical key, graph) pairs, one per isomorphism class, key-sorted per n."""
    for n in range(spec.n_min, spec.n_max + 1):
        found: dict[str, Multigraph] = {}
        for simple in _simple_graphs(n, spec.girth_min, spec.max_edge_copies):
            if not simple.edges:
                continue
            if any(d == 0 for d in simple.degrees):
                continue
            g = girth(simple)
            if g == INFINITE_GIRTH:
                if spec.require_cycle:
                    continue
            elif g < spec.girth_min:
                continue
            if spec.connected_only and not _is_connected(simple):
                continue
            pairs = list(simple.pairs())
            for vec in _assignments(len(pairs), spec.max_mu, spec.max_edge_copies):
                H = build(n, [(u, v, m) for (u, v), m in zip(pairs, vec)])
                key, rep = _canonicalize(H)
                if key not in found:
                    found[key] = rep
        for key in sorted(found):
            yield key, found[key]


def enumerate_multigraphs(spec: EnumSpec) -> Iterator[Multigraph]:
    """Exactly one representative per isomorphism class satisfying the spec."""
    for _, G in enumerate_with_keys(spec):
        yield G


def write_checkpoint(path: str, spec: EnumSpec, keys: list[str]) -> None:
    """Checkpoint file: JSON spec echo as a header comment, then sorted keys."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# " + json.dumps(spec.to_json_obj(), sort_keys=True) + "\n")
        for key in sorted(keys):
            fh.write(key + "\n")


def read_checkpoint(path: str) -> tuple[dict | None, set[str]]:
    spec_echo = None
    keys: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                spec_echo = json.loads(line[1:].strip())
            else:
                keys.add(line)
    return spec_echo, keys


def random_multigraph(rng: random.Random, n_max: int = 12, mu_max: int = 3) -> Multigraph:
    """Seeded sampler for the property suites; mixes sparse and dense regimes."""
    n = rng.randint(4, n_max)
    style = rng.random()
    if style < 0.5:
        p = rng.uniform(0.08, 0.22)
    elif style < 0.8:
        p = rng.uniform(0.22, 0.45)
    else:
        p = rng.uniform(0.45, 0.75)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.randint(1, mu_max)))
    return build(n, edges)
