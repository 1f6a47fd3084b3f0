"""Loopless multigraph values, basic invariants, and MGR text/JSON serialization.

Vertices are dense integers 0..n-1.  Parallel edges are stored as a
multiplicity per unordered pair, never as individual copies; colorings
address copies as (pair, copy index).  Graph values are immutable and safe
to share between concurrent workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    LoopRejected,
    NonPositiveMultiplicity,
    NotEnoughParallelEdges,
    ParseError,
    VertexOutOfRange,
)


@dataclass(frozen=True)
class Multigraph:
    """A loopless multigraph: vertex count plus sorted (u, v, mult) triples, u < v."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise VertexOutOfRange(f"negative vertex count {self.n}")
        prev = None
        for u, v, m in self.edges:
            if u == v:
                raise LoopRejected(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise VertexOutOfRange(f"pair ({u}, {v}) outside 0..{self.n - 1} or unordered")
            if m <= 0:
                raise NonPositiveMultiplicity(f"pair ({u}, {v}) has multiplicity {m}")
            if prev is not None and (u, v) <= prev:
                raise VertexOutOfRange(f"edge list not sorted/unique at ({u}, {v})")
            prev = (u, v)

    @cached_property
    def mult_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): m for u, v, m in self.edges}

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v, m in self.edges:
            deg[u] += m
            deg[v] += m
        return tuple(deg)

    @cached_property
    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges)

    @cached_property
    def max_mult(self) -> int:
        return max((m for _, _, m in self.edges), default=0)

    def mult(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.mult_map.get((u, v), 0)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u, v, _ in self.edges:
            yield (u, v)

    def copies(self) -> Iterator[tuple[tuple[int, int], int]]:
        """All parallel-edge copies as ((u, v), copy_index)."""
        for u, v, m in self.edges:
            for i in range(m):
                yield ((u, v), i)


@dataclass(frozen=True)
class SimpleGraphView:
    """Underlying simple graph: u ~ v iff the source pair has multiplicity >= 1."""

    n: int
    adj: tuple[frozenset[int], ...]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])


@dataclass(frozen=True)
class BasicInvariants:
    n: int
    m: int
    Delta: int
    delta: int
    mu: int
    delta_simple: int

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "Delta": self.Delta,
            "delta": self.delta,
            "mu": self.mu,
            "deltaSimple": self.delta_simple,
        }


def build(n: int, edges: Iterable[tuple[int, int, int]]) -> Multigraph:
    """Build a multigraph from (u, v, mult) triples; repeated pairs accumulate."""
    acc: dict[tuple[int, int], int] = {}
    for u, v, m in edges:
        if u == v:
            raise LoopRejected(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if m <= 0:
            raise NonPositiveMultiplicity(f"edge ({u}, {v}) has multiplicity {m}")
        key = (u, v) if u < v else (v, u)
        acc[key] = acc.get(key, 0) + m
    return Multigraph(n, tuple((u, v, acc[(u, v)]) for u, v in sorted(acc)))


def basic_invariants(G: Multigraph) -> BasicInvariants:
    simple = underlying_simple(G)
    return BasicInvariants(
        n=G.n,
        m=G.edge_count,
        Delta=max(G.degrees, default=0),
        delta=min(G.degrees, default=0),
        mu=G.max_mult,
        delta_simple=min((simple.degree(v) for v in range(G.n)), default=0),
    )


def underlying_simple(G: Multigraph) -> SimpleGraphView:
    adj: list[set[int]] = [set() for _ in range(G.n)]
    for u, v, _ in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return SimpleGraphView(G.n, tuple(frozenset(s) for s in adj))


def remove_edges(G: Multigraph, u: int, v: int, count: int) -> Multigraph:
    """Return a copy with `count` parallel copies removed from pair {u, v}."""
    if u > v:
        u, v = v, u
    have = G.mult(u, v)
    if count > have:
        raise NotEnoughParallelEdges(f"pair ({u}, {v}) has {have} copies, asked to remove {count}")
    if count < 0:
        raise NonPositiveMultiplicity(f"cannot remove {count} copies")
    out = []
    for a, b, m in G.edges:
        if (a, b) == (u, v):
            if m - count > 0:
                out.append((a, b, m - count))
        else:
            out.append((a, b, m))
    return Multigraph(G.n, tuple(out))


def induced(G: Multigraph, S: Iterable[int]) -> Multigraph:
    """Induced sub-multigraph on S, relabeled 0..|S|-1 in ascending original order."""
    verts = sorted(set(S))
    for v in verts:
        if not (0 <= v < G.n):
            raise VertexOutOfRange(f"vertex {v} outside 0..{G.n - 1}")
    relabel = {v: i for i, v in enumerate(verts)}
    keep = set(verts)
    out = []
    for u, v, m in G.edges:
        if u in keep and v in keep:
            a, b = relabel[u], relabel[v]
            out.append((a, b, m) if a < b else (b, a, m))
    return Multigraph(len(verts), tuple(sorted(out)))


def serialize(G: Multigraph) -> str:
    """Canonical MGR text: 'n <count>' then 'e <u> <v> <mult>' lines, u < v, sorted."""
    lines = [f"n {G.n}"]
    lines.extend(f"e {u} {v} {m}" for u, v, m in G.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Multigraph:
    """Parse MGR text.  Repeated pairs accumulate, matching build()."""
    n: int | None = None
    triples: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "n":
            if n is not None:
                raise ParseError("duplicate 'n' line", lineno)
            if len(fields) != 2:
                raise ParseError("expected 'n <count>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[1]!r}", lineno) from None
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge line before 'n' line", lineno)
            if len(fields) != 4:
                raise ParseError("expected 'e <u> <v> <mult>'", lineno)
            try:
                u, v, m = int(fields[1]), int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"non-integer field in {line!r}", lineno) from None
            if u == v:
                raise LoopRejected(f"line {lineno}: loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"line {lineno}: edge ({u}, {v}) outside 0..{n - 1}")
            if m <= 0:
                raise NonPositiveMultiplicity(f"line {lineno}: multiplicity {m}")
            triples.append((u, v, m))
        else:
            raise ParseError(f"unknown directive {fields[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'n' line", 1)
    return build(n, triples)


def to_json_obj(G: Multigraph) -> dict:
    return {"n": G.n, "edges": [[u, v, m] for u, v, m in G.edges]}


def from_json_obj(obj: dict) -> Multigraph:
    return build(int(obj["n"]), [(int(u), int(v), int(m)) for u, v, m in obj["edges"]])


def parse_any(text: str) -> Multigraph:
    """Parse MGR text, or the JSON form if the payload starts with '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_json_obj(json.loads(stripped))
    return parse(text)
