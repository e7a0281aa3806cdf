"""Finite simplicial graphs: local structure, isomorphism and join decomposition.

Vertex labels are opaque strings.  Internally every graph indexes its vertices
by sorted label order, so all derived data (bitmask adjacency, canonical forms,
factor orderings) is deterministic.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, ResourceError

DEFAULT_MAX_VERTICES = 10


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise DomainError(f"duplicate vertex labels in {verts!r}")
        for v in verts:
            if not isinstance(v, str):
                raise DomainError(f"vertex label {v!r} is not a string")
        vset = set(verts)
        es = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise DomainError(f"edge {pair!r} does not have two endpoints")
            u, w = pair
            if u == w:
                raise DomainError(f"self-loop at {u!r}")
            if u not in vset or w not in vset:
                raise DomainError(f"edge {pair!r} uses an undeclared vertex")
            es.add(frozenset(pair))
        object.__setattr__(self, "vertices", tuple(sorted(verts)))
        object.__setattr__(self, "edges", frozenset(es))

    def __repr__(self) -> str:
        es = sorted(tuple(sorted(e)) for e in self.edges)
        return f"Graph({list(self.vertices)!r}, {es!r})"

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            nbrs[u].add(w)
            nbrs[w].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Adjacency rows as bitmasks over vertex indices."""
        idx = self.index
        return tuple(
            sum(1 << idx[u] for u in self.neighbors[v]) for v in self.vertices
        )

    def adjacent(self, u: str, w: str) -> bool:
        return w in self.neighbors[u]

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def induced(self, subset: Iterable[str]) -> "Graph":
        keep = set(subset)
        return Graph(keep, (e for e in self.edges if e <= keep))

    def complement(self) -> "Graph":
        return Graph(
            self.vertices,
            (
                (u, w)
                for u, w in itertools.combinations(self.vertices, 2)
                if not self.adjacent(u, w)
            ),
        )

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return Graph(
            (mapping[v] for v in self.vertices),
            ((mapping[u], mapping[w]) for u, w in self.sorted_edges()),
        )

    def prefixed(self, prefix: str) -> "Graph":
        return self.relabel({v: prefix + v for v in self.vertices})

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or set(data) != {"vertices", "edges"}:
            raise DomainError('graph JSON must be an object with exactly "vertices" and "edges"')
        verts, edges = data["vertices"], data["edges"]
        if not isinstance(verts, list) or not isinstance(edges, list):
            raise DomainError('"vertices" and "edges" must be arrays')
        seen = set()
        for k, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise DomainError(f"edges[{k}] must be a pair of labels")
            key = frozenset(e)
            if key in seen:
                raise DomainError(f"edges[{k}] duplicates an earlier edge")
            seen.add(key)
        return cls(verts, edges)


def link(g: Graph, v: str) -> frozenset[str]:
    if v not in g:
        raise DomainError(f"unknown vertex {v!r}")
    return g.neighbors[v]


def star(g: Graph, v: str) -> frozenset[str]:
    return link(g, v) | {v}


def join(*graphs: Graph) -> Graph:
    """Disjoint union with every cross edge added.  Labels must be disjoint."""
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for g in graphs:
        verts.extend(g.vertices)
        edges.extend(g.sorted_edges())
    if len(set(verts)) != len(verts):
        raise DomainError("join factors must have disjoint vertex labels")
    for g, h in itertools.combinations(graphs, 2):
        edges.extend((u, w) for u in g.vertices for w in h.vertices)
    return Graph(verts, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    verts = [v for g in graphs for v in g.vertices]
    if len(set(verts)) != len(verts):
        raise DomainError("factors must have disjoint vertex labels")
    return Graph(verts, (e for g in graphs for e in g.sorted_edges()))


def connected_components(g: Graph, within: Iterable[str] | None = None) -> list[frozenset[str]]:
    """Connected components of the subgraph induced on ``within`` (default: all)."""
    pool = set(g.vertices if within is None else within)
    comps = []
    for start in g.vertices:
        if start not in pool:
            continue
        comp = {start}
        stack = [start]
        pool.discard(start)
        while stack:
            u = stack.pop()
            for w in g.neighbors[u]:
                if w in pool:
                    pool.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


# -- canonical forms ---------------------------------------------------------


def _refine_colors(g: Graph) -> list[int]:
    """Stable colour refinement; colours are ranks of structural signatures."""
    n = len(g)
    nbr_idx = [[g.index[u] for u in g.neighbors[v]] for v in g.vertices]
    colors = [0] * n
    n_classes = 1 if n else 0
    while True:
        sigs = [
            (colors[i], tuple(sorted(colors[j] for j in nbr_idx[i]))) for i in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == n_classes:
            return new
        colors, n_classes = new, len(ranks)


def _canonical_order(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least adjacency code over colour-respecting orderings.

    Returns (code, order) where order lists vertex indices by canonical position
    and code[k] encodes adjacency of position k to positions 0..k-1.
    """
    n = len(g)
    masks = g.masks
    colors = _refine_colors(g)
    cell_of_pos = sorted(colors)
    best: list | None = None
    best_order: list[int] = []
    chosen: list[int] = []
    rows: list[int] = []
    used = 0

    def twins(u: int, w: int) -> bool:
        return (masks[u] & ~(1 << w)) == (masks[w] & ~(1 << u))

    def search() -> None:
        nonlocal best, best_order, used
        k = len(chosen)
        if best is not None and rows > best[:k]:
            return
        if k == n:
            if best is None or rows < best:
                best = list(rows)
                best_order = list(chosen)
            return
        want = cell_of_pos[k]
        reps: list[int] = []
        for v in range(n):
            if colors[v] == want and not used >> v & 1:
                if not any(twins(v, r) for r in reps):
                    reps.append(v)
        for v in reps:
            row = 0
            for c in chosen:
                row = (row << 1) | (masks[v] >> c & 1)
            chosen.append(v)
            rows.append(row)
            used |= 1 << v
            search()
            used &= ~(1 << v)
            rows.pop()
            chosen.pop()

    search()
    return tuple(best or ()), tuple(best_order)


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Complete isomorphism invariant: equal iff the graphs are isomorphic."""
    code, _ = _canonical_order(g)
    return (len(g), code)


def canonical_graph(g: Graph) -> Graph:
    """Isomorphic copy with vertices relabelled '0', '1', ... by canonical position."""
    _, order = _canonical_order(g)
    width = len(str(max(len(g) - 1, 0)))
    names = {g.vertices[i]: str(pos).zfill(width) for pos, i in enumerate(order)}
    return g.relabel(names)


# -- isomorphism and automorphisms ------------------------------------------


def _isomorphisms(g1: Graph, g2: Graph) -> Iterator[dict[str, str]]:
    """All edge-preserving bijections g1 -> g2, by colour-pruned backtracking."""
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return
    c1, c2 = _joint_colors(g1, g2)
    if sorted(c1) != sorted(c2):
        return
    n = len(g1)
    # most constrained first: rarest colour, then highest degree
    freq = Counter(c1)
    order = sorted(range(n), key=lambda i: (freq[c1[i]], -len(g1.neighbors[g1.vertices[i]]), i))
    m1, m2 = g1.masks, g2.masks
    image = [-1] * n
    taken = 0

    def extend(k: int) -> Iterator[dict[str, str]]:
        nonlocal taken
        if k == n:
            yield {g1.vertices[i]: g2.vertices[image[i]] for i in range(n)}
            return
        u = order[k]
        for w in range(n):
            if taken >> w & 1 or c2[w] != c1[u]:
                continue
            ok = True
            for prev in order[:k]:
                if (m1[u] >> prev & 1) != (m2[w] >> image[prev] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[u] = w
            taken |= 1 << w
            yield from extend(k + 1)
            taken &= ~(1 << w)
            image[u] = -1

    yield from extend(0)


def _joint_colors(g1: Graph, g2: Graph) -> tuple[list[int], list[int]]:
    """Colour refinement run on the disjoint union so colours are comparable."""
    u = disjoint_union(g1.prefixed("1:"), g2.prefixed("2:"))
    cols = _refine_colors(u)
    by_label = dict(zip(u.vertices, cols))
    return (
        [by_label["1:" + v] for v in g1.vertices],
        [by_label["2:" + v] for v in g2.vertices],
    )


def graph_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """A witnessing isomorphism g1 -> g2, or None if the graphs differ."""
    return next(_isomorphisms(g1, g2), None)


def graph_automorphisms(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[dict[str, str]]:
    if len(g) > max_vertices:
        raise ResourceError(
            f"automorphism enumeration capped at {max_vertices} vertices, graph has {len(g)}"
        )
    return list(_isomorphisms(g, g))


# -- join decomposition -----------------------------------------------------


@dataclass(frozen=True)
class JoinDecomposition:
    """Maximal join decomposition; factors sorted by canonical form."""

    factors: tuple[Graph, ...]

    @cached_property
    def forms(self) -> tuple[tuple, ...]:
        return tuple(canonical_form(f) for f in self.factors)

    @cached_property
    def multiplicities(self) -> Counter:
        return Counter(self.forms)

    @property
    def singletons(self) -> tuple[Graph, ...]:
        return tuple(f for f in self.factors if len(f) == 1)

    @property
    def nonsingletons(self) -> tuple[Graph, ...]:
        return tuple(f for f in self.factors if len(f) > 1)

    def rejoin(self) -> Graph:
        return join(*self.factors)


def join_decompose(g: Graph) -> JoinDecomposition:
    """Factors are the vertex classes of the components of the complement."""
    if len(g) == 0:
        raise DomainError("join decomposition of the empty graph is undefined")
    comp = g.complement()
    factors = [g.induced(c) for c in connected_components(comp)]
    factors.sort(key=lambda f: (canonical_form(f), f.vertices))
    return JoinDecomposition(tuple(factors))
