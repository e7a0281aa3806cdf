"""Right-angled Artin groups as graphs: prime decomposition, cancellation,
automorphism generators and the structure of Aut(A_Gamma).

Group equality is always decided by graph isomorphism of defining graphs, never
by comparing presentations.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import InternalConsistencyError, ResourceError
from .graphs import (
    DEFAULT_MAX_VERTICES,
    Graph,
    JoinDecomposition,
    connected_components,
    graph_automorphisms,
    graph_isomorphic,
    join,
    join_decompose,
    star,
)


@dataclass(frozen=True)
class Raag:
    graph: Graph

    @cached_property
    def decomposition(self) -> JoinDecomposition:
        if len(self.graph) == 0:
            return JoinDecomposition(())
        return join_decompose(self.graph)

    @property
    def free_abelian_rank(self) -> int:
        return len(self.decomposition.singletons)

    @cached_property
    def central_vertices(self) -> tuple[str, ...]:
        """Vertices of the single-vertex factors (the Z^d part)."""
        return tuple(sorted(f.vertices[0] for f in self.decomposition.singletons))

    @cached_property
    def gamma_prime(self) -> Graph:
        """Join of all factors with more than one vertex."""
        return self.graph.induced(v for f in self.decomposition.nonsingletons for v in f.vertices)

    @cached_property
    def prime_forms(self) -> Counter:
        return self.decomposition.multiplicities

    @cached_property
    def factor_of(self) -> dict[str, int]:
        return {v: k for k, f in enumerate(self.decomposition.factors) for v in f.vertices}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def commute(self, u: str, w: str) -> bool:
        return u == w or self.graph.adjacent(u, w)

    def is_trivial(self) -> bool:
        return len(self.graph) == 0

    def is_unfactorizable(self) -> bool:
        return len(self.decomposition.factors) == 1

    # -- constructors -------------------------------------------------------

    @classmethod
    def trivial(cls) -> "Raag":
        return cls(Graph(()))

    @classmethod
    def free(cls, k: int, prefix: str = "x") -> "Raag":
        return cls(Graph(f"{prefix}{i}" for i in range(1, k + 1)))

    @classmethod
    def free_abelian(cls, k: int, prefix: str = "z") -> "Raag":
        verts = [f"{prefix}{i}" for i in range(1, k + 1)]
        return cls(Graph(verts, itertools.combinations(verts, 2)))

    def __repr__(self) -> str:
        return f"Raag({describe(self)})"


def describe(r: Raag) -> str:
    """Short human name such as 'Z^2 x F2' for common factor shapes."""
    if r.is_trivial():
        return "e"
    parts = []
    d = r.free_abelian_rank
    if d:
        parts.append("Z" if d == 1 else f"Z^{d}")
    for f in r.decomposition.nonsingletons:
        if not f.edges:
            parts.append(f"F{len(f)}")
        else:
            parts.append(f"A[{len(f)}v,{len(f.edges)}e]")
    return " x ".join(parts)


def direct_product(*raags: Raag, tags: Iterable[str] | None = None) -> Raag:
    """Direct product; vertex labels are prefixed with per-factor tags."""
    tags = list(tags) if tags is not None else [f"{k}." for k in range(len(raags))]
    return Raag(join(*(r.graph.prefixed(t) for r, t in zip(raags, tags))))


def raag_prime_decomposition(r: Raag) -> JoinDecomposition:
    return r.decomposition


def raag_isomorphic(r1: Raag, r2: Raag) -> bool:
    return graph_isomorphic(r1.graph, r2.graph) is not None


def cancel(product: Raag, c: Raag) -> Raag | None:
    """The RAAG A with A x C = product, or None if C is not a direct factor."""
    need = c.prime_forms
    have = product.prime_forms
    if any(have[f] < k for f, k in need.items()):
        return None
    remaining = Counter(need)
    keep = []
    for factor, form in zip(product.decomposition.factors, product.decomposition.forms):
        if remaining[form]:
            remaining[form] -= 1
        else:
            keep.append(factor)
    return Raag(join(*keep)) if keep else Raag.trivial()


# -- automorphism generators ------------------------------------------------


@dataclass(frozen=True)
class GraphAut:
    mapping: tuple[tuple[str, str], ...]

    @property
    def perm(self) -> dict[str, str]:
        return dict(self.mapping)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)


@dataclass(frozen=True)
class Inversion:
    v: str


@dataclass(frozen=True)
class Transvection:
    """v -> v w."""

    v: str
    w: str


@dataclass(frozen=True)
class PartialConjugation:
    """x -> v x v^-1 for every x in component."""

    v: str
    component: frozenset[str]


AutGenerator = Union[GraphAut, Inversion, Transvection, PartialConjugation]


def _check_cap(r: Raag, max_vertices: int) -> None:
    if len(r.graph) > max_vertices:
        raise ResourceError(
            f"generator enumeration capped at {max_vertices} vertices, graph has {len(r.graph)}"
        )


def transvection_pairs(g: Graph) -> list[tuple[str, str]]:
    return [
        (v, w)
        for v in g.vertices
        for w in g.vertices
        if v != w and g.neighbors[v] <= star(g, w)
    ]


def conjugation_components(g: Graph, v: str) -> list[frozenset[str]]:
    outside = set(g.vertices) - star(g, v)
    return sorted(connected_components(g, outside), key=sorted)


def enumerate_generators(
    r: Raag, max_vertices: int = DEFAULT_MAX_VERTICES, graph_auts: bool = True
) -> list[AutGenerator]:
    """All four generator families, in a fixed order.

    ``graph_auts=False`` skips the (possibly huge) graph automorphism list.
    """
    _check_cap(r, max_vertices)
    g = r.graph
    gens: list[AutGenerator] = []
    if graph_auts:
        for perm in graph_automorphisms(g, max_vertices):
            gens.append(GraphAut(tuple(sorted(perm.items()))))
    gens.extend(Inversion(v) for v in g.vertices)
    gens.extend(Transvection(v, w) for v, w in transvection_pairs(g))
    for v in g.vertices:
        gens.extend(PartialConjugation(v, c) for c in conjugation_components(g, v))
    return gens


# -- structure of Aut(A_Gamma) ----------------------------------------------

INTERNAL = "internal"
CENTRAL_TRANSVECTION = "central_transvection"
FACTOR_PERMUTING = "factor_permuting"
GL_D = "gl_d"
CLASSES = (INTERNAL, CENTRAL_TRANSVECTION, FACTOR_PERMUTING, GL_D)


@dataclass(frozen=True)
class AutStructure:
    d: int
    gamma_prime_size: int
    wreath_blocks: tuple[tuple[Graph, int], ...]
    central_transvection_rank: int
    generator_counts: dict
    class_counts: dict

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "gamma_prime_size": self.gamma_prime_size,
            "central_transvection_rank": self.central_transvection_rank,
            "blocks": [
                {"factor": g.to_json(), "multiplicity": k} for g, k in self.wreath_blocks
            ],
            "generators": dict(self.generator_counts),
            "classes": dict(self.class_counts),
        }


def classify_generator(r: Raag, gen: AutGenerator) -> str:
    """Place a generator in its class of the product decomposition of Aut(A_Gamma).

    Raises InternalConsistencyError for a generator that fits no class.
    """
    central = set(r.central_vertices)
    factor_of = r.factor_of
    if isinstance(gen, Inversion):
        return GL_D if gen.v in central else INTERNAL
    if isinstance(gen, Transvection):
        v, w = gen.v, gen.w
        if v in central and w in central:
            return GL_D
        if v not in central and w in central:
            return CENTRAL_TRANSVECTION
        if v not in central and w not in central and factor_of[v] == factor_of[w]:
            return INTERNAL
        raise InternalConsistencyError(f"transvection {v}->{v}{w} crosses prime factors")
    if isinstance(gen, PartialConjugation):
        if gen.v in central:
            raise InternalConsistencyError(f"partial conjugation by central vertex {gen.v}")
        home = factor_of[gen.v]
        if all(factor_of[x] == home for x in gen.component):
            return INTERNAL
        raise InternalConsistencyError(f"partial conjugation {gen} leaves its factor")
    if isinstance(gen, GraphAut):
        perm = gen.perm
        factors = r.decomposition.factors
        swapped, inner = set(), set()
        for k, f in enumerate(factors):
            if len(f) == 1:
                if perm[f.vertices[0]] not in central:
                    raise InternalConsistencyError(f"{gen} moves a central vertex off the centre")
                continue
            targets = {factor_of[perm[v]] for v in f.vertices}
            if len(targets) != 1:
                raise InternalConsistencyError(f"{gen} splits prime factor {f}")
            (t,) = targets
            if r.decomposition.forms[t] != r.decomposition.forms[k]:
                raise InternalConsistencyError(f"{gen} maps a factor to a non-isomorphic one")
            if t != k:
                swapped.add(k)
            elif any(perm[v] != v for v in f.vertices):
                inner.add(k)
        moves_center = any(perm[z] != z for z in central)
        if not swapped and not inner:
            return GL_D
        if not swapped and not moves_center and len(inner) == 1:
            return INTERNAL
        return FACTOR_PERMUTING
    raise InternalConsistencyError(f"unknown generator {gen!r}")


def aut_structure(r: Raag, max_vertices: int = DEFAULT_MAX_VERTICES) -> AutStructure:
    gens = enumerate_generators(r, max_vertices)
    d = r.free_abelian_rank
    gp = len(r.gamma_prime)
    dec = r.decomposition
    blocks = []
    seen = set()
    for f, form in zip(dec.factors, dec.forms):
        if len(f) > 1 and form not in seen:
            seen.add(form)
            blocks.append((f, dec.multiplicities[form]))
    kinds = Counter(type(g).__name__ for g in gens)
    classes = Counter(classify_generator(r, g) for g in gens)
    if classes[CENTRAL_TRANSVECTION] != d * gp:
        raise InternalConsistencyError(
            f"{classes[CENTRAL_TRANSVECTION]} central transvections, expected {d * gp}"
        )
    return AutStructure(
        d=d,
        gamma_prime_size=gp,
        wreath_blocks=tuple(blocks),
        central_transvection_rank=d * gp,
        generator_counts={
            "graph_auts": kinds["GraphAut"],
            "inversions": kinds["Inversion"],
            "transvections": kinds["Transvection"],
            "partial_conjugations": kinds["PartialConjugation"],
        },
        class_counts={c: classes[c] for c in CLASSES},
    )
