"""Split maps X -> A x X^n for unfactorizable X other than Z.

The ambient group carries labels ``a.<v>`` for A and ``x<j>.<v>`` for the
j-th copy of X (j = 1..n).  Vertices are built as phi o iota_j with phi a word
in automorphism generators, so splitness holds by construction.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import DomainError, InternalConsistencyError
from ..graphs import canonical_form
from ..raag import (
    AutGenerator,
    GraphAut,
    Inversion,
    PartialConjugation,
    Raag,
    Transvection,
    direct_product,
    enumerate_generators,
)
from ..simplicial import SimplicialComplex
from ..words import Automorphism, Word, inverse_automorphism, normalize


@dataclass(frozen=True)
class SplitAmbient:
    a: Raag
    x: Raag
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be positive")
        if len(self.x.graph) < 2 or not self.x.is_unfactorizable():
            raise DomainError("X must be unfactorizable and not Z")
        if not self.a.is_trivial() and canonical_form(self.x.graph) in self.a.prime_forms:
            raise DomainError("A has an X factor; cancel it first (replace n by n + k)")

    @cached_property
    def group(self) -> Raag:
        tags = ["a."] + [f"x{j}." for j in range(1, self.n + 1)]
        return direct_product(self.a, *([self.x] * self.n), tags=tags)

    @cached_property
    def central(self) -> frozenset[str]:
        return frozenset(self.group.central_vertices)

    def xv(self, j: int, v: str) -> str:
        return f"x{j}.{v}"

    def copy_of(self, label: str) -> int | None:
        """Copy index of an X letter, None for A letters."""
        head = label.split(".", 1)[0]
        return int(head[1:]) if head.startswith("x") else None

    def standard(self, j: int) -> tuple[tuple[str, Word], ...]:
        return tuple((v, Word.gen(self.group, self.xv(j, v))) for v in self.x.vertices)

    def strip_central(self, w: Word) -> Word:
        return normalize((l for l in w.letters if l[0] not in self.central), self.group)

    def copy_generators(self, j: int) -> list[AutGenerator]:
        """Generators acting inside copy j only (graph automorphisms of X included)."""
        out: list[AutGenerator] = []
        for g in enumerate_generators(self.x):
            if isinstance(g, GraphAut):
                if g.is_identity():
                    continue
                mapping = dict(((u, u) for u in self.group.vertices))
                mapping.update((self.xv(j, s), self.xv(j, t)) for s, t in g.mapping)
                out.append(GraphAut(tuple(sorted(mapping.items()))))
            elif isinstance(g, Inversion):
                out.append(Inversion(self.xv(j, g.v)))
            elif isinstance(g, Transvection):
                out.append(Transvection(self.xv(j, g.v), self.xv(j, g.w)))
            else:
                out.append(PartialConjugation(self.xv(j, g.v), frozenset(self.xv(j, c) for c in g.component)))
        return out

    def swap(self, i: int, j: int) -> GraphAut:
        mapping = {u: u for u in self.group.vertices}
        for v in self.x.vertices:
            mapping[self.xv(i, v)] = self.xv(j, v)
            mapping[self.xv(j, v)] = self.xv(i, v)
        return GraphAut(tuple(sorted(mapping.items())))

    def full_pool(self) -> list[AutGenerator]:
        """Every non-graph generator of the ambient group plus the copy swaps."""
        pool = enumerate_generators(self.group, max_vertices=10**6, graph_auts=False)
        pool += [self.swap(i, j) for i, j in itertools.combinations(range(1, self.n + 1), 2)]
        return pool


def substitute(word: Sequence[tuple[str, int]], images: dict[str, Word], ambient: Raag) -> Word:
    raw = []
    for v, e in word:
        piece = images[v] if e > 0 else images[v].inverse()
        raw.extend(piece.letters * abs(e))
    return normalize(raw, ambient)


@dataclass(frozen=True)
class ColoredVertex:
    """A vertex of I_n: the split map phi o iota_base, stored by its images.

    Equality compares images only; ``phi`` (applied first to last) and
    ``inverse_core`` are construction data.
    """

    ambient: SplitAmbient = field(repr=False)
    images: tuple[tuple[str, Word], ...]
    color: int
    phi: tuple = field(default=(), compare=False, repr=False)
    base: int = field(default=1, compare=False, repr=False)
    inverse_core: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def standard(cls, amb: SplitAmbient, j: int) -> "ColoredVertex":
        return cls.from_word(amb, (), base=j)

    @classmethod
    def from_word(cls, amb: SplitAmbient, phi: Sequence[AutGenerator], base: int = 1) -> "ColoredVertex":
        g = amb.group
        images = dict(amb.standard(base))
        for gen in phi:
            aut = Automorphism.from_generator(gen, g)
            images = {v: aut.apply(w) for v, w in images.items()}
        color = color_of(images, amb)
        inv = [inverse_automorphism(gen, g) for gen in reversed(phi)]
        prefix = f"x{base}."
        inverse_core = []
        for v in amb.x.vertices:
            w = Word.gen(g, amb.xv(color, v))
            for aut in inv:
                w = aut.apply(w)
            letters = tuple((l[len(prefix):], e) for l, e in w.letters if l.startswith(prefix))
            inverse_core.append((v, letters))
        out = cls(amb, tuple(sorted(images.items())), color, tuple(phi), base, tuple(inverse_core))
        out.validate()
        return out

    @property
    def image(self) -> dict[str, Word]:
        return dict(self.images)

    @cached_property
    def core(self) -> dict[str, Word]:
        return {v: self.ambient.strip_central(w) for v, w in self.images}

    @cached_property
    def central_twist(self) -> dict[str, tuple[int, ...]]:
        cent = sorted(self.ambient.central)
        out = {}
        for v, w in self.images:
            exps = dict.fromkeys(cent, 0)
            for l, e in w.letters:
                if l in exps:
                    exps[l] += e
            out[v] = tuple(exps[c] for c in cent)
        return out

    def validate(self) -> None:
        """Substituting the images into the inverse core recovers copy ``color``
        modulo central letters, so the images generate X_color x Z(A)."""
        amb = self.ambient
        img = self.image
        for v, letters in self.inverse_core:
            got = amb.strip_central(substitute(letters, img, amb.group))
            if got != Word.gen(amb.group, amb.xv(self.color, v)):
                raise InternalConsistencyError(
                    f"core of colour-{self.color} vertex does not generate: {v} -> {got}"
                )

    def to_json(self) -> dict:
        return {"color": self.color, "images": {v: str(w) for v, w in self.images}}


def color_of(images, amb: SplitAmbient) -> int:
    """Copy index receiving the non-central part of every image."""
    if isinstance(images, ColoredVertex):
        images = images.image
    copies = set()
    for v, w in images.items():
        rest = amb.strip_central(w)
        if rest.is_identity():
            raise DomainError(f"not F-split: image of {v} is central")
        for l, _ in rest.letters:
            j = amb.copy_of(l)
            if j is None:
                raise DomainError(f"not F-split: image of {v} uses non-central letter {l} of A")
            copies.add(j)
    if len(copies) != 1:
        raise DomainError(f"not F-split: images straddle copies {sorted(copies)}")
    return copies.pop()


# -- complements and simplices ----------------------------------------------


@dataclass(frozen=True)
class FactorComplement:
    """A x prod_{i in x_factors} X_i."""

    n: int
    x_factors: frozenset[int]

    def generators(self, amb: SplitAmbient) -> list[str]:
        out = ["a." + v for v in amb.a.vertices]
        out += [amb.xv(i, v) for i in sorted(self.x_factors) for v in amb.x.vertices]
        return out

    def to_json(self) -> dict:
        return {"A": True, "X_factors": sorted(self.x_factors)}


def canonical_complement(colors: Iterable[int] | Iterable[ColoredVertex], n: int) -> FactorComplement:
    cs = [c.color if isinstance(c, ColoredVertex) else c for c in colors]
    if len(set(cs)) != len(cs):
        raise DomainError(f"repeated colour in {sorted(cs)}")
    if any(not 1 <= c <= n for c in cs):
        raise DomainError(f"colours must lie in 1..{n}")
    return FactorComplement(n, frozenset(range(1, n + 1)) - frozenset(cs))


@dataclass(frozen=True)
class SimplexVerdict:
    ok: bool
    complement: FactorComplement | None = None
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "complement": self.complement.to_json() if self.complement else None,
            "witness": list(self.witness) if self.witness else None,
        }


def _commute(g: Raag, u: Word, w: Word) -> bool:
    return u * w == w * u


def check_simplex_In(vertices: Sequence[ColoredVertex]) -> SimplexVerdict:
    """Decide simplexhood from commutation and generation, never from colours.

    Pairwise elementwise commutation of images is necessary.  Given it, the
    canonical complement is assembled and checked to commute with every image;
    generation follows from each vertex's inverse core, and injectivity of the
    resulting surjection A x X^n -> A x X^n from the Hopf property.
    """
    vertices = list(vertices)
    if not vertices:
        return SimplexVerdict(True, None)
    amb = vertices[0].ambient
    g = amb.group
    if len(set(vertices)) != len(vertices):
        return SimplexVerdict(False, witness=("repeated vertex",))
    for k, l in itertools.combinations(range(len(vertices)), 2):
        for (u, wu), (v, wv) in itertools.product(vertices[k].images, vertices[l].images):
            if not _commute(g, wu, wv):
                return SimplexVerdict(False, witness=(k, l, u, v))
    try:
        comp = canonical_complement(vertices, amb.n)
    except DomainError as exc:
        raise InternalConsistencyError(f"commuting vertices share a colour: {exc}") from None
    for k, f in enumerate(vertices):
        for h in comp.generators(amb):
            hw = Word.gen(g, h)
            for v, w in f.images:
                if not _commute(g, w, hw):
                    raise InternalConsistencyError(f"vertex {k} image of {v} does not commute with {h}")
        f.validate()
    return SimplexVerdict(True, comp)


def is_simplex_In(vertices: Sequence[ColoredVertex]) -> bool:
    return check_simplex_In(vertices).ok


# -- sampling ---------------------------------------------------------------


def random_vertex(
    amb: SplitAmbient,
    rng: random.Random,
    length: int,
    base: int = 1,
    pool: Sequence[AutGenerator] | None = None,
) -> tuple[ColoredVertex, int]:
    """phi o iota_base for a random word phi of the given length.

    Returns the vertex and the copy that the word's swaps carry ``base`` to.
    """
    pool = amb.full_pool() if pool is None else pool
    word = [rng.choice(pool) for _ in range(length)]
    pos = base
    for gen in word:
        if isinstance(gen, GraphAut):
            target = gen.perm.get(amb.xv(pos, amb.x.vertices[0]))
            pos = amb.copy_of(target)
    return ColoredVertex.from_word(amb, word, base), pos


def _twist_word(amb: SplitAmbient, j: int, rng: random.Random, bound: int) -> list[AutGenerator]:
    out: list[AutGenerator] = []
    for v in amb.x.vertices:
        for z in sorted(amb.central):
            t = rng.randint(-bound, bound)
            step = [Transvection(amb.xv(j, v), z)] * abs(t)
            if t < 0:
                # x -> x z^-1 is inversion-conjugated transvection: z -> z^-1, x -> x z, z -> z^-1
                step = [Inversion(z), Transvection(amb.xv(j, v), z), Inversion(z)] * abs(t)
            out.extend(step)
    return out


@dataclass(frozen=True)
class InSample:
    complex: SimplicialComplex
    vertices: dict
    projection: dict
    base: SimplicialComplex
    ambient: SplitAmbient

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "vertices": {k: v.to_json() for k, v in sorted(self.vertices.items())},
        }


def build_In_sample(
    a: Raag,
    x: Raag,
    n: int,
    vertices_per_color: int = 2,
    twist_bound: int = 1,
    aut_word_length: int = 3,
    seed: int = 0,
    max_attempts: int = 200,
) -> InSample:
    """Finite full subcomplex of I_n(A, X) with its colour projection to the simplex."""
    amb = SplitAmbient(a, x, n)
    rng = random.Random(seed)
    verts: dict[str, ColoredVertex] = {}
    for j in range(1, n + 1):
        pool = amb.copy_generators(j)
        chosen = [ColoredVertex.standard(amb, j)]
        attempts = 0
        while len(chosen) < vertices_per_color:
            attempts += 1
            if attempts > max_attempts:
                raise DomainError(f"could not sample {vertices_per_color} distinct vertices of colour {j}")
            word = [rng.choice(pool) for _ in range(rng.randint(1, max(1, aut_word_length)))] if pool else []
            word += _twist_word(amb, j, rng, twist_bound) if amb.central else []
            v = ColoredVertex.from_word(amb, word, base=j)
            if v.color != j:
                raise InternalConsistencyError("copy-internal word changed the colour")
            if v not in chosen:
                chosen.append(v)
        for k, v in enumerate(chosen):
            verts[f"f{j}.{k}"] = v
    ids = list(verts)
    compatible = {
        (p, q)
        for p, q in itertools.combinations(ids, 2)
        if check_simplex_In([verts[p], verts[q]]).ok
    }
    faces = _cliques(ids, compatible)
    for f in faces:
        if not check_simplex_In([verts[i] for i in f]).ok:
            raise InternalConsistencyError(f"pairwise compatible set {f} is not a simplex")
    cx = SimplicialComplex.from_faces(faces, ids)
    proj = {i: verts[i].color for i in ids}
    base = SimplicialComplex.from_faces([tuple(range(1, n + 1))])
    return InSample(cx, verts, proj, base, amb)


def _cliques(ids: list[str], edges: set[tuple[str, str]]) -> list[tuple[str, ...]]:
    adj = {i: set() for i in ids}
    for p, q in edges:
        adj[p].add(q)
        adj[q].add(p)
    out: list[tuple[str, ...]] = []

    def grow(clique: list[str], cand: set[str], excl: set[str]) -> None:
        if not cand and not excl:
            out.append(tuple(clique))
            return
        for v in sorted(cand):
            grow(clique + [v], cand & adj[v], excl & adj[v])
            cand = cand - {v}
            excl = excl | {v}

    grow([], set(ids), set())
    return out
