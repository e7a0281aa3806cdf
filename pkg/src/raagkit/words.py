"""Words in a RAAG with a unique commutation-aware normal form.

Normal form: first free-reduce up to shuffling (a letter travels left through
letters it commutes with and merges into an equal-vertex syllable), then emit
the lexicographically least shuffle, comparing vertices by the ambient sorted
vertex order.  Letters carry collapsed exponents, so z^5 is one letter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .raag import AutGenerator, GraphAut, Inversion, PartialConjugation, Raag, Transvection

Letter = tuple[str, int]


def _free_reduce(letters: Iterable[Letter], ambient: Raag) -> list[Letter]:
    g = ambient.graph
    out: list[Letter] = []
    for v, e in letters:
        if v not in g:
            raise DomainError(f"{v!r} is not a generator of the ambient group")
        if not e:
            continue
        j = len(out) - 1
        while j >= 0:
            u, f = out[j]
            if u == v:
                if e + f:
                    out[j] = (v, e + f)
                else:
                    del out[j]
                break
            if not g.adjacent(u, v):
                j = -1
                out.append((v, e))
                break
            j -= 1
        else:
            out.append((v, e))
    return out


def _lex_shuffle(letters: list[Letter], ambient: Raag) -> tuple[Letter, ...]:
    g = ambient.graph
    idx = g.index
    rest = list(letters)
    out = []
    while rest:
        best = None
        for i, (v, _) in enumerate(rest):
            if all(u != v and g.adjacent(u, v) for u, _ in rest[:i]):
                if best is None or idx[v] < idx[rest[best][0]]:
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    ambient: Raag
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for _, e in self.letters:
            if not e:
                raise DomainError("zero exponent in a stored word")

    # construction ------------------------------------------------------

    @classmethod
    def identity(cls, ambient: Raag) -> "Word":
        return cls(ambient, ())

    @classmethod
    def gen(cls, ambient: Raag, v: str, e: int = 1) -> "Word":
        return normalize([(v, e)], ambient)

    @classmethod
    def parse(cls, text: str, ambient: Raag) -> "Word":
        return normalize(parse_letters(text), ambient)

    # group operations --------------------------------------------------

    def _same(self, other: "Word") -> None:
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise DomainError("words live in different ambient groups")

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word.identity(self.ambient)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def support(self) -> set[str]:
        return {v for v, _ in self.letters}

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def normalize(raw: Iterable[Letter], ambient: Raag) -> Word:
    return Word(ambient, _lex_shuffle(_free_reduce(raw, ambient), ambient))


def multiply(u: Word, v: Word) -> Word:
    u._same(v)
    return normalize(u.letters + v.letters, u.ambient)


def invert(u: Word) -> Word:
    return normalize(((v, -e) for v, e in reversed(u.letters)), u.ambient)


def commutes(u: Word, v: Word) -> bool:
    return u * v == v * u


# -- text form --------------------------------------------------------------

_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def parse_letters(text: str) -> list[Letter]:
    text = text.strip()
    if text in ("", "1"):
        return []
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise DomainError(f"cannot parse letter {tok!r}")
        out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return out


def format_letters(letters: Sequence[Letter]) -> str:
    if not letters:
        return "1"
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in letters)


# -- automorphisms acting on words ------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """Endomorphism given by images of the ambient generators."""

    ambient: Raag
    images: tuple[tuple[str, Word], ...]

    @classmethod
    def from_images(cls, ambient: Raag, images: Mapping[str, Word]) -> "Automorphism":
        full = {v: images.get(v, Word.gen(ambient, v)) for v in ambient.vertices}
        return cls(ambient, tuple(sorted(full.items())))

    @classmethod
    def identity(cls, ambient: Raag) -> "Automorphism":
        return cls.from_images(ambient, {})

    @classmethod
    def from_generator(cls, gen: AutGenerator, ambient: Raag) -> "Automorphism":
        gen_ = lambda v, e=1: Word.gen(ambient, v, e)
        _check_support(gen, ambient)
        if isinstance(gen, GraphAut):
            return cls.from_images(ambient, {v: gen_(w) for v, w in gen.mapping})
        if isinstance(gen, Inversion):
            return cls.from_images(ambient, {gen.v: gen_(gen.v, -1)})
        if isinstance(gen, Transvection):
            return cls.from_images(ambient, {gen.v: gen_(gen.v) * gen_(gen.w)})
        if isinstance(gen, PartialConjugation):
            c = gen_(gen.v)
            return cls.from_images(ambient, {x: c * gen_(x) * c.inverse() for x in gen.component})
        raise DomainError(f"unknown generator {gen!r}")

    @property
    def image(self) -> dict[str, Word]:
        return dict(self.images)

    def apply(self, w: Word) -> Word:
        if w.ambient is not self.ambient and w.ambient != self.ambient:
            raise DomainError("automorphism and word live in different ambient groups")
        img = self.image
        raw: list[Letter] = []
        for v, e in w.letters:
            piece = img[v].letters if e > 0 else invert(img[v]).letters
            raw.extend(piece * abs(e))
        return normalize(raw, self.ambient)

    def then(self, other: "Automorphism") -> "Automorphism":
        """The composite other o self (apply self first)."""
        return Automorphism(self.ambient, tuple((v, other.apply(w)) for v, w in self.images))

    def is_identity(self) -> bool:
        return all(w.letters == ((v, 1),) for v, w in self.images)


def _check_support(gen: AutGenerator, ambient: Raag) -> None:
    g = ambient.graph
    if isinstance(gen, GraphAut):
        names = {v for pair in gen.mapping for v in pair}
        if names != set(g.vertices):
            raise DomainError("graph automorphism does not match the ambient vertex set")
        perm = gen.perm
        if any(not g.adjacent(perm[u], perm[w]) for u, w in g.sorted_edges()):
            raise DomainError("permutation does not preserve edges")
        return
    names = {gen.v}
    if isinstance(gen, Transvection):
        names.add(gen.w)
    if isinstance(gen, PartialConjugation):
        names |= gen.component
    missing = names - set(g.vertices)
    if missing:
        raise DomainError(f"generator mentions vertices {sorted(missing)} outside the ambient group")


def apply_generator(gen: AutGenerator, w: Word) -> Word:
    return Automorphism.from_generator(gen, w.ambient).apply(w)


def inverse_automorphism(gen: AutGenerator, ambient: Raag) -> Automorphism:
    """Explicit inverse of a generator as generator images."""
    gen_ = lambda v, e=1: Word.gen(ambient, v, e)
    _check_support(gen, ambient)
    if isinstance(gen, GraphAut):
        return Automorphism.from_images(ambient, {w: gen_(v) for v, w in gen.mapping})
    if isinstance(gen, Inversion):
        return Automorphism.from_generator(gen, ambient)
    if isinstance(gen, Transvection):
        return Automorphism.from_images(ambient, {gen.v: gen_(gen.v) * gen_(gen.w, -1)})
    if isinstance(gen, PartialConjugation):
        c = gen_(gen.v)
        return Automorphism.from_images(ambient, {x: c.inverse() * gen_(x) * c for x in gen.component})
    raise DomainError(f"unknown generator {gen!r}")
