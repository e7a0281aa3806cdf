"""Semisimplicial sets W_n of ordered splittings.

A p-simplex is an ordered tuple of p+1 split maps X -> A x X^n with a common
complement.  The j-th face forgets copy j and absorbs its image into the
complement.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any

from ..errors import DomainError, InternalConsistencyError
from ..raag import Raag
from ..simplicial import SemiSimplicialSet
from .colors import FactorComplement, InSample, build_In_sample, canonical_complement
from .intersection import ZComplement
from .unimodular import random_unimodular


@dataclass(frozen=True)
class ZSplitting:
    fs: tuple[tuple[int, ...], ...]
    complement: ZComplement

    def face(self, j: int) -> "ZSplitting":
        rest = self.fs[:j] + self.fs[j + 1:]
        out = ZSplitting(rest, self.complement.absorb(self.fs[j]))
        if not out.complement.is_complement_of(out.fs):
            raise InternalConsistencyError(f"face {j} is not a splitting")
        return out


@dataclass(frozen=True)
class ColorSplitting:
    """Vertex ids of an I_n sample plus the complement in factor form."""

    ids: tuple[str, ...]
    complement: FactorComplement


@dataclass
class WnSample:
    kind: str
    sset: SemiSimplicialSet
    in_sample: InSample | None = None

    def counts(self) -> dict[int, int]:
        return self.sset.counts()


def _colour_face(sample: InSample):
    verts = sample.vertices
    n = sample.ambient.n

    def face(s: ColorSplitting, j: int) -> ColorSplitting:
        absorbed = verts[s.ids[j]]
        if absorbed.color in s.complement.x_factors:
            raise InternalConsistencyError("absorbed copy already lies in the complement")
        # the images of the absorbed map, together with the central part of A,
        # generate exactly X_color; this is what validate() re-derives
        absorbed.validate()
        comp = FactorComplement(n, s.complement.x_factors | {absorbed.color})
        rest = s.ids[:j] + s.ids[j + 1:]
        if comp != canonical_complement((verts[i] for i in rest), n):
            raise InternalConsistencyError(f"face {j} complement differs from the canonical one")
        return ColorSplitting(rest, comp)

    return face


def build_Wn_sample(
    a: Raag,
    x: Raag,
    n: int,
    seed: int = 0,
    vertices_per_color: int = 2,
    top_simplices: int = 40,
    twist_bound: int = 2,
) -> WnSample:
    """Seeded finite piece of W_n(A, X), closed under faces.

    For X = Z the top simplices come from random GL_n(Z) frames with twisted
    complements; otherwise they are ordered distinct-colour tuples drawn from a
    build_In_sample vertex set, each with its canonical complement.
    """
    rng = random.Random(seed)
    if len(x.graph) == 1:
        if a.free_abelian_rank:
            raise DomainError("A has a Z factor; cancel it first (replace n by n + k)")
        tops: dict[int, list] = {}
        for _ in range(top_simplices):
            p = rng.randint(0, n - 1)
            frame = random_unimodular(n, rng)
            fs = tuple(tuple(r) for r in frame[: p + 1])
            t = tuple(tuple(r) for r in frame[p + 1:])
            tw = tuple((g, tuple(rng.randint(-twist_bound, twist_bound) for _ in range(n))) for g in a.vertices)
            comp = ZComplement(n, t, tw).canonical()
            if not comp.is_complement_of(fs):
                raise InternalConsistencyError("sampled frame is not a splitting")
            tops.setdefault(p, []).append(ZSplitting(fs, comp))
        sset = SemiSimplicialSet.from_face_function(tops, lambda s, j: s.face(j))
        return WnSample("Z", sset)
    sample = build_In_sample(a, x, n, vertices_per_color, twist_bound=twist_bound, seed=seed)
    by_color: dict[int, list[str]] = {}
    for i, v in sample.vertices.items():
        by_color.setdefault(v.color, []).append(i)
    tops = {}
    for p in range(n):
        simplices = []
        for colors in itertools.permutations(range(1, n + 1), p + 1):
            for ids in itertools.product(*(by_color[c] for c in colors)):
                simplices.append(ColorSplitting(ids, canonical_complement(colors, n)))
        if len(simplices) > top_simplices:
            simplices = rng.sample(simplices, top_simplices)
        tops[p] = simplices
    sset = SemiSimplicialSet.from_face_function(tops, _colour_face(sample))
    return WnSample("colour", sset, sample)


def wn_report(w: WnSample) -> dict[str, Any]:
    bad = w.sset.identity_violations()
    return {
        "kind": w.kind,
        "counts": {str(p): c for p, c in w.counts().items()},
        "identity_violations": len(bad),
        "ok": not bad,
        "witness": repr(bad[0]) if bad else None,
    }
