"""Bounded partial-basis complexes of Z^n and the Euclidean retraction."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Sequence

from ..errors import DomainError, ResourceError
from ..intlinalg import det, is_partial_basis
from ..simplicial import SimplicialComplex

MAX_N = 5
MAX_Q = 8
MAX_VERTICES = 20_000

Vec = tuple[int, ...]


def _minors_gcd(vs: Sequence[Vec], n: int) -> int:
    k = len(vs)
    if k == n:
        return abs(det([list(v) for v in vs]))
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = gcd(g, det([[v[c] for c in cols] for v in vs]))
        if g == 1:
            return 1
    return g


def partial_basis(vs: Sequence[Vec], n: int) -> bool:
    """Fast path of is_partial_basis for small tuples."""
    if len(vs) > n:
        return False
    if len(vs) == 1:
        return gcd(*vs[0]) == 1 if n > 1 else abs(vs[0][0]) == 1
    return _minors_gcd(vs, n) == 1


def box_vectors(n: int, bound: int, last_bound: int | None = None) -> list[Vec]:
    """Primitive vectors of Z^n in a box; the last coordinate may get its own bound."""
    last_bound = bound if last_bound is None else last_bound
    ranges = [range(-bound, bound + 1)] * (n - 1) + [range(-last_bound, last_bound + 1)]
    return [v for v in itertools.product(*ranges) if any(v) and partial_basis([v], n)]


def extension_complex(
    candidates: Sequence[Vec], anchor: Sequence[Vec], n: int, max_vertices: int = MAX_VERTICES
) -> SimplicialComplex:
    """Complex on candidates w with anchor + face a partial basis (a bounded link)."""
    anchor = [tuple(a) for a in anchor]
    verts = [w for w in candidates if w not in anchor and partial_basis(anchor + [w], n)]
    if len(verts) > max_vertices:
        raise ResourceError(f"{len(verts)} vertices exceeds cap {max_vertices}")
    room = n - len(anchor)
    idx = {v: i for i, v in enumerate(verts)}
    nbrs: list[set[int]] = [set() for _ in verts]
    if room >= 2:
        for i, j in itertools.combinations(range(len(verts)), 2):
            if partial_basis(anchor + [verts[i], verts[j]], n):
                nbrs[i].add(j)
                nbrs[j].add(i)
    faces: list[tuple[Vec, ...]] = []

    def grow(face: list[int], cand: set[int]) -> None:
        extended = False
        if len(face) < room:
            for j in sorted(c for c in cand if c > face[-1]):
                trial = face + [j]
                if len(trial) > 2 and not partial_basis(anchor + [verts[k] for k in trial], n):
                    continue
                extended = True
                grow(trial, cand & nbrs[j])
        if not extended:
            faces.append(tuple(verts[k] for k in face))

    for i in range(len(verts)):
        grow([i], nbrs[i])
    del idx
    return SimplicialComplex.from_faces(faces, verts)


def build_unimodular_complex(n: int, q: int, max_n: int = MAX_N, max_q: int = MAX_Q) -> SimplicialComplex:
    """Primitive vectors with every coordinate in [-q, q]; faces are partial bases."""
    if n < 1 or q < 1:
        raise DomainError("need n >= 1 and q >= 1")
    if n > max_n or q > max_q:
        raise ResourceError(f"unimodular complex capped at n <= {max_n}, q <= {max_q}")
    return extension_complex(box_vectors(n, q), [], n)


def maazen_filtration(link_base: SimplicialComplex, n: int, q: int) -> SimplicialComplex:
    """Full subcomplex on vertices whose last coordinate is at most q in absolute value."""
    for v in link_base.vertices:
        if not isinstance(v, tuple) or len(v) != n:
            raise DomainError(f"vertex {v!r} is not a vector of Z^{n}")
    return link_base.full_subcomplex(v for v in link_base.vertices if abs(v[n - 1]) <= q)


def delete_last(c: SimplicialComplex) -> SimplicialComplex:
    return c.relabel({v: v[:-1] for v in c.vertices})


def kappa(z: int, q: int) -> int:
    if q < 0:
        raise DomainError("q must be non-negative")
    m = q + 1
    if abs(z) < m:
        return 0
    k = abs(z) // m
    return k if z > 0 else -k


def kappa_ok(z: int, q: int) -> bool:
    k = kappa(z, q)
    if abs(z) < q + 1:
        return k == 0
    return abs(z - k * (q + 1)) < q + 1


def maazen_retraction(link: SimplicialComplex, v1: Sequence[int], q: int) -> dict[Hashable, Vec]:
    """w -> w - eps * kappa(w_n) * v1, where v1 has last coordinate eps * (q + 1)."""
    v1 = tuple(v1)
    if abs(v1[-1]) != q + 1:
        raise DomainError(f"last coordinate of v1 must be +-{q + 1}, got {v1[-1]}")
    eps = 1 if v1[-1] > 0 else -1
    out = {}
    for w in link.vertices:
        k = kappa(w[-1], q)
        out[w] = tuple(a - eps * k * b for a, b in zip(w, v1))
    return out


@dataclass(frozen=True)
class RetractionInstance:
    n: int
    q: int
    sigma: tuple[Vec, ...]
    vs: tuple[Vec, ...]
    link: SimplicialComplex

    @property
    def anchor(self) -> list[Vec]:
        return list(self.sigma) + list(self.vs)


@dataclass(frozen=True)
class RetractionVerdict:
    ok: bool
    failed: str | None = None
    witness: object = None

    def to_json(self) -> dict:
        w = self.witness
        return {"ok": self.ok, "failed": self.failed, "witness": None if w is None else repr(w)}


def verify_retraction(inst: RetractionInstance) -> RetractionVerdict:
    """Check the four properties against the true (unbounded) link of the anchor.

    Membership of images in the link is decided with is_partial_basis, not by
    looking the image up in the bounded complex, since images may leave the box.
    """
    n, q = inst.n, inst.q
    anchor = inst.anchor
    pi = maazen_retraction(inst.link, inst.vs[0], q)
    for w, img in pi.items():
        if abs(img[-1]) > q:
            return RetractionVerdict(False, "lands_in_O_q", (w, img))
        if abs(w[-1]) <= q and img != w:
            return RetractionVerdict(False, "fixes_O_q", (w, img))
        again = maazen_retraction(SimplicialComplex.from_faces([(img,)]), inst.vs[0], q)[img]
        if again != img:
            return RetractionVerdict(False, "idempotent", (w, img, again))
    for f in inst.link.faces:
        img = [pi[w] for w in f]
        if len(set(img)) != len(img) or not is_partial_basis(anchor + img, n):
            return RetractionVerdict(False, "simplicial", (f, tuple(img)))
    return RetractionVerdict(True)


def random_unimodular(n: int, rng: random.Random, steps: int = 12, bound: int = 2) -> list[list[int]]:
    """A GL_n(Z) matrix from random elementary row operations and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if n > 1:
            c = rng.randint(-bound, bound)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.2:
            k = rng.randrange(n)
            m[k] = [-a for a in m[k]]
    if n > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return m


def sample_retraction_instance(
    rng: random.Random, n: int, q: int, box: int | None = None, max_tries: int = 500
) -> RetractionInstance:
    """sigma_p = last p+1 standard vectors; v_1..v_k with last coordinate +-(q+1)
    forming a simplex of the link; bounded link of the whole anchor.

    The box bounds the first n-1 coordinates; the last ranges over +-(2q+2) so
    that the retraction has vertices to move.  Anchors have at least n-2
    vectors, which keeps enumeration of the bounded link cheap.
    """
    box = (1 if n >= 4 else 2) if box is None else box
    for _ in range(max_tries):
        p = rng.randint(-1, n - 3)
        sigma = [tuple(int(i == j) for i in range(n)) for j in range(n - p - 1, n)]
        lo = max(1, n - 2 - (p + 1))  # anchor of size >= n - 2 keeps the link at most 1-dimensional
        k = rng.randint(lo, max(lo, n - p - 2))
        vs: list[Vec] = []
        for _ in range(50 * k):
            if len(vs) == k:
                break
            v = tuple(rng.randint(-box, box) for _ in range(n - 1)) + (rng.choice((-1, 1)) * (q + 1),)
            if v not in vs and partial_basis(sigma + vs + [v], n):
                vs.append(v)
        if len(vs) != k:
            continue
        link = extension_complex(box_vectors(n, box, 2 * q + 2), sigma + vs, n)
        if link.is_empty():
            continue
        return RetractionInstance(n, q, tuple(sigma), tuple(vs), link)
    raise DomainError(f"no retraction instance found for n={n}, q={q}")
