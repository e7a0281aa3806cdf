"""Complements in A x Z^n (A without Z factor) and their intersections.

A complement K is stored as a lattice part T <= Z^n together with one twist
vector w_k per generator a_k of A; K is generated by the a_k w_k and T.  An
element a v (a in A, v in Z^n) lies in K iff v - sum_k e_k(a) w_k lies in
span(T), where e(a) is the abelianised exponent vector of a.  Hence K is
faithfully recorded by the lattice

    Lambda(K) = span{(e_k, w_k)} + span{(0, t)}  <=  Z^r x Z^n,

and every subgroup identity checked below is an identity of such lattices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import DomainError
from ..intlinalg import Lattice, det, intersect_lattices, inverse_unimodular, matvec, transpose
from ..raag import Raag
from .unimodular import partial_basis, random_unimodular

Vec = tuple[int, ...]


@dataclass(frozen=True)
class ZComplement:
    n: int
    lattice: tuple[Vec, ...]
    twists: tuple[tuple[str, Vec], ...] = ()

    @property
    def span(self) -> Lattice:
        return Lattice.span(self.lattice, self.n)

    @property
    def twist(self) -> dict[str, Vec]:
        return dict(self.twists)

    def canonical(self) -> "ZComplement":
        """HNF lattice basis and twists reduced to canonical coset representatives."""
        lat = self.span
        return ZComplement(self.n, lat.basis, tuple((a, lat.reduce(w)) for a, w in self.twists))

    def absorb(self, v: Sequence[int]) -> "ZComplement":
        return ZComplement(self.n, self.lattice + (tuple(v),), self.twists).canonical()

    def group_lattice(self, a_gens: Sequence[str]) -> Lattice:
        r = len(a_gens)
        tw = self.twist
        rows = []
        for k, a in enumerate(a_gens):
            rows.append(tuple(int(i == k) for i in range(r)) + tuple(tw.get(a, (0,) * self.n)))
        rows += [(0,) * r + tuple(t) for t in self.lattice]
        return Lattice.span(rows, r + self.n)

    def is_complement_of(self, fs: Sequence[Sequence[int]]) -> bool:
        frame = [list(t) for t in self.lattice] + [list(f) for f in fs]
        return len(frame) == self.n and abs(det(frame)) == 1

    def to_json(self) -> dict:
        return {
            "lattice": [list(t) for t in self.lattice],
            "twists": {a: list(w) for a, w in self.twists},
        }


@dataclass(frozen=True)
class SISimplex:
    """Vertices (f_i, K_i) of SI_n(A, Z), with A given by its generator names."""

    a: Raag
    n: int
    fs: tuple[Vec, ...]
    ks: tuple[ZComplement, ...]

    @property
    def p(self) -> int:
        return len(self.fs) - 1

    @property
    def a_gens(self) -> tuple[str, ...]:
        return self.a.vertices

    def violation(self) -> tuple | None:
        """First reason this is not an SI-simplex, or None."""
        if len(self.fs) != len(self.ks):
            return ("shape", len(self.fs), len(self.ks))
        if not partial_basis(list(self.fs), self.n):
            return ("not_partial_basis", list(self.fs))
        for i, (f, k) in enumerate(zip(self.fs, self.ks)):
            if not k.is_complement_of([f]):
                return ("not_complement", i)
        for j, k in enumerate(self.ks):
            lat = k.span
            for i, f in enumerate(self.fs):
                if i != j and not lat.contains(f):
                    return ("f_not_in_K", i, j)
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": list(self.a_gens),
            "fs": [list(f) for f in self.fs],
            "complements": [k.to_json() for k in self.ks],
        }


def _frame_coordinates(frame: Sequence[Sequence[int]], w: Sequence[int]) -> list[int]:
    """Coordinates c with c . frame = w for a unimodular frame (rows)."""
    inv = inverse_unimodular(transpose(frame))
    return matvec(inv, w)


@dataclass(frozen=True)
class IntersectionResult:
    complement: ZComplement
    m: int
    m_matrix: tuple[tuple[int, ...], ...]
    certificate: dict = field(compare=False)

    @property
    def ok(self) -> bool:
        return all(bool(v) for k, v in self.certificate.items() if k.startswith("check_"))

    def to_json(self) -> dict:
        return {
            "complement": self.complement.to_json(),
            "m": self.m,
            "m_matrix": [list(r) for r in self.m_matrix],
            "certificate": self.certificate,
        }


def _intersect_all(lats: Sequence[Lattice]) -> Lattice:
    out = lats[0]
    for lat in lats[1:]:
        out = intersect_lattices(out, lat)
    return out


def complement_intersection(s: SISimplex) -> IntersectionResult:
    """The intersection of the K_i as A' x L with L = meet of the lattice parts.

    m_{i,k} is the f_i-coordinate of the twist w_{i,k} in the basis (T_i, f_i);
    A' is generated by a_k * sum_i m_{i,k} f_i.  The certificate recomputes
    the intersection directly as a meet of the Lambda lattices and compares.
    """
    if s.a.free_abelian_rank:
        raise DomainError("A has a Z factor; cancel it first")
    bad = s.violation()
    if bad is not None:
        raise DomainError(f"not an SI-simplex: {bad}")
    n = s.n
    gens = s.a_gens
    m_matrix = []
    for f, k in zip(s.fs, s.ks):
        frame = [list(t) for t in k.lattice] + [list(f)]
        tw = k.twist
        m_matrix.append(tuple(_frame_coordinates(frame, tw.get(a, (0,) * n))[-1] for a in gens))
    u = {
        a: tuple(sum(m_matrix[i][kk] * s.fs[i][c] for i in range(len(s.fs))) for c in range(n))
        for kk, a in enumerate(gens)
    }
    lat = _intersect_all([k.span for k in s.ks])
    result = ZComplement(n, lat.basis, tuple((a, u[a]) for a in gens)).canonical()

    r = len(gens)
    direct = _intersect_all([k.group_lattice(gens) for k in s.ks])
    claimed = result.group_lattice(gens)
    in_every = all(k.group_lattice(gens).contains_lattice(claimed) for k in s.ks)
    proj = Lattice.span([row[:r] for row in direct.basis], r) if r else Lattice.zero(0)
    cert = {
        "lattice_rank": lat.rank,
        "expected_rank": n - s.p - 1,
        "check_generators_in_every_K": in_every,
        "check_equals_direct_meet": direct == claimed,
        "check_A_part_is_all_of_A": proj == Lattice.span([[int(i == j) for j in range(r)] for i in range(r)], r) if r else True,
        "check_rank": lat.rank == n - s.p - 1,
    }
    return IntersectionResult(result, lat.rank, tuple(m_matrix), cert)


@dataclass(frozen=True)
class SnVerdict:
    ok: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness": list(self.witness) if self.witness else None}


def verify_Sn_equals_SIn(s: SISimplex) -> SnVerdict:
    """With K the meet of the K_i, check K_j = K x prod_{i != j} f_i(Z) for every j."""
    bad = s.violation()
    if bad is not None:
        return SnVerdict(False, bad)
    gens = s.a_gens
    r = len(gens)
    lams = [k.group_lattice(gens) for k in s.ks]
    meet = _intersect_all(lams)
    for j, lam in enumerate(lams):
        others = [(0,) * r + f for i, f in enumerate(s.fs) if i != j]
        rebuilt = meet + Lattice.span(others, r + s.n) if others else meet
        if rebuilt != lam:
            return SnVerdict(False, ("K_j_differs", j))
        if rebuilt.rank != meet.rank + len(others):
            return SnVerdict(False, ("not_direct", j))
    return SnVerdict(True)


# -- sampling ---------------------------------------------------------------


def random_si_simplex(
    rng: random.Random, a: Raag, n: int, p: int, twist_bound: int = 3, shear_bound: int = 3
) -> SISimplex:
    """SI-simplex built from a random GL_n(Z) frame b_1..b_n.

    f_i = b_i for i <= p.  T_i keeps the other f_j, sheared extra frame vectors
    b_l + c f_i (l > p), and is then re-based by a random unimodular matrix.
    """
    if not 0 <= p < n:
        raise DomainError("need 0 <= p < n")
    frame = random_unimodular(n, rng)
    fs = [tuple(b) for b in frame[: p + 1]]
    ks = []
    for i in range(p + 1):
        t = [list(fs[j]) for j in range(p + 1) if j != i]
        for l in range(p + 1, n):
            c = rng.randint(-shear_bound, shear_bound)
            t.append([x + c * y for x, y in zip(frame[l], fs[i])])
        if len(t) > 1:
            u = random_unimodular(len(t), rng, steps=4, bound=1)
            t = [[sum(u[r][c] * t[c][x] for c in range(len(t))) for x in range(n)] for r in range(len(t))]
        tw = tuple((g, tuple(rng.randint(-twist_bound, twist_bound) for _ in range(n))) for g in a.vertices)
        ks.append(ZComplement(n, tuple(tuple(row) for row in t), tw))
    return SISimplex(a, n, tuple(fs), tuple(ks))


def corrupt(s: SISimplex, rng: random.Random) -> SISimplex:
    """Scale one lattice vector of one complement by 2."""
    j = rng.randrange(len(s.ks))
    k = s.ks[j]
    if not k.lattice:
        raise DomainError("nothing to corrupt: empty lattice part")
    t = list(k.lattice)
    idx = rng.randrange(len(t))
    t[idx] = tuple(2 * x for x in t[idx])
    ks = list(s.ks)
    ks[j] = ZComplement(k.n, tuple(t), k.twists)
    return SISimplex(s.a, s.n, s.fs, tuple(ks))


def direct_factor_lemma(a: Lattice, b: Lattice, a2: Lattice, b2: Lattice) -> bool:
    """For A + B = A' + B' direct and A' <= A: A = A' + (B' meet A), directly."""
    meet = intersect_lattices(b2, a)
    return a2 + meet == a and a2.rank + meet.rank == a.rank


def random_lemma_instance(rng: random.Random, n: int = 4) -> tuple[Lattice, Lattice, Lattice, Lattice]:
    m = random_unimodular(n, rng)
    k = rng.randint(0, n)
    a_rows, b_rows = m[:k], m[k:]
    if k:
        u = random_unimodular(k, rng, steps=4, bound=2)
        a_rows = [[sum(u[r][c] * a_rows[c][x] for c in range(k)) for x in range(n)] for r in range(k)]
    k2 = rng.randint(0, k)
    a2 = a_rows[:k2]
    rest = a_rows[k2:] + b_rows
    b2 = []
    for row in rest:
        shift = [0] * n
        for base in a2:
            c = rng.randint(-2, 2)
            shift = [s + c * y for s, y in zip(shift, base)]
        b2.append([x + s for x, s in zip(row, shift)])
    span = lambda rows: Lattice.span(rows, n) if rows else Lattice.zero(n)
    return span(a_rows), span(b_rows), span(a2), span(b2)

