"""Finite simplicial complexes and semisimplicial sets with integral homology.

Connectivity verdicts produced here are HOMOLOGICAL: a complex is called
homologically k-connected when it is nonempty and its reduced integral homology
vanishes through degree k.  Nothing here computes homotopy groups.
"""
from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .errors import DomainError, ResourceError
from .intlinalg import smith_normal_form

DEFAULT_MAX_FACES = 400_000
DEFAULT_MAX_DENSE = 600  # side length of the dense Smith block after sparse pivoting


def _sorted_vertices(vs: Iterable[Hashable]) -> list:
    vs = list(vs)
    try:
        return sorted(vs)
    except TypeError:
        return sorted(vs, key=repr)


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices in a fixed order; faces are nonempty tuples sorted by that order."""

    vertices: tuple
    faces: frozenset

    # construction ------------------------------------------------------

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[Hashable]], vertices: Iterable[Hashable] | None = None) -> "SimplicialComplex":
        """Downward closure of ``faces``.  Extra isolated vertices may be declared."""
        faces = [tuple(f) for f in faces]
        declared = set() if vertices is None else set(vertices)
        seen = set(declared)
        for f in faces:
            if len(set(f)) != len(f):
                raise DomainError(f"face {f!r} repeats a vertex")
            seen.update(f)
        if vertices is not None and not seen <= declared:
            raise DomainError(f"faces use undeclared vertices {sorted(map(repr, seen - declared))}")
        order = list(vertices) if vertices is not None else _sorted_vertices(seen)
        pos = {v: i for i, v in enumerate(order)}
        closed: set[tuple] = {(v,) for v in order}
        for f in faces:
            f = tuple(sorted(f, key=pos.__getitem__))
            if f in closed:
                continue
            for k in range(1, len(f) + 1):
                closed.update(itertools.combinations(f, k))
        return cls(tuple(order), frozenset(closed))

    from_maximal_faces = from_faces

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), frozenset())

    # basic structure ---------------------------------------------------

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def key(self, face: Iterable[Hashable]) -> tuple:
        pos = self.position
        try:
            return tuple(sorted(face, key=pos.__getitem__))
        except KeyError as exc:
            raise DomainError(f"{exc.args[0]!r} is not a vertex") from None

    @cached_property
    def by_dim(self) -> dict[int, list[tuple]]:
        out: dict[int, list[tuple]] = {}
        for f in self.faces:
            out.setdefault(len(f) - 1, []).append(f)
        pos = self.position
        for p in out:
            out[p].sort(key=lambda f: [pos[v] for v in f])
        return out

    @property
    def dim(self) -> int:
        return max(self.by_dim, default=-1)

    def faces_of_dim(self, p: int) -> list[tuple]:
        return self.by_dim.get(p, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces_of_dim(p)) for p in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.f_vector()))

    def is_face(self, face: Iterable[Hashable]) -> bool:
        face = tuple(face)
        if not face:
            return True
        if any(v not in self.position for v in face):
            return False
        return self.key(face) in self.faces

    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def maximal_faces(self) -> list[tuple]:
        faces = sorted(self.faces, key=len, reverse=True)
        maximal: list[tuple] = []
        covered: set[tuple] = set()
        for f in faces:
            if f in covered:
                continue
            maximal.append(f)
            for k in range(1, len(f)):
                covered.update(itertools.combinations(f, k))
        pos = self.position
        return sorted(maximal, key=lambda f: [pos[v] for v in f])

    def full_subcomplex(self, keep: Iterable[Hashable]) -> "SimplicialComplex":
        keep = set(keep)
        verts = [v for v in self.vertices if v in keep]
        return SimplicialComplex(tuple(verts), frozenset(f for f in self.faces if keep.issuperset(f)))

    def relabel(self, mapping: Mapping[Hashable, Hashable]) -> "SimplicialComplex":
        new = [mapping[v] for v in self.vertices]
        if len(set(new)) != len(new):
            raise DomainError("relabelling must be injective")
        return SimplicialComplex.from_faces((tuple(mapping[v] for v in f) for f in self.faces), new)

    # serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {"maximal_faces": [[_jsonable(v) for v in f] for f in self.maximal_faces]}

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "maximal_faces" not in data:
            raise DomainError('complex JSON must be an object with "maximal_faces"')
        faces = data["maximal_faces"]
        if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
            raise DomainError('"maximal_faces" must be an array of arrays')
        return cls.from_faces([tuple(_unjson(v) for v in f) for f in faces])


def _jsonable(v: Any) -> Any:
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, (str, int)):
        return v
    return str(v)


def _unjson(v: Any) -> Any:
    if isinstance(v, list):
        return tuple(_unjson(x) for x in v)
    if isinstance(v, (str, int)):
        return v
    raise DomainError(f"unsupported vertex id {v!r}")


# -- standard complexes -----------------------------------------------------


def simplex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex.from_faces([tuple(vertices)], vertices)


def simplex_boundary(vertices: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex.from_faces(itertools.combinations(vertices, len(vertices) - 1), vertices)


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if set(a.vertices) & set(b.vertices):
        raise DomainError("join needs disjoint vertex sets")
    fa = list(a.faces) + [()]
    fb = list(b.faces) + [()]
    return SimplicialComplex.from_faces((x + y for x in fa for y in fb if x or y), a.vertices + b.vertices)


def cone(c: SimplicialComplex, apex: Hashable = "*") -> SimplicialComplex:
    return join(c, SimplicialComplex.from_faces([(apex,)]))


def cross_polytope(n: int) -> SimplicialComplex:
    """Boundary of the n-dimensional cross-polytope: n-fold join of point pairs."""
    out = SimplicialComplex.empty()
    for j in range(1, n + 1):
        out = join(out, SimplicialComplex.from_faces([((j, 0),), ((j, 1),)]))
    return out


# -- homology ---------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    """Reduced integral homology in degrees 0..max_dim.

    ``empty`` flags the empty complex, whose only reduced homology sits in
    degree -1; it is reported as a verdict, not a group.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    empty: bool = False

    @property
    def max_dim(self) -> int:
        return len(self.betti) - 1

    def vanishes(self, i: int) -> bool:
        return self.betti[i] == 0 and not self.torsion[i]

    def group(self, i: int) -> str:
        parts = []
        if self.betti[i]:
            parts.append("Z" if self.betti[i] == 1 else f"Z^{self.betti[i]}")
        parts += [f"Z/{t}" for t in self.torsion[i]]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "empty": self.empty,
            "reduced": [
                {"dim": i, "betti": b, "torsion": list(t), "group": self.group(i)}
                for i, (b, t) in enumerate(zip(self.betti, self.torsion))
            ],
        }


def boundary_columns(c: SimplicialComplex, p: int) -> tuple[list[dict[int, int]], int]:
    """Sparse boundary d_p : C_p -> C_{p-1} as columns; d_0 is the augmentation."""
    cols_faces = c.faces_of_dim(p)
    if p == 0:
        return [{0: 1} for _ in cols_faces], 1
    rows = {f: i for i, f in enumerate(c.faces_of_dim(p - 1))}
    cols = []
    for f in cols_faces:
        col = {}
        for k in range(len(f)):
            col[rows[f[:k] + f[k + 1:]]] = -1 if k % 2 else 1
        cols.append(col)
    return cols, len(rows)


def sparse_rank_torsion(cols: list[dict[int, int]], nrows: int, max_dense: int = DEFAULT_MAX_DENSE) -> tuple[int, list[int]]:
    """(rank, invariant factors > 1) of a sparse integer matrix.

    Unit pivots are eliminated first (Markowitz-style, shortest column then
    shortest row), which preserves the Smith form up to the removed 1s; the
    remaining block goes through the dense Smith normal form.
    """
    colmap: dict[int, dict[int, int]] = {j: dict(col) for j, col in enumerate(cols) if col}
    rowmap: dict[int, dict[int, int]] = {}
    for j, col in colmap.items():
        for i, x in col.items():
            rowmap.setdefault(i, {})[j] = x
    rank = 0
    heap = [(len(col), j) for j, col in colmap.items()]
    heapq.heapify(heap)
    while heap:
        size, j = heapq.heappop(heap)
        col = colmap.get(j)
        if col is None:
            continue
        if size != len(col):
            heapq.heappush(heap, (len(col), j))
            continue
        units = [i for i, x in col.items() if x in (1, -1)]
        if not units:
            continue
        r = min(units, key=lambda i: (len(rowmap[i]), i))
        pivot_row = rowmap[r]
        pv = col[r]
        for i, x in list(col.items()):
            if i == r:
                continue
            f = x * pv  # pv is a unit, so x / pv == x * pv
            row_i = rowmap[i]
            for jj, y in pivot_row.items():
                nv = row_i.get(jj, 0) - f * y
                if nv:
                    row_i[jj] = nv
                    colmap[jj][i] = nv
                else:
                    row_i.pop(jj, None)
                    colmap[jj].pop(i, None)
            if not row_i:
                del rowmap[i]
        for jj in pivot_row:
            if jj != j:
                colmap[jj].pop(r, None)
                if colmap[jj]:
                    heapq.heappush(heap, (len(colmap[jj]), jj))
                else:
                    del colmap[jj]
        del rowmap[r]
        del colmap[j]
        rank += 1
    live_cols = sorted(j for j, col in colmap.items() if col)
    live_rows = sorted(rowmap)
    if not live_cols:
        return rank, []
    if len(live_cols) > max_dense and len(live_rows) > max_dense:
        raise ResourceError(
            f"dense Smith block {len(live_rows)}x{len(live_cols)} exceeds cap {max_dense}"
        )
    ridx = {i: k for k, i in enumerate(live_rows)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for k, j in enumerate(live_cols):
        for i, x in colmap[j].items():
            dense[ridx[i]][k] = x
    divisors = smith_normal_form(dense)[0]
    return rank + len(divisors), [d for d in divisors if d > 1]


def homology(c: SimplicialComplex, max_dim: int | None = None, max_faces: int = DEFAULT_MAX_FACES) -> HomologyReport:
    if max_dim is None:
        max_dim = max(c.dim, 0)
    if c.is_empty():
        return HomologyReport((0,) * (max_dim + 1), ((),) * (max_dim + 1), empty=True)
    ranks: dict[int, int] = {}
    tors: dict[int, list[int]] = {}
    for p in range(0, max_dim + 2):
        n_cols = len(c.faces_of_dim(p))
        if n_cols > max_faces:
            raise ResourceError(
                f"boundary matrix in dimension {p} has {n_cols} columns (cap {max_faces})"
            )
        if n_cols == 0:
            ranks[p], tors[p] = 0, []
            continue
        cols, nrows = boundary_columns(c, p)
        try:
            ranks[p], tors[p] = sparse_rank_torsion(cols, nrows)
        except ResourceError as exc:
            raise ResourceError(f"dimension {p}: {exc}") from None
    betti = []
    torsion = []
    for i in range(max_dim + 1):
        n_i = len(c.faces_of_dim(i))
        betti.append(n_i - ranks[i] - ranks[i + 1])
        torsion.append(tuple(tors[i + 1]))
    return HomologyReport(tuple(betti), tuple(torsion))


# -- links and connectivity -------------------------------------------------


def link_of(c: SimplicialComplex, sigma: Iterable[Hashable]) -> SimplicialComplex:
    sigma = tuple(sigma)
    if not sigma:
        return c
    if not c.is_face(sigma):
        raise DomainError(f"{sigma!r} is not a face")
    s = set(sigma)
    faces = [tuple(v for v in f if v not in s) for f in c.faces if s < set(f)]
    verts = [v for v in c.vertices if (v,) in set(faces)]
    return SimplicialComplex(tuple(verts), frozenset(faces))


@dataclass(frozen=True)
class ConnectivityVerdict:
    ok: bool
    k: int
    failing_dim: int | None
    kind: str = "homological"
    report: HomologyReport | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "ok": self.ok,
            "failing_dim": self.failing_dim,
            "homology": self.report.to_json() if self.report else None,
        }


def homological_connectivity(c: SimplicialComplex, k: int) -> ConnectivityVerdict:
    """Nonempty with vanishing reduced homology in degrees 0..k.

    k <= -2 is no condition; k = -1 means nonempty.
    """
    if k <= -2:
        return ConnectivityVerdict(True, k, None)
    if c.is_empty():
        return ConnectivityVerdict(False, k, -1)
    if k == -1:
        return ConnectivityVerdict(True, k, None)
    rep = homology(c, k)
    for i in range(k + 1):
        if not rep.vanishes(i):
            return ConnectivityVerdict(False, k, i, report=rep)
    return ConnectivityVerdict(True, k, None, report=rep)


@dataclass(frozen=True)
class CohenMacaulayVerdict:
    ok: bool
    n: int
    reason: str
    certificate: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "n": self.n,
            "reason": self.reason,
            "checked_links": [
                {"face": [_jsonable(v) for v in f], "required": k, "ok": v.ok, "failing_dim": v.failing_dim}
                for f, k, v in self.certificate
            ],
        }


def is_cohen_macaulay(c: SimplicialComplex, n: int) -> CohenMacaulayVerdict:
    if c.dim != n:
        return CohenMacaulayVerdict(False, n, f"dimension is {c.dim}, not {n}")
    cert = []
    top = homological_connectivity(c, n - 1)
    cert.append(((), n - 1, top))
    if not top.ok:
        return CohenMacaulayVerdict(False, n, f"not homologically {n - 1}-connected", tuple(cert))
    for p in range(0, n + 1):
        for f in c.faces_of_dim(p):
            need = n - p - 2
            v = homological_connectivity(link_of(c, f), need)
            cert.append((f, need, v))
            if not v.ok:
                return CohenMacaulayVerdict(
                    False, n, f"link of {f!r} is not homologically {need}-connected", tuple(cert)
                )
    return CohenMacaulayVerdict(True, n, "ok", tuple(cert))


# -- join complexes ---------------------------------------------------------


@dataclass(frozen=True)
class JoinVerdict:
    ok: bool
    failed: str | None = None
    witness: Any = None

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = [_jsonable(x) for x in w]
        return {"ok": self.ok, "failed": self.failed, "witness": w}


def verify_complete_join(
    y: SimplicialComplex, x: SimplicialComplex, proj: Mapping[Hashable, Hashable], complete: bool = True
) -> JoinVerdict:
    """Check that ``proj`` exhibits ``y`` as a complete join over ``x``.

    Condition names in the verdict: "surjective", "injective_on_simplices",
    "join" and "complete".  With ``complete=False`` only the join-complex
    conditions are checked.  A non-simplicial ``proj`` raises DomainError.
    """
    for v in y.vertices:
        if v not in proj or proj[v] not in x.position:
            raise DomainError(f"projection undefined or off-complex at vertex {v!r}")
    images: dict[tuple, list[tuple]] = {}
    for f in y.faces:
        img = {proj[v] for v in f}
        if not x.is_face(img):
            raise DomainError(f"projection is not simplicial: {f!r} maps to a non-face")
        if len(img) != len(f):
            return JoinVerdict(False, "injective_on_simplices", f)
        images.setdefault(x.key(img), []).append(f)
    for s in x.faces:
        if s not in images:
            return JoinVerdict(False, "surjective", s)
    fibre: dict[Hashable, list] = {}
    for v in y.vertices:
        fibre.setdefault(proj[v], []).append(v)
    for s, over in sorted(images.items(), key=lambda kv: (len(kv[0]), [x.position[v] for v in kv[0]])):
        local = {xv: set() for xv in s}
        for f in over:
            for v in f:
                local[proj[v]].add(v)
        expected = 1
        for xv in s:
            expected *= len(local[xv])
        if expected != len(over):
            for choice in itertools.product(*(sorted(local[xv], key=y.position.__getitem__) for xv in s)):
                if not y.is_face(choice):
                    return JoinVerdict(False, "join", tuple(choice))
        for xv in s if complete else ():
            if len(local[xv]) != len(fibre[xv]):
                missing = next(v for v in fibre[xv] if v not in local[xv])
                return JoinVerdict(False, "complete", (s, missing))
    return JoinVerdict(True)


def build_from_labeling(x: SimplicialComplex, labels: Mapping[tuple, Iterable[Hashable]]) -> SimplicialComplex:
    """The complex X^L of a labeling system.

    ``labels`` maps (vertex, face) to that vertex's label set on the face; faces
    may be given as any iterable of vertices.  Vertices of X^L are pairs
    (vertex, label).
    """
    table: dict[tuple[Hashable, tuple], frozenset] = {}
    for (v, face), ls in labels.items():
        table[(v, x.key(face))] = frozenset(ls)
    for s in x.faces:
        for v in s:
            ls = table.get((v, s))
            if ls is None:
                raise DomainError(f"no labels given for vertex {v!r} on face {s!r}")
            if not ls:
                raise DomainError(f"empty label set for vertex {v!r} on face {s!r}")
    for s in x.faces:
        for t in _subfaces(s):
            for v in t:
                if not table[(v, t)] >= table[(v, s)]:
                    raise DomainError(
                        f"labels not monotone: vertex {v!r}, face {t!r} inside {s!r}"
                    )
    verts = [(v, l) for v in x.vertices for l in _sorted_vertices(table[(v, (v,))])]
    faces = []
    for s in x.faces:
        for choice in itertools.product(*(_sorted_vertices(table[(v, s)]) for v in s)):
            faces.append(tuple(zip(s, choice)))
    return SimplicialComplex.from_faces(faces, verts)


def label_projection(y: SimplicialComplex) -> dict:
    return {v: v[0] for v in y.vertices}


def _subfaces(s: tuple) -> Iterable[tuple]:
    for k in range(1, len(s)):
        yield from itertools.combinations(s, k)


# -- semisimplicial sets ----------------------------------------------------


@dataclass
class SemiSimplicialSet:
    """Simplices per dimension plus explicit face tables d_i : W_p -> W_{p-1}."""

    simplices: dict[int, list]
    faces: dict[tuple[int, int], dict]

    @classmethod
    def from_face_function(cls, simplices: Mapping[int, Iterable], face: Callable[[Any, int], Any]) -> "SemiSimplicialSet":
        """Close downward under ``face`` and tabulate every face map."""
        by_dim = {p: list(dict.fromkeys(ss)) for p, ss in simplices.items()}
        top = max(by_dim, default=-1)
        for p in range(top, 0, -1):
            known = set(by_dim.get(p - 1, []))
            for s in by_dim.get(p, []):
                for i in range(p + 1):
                    t = face(s, i)
                    if t not in known:
                        known.add(t)
                        by_dim.setdefault(p - 1, []).append(t)
        tables: dict[tuple[int, int], dict] = {}
        for p in range(1, top + 1):
            for i in range(p + 1):
                tables[(p, i)] = {s: face(s, i) for s in by_dim.get(p, [])}
        return cls(by_dim, tables)

    def d(self, p: int, i: int, s):
        return self.faces[(p, i)][s]

    def counts(self) -> dict[int, int]:
        return {p: len(v) for p, v in sorted(self.simplices.items())}

    def identity_violations(self) -> list[tuple]:
        """All (p, simplex, i, j) with d_i d_j != d_{j-1} d_i, i < j."""
        bad = []
        for p in sorted(self.simplices):
            if p < 2:
                continue
            for s in self.simplices[p]:
                for j in range(p + 1):
                    for i in range(j):
                        lhs = self.d(p - 1, i, self.d(p, j, s))
                        rhs = self.d(p - 1, j - 1, self.d(p, i, s))
                        if lhs != rhs:
                            bad.append((p, s, i, j))
        return bad
