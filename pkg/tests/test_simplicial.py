import itertools

import pytest
from hypothesis import given, strategies as st

from raagkit import (
    SemiSimplicialSet,
    SimplicialComplex,
    build_from_labeling,
    homological_connectivity,
    homology,
    is_cohen_macaulay,
    link_of,
    verify_complete_join,
)
from raagkit.errors import DomainError, ResourceError
from raagkit.simplicial import cone, cross_polytope, join, label_projection, simplex, simplex_boundary

OCT = cross_polytope(3)


def _proj(c):
    return {v: v[0] for v in c.vertices}


def test_homology_examples():
    pt = homology(simplex([0]))
    assert all(pt.vanishes(i) for i in range(pt.max_dim + 1))
    tri = homology(simplex_boundary([0, 1, 2]))
    assert tri.vanishes(0) and tri.group(1) == "Z"
    rep = homology(OCT)
    assert [rep.group(i) for i in range(3)] == ["0", "0", "Z"]


def test_torsion_in_projective_plane():
    rp2 = SimplicialComplex.from_faces(
        [(1, 2, 4), (2, 3, 4), (1, 3, 5), (2, 3, 5), (1, 2, 6), (1, 3, 6),
         (3, 4, 6), (2, 5, 6), (1, 4, 5), (4, 5, 6)]
    )
    rep = homology(rp2)
    assert rep.group(1) == "Z/2" and rep.vanishes(2)


def test_empty_complex_report():
    assert homology(SimplicialComplex.empty()).empty


def test_homology_resource_cap():
    with pytest.raises(ResourceError, match="dimension"):
        homology(simplex(range(12)), max_faces=100)


def test_link_examples():
    lk = link_of(OCT, [(1, 0)])
    assert lk.f_vector() == [4, 4] and homology(lk).group(1) == "Z"
    lk = link_of(simplex_boundary([0, 1, 2]), [0])
    assert lk.f_vector() == [2] and lk.dim == 0
    assert link_of(OCT, []) == OCT
    with pytest.raises(DomainError):
        link_of(simplex_boundary([0, 1, 2]), [0, 1, 2])


def test_connectivity_examples():
    assert homological_connectivity(OCT, 1).ok
    two = SimplicialComplex.from_faces([[0], [1]])
    v = homological_connectivity(two, 0)
    assert not v.ok and v.failing_dim == 0
    assert homological_connectivity(two, -1).ok
    assert not homological_connectivity(SimplicialComplex.empty(), -1).ok


def test_cohen_macaulay_examples():
    assert is_cohen_macaulay(simplex(range(4)), 3).ok
    assert is_cohen_macaulay(OCT, 2).ok
    assert not is_cohen_macaulay(SimplicialComplex.from_faces([[0, 1], [2, 3]]), 1).ok
    # a wedge of two triangles at a vertex is 1-connected... no: pinch point link fails
    bowtie = SimplicialComplex.from_faces([[0, 1, 2], [0, 3, 4]])
    v = is_cohen_macaulay(bowtie, 2)
    assert not v.ok and "link" in v.reason


def test_complete_join_examples():
    base = simplex([1, 2, 3])
    assert verify_complete_join(OCT, base, _proj(OCT)).ok
    assert verify_complete_join(base, base, {v: v for v in base.vertices}).ok
    faces = [f for f in OCT.maximal_faces if f != ((1, 0), (2, 0), (3, 0))]
    holed = SimplicialComplex.from_faces(faces, OCT.vertices)
    v = verify_complete_join(holed, base, _proj(OCT))
    assert not v.ok and v.failed == "join"


def test_complete_join_failures():
    base = simplex([1, 2])
    edge = SimplicialComplex.from_faces([[(1, 0), (1, 1)]])
    assert verify_complete_join(edge, simplex([1]), {(1, 0): 1, (1, 1): 1}).failed == "injective_on_simplices"
    points = SimplicialComplex.from_faces([[1], [2]])
    cross = SimplicialComplex.from_faces([[(1, 0), (2, 0)]])
    with pytest.raises(DomainError, match="not simplicial"):
        verify_complete_join(cross, points, _proj(cross))
    v = verify_complete_join(SimplicialComplex.from_faces([[(1, 0)]]), base, {(1, 0): 1})
    assert v.failed == "surjective"
    # an extra fibre point over 1 with no edge to 2
    y = SimplicialComplex.from_faces([[(1, 0), (2, 0)], [(1, 1)]])
    v = verify_complete_join(y, base, _proj(y))
    assert not v.ok and v.failed == "complete"
    with pytest.raises(DomainError):
        verify_complete_join(y, base, {})


def test_labeling_examples():
    x = simplex([0, 1])
    single = {(v, f): {"*"} for f in x.faces for v in f}
    assert build_from_labeling(x, single).f_vector() == x.f_vector()
    two = {(v, f): {"p", "q"} for f in x.faces for v in f}
    y = build_from_labeling(x, two)
    assert y.f_vector() == [4, 4] and homology(y).group(1) == "Z"
    shrink = dict(two)
    shrink[(0, (0, 1))] = {"p"}
    y = build_from_labeling(x, shrink)
    assert set(y.maximal_faces) == {((0, "p"), (1, "p")), ((0, "p"), (1, "q")), ((0, "q"),)}


def test_labeling_errors():
    x = simplex([0, 1])
    bad = {(v, f): {"p"} for f in x.faces for v in f}
    bad[(0, (0, 1))] = {"p", "q"}
    with pytest.raises(DomainError, match="monotone"):
        build_from_labeling(x, bad)
    bad[(0, (0, 1))] = set()
    with pytest.raises(DomainError):
        build_from_labeling(x, bad)


def test_json_round_trip():
    assert SimplicialComplex.from_json(OCT.to_json()) == OCT


# -- properties ---------------------------------------------------------------

complexes = st.lists(
    st.sets(st.integers(0, 6), min_size=1, max_size=4).map(sorted), min_size=1, max_size=8
).map(SimplicialComplex.from_faces)


@given(complexes)
def test_euler_characteristic_matches_betti(c):
    rep = homology(c)
    reduced_chi = sum((-1) ** i * b for i, b in enumerate(rep.betti))
    assert reduced_chi == c.euler_characteristic() - 1


@given(complexes)
def test_cone_is_acyclic(c):
    rep = homology(cone(c))
    assert all(rep.vanishes(i) for i in range(rep.max_dim + 1))


@given(complexes, complexes)
def test_join_raises_connectivity(a, b):
    # reduced Euler characteristic is multiplicative up to sign under join
    j = join(a, b.relabel({v: ("r", v) for v in b.vertices}))
    chi = lambda c: c.euler_characteristic() - 1
    assert chi(j) == -chi(a) * chi(b)


@st.composite
def labelings(draw):
    """Top-down: each face's labels contain those of every face above it."""
    n = draw(st.integers(1, 3))
    x = simplex(range(n))
    table = {}
    for f in sorted(x.faces, key=len, reverse=True):
        for v in f:
            above = [table[(v, g)] for g in x.faces if len(g) == len(f) + 1 and set(f) < set(g)]
            forced = set().union(*above)
            extra = draw(st.sets(st.sampled_from("pqr"), min_size=0 if forced else 1))
            table[(v, f)] = forced | extra
    return x, table


@given(labelings())
def test_labeling_yields_join_complex(xl):
    x, labels = xl
    y = build_from_labeling(x, labels)
    proj = label_projection(y)
    assert verify_complete_join(y, x, proj, complete=False).ok
    constant = all(labels[(v, f)] == labels[(v, (v,))] for v, f in labels)
    assert verify_complete_join(y, x, proj).ok == constant


def _ordered_simplices(n, top):
    return {top: [tuple(p) for p in itertools.permutations(range(n), top + 1)]}


def test_semisimplicial_identities_hold_for_deletion():
    s = SemiSimplicialSet.from_face_function(_ordered_simplices(5, 3), lambda t, j: t[:j] + t[j + 1:])
    assert s.counts()[3] == 120 and s.identity_violations() == []


@given(st.integers(0, 3))
def test_semisimplicial_mutation_is_caught(k):
    # swap the roles of two faces on top simplices: identities must break
    def face(t, j):
        if len(t) == 4 and j in (k, (k + 1) % 4):
            j = (k + 1) % 4 if j == k else k
        return t[:j] + t[j + 1:]

    s = SemiSimplicialSet.from_face_function(_ordered_simplices(4, 3), face)
    assert s.identity_violations()
