import pytest
from hypothesis import given, settings, strategies as st

from raagkit import Raag
from raagkit.complexes import build_Wn_sample, canonical_complement, wn_report
from raagkit.complexes.wn import ColorSplitting, ZSplitting
from raagkit.complexes.intersection import ZComplement
from raagkit.errors import DomainError


def test_faces_keep_opposite_copies():
    comp = ZComplement(3, ((0, 0, 1),))
    s = ZSplitting(((1, 0, 0), (0, 1, 0)), comp)
    assert s.face(0).fs == ((0, 1, 0),) and s.face(1).fs == ((1, 0, 0),)
    assert s.face(0).complement.span.contains((1, 0, 0))


def test_colour_faces_match_canonical_complements():
    w = build_Wn_sample(Raag.trivial(), Raag.free(2), 3, seed=1)
    verts = w.in_sample.vertices
    for s in w.sset.simplices[1]:
        for j in range(2):
            face = w.sset.d(1, j, s)
            assert isinstance(face, ColorSplitting)
            assert face.complement == canonical_complement([verts[i] for i in face.ids], 3)


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(2, 4), st.sampled_from(["Z", "F2", "F3"]))
def test_simplicial_identities(seed, n, x):
    xg = Raag.free_abelian(1) if x == "Z" else Raag.free(int(x[1]))
    rep = wn_report(build_Wn_sample(Raag.free(2) if x != "F2" else Raag.trivial(), xg, n, seed=seed, top_simplices=15))
    assert rep["ok"] and rep["identity_violations"] == 0


def test_z_case_rejects_z_factor():
    with pytest.raises(DomainError):
        build_Wn_sample(Raag.free_abelian(1), Raag.free_abelian(1), 2)
