import random

import pytest
from hypothesis import given, settings, strategies as st

from raagkit import Raag, homology, verify_complete_join
from raagkit.complexes import (
    ColoredVertex,
    SplitAmbient,
    build_In_sample,
    canonical_complement,
    check_simplex_In,
    color_of,
    is_simplex_In,
    random_vertex,
)
from raagkit.errors import DomainError
from raagkit.words import Word

F2 = Raag.free(2)
F3 = Raag.free(3)


def test_standard_inclusion_colour():
    amb = SplitAmbient(Raag.trivial(), F2, 2)
    assert ColoredVertex.standard(amb, 2).color == 2


def test_twisted_inclusion_colour():
    amb = SplitAmbient(Raag.free_abelian(1), F2, 1)
    g = amb.group
    (z,) = sorted(amb.central)
    images = {
        "x1": Word.parse(f"x1.x1 x1.x2 {z}^3", g),
        "x2": Word.parse(f"x1.x2 {z}^-1", g),
    }
    assert color_of(images, amb) == 1


def test_straddling_images_are_not_split():
    amb = SplitAmbient(Raag.trivial(), F2, 2)
    g = amb.group
    with pytest.raises(DomainError, match="not F-split"):
        color_of({"x1": Word.parse("x1.x1 x2.x1", g), "x2": Word.parse("x1.x2", g)}, amb)


def test_ambient_rejects_x_factor_in_a():
    with pytest.raises(DomainError, match="X factor"):
        SplitAmbient(F2, F2, 2)
    with pytest.raises(DomainError):
        SplitAmbient(Raag.trivial(), Raag.free_abelian(2), 2)


def test_canonical_complement_examples():
    assert canonical_complement([2], 3).x_factors == {1, 3}
    assert canonical_complement([1, 2, 3], 3).x_factors == frozenset()
    assert canonical_complement([1, 3], 3).x_factors == {2}
    with pytest.raises(DomainError, match="repeated"):
        canonical_complement([1, 1], 3)


def test_simplex_examples():
    amb = SplitAmbient(Raag.trivial(), F2, 3)
    one, two = ColoredVertex.standard(amb, 1), ColoredVertex.standard(amb, 2)
    v = check_simplex_In([one, two])
    assert v.ok and v.complement.x_factors == {3}
    other = ColoredVertex.from_word(amb, amb.copy_generators(1)[:2], base=1)
    assert other.color == 1 and other != one
    assert not is_simplex_In([one, other])


def test_colour_collision_breaks_simplices():
    rng = random.Random(3)
    for a, x, n in [(Raag.trivial(), F2, 3), (Raag.free_abelian(1), F3, 3), (F3, F2, 4)]:
        s = build_In_sample(a, x, n, vertices_per_color=2, seed=rng.randrange(1000))
        by_colour = {}
        for i, v in s.vertices.items():
            by_colour.setdefault(v.color, []).append(v)
        frame = [by_colour[c][0] for c in range(1, n + 1)]
        assert is_simplex_In(frame)
        k = rng.randrange(1, n)
        bad = list(frame)
        bad[k] = by_colour[frame[0].color][1]
        assert not is_simplex_In(bad)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([(Raag.trivial(), F2), (Raag.free_abelian(1), F2), (F3, F2)]))
def test_colour_tracks_swaps(seed, ax):
    a, x = ax
    amb = SplitAmbient(a, x, 3)
    v, pos = random_vertex(amb, random.Random(seed), 5)
    assert v.color == pos


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_distinct_colours_iff_simplex(seed):
    rng = random.Random(seed)
    amb = SplitAmbient(Raag.free_abelian(1), F2, 3)
    verts = [random_vertex(amb, rng, 4, base=rng.randint(1, 3))[0] for _ in range(2)]
    assert is_simplex_In(verts) == (verts[0].color != verts[1].color)


def test_sample_shapes():
    s = build_In_sample(Raag.trivial(), F2, 3, vertices_per_color=1)
    assert s.complex.f_vector() == [3, 3, 1]
    s = build_In_sample(Raag.trivial(), F2, 3, vertices_per_color=2)
    assert s.complex.f_vector() == [6, 12, 8]
    assert homology(s.complex).group(2) == "Z"
    s = build_In_sample(Raag.trivial(), F2, 2, vertices_per_color=2)
    assert s.complex.f_vector() == [4, 4] and homology(s.complex).group(1) == "Z"
    assert verify_complete_join(s.complex, s.base, s.projection).ok


def test_sample_rejects_x_factor():
    with pytest.raises(DomainError):
        build_In_sample(F2, F2, 2)
