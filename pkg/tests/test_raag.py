import itertools

import pytest
from hypothesis import given

from raagkit import (
    Graph,
    Raag,
    aut_structure,
    cancel,
    classify_generator,
    direct_product,
    enumerate_generators,
    raag_isomorphic,
    raag_prime_decomposition,
)
from raagkit.errors import ResourceError
from raagkit.graphs import join
from raagkit.raag import Inversion, PartialConjugation, Transvection, GraphAut, describe

from conftest import raags


def test_prime_decomposition_examples(path3):
    assert len(raag_prime_decomposition(Raag(Graph("ab", [("a", "b")]))).factors) == 2
    assert len(raag_prime_decomposition(Raag(Graph("ab"))).factors) == 1
    assert describe(Raag(path3)) == "Z x F2"


def test_isomorphism_examples(path3):
    built = Raag(join(Graph(["z"]), Graph(["x", "y"])))
    assert raag_isomorphic(Raag(path3), built)
    assert not raag_isomorphic(Raag.free(3), Raag.free_abelian(3))


def test_cancel_examples(path3):
    a = Raag(path3)
    prod = direct_product(a, Raag.free(2), tags=["a.", "c."])
    got = cancel(prod, Raag.free(2))
    assert raag_isomorphic(got, a)
    assert raag_isomorphic(cancel(a, Raag.trivial()), a)
    assert cancel(Raag.free(2), Raag.free_abelian(1)) is None


def test_generators_path(path3):
    gens = enumerate_generators(Raag(path3))
    assert set(g for g in gens if isinstance(g, Transvection)) == {
        Transvection("a", "b"),
        Transvection("c", "b"),
        Transvection("a", "c"),
        Transvection("c", "a"),
    }
    assert set(g for g in gens if isinstance(g, PartialConjugation)) == {
        PartialConjugation("a", frozenset("c")),
        PartialConjugation("c", frozenset("a")),
    }
    assert sum(isinstance(g, GraphAut) for g in gens) == 2
    assert sum(isinstance(g, Inversion) for g in gens) == 3


def test_generators_small_cases(k3):
    gens = enumerate_generators(Raag(k3))
    assert {(g.v, g.w) for g in gens if isinstance(g, Transvection)} == set(itertools.permutations("abc", 2))
    single = enumerate_generators(Raag(Graph(["v"])))
    assert single == [GraphAut((("v", "v"),)), Inversion("v")]


def test_generator_cap():
    with pytest.raises(ResourceError):
        enumerate_generators(Raag.free(11), max_vertices=10)


def test_aut_structure_examples(path3):
    s = aut_structure(Raag(Graph("ab", [("a", "b")])))
    assert (s.d, s.gamma_prime_size, s.wreath_blocks) == (2, 0, ())
    s = aut_structure(Raag(Graph("ab")))
    assert s.d == 0 and [(len(g), k) for g, k in s.wreath_blocks] == [(2, 1)]
    s = aut_structure(Raag(path3))
    assert (s.d, s.gamma_prime_size, s.central_transvection_rank) == (1, 2, 2)
    assert [(g.vertices, k) for g, k in s.wreath_blocks] == [(("a", "c"), 1)]


def test_factor_swap_is_factor_permuting():
    # F2 x F2: swapping the two factors
    r = Raag(join(Graph(["a", "b"]), Graph(["c", "d"])))
    swap = GraphAut((("a", "c"), ("b", "d"), ("c", "a"), ("d", "b")))
    assert classify_generator(r, swap) == "factor_permuting"


@given(raags(max_size=5))
def test_every_generator_classifies(r):
    for g in enumerate_generators(r):
        assert classify_generator(r, g) in ("internal", "central_transvection", "factor_permuting", "gl_d")


@given(raags(max_size=4), raags(max_size=3))
def test_cancellation_inverts_product(a, c):
    prod = direct_product(a, c, tags=["a.", "c."])
    got = cancel(prod, c)
    assert got is not None and raag_isomorphic(got, a)
