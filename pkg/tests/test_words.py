import itertools

import pytest
from hypothesis import given, strategies as st

from raagkit import Automorphism, Graph, Raag, Word, enumerate_generators
from raagkit.errors import DomainError
from raagkit.raag import Inversion, PartialConjugation, Transvection
from raagkit.words import apply_generator, commutes, inverse_automorphism, invert, multiply, normalize


@pytest.fixture
def p3(path3):
    return Raag(path3)


def test_normalize_examples(p3):
    assert normalize([("a", 1), ("a", -1)], p3).is_identity()
    assert str(Word.parse("b a", p3)) == "a b"
    assert str(Word.parse("c a", p3)) == "c a"
    with pytest.raises(DomainError):
        Word.parse("q", p3)


def test_multiply_invert_examples(p3):
    a = Word.gen(p3, "a")
    assert multiply(a, a.inverse()).is_identity()
    assert str(invert(Word.parse("a b", p3))) == "a^-1 b^-1"
    f2 = Raag(Graph("ab"))
    assert str(Word.gen(f2, "a") * Word.gen(f2, "b")) == "a b"
    with pytest.raises(DomainError):
        multiply(a, Word.gen(f2, "a"))


def test_generator_action_examples(p3):
    assert str(apply_generator(Transvection("a", "b"), Word.parse("a", p3))) == "a b"
    assert str(apply_generator(PartialConjugation("a", frozenset("c")), Word.parse("c", p3))) == "a c a^-1"
    assert str(apply_generator(Inversion("a"), Word.parse("a b", p3))) == "a^-1 b"


def test_commutation(p3):
    assert commutes(Word.gen(p3, "a"), Word.gen(p3, "b"))
    assert not commutes(Word.gen(p3, "a"), Word.gen(p3, "c"))


def _rewrite_closure(letters, r):
    """Every word reachable by swapping adjacent commuting letters or cancelling."""
    seen = {tuple(letters)}
    todo = [tuple(letters)]
    while todo:
        w = todo.pop()
        for i in range(len(w) - 1):
            (u, e), (v, f) = w[i], w[i + 1]
            if u == v:
                nxt = w[:i] + (((u, e + f),) if e + f else ()) + w[i + 2:]
            elif r.commute(u, v):
                nxt = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def test_normal_form_matches_rewriting_oracle(p3):
    letters = [(v, e) for v in "abc" for e in (1, -1)]
    for length in range(1, 5):
        for w in itertools.product(letters, repeat=length):
            nf = normalize(w, p3)
            reachable = _rewrite_closure(w, p3)
            assert nf.letters in reachable
            # the normal form is a shortest reachable word
            assert min(sum(abs(e) for _, e in x) for x in reachable) == len(nf)


words = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1, 2])), max_size=8)


@given(words, words)
def test_normal_form_is_canonical(u, v):
    r = Raag(Graph("abc", [("a", "b"), ("b", "c")]))
    w1 = normalize(u, r)
    assert normalize(w1.letters, r) == w1
    assert (normalize(u, r) * normalize(v, r)) * normalize(v, r).inverse() == w1


@given(words)
def test_generators_are_automorphisms(u):
    r = Raag(Graph("abc", [("a", "b"), ("b", "c")]))
    w = normalize(u, r)
    for g in enumerate_generators(r):
        back = inverse_automorphism(g, r)
        assert back.apply(apply_generator(g, w)) == w


def test_automorphism_composition(p3):
    t = Automorphism.from_generator(Transvection("a", "b"), p3)
    inv = Automorphism.from_generator(Inversion("b"), p3)
    comp = t.then(inv)
    assert str(comp.apply(Word.parse("a", p3))) == str(inv.apply(t.apply(Word.parse("a", p3))))
    assert Automorphism.identity(p3).is_identity()
