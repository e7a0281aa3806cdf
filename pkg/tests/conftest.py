import itertools

import pytest
from hypothesis import settings, strategies as st

from raagkit import Graph, Raag

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def path3():
    return Graph("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def k3():
    return Graph("abc", itertools.combinations("abc", 2))


@st.composite
def graphs(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    verts = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(verts, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def raags(draw, max_size=5):
    return Raag(draw(graphs(max_size=max_size)))
