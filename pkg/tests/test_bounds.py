import pytest
from hypothesis import given, strategies as st

from raagkit.bounds import (
    COMMUTATOR,
    FULL,
    BoundsQuery,
    Coefficients,
    cross_check,
    stability_range,
    theorem_rule,
    theorem_tables,
)
from raagkit.errors import DomainError

CONST = Coefficients("constant")


def test_range_examples():
    assert stability_range(BoundsQuery(5, 2)).surjective
    v = stability_range(BoundsQuery(6, 2))
    assert v.isomorphism
    assert stability_range(BoundsQuery(4, 2, abelian_base=True)).surjective


def test_theorem_table_examples():
    t = theorem_tables()
    assert t["commutator"]["base"]["isomorphism"] == "i <= (n-4)/3"
    assert t["standard_representation"]["no_Z"]["surjective"] == "i <= (n-1)/2"
    assert t["constant"]["no_Z"]["injective"] == "i <= (n-1)/2"
    rule = theorem_rule("commutator", "base", "isomorphism")
    assert rule.holds(7, 1) and not rule.holds(6, 1)


def test_cross_check_flags_exactly_the_known_gap():
    rep = cross_check()
    assert rep.ok and not rep.undocumented
    kinds = {(d.theorem, d.kind) for d in rep.discrepancies}
    assert kinds == {("standard_representation", "isomorphism"), ("standard_representation", "injective")}
    base = next(d for d in rep.discrepancies if d.variant == "base")
    assert (7, 2) in base.points


def test_coefficient_parsing():
    assert Coefficients.parse("split:2,3") == Coefficients("split", 2, 3)
    assert str(Coefficients.parse("general:1,0")) == "general:1,0"
    for bad in ("polynomial", "split:1", "split:a,b"):
        with pytest.raises(DomainError):
            Coefficients.parse(bad)


@pytest.mark.parametrize(
    "query",
    [
        BoundsQuery(5, 1, abelian_base=True, x_is_Z=True),
        BoundsQuery(5, 1, Coefficients("split", 1, 0), abelian_base=True),
        BoundsQuery(5, 1, x_is_Z=True, b_has_no_Z_factor=True),
        BoundsQuery(5, 1, Coefficients("abelian_coeff_H1")),
        BoundsQuery(-1, 1),
    ],
)
def test_inconsistent_flags(query):
    with pytest.raises(DomainError):
        stability_range(query)


def test_threshold_is_separate():
    v = stability_range(BoundsQuery(4, 0, Coefficients("split", 0, 4)))
    assert v.surjective and not v.threshold_ok
    assert stability_range(BoundsQuery(9, 0, Coefficients("general", 0, 4), COMMUTATOR)).threshold_ok


coeffs = st.one_of(
    st.just(CONST),
    st.builds(Coefficients, st.sampled_from(["split", "general"]), st.integers(0, 3), st.integers(0, 5)),
)
variants = st.sampled_from([FULL, COMMUTATOR])


@given(st.integers(0, 40), st.integers(0, 15), coeffs, variants, st.booleans())
def test_monotone_in_n(n, i, c, g, no_z):
    a = stability_range(BoundsQuery(n, i, c, g, b_has_no_Z_factor=no_z))
    b = stability_range(BoundsQuery(n + 1, i, c, g, b_has_no_Z_factor=no_z))
    for k in ("surjective", "injective", "isomorphism"):
        assert not getattr(a, k) or getattr(b, k)


@given(st.integers(0, 40), st.integers(0, 15), coeffs, variants)
def test_upgrade_coherence(n, i, c, g):
    up = stability_range(BoundsQuery(n, i, c, g, b_has_no_Z_factor=True))
    base = stability_range(BoundsQuery(n + 1, i, c, g))
    assert (up.surjective, up.injective) == (base.surjective, base.injective)


@given(st.integers(0, 40), st.integers(0, 15), coeffs, variants, st.booleans())
def test_isomorphism_implies_surjective(n, i, c, g, no_z):
    v = stability_range(BoundsQuery(n, i, c, g, b_has_no_Z_factor=no_z))
    assert not v.isomorphism or v.surjective
    assert not v.injective or v.surjective
