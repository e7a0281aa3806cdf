"""Stability ranges as exact integer inequalities.

Every range has the shape i <= (n - a) / k and is evaluated as k*i <= n - a,
so no rounding convention is ever chosen.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError

FULL = "full_aut"
COMMUTATOR = "commutator_subgroup"


@dataclass(frozen=True)
class Rule:
    k: int
    a: int

    def holds(self, n: int, i: int) -> bool:
        return self.k * i <= n - self.a

    def __str__(self) -> str:
        if self.a == 0:
            return f"i <= n/{self.k}"
        num = f"n-{self.a}" if self.a > 0 else f"n+{-self.a}"
        return f"i <= ({num})/{self.k}"

    def shifted(self, by: int) -> "Rule":
        """The rule with n replaced by n + by."""
        return Rule(self.k, self.a - by)


@dataclass(frozen=True)
class Coefficients:
    kind: str  # constant | split | general | abelian_coeff_H1
    r: int = 0
    N: int = 0

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        text = text.strip()
        if text in ("constant", "abelian_coeff_H1"):
            return cls(text)
        kind, _, rest = text.partition(":")
        if kind not in ("split", "general") or not rest:
            raise DomainError(f"coefficients must be constant, abelian_coeff_H1, split:r,N or general:r,N; got {text!r}")
        try:
            r, n0 = (int(x) for x in rest.split(","))
        except ValueError:
            raise DomainError(f"cannot read degree and threshold from {rest!r}") from None
        return cls(kind, r, n0)

    def __str__(self) -> str:
        return self.kind if self.kind in ("constant", "abelian_coeff_H1") else f"{self.kind}:{self.r},{self.N}"


@dataclass(frozen=True)
class BoundsQuery:
    n: int
    i: int
    coefficients: Coefficients = field(default_factory=lambda: Coefficients("constant"))
    group_variant: str = FULL
    x_is_Z: bool = False
    b_has_no_Z_factor: bool = False
    abelian_base: bool = False

    def validate(self) -> None:
        c = self.coefficients
        if self.n < 0 or self.i < 0 or c.r < 0 or c.N < 0:
            raise DomainError("n, i, r and N must be non-negative")
        if self.group_variant not in (FULL, COMMUTATOR):
            raise DomainError(f"unknown group variant {self.group_variant!r}")
        if c.kind not in ("constant", "split", "general", "abelian_coeff_H1"):
            raise DomainError(f"unknown coefficient kind {c.kind!r}")
        if self.abelian_base and (self.x_is_Z or self.b_has_no_Z_factor):
            raise DomainError("the abelian-base regime takes no RAAG-specific flags")
        if self.abelian_base and c.kind != "constant":
            raise DomainError("the abelian-base regime covers constant coefficients only")
        if self.x_is_Z and self.b_has_no_Z_factor:
            raise DomainError("X = Z contradicts B having no Z factor")
        if c.kind == "abelian_coeff_H1" and self.group_variant != COMMUTATOR:
            raise DomainError("abelian H1 coefficients yield the commutator-subgroup ranges only")


@dataclass(frozen=True)
class RangeVerdict:
    surjective: bool
    injective: bool
    isomorphism: bool
    applied_rule: str
    threshold_ok: bool
    surjective_rule: str = ""
    injective_rule: str = ""

    def to_json(self) -> dict:
        return {
            "surjective": self.surjective,
            "injective": self.injective,
            "isomorphism": self.isomorphism,
            "applied_rule": self.applied_rule,
            "threshold_ok": self.threshold_ok,
            "surjective_rule": self.surjective_rule,
            "injective_rule": self.injective_rule,
        }


@dataclass(frozen=True)
class _Rules:
    surj: Rule
    inj: Rule
    tag: str
    iso_direct: bool  # the source states an isomorphism bound, not an injectivity bound


def _rules(q: BoundsQuery) -> _Rules:
    c = q.coefficients
    r = c.r
    if q.abelian_base:
        return _Rules(Rule(2, 0), Rule(2, 1), "abelian-base", True)
    full = q.group_variant == FULL
    kind = "constant" if c.kind == "abelian_coeff_H1" else c.kind
    if full:
        table = {
            "constant": (Rule(2, 1), Rule(2, 2), True),
            "split": (Rule(2, r + 1), Rule(2, r + 3), False),
            "general": (Rule(2, 1 + 2 * r), Rule(2, 3 + 2 * r), True),
        }
    else:
        table = {
            "constant": (Rule(3, 2), Rule(3, 4), True),
            "split": (Rule(3, 2 * r + 2), Rule(3, 2 * r + 5), False),
            "general": (Rule(3, 2 + 3 * r), Rule(3, 5 + 3 * r), True),
        }
    s, inj, direct = table[kind]
    tag = f"{'aut' if full else 'aut-prime'}/{c}"
    if q.b_has_no_Z_factor:
        s, inj = s.shifted(1), inj.shifted(1)
        tag += "/n+1"
    return _Rules(s, inj, tag, direct)


def stability_range(q: BoundsQuery) -> RangeVerdict:
    q.validate()
    rules = _rules(q)
    surj = rules.surj.holds(q.n, q.i)
    inj = rules.inj.holds(q.n, q.i)
    if q.abelian_base:
        threshold = True
    else:
        big_n = q.coefficients.N
        threshold = q.n > big_n if q.group_variant == FULL else q.n > 2 * big_n
    return RangeVerdict(
        surjective=surj,
        injective=inj,
        isomorphism=surj and inj,
        applied_rule=rules.tag,
        threshold_ok=threshold,
        surjective_rule=str(rules.surj),
        injective_rule=f"{rules.inj} ({'isomorphism' if rules.iso_direct else 'injectivity'})",
    )


# -- headline theorems -------------------------------------------------------

THEOREMS = {
    "constant": {
        "base": {"surjective": Rule(2, 1), "isomorphism": Rule(2, 2)},
        "no_Z": {"surjective": Rule(2, 0), "injective": Rule(2, 1)},
    },
    "commutator": {
        "base": {"surjective": Rule(3, 2), "isomorphism": Rule(3, 4)},
        "no_Z": {"surjective": Rule(3, 1), "injective": Rule(3, 3)},
    },
    "standard_representation": {
        "base": {"surjective": Rule(2, 2), "isomorphism": Rule(2, 3)},
        "no_Z": {"surjective": Rule(2, 1), "injective": Rule(2, 2)},
    },
    "abelian": {
        "base": {"surjective": Rule(2, 0), "isomorphism": Rule(2, 1)},
    },
}

# How each headline statement is obtained from the general theorem.
SPECIALISATIONS = {
    "constant": (Coefficients("constant"), FULL),
    "commutator": (Coefficients("constant"), COMMUTATOR),
    "standard_representation": (Coefficients("split", 1, 0), FULL),
}

DOCUMENTED_DISCREPANCIES = frozenset(
    {
        ("standard_representation", "base", "isomorphism"),
        ("standard_representation", "no_Z", "injective"),
    }
)


def theorem_tables() -> dict:
    return {
        name: {variant: {kind: str(rule) for kind, rule in rules.items()} for variant, rules in variants.items()}
        for name, variants in THEOREMS.items()
    }


def theorem_rule(name: str, variant: str, kind: str) -> Rule:
    return THEOREMS[name][variant][kind]


def query_for(name: str, variant: str, n: int, i: int) -> BoundsQuery:
    if name == "abelian":
        return BoundsQuery(n, i, abelian_base=True)
    coeff, group = SPECIALISATIONS[name]
    return BoundsQuery(n, i, coeff, group, b_has_no_Z_factor=(variant == "no_Z"))


def derived_value(v: RangeVerdict, kind: str) -> bool:
    return {"surjective": v.surjective, "injective": v.injective, "isomorphism": v.isomorphism}[kind]


def _grid(n_max: int, i_max: int) -> Iterator[tuple[int, int]]:
    for n in range(n_max + 1):
        for i in range(i_max + 1):
            yield n, i


@dataclass(frozen=True)
class Discrepancy:
    theorem: str
    variant: str
    kind: str
    stated: str
    derived: str
    points: tuple[tuple[int, int], ...]

    @property
    def documented(self) -> bool:
        return (self.theorem, self.variant, self.kind) in DOCUMENTED_DISCREPANCIES

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "variant": self.variant,
            "kind": self.kind,
            "stated": self.stated,
            "derived": self.derived,
            "count": len(self.points),
            "first_points": [list(p) for p in self.points[:5]],
            "documented": self.documented,
        }


@dataclass(frozen=True)
class CrossCheckReport:
    n_max: int
    i_max: int
    discrepancies: tuple[Discrepancy, ...]

    @property
    def undocumented(self) -> list[Discrepancy]:
        return [d for d in self.discrepancies if not d.documented]

    @property
    def ok(self) -> bool:
        """Exactly the documented discrepancies appear."""
        found = {(d.theorem, d.variant, d.kind) for d in self.discrepancies}
        return found == set(DOCUMENTED_DISCREPANCIES)

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "i_max": self.i_max,
            "ok": self.ok,
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }


def cross_check(n_max: int = 30, i_max: int = 15) -> CrossCheckReport:
    """Instantiate the general theorem for each headline statement and diff on the grid."""
    found = []
    for name, variants in THEOREMS.items():
        for variant, rules in variants.items():
            for kind, rule in rules.items():
                bad = []
                derived = ""
                for n, i in _grid(n_max, i_max):
                    v = stability_range(query_for(name, variant, n, i))
                    derived = v.injective_rule if kind != "surjective" else v.surjective_rule
                    if derived_value(v, kind) != rule.holds(n, i):
                        bad.append((n, i))
                if bad:
                    found.append(Discrepancy(name, variant, kind, str(rule), derived, tuple(bad)))
    return CrossCheckReport(n_max, i_max, tuple(found))


def grid_table(n_max: int, i_max: int) -> list[dict]:
    rows = []
    for name, variants in THEOREMS.items():
        for variant in variants:
            for n, i in _grid(n_max, i_max):
                v = stability_range(query_for(name, variant, n, i))
                rows.append({"theorem": name, "variant": variant, "n": n, "i": i, **v.to_json()})
    return rows
