"""Command-line entry point.  Every command prints one JSON report.

Exit status: 0 verified, 1 verification failed (witness in the report),
2 usage error or malformed input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import bounds as B
from .acceptance import run_all
from .complexes import (
    build_In_sample,
    build_unimodular_complex,
    build_Wn_sample,
    complement_intersection,
    kappa_ok,
    maazen_filtration,
    random_si_simplex,
    sample_retraction_instance,
    verify_retraction,
    verify_Sn_equals_SIn,
    wn_report,
)
from .complexes.intersection import SISimplex, ZComplement
from .errors import DomainError, ResourceError
from .graphs import Graph, graph_isomorphic
from .raag import Raag, aut_structure, cancel, classify_generator, describe, enumerate_generators
from .simplicial import (
    SimplicialComplex,
    homology,
    is_cohen_macaulay,
    verify_complete_join,
)

SAMPLING = {"in-sample", "maazen", "intersect", "wn-check"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict[str, Any]
    seed: int | None = None
    timing: bool = False
    caps: dict[str, int] = field(default_factory=lambda: {"max_vertices": 10})

    def __post_init__(self):
        if any(v <= 0 for v in self.caps.values()):
            raise UsageError("caps must be positive")
        if self.command in SAMPLING and self.seed is None:
            raise UsageError(f"{self.command} needs --seed")


# -- input parsing -------------------------------------------------------------

_NAMED = re.compile(r"^(e|Z(?:\^(\d+))?|F(\d+))$")


def _load_json(path: str) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def parse_group(text: str, prefix: str = "") -> Raag:
    """'e', 'Z', 'Z^k', 'Fk' or a path to a graph JSON file."""
    m = _NAMED.match(text)
    if m:
        if text == "e":
            return Raag.trivial()
        if text.startswith("Z"):
            return Raag.free_abelian(int(m.group(2) or 1), prefix=prefix + "z")
        return Raag.free(int(m.group(3)), prefix=prefix + "x")
    try:
        return Raag(Graph.from_json(_load_json(text)))
    except DomainError as exc:
        raise UsageError(f"{text}: {exc}") from None


def load_complex(path: str) -> SimplicialComplex:
    try:
        return SimplicialComplex.from_json(_load_json(path))
    except DomainError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _tupled(x):
    return tuple(_tupled(y) for y in x) if isinstance(x, list) else x


def _load_projection(path: str) -> dict:
    """Either an object with string vertices or a list of [vertex, image] pairs."""
    data = _load_json(path)
    if isinstance(data, dict):
        return data
    if isinstance(data, list) and all(isinstance(r, list) and len(r) == 2 for r in data):
        return {_tupled(v): _tupled(w) for v, w in data}
    raise UsageError(f"{path}: projection must be an object or a list of [vertex, image] pairs")


# -- commands -------------------------------------------------------------------


def _graph_report(g: Graph) -> dict:
    return g.to_json()


def cmd_decompose(o, cfg):
    r = parse_group(o["graph"])
    dec = r.decomposition
    return True, {
        "description": describe(r),
        "factors": [_graph_report(f) for f in dec.factors],
        "free_abelian_rank": r.free_abelian_rank,
        "gamma_prime": _graph_report(r.gamma_prime),
    }, None


def cmd_iso(o, cfg):
    g1, g2 = parse_group(o["first"]).graph, parse_group(o["second"]).graph
    iso = graph_isomorphic(g1, g2)
    if iso is None:
        return False, {"isomorphic": False}, {"sizes": [len(g1), len(g2)], "edges": [len(g1.edges), len(g2.edges)]}
    return True, {"isomorphic": True, "map": dict(sorted(iso.items()))}, None


def cmd_cancel(o, cfg):
    product, c = parse_group(o["product"]), parse_group(o["factor"], prefix="c")
    got = cancel(product, c)
    if got is None:
        return False, {"cancelled": None}, {"factor_forms_missing": describe(c)}
    return True, {"cancelled": _graph_report(got.graph), "description": describe(got)}, None


def _gen_json(g) -> dict:
    kind = type(g).__name__
    if kind == "GraphAut":
        return {"kind": kind, "map": dict(g.mapping)}
    if kind == "Inversion":
        return {"kind": kind, "v": g.v}
    if kind == "Transvection":
        return {"kind": kind, "v": g.v, "w": g.w}
    return {"kind": kind, "v": g.v, "component": sorted(g.component)}


def cmd_autgens(o, cfg):
    r = parse_group(o["graph"])
    gens = enumerate_generators(r, cfg.caps["max_vertices"])
    out = []
    for g in gens:
        row = _gen_json(g)
        row["class"] = classify_generator(r, g)
        out.append(row)
    return True, {"count": len(out), "generators": out}, None


def cmd_autstruct(o, cfg):
    r = parse_group(o["graph"])
    return True, aut_structure(r, cfg.caps["max_vertices"]).to_json(), None


def cmd_complex(o, cfg):
    c = load_complex(o["file"])
    action = o["action"]
    if action == "homology":
        rep = homology(c, o.get("max_dim"))
        return True, rep.to_json(), None
    if action == "cm-check":
        if o.get("n") is None:
            raise UsageError("cm-check needs --n")
        v = is_cohen_macaulay(c, o["n"])
        return v.ok, v.to_json(), None if v.ok else v.reason
    if action == "join-check":
        if not o.get("base") or not o.get("proj"):
            raise UsageError("join-check needs --base and --proj")
        base = load_complex(o["base"])
        proj = _load_projection(o["proj"])
        try:
            v = verify_complete_join(c, base, proj)
        except DomainError as exc:
            raise UsageError(f"{o['proj']}: {exc}") from None
        return v.ok, v.to_json(), None if v.ok else v.to_json()
    raise UsageError(f"unknown complex action {action!r}")


def cmd_in_sample(o, cfg):
    a = parse_group(o["a"], prefix="a")
    x = parse_group(o["x"])
    s = build_In_sample(a, x, o["n"], o["per_color"], o["twist_bound"], o["word_length"], seed=cfg.seed)
    join = verify_complete_join(s.complex, s.base, s.projection)
    out = {"sample": s.to_json(), "complete_join": join.to_json()}
    if o.get("homology"):
        out["homology"] = homology(s.complex).to_json()
    return join.ok, out, None if join.ok else join.to_json()


def cmd_unimodular(o, cfg):
    c = build_unimodular_complex(o["n"], o["q"])
    out = {"f_vector": c.f_vector()}
    if o["action"] == "homology":
        out["homology"] = homology(c).to_json()
    else:
        out["complex"] = c.to_json()
    return True, out, None


def cmd_maazen(o, cfg):
    import random

    n, q = o["n"], o["q"]
    bad = [(z, qq) for z in range(-100, 101) for qq in range(q + 1) if not kappa_ok(z, qq)]
    if bad:
        return False, {"kappa_ok": False}, {"kappa": list(bad[0])}
    rng = random.Random(cfg.seed)
    base = build_unimodular_complex(n, q + 1)
    filt = maazen_filtration(base, n, q)
    results = []
    for _ in range(o["instances"]):
        inst = sample_retraction_instance(rng, n, q)
        v = verify_retraction(inst)
        results.append(v)
        if not v.ok:
            return False, {"kappa_ok": True, "checked": len(results)}, v.to_json()
    return True, {
        "kappa_ok": True,
        "filtration_vertices": len(filt.vertices),
        "complex_vertices": len(base.vertices),
        "retractions_verified": len(results),
    }, None


def cmd_intersect(o, cfg):
    import random

    if o.get("file"):
        data = _load_json(o["file"])
        try:
            a = parse_group(data.get("A", "e"), prefix="a") if isinstance(data.get("A", "e"), str) else Raag(Graph(data["A"]))
            n = int(data["n"])
            fs = tuple(tuple(f) for f in data["fs"])
            ks = tuple(
                ZComplement(n, tuple(tuple(t) for t in k["lattice"]), tuple((g, tuple(w)) for g, w in sorted(k.get("twists", {}).items())))
                for k in data["complements"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{o['file']}: malformed SI-simplex ({exc})") from None
        sims = [SISimplex(a, n, fs, ks)]
    else:
        rng = random.Random(cfg.seed)
        a = parse_group(o["a"], prefix="a")
        sims = [random_si_simplex(rng, a, o["n"], rng.randint(0, o["n"] - 1) if o["p"] is None else o["p"]) for _ in range(o["count"])]
    out = []
    for s in sims:
        r = complement_intersection(s)
        v = verify_Sn_equals_SIn(s)
        out.append({"simplex": s.to_json(), "intersection": r.to_json(), "S_equals_SI": v.to_json()})
        if not (r.ok and v.ok and r.m == s.n - s.p - 1):
            return False, {"checked": out}, {"simplex": s.to_json(), "certificate": r.certificate, "S_equals_SI": v.to_json()}
    return True, {"checked": out}, None


def cmd_wn_check(o, cfg):
    a = parse_group(o["a"], prefix="a")
    x = parse_group(o["x"])
    rep = wn_report(build_Wn_sample(a, x, o["n"], seed=cfg.seed))
    return rep["ok"], rep, rep["witness"]


def cmd_bounds(o, cfg):
    if o.get("table"):
        rep = B.cross_check(o["n_max"], o["i_max"])
        return rep.ok, {
            "theorems": B.theorem_tables(),
            "grid": B.grid_table(o["n_max"], o["i_max"]),
            "cross_check": rep.to_json(),
        }, None if rep.ok else [d.to_json() for d in rep.undocumented]
    if o.get("n") is None or o.get("i") is None:
        raise UsageError("bounds needs --n and --i (or the 'table' form)")
    variant = {"aut": B.FULL, "aut-prime": B.COMMUTATOR}[o["variant"]]
    q = B.BoundsQuery(
        o["n"],
        o["i"],
        B.Coefficients.parse(o["coeff"]),
        variant,
        x_is_Z=o["x_is_z"],
        b_has_no_Z_factor=o["no_z_factor"],
        abelian_base=o["abelian_base"],
    )
    return True, B.stability_range(q).to_json(), None


def cmd_selftest(o, cfg):
    nums = None
    if o.get("only"):
        try:
            nums = [int(x) for x in o["only"].split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
    results = run_all(nums)
    for r in results:
        print(r.line, file=sys.stderr)
    failed = [r.to_json() for r in results if not r.passed]
    return not failed, {"criteria": [r.to_json() if cfg.timing else {**r.to_json(), "seconds": None} for r in results]}, failed or None


COMMANDS = {
    "decompose": cmd_decompose,
    "iso": cmd_iso,
    "cancel": cmd_cancel,
    "autgens": cmd_autgens,
    "autstruct": cmd_autstruct,
    "complex": cmd_complex,
    "in-sample": cmd_in_sample,
    "unimodular": cmd_unimodular,
    "maazen": cmd_maazen,
    "intersect": cmd_intersect,
    "wn-check": cmd_wn_check,
    "bounds": cmd_bounds,
    "selftest": cmd_selftest,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    t0 = time.perf_counter()
    try:
        ok, result, witness = COMMANDS[cfg.command](cfg.options, cfg)
        status = 0 if ok else 1
        verdict = "pass" if ok else "fail"
    except UsageError as exc:
        status, verdict, result, witness = 2, "usage_error", None, str(exc)
    except (DomainError, ResourceError) as exc:
        status, verdict, result, witness = 2, "usage_error", None, f"{type(exc).__name__}: {exc}"
    report = {
        "command": cfg.command,
        "seed": cfg.seed,
        "verdict": verdict,
        "witness": witness,
        "result": result,
        "timing_ms": round((time.perf_counter() - t0) * 1000, 3) if cfg.timing else None,
    }
    return status, report


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raagkit", description=__doc__.splitlines()[0])
    p.add_argument("--timing", action="store_true", help="record wall-clock time (reports stop being byte-identical)")
    p.add_argument("--max-vertices", type=int, default=10, help="cap for automorphism enumeration")
    sub = p.add_subparsers(dest="command", required=True)

    def seeded(sp, required=True):
        sp.add_argument("--seed", type=int, required=required)

    s = sub.add_parser("decompose", help="prime join decomposition")
    s.add_argument("graph", help="graph JSON file or e, Z, Z^k, Fk")
    s = sub.add_parser("iso", help="RAAG isomorphism via graph isomorphism")
    s.add_argument("first")
    s.add_argument("second")
    s = sub.add_parser("cancel", help="find A with A x C = product")
    s.add_argument("product")
    s.add_argument("factor")
    for name in ("autgens", "autstruct"):
        s = sub.add_parser(name, help="automorphism generators" if name == "autgens" else "structure of Aut")
        s.add_argument("graph")
    s = sub.add_parser("complex", help="homology, Cohen-Macaulay or complete-join checks")
    s.add_argument("action", choices=["homology", "cm-check", "join-check"])
    s.add_argument("file")
    s.add_argument("--max-dim", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--base")
    s.add_argument("--proj")
    s = sub.add_parser("in-sample", help="sampled I_n(A, X) for X other than Z")
    s.add_argument("--a", default="e")
    s.add_argument("--x", default="F2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--per-color", type=int, default=2)
    s.add_argument("--twist-bound", type=int, default=1)
    s.add_argument("--word-length", type=int, default=3)
    s.add_argument("--homology", action="store_true")
    seeded(s)
    s = sub.add_parser("unimodular", help="bounded partial-basis complex of Z^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("action", nargs="?", choices=["homology", "complex"], default="homology")
    s = sub.add_parser("maazen", help="kappa and retraction checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--instances", type=int, default=20)
    seeded(s)
    s = sub.add_parser("intersect", help="complement intersections in A x Z^n")
    s.add_argument("--a", default="e")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--p", type=int)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--file", help="SI-simplex JSON instead of sampling")
    seeded(s)
    s = sub.add_parser("wn-check", help="simplicial identities on a sampled W_n")
    s.add_argument("--a", default="e")
    s.add_argument("--x", default="F2")
    s.add_argument("--n", type=int, required=True)
    seeded(s)
    s = sub.add_parser("bounds", help="stability ranges")
    s.add_argument("table", nargs="?", choices=["table"])
    s.add_argument("--n", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--coeff", default="constant")
    s.add_argument("--variant", choices=["aut", "aut-prime"], default="aut")
    s.add_argument("--no-z-factor", action="store_true")
    s.add_argument("--x-is-z", action="store_true")
    s.add_argument("--abelian-base", action="store_true")
    s.add_argument("--n-max", type=int, default=30)
    s.add_argument("--i-max", type=int, default=15)
    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "seed", "timing", "max_vertices")}
    try:
        cfg = RunConfig(ns.command, opts, getattr(ns, "seed", None), ns.timing, {"max_vertices": ns.max_vertices})
        status, report = run(cfg)
    except UsageError as exc:
        status, report = 2, {"command": ns.command, "seed": None, "verdict": "usage_error", "witness": str(exc), "result": None, "timing_ms": None}
    print(json.dumps(report, indent=2, sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())
