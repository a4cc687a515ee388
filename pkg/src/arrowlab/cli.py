"""Command-line front end: run a scenario file, write a certificate
envelope, re-check an envelope, or render it as text.

Exit codes: 0 holds/pass, 1 fails (with certificate), 2 inconclusive,
3 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from .arrow import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    TABLE_LIMIT,
    ArrowQuery,
    all_colorings,
    check_arrow,
    coloring_hash,
    compile_query,
    is_bad_coloring,
    is_monochromatic_witness,
    materialize_table,
    oracle_from_verdict,
    random_coloring,
)
from .constructions import pigeonhole_oracle, product_arrow_witness, search_ramsey_object
from .core import DomainError, PreconditionError, ProductCategory, verify_category_laws
from .fraisse import (
    AP,
    HP,
    JEP,
    ORDER_EXPANSION,
    REASONABLE,
    check_AP,
    check_HP,
    check_JEP,
    check_order_expansion,
    check_reasonable,
    expansions,
    find_ordering_witness,
)
from .serialize import jsonable
from .structures.boolean import fbas_category, fbas_op_category, stone_duality
from .structures.ordered import (
    forgetful,
    ofba_category,
    ov_fin_category,
    power_equivalence,
    reasonable_extension,
    skeleton_equivalence,
    vfin_category,
)
from .structures.sets import fsi_category, fss_category, fss_op_category
from .structures.trees import closure_adjunction, homogeneous_tree_category, tree_category
from .structures.vector import duality, surjective_op, vector_space_categories
from .transport import equivalence_transport_obj, verify_adjunction, verify_equivalence

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
EXIT_CODES = {HOLDS: EXIT_OK, "pass": EXIT_OK, FAILS: EXIT_FAIL, "fail": EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}

COMMANDS = {
    "arrow": ("arrow", "dual-arrow", "product-arrow"),
    "search": ("search",),
    "transport": ("transport",),
    "laws": ("laws",),
    "fraisse": ("fraisse",),
    "ordering": ("ordering",),
}


class ScenarioError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scenarios


def load_schema() -> dict:
    return json.loads(resources.files("arrowlab").joinpath("scenario.schema.json").read_text())


def validate_scenario(sc) -> None:
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(sc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "$" + "".join(f"[{p!r}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path)
        raise ScenarioError(f"{where}: {e.message}")


def scenario_hash(sc: dict) -> str:
    body = {k: v for k, v in sc.items() if k != "out"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def seed() -> int:
    return int(os.environ.get("ARROWLAB_SEED", "0"))


def category_from_spec(spec: dict, dual: bool = False):
    """(category, object maker taking a JSON payload)."""
    name = spec["name"]
    base, p = spec.get("base", 3), spec.get("p", 2)
    if name in ("FSI",):
        cat, make = fsi_category(), fsi_category().set_obj
    elif name in ("FSS", "FSS^op"):
        cat, make = fss_category(), fss_category().set_obj
        if name == "FSS^op":
            cat = fss_op_category()
    elif name in ("FBAS", "FBAS^op"):
        cat, make = fbas_category(), fbas_category().algebra
        if name == "FBAS^op":
            cat = fbas_op_category()
    elif name in ("OFBA", "OV"):
        cat = ofba_category() if name == "OFBA" else ov_fin_category(base)
        make = lambda j: cat.ordered(j[0], j[1])  # noqa: E731
    elif name in ("FBA", "V"):
        cat = vfin_category(2 if name == "FBA" else base)
        make = cat.power
    elif name in ("Tree", "HTree"):
        cat = tree_category() if name == "Tree" else homogeneous_tree_category()
        make = tree_category().tree
    elif name in ("VecInj", "VecSurj"):
        inj, surj = vector_space_categories(p)
        cat = inj if name == "VecInj" else surj
        make = cat.space
    else:  # pragma: no cover - schema rejects it
        raise ScenarioError(f"unknown category {name}")
    if dual:
        duals = {"FSS": fss_op_category(), "FBAS": fbas_op_category(), "VecSurj": surjective_op(p)}
        if name not in duals:
            raise ScenarioError(f"no dual form registered for {name}")
        cat = duals[name]
    return cat, make


def _need(sc: dict, *keys: str) -> None:
    for key in keys:
        if key not in sc:
            raise ScenarioError(f"$: '{key}' is required for query {sc['query']}")


# ---------------------------------------------------------------------------
# certificates


def _colors_of(q: ArrowQuery, chi) -> list[int]:
    return [chi[item] for item in compile_query(q).items]


def sample_evaluations(q: ArrowQuery, evaluate, samples: int, exhaustive: bool = False) -> list[dict]:
    """Oracle answers on seeded random colorings (or on all colorings)."""
    items = compile_query(q).items
    out = []
    if exhaustive:
        if q.k ** len(items) > TABLE_LIMIT:
            raise ScenarioError(f"$.exhaustive_check: {q.k}^{len(items)} colorings exceed {TABLE_LIMIT}")
        colorings = (dict(zip(items, cols)) for cols in all_colorings(len(items), q.k))
    else:
        rng = np.random.default_rng(seed())
        colorings = (random_coloring(items, q.k, rng) for _ in range(samples))
    for chi in colorings:
        color, w = evaluate(chi)
        out.append({"colors": _colors_of(q, chi), "color": color, "witness": jsonable(w.payload)})
    return out


def holds_certificate(v, samples: int) -> dict:
    q = v.query
    n = len(compile_query(q).items)
    if q.k ** n <= TABLE_LIMIT:
        table = materialize_table(v)
        return {"witness_table": [[h, c, jsonable(w.payload)] for h, c, w in table]}
    return {"samples": sample_evaluations(q, v.witness, samples)}


def fails_certificate(v) -> dict:
    col = v.bad_coloring
    return {"bad_coloring": [[jsonable(item), c] for item, c in zip(col.items, col.colors)]}


def verdict_certificate(v, samples: int) -> dict:
    cert = {"query": v.query.notation, "items": len(compile_query(v.query).items),
            "explored": v.explored, "budget": v.budget}
    if v.holds:
        cert.update(holds_certificate(v, samples))
    elif v.fails:
        cert.update(fails_certificate(v))
    return cert


# ---------------------------------------------------------------------------
# runners: each returns (verdict, certificate)


def _arrow_query(sc, cat, make) -> ArrowQuery:
    _need(sc, "C", "B", "A", "k")
    return ArrowQuery(cat, make(sc["C"]), make(sc["B"]), make(sc["A"]), sc["k"], sc.get("variant", "subobject"))


def _mode(sc) -> str:
    return sc.get("mode", "backtracking")


def run_arrow(sc):
    cat, make = category_from_spec(sc["category"], dual=sc["query"] == "dual-arrow")
    q = _arrow_query(sc, cat, make)
    v = check_arrow(q, _mode(sc), sc.get("budget"), sc.get("jobs", 1))
    return v.status, verdict_certificate(v, sc.get("samples", 100))


def _product_setup(sc):
    if sc["category"]["name"] != "FSI":
        raise ScenarioError("$.category.name: product-arrow is built from FSI factors")
    _need(sc, "A", "B", "k")
    A, B = sc["A"], sc["B"]
    if not (isinstance(A, list) and isinstance(B, list) and len(A) == len(B) == 2):
        raise ScenarioError("$.A: product-arrow needs pairs for A and B")
    if A != [1, 1]:
        raise ScenarioError("$.A: the factor oracles are pigeonhole oracles, so A must be [1, 1]")
    fsi = fsi_category()
    o1 = pigeonhole_oracle(fsi, B[0], sc["k"])
    C_pair, oracle = product_arrow_witness(o1, lambda kk: pigeonhole_oracle(fsi, B[1], kk),
                                           (fsi(1), fsi(1)), (fsi(B[0]), fsi(B[1])), sc["k"],
                                           product_category())
    return C_pair, oracle


_PRODUCT = None


def product_category() -> ProductCategory:
    global _PRODUCT
    if _PRODUCT is None:
        _PRODUCT = ProductCategory(fsi_category(), fsi_category())
    return _PRODUCT


def run_product(sc):
    C_pair, oracle = _product_setup(sc)
    evals = sample_evaluations(oracle.query, oracle, sc.get("samples", 100))
    return HOLDS, {"query": oracle.query.notation, "C": jsonable(C_pair), "samples": evals}


def run_search(sc):
    cat, make = category_from_spec(sc["category"])
    _need(sc, "B", "A", "k")
    out = search_ramsey_object(cat, make(sc["B"]), make(sc["A"]), sc["k"], sc.get("variant", "subobject"),
                               budget=sc.get("budget"), mode=_mode(sc), max_grade=sc.get("bound", 8))
    trail = []
    for C, v in out.trail:
        entry = {"C": jsonable(C), "status": v.status}
        if v.fails:
            entry.update(fails_certificate(v))
        trail.append(entry)
    cert = {"found": jsonable(out.found) if out.found is not None else None, "last_grade": out.last_grade,
            "minimal": out.minimal, "trail": trail}
    if out.found is None:
        return INCONCLUSIVE, cert
    cert["witness"] = verdict_certificate(out.verdict, sc.get("samples", 100))
    return HOLDS, cert


def _transport_setup(sc):
    kind = sc.get("transport", "stone")
    _need(sc, "C", "B", "A", "k")
    if kind == "stone":
        if sc["category"]["name"] != "FSI":
            raise ScenarioError("$.category.name: stone transport starts from FSI")
        fsi, ba = fsi_category(), fbas_category()
        eq = stone_duality().inverse()
        src = ArrowQuery(fsi, fsi(sc["C"]), fsi(sc["B"]), fsi(sc["A"]), sc["k"])
        B, A = ba.algebra(sc["B"]), ba.algebra(sc["A"])
    else:
        if sc["category"]["name"] != "OV":
            raise ScenarioError("$.category.name: skeleton transport starts from OV")
        base = sc["category"].get("base", 3)
        ov, ofba = ov_fin_category(base), ofba_category()
        eq = skeleton_equivalence(base)
        src = ArrowQuery(ov, ov.ordered(*sc["C"]), ov.ordered(*sc["B"]), ov.ordered(*sc["A"]), sc["k"])
        B, A = ofba.ordered(*sc["B"]), ofba.ordered(*sc["A"])
    return eq, src, B, A


def run_transport(sc):
    eq, src, B, A = _transport_setup(sc)
    v = check_arrow(src, _mode(sc), sc.get("budget"))
    cert = {"source": src.notation, "transport": sc.get("transport", "stone")}
    if not v.holds:
        cert.update(verdict_certificate(v, 0))
        return v.status, cert
    target = equivalence_transport_obj(eq, oracle_from_verdict(v), B, A)
    cert["target"] = target.query.notation
    cert["samples"] = sample_evaluations(target.query, target, sc.get("samples", 200),
                                         exhaustive=sc.get("exhaustive_check", False))
    return HOLDS, cert


def _laws_report(sc):
    target, bound = sc.get("target", "category"), sc.get("bound", 3)
    base, p = sc["category"].get("base", 3), sc["category"].get("p", 2)
    if target == "category":
        cat, _ = category_from_spec(sc["category"])
        return verify_category_laws(cat, bound)
    if target == "stone":
        return verify_equivalence(stone_duality(), bound)
    if target == "skeleton":
        return verify_equivalence(skeleton_equivalence(base), bound)
    if target == "power":
        return verify_equivalence(power_equivalence(base), bound)
    if target == "duality":
        return verify_equivalence(duality(p), bound)
    return verify_adjunction(closure_adjunction(), bound)


def run_laws(sc):
    report = _laws_report(sc)
    return ("pass" if not report else "fail"), {"target": sc.get("target", "category"),
                                                "bound": sc.get("bound", 3),
                                                "violations": [str(x) for x in report]}


def _fraisse_report(sc):
    prop, bound = sc.get("property", HP), sc.get("bound", 3)
    budget = sc.get("budget", 2 * bound)
    if prop in (ORDER_EXPANSION, REASONABLE):
        name = sc["category"]["name"]
        if name not in ("OFBA", "OV"):
            raise ScenarioError("$.category.name: expansion checks use OFBA or OV")
        U = forgetful(2 if name == "OFBA" else sc["category"].get("base", 3))
        if prop == ORDER_EXPANSION:
            return check_order_expansion(U, bound)
        cat = U.source
        return check_reasonable(U, bound, lambda f, A: cat.ordered(f.cod.payload, reasonable_extension(f.payload, A.payload[1])))
    cat, _ = category_from_spec(sc["category"])
    if prop == HP:
        return check_HP(cat, bound)
    if prop == JEP:
        return check_JEP(cat, bound, budget)
    return check_AP(cat, bound, budget)


def run_fraisse(sc):
    rep = _fraisse_report(sc)
    return rep.status, rep.as_dict()


def _ordering_setup(sc):
    name = sc["category"]["name"]
    if name not in ("OFBA", "OV"):
        raise ScenarioError("$.category.name: ordering uses OFBA or OV")
    _need(sc, "A")
    base = 2 if name == "OFBA" else sc["category"].get("base", 3)
    U = forgetful(base)
    return U, U.target.power(sc["A"])


def run_ordering(sc):
    U, A = _ordering_setup(sc)
    B, rep = find_ordering_witness(U.source, U, A, sc.get("budget", 5))
    cert = rep.as_dict()
    cert["witness"] = jsonable(B) if B is not None else None
    return rep.status, cert


RUNNERS = {
    "arrow": run_arrow,
    "dual-arrow": run_arrow,
    "product-arrow": run_product,
    "search": run_search,
    "transport": run_transport,
    "laws": run_laws,
    "fraisse": run_fraisse,
    "ordering": run_ordering,
}


def run(sc: dict) -> dict:
    """Validate and execute a scenario; return the certificate envelope."""
    validate_scenario(sc)
    start = time.perf_counter()
    try:
        verdict, cert = RUNNERS[sc["query"]](sc)
    except (DomainError, PreconditionError) as e:
        raise ScenarioError(f"$: {e}") from e
    return {
        "tool_version": __version__,
        "scenario_hash": scenario_hash(sc),
        "scenario": {k: v for k, v in sc.items() if k != "out"},
        "mode": sc.get("mode", "backtracking"),
        "verdict": verdict,
        "certificate": cert,
        "wall_clock": round(time.perf_counter() - start, 6),
    }


def dump_envelope(env: dict) -> str:
    return json.dumps(env, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# revalidation: naive re-checks, no search


def _key(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _decode_items(q: ArrowQuery) -> dict:
    return {_key(jsonable(item)): item for item in compile_query(q).items}


def _decode_witness(q: ArrowQuery, payload):
    for w in q.witnesses():
        if jsonable(w.payload) == payload:
            return w
    return None


def _check_evaluations(q: ArrowQuery, evals: list[dict]) -> tuple[bool, str]:
    items = compile_query(q).items
    for n, e in enumerate(evals):
        if len(e["colors"]) != len(items):
            return False, f"sample {n} has the wrong length"
        chi = dict(zip(items, e["colors"]))
        w = _decode_witness(q, e["witness"])
        if w is None or not is_monochromatic_witness(q, chi, e["color"], w):
            return False, f"sample {n}: witness is not monochromatic"
    return True, f"{len(evals)} samples re-checked"


def _check_verdict_cert(q: ArrowQuery, verdict: str, cert: dict) -> tuple[bool, str]:
    if verdict == FAILS:
        table = _decode_items(q)
        chi = {}
        for item_json, c in cert["bad_coloring"]:
            key = _key(item_json)
            if key not in table:
                return False, f"unknown item {item_json}"
            chi[table[key]] = c
        if not is_bad_coloring(q, chi):
            return False, "coloring has a monochromatic copy"
        return True, "bad coloring re-checked"
    if verdict == HOLDS:
        if "witness_table" in cert:
            items = compile_query(q).items
            entries = cert["witness_table"]
            if len(entries) != q.k ** len(items):
                return False, "witness table is incomplete"
            for colors, (h, c, payload) in zip(all_colorings(len(items), q.k), entries):
                if coloring_hash(colors) != h:
                    return False, "witness table hash mismatch"
                w = _decode_witness(q, payload)
                if w is None or not is_monochromatic_witness(q, dict(zip(items, colors)), c, w):
                    return False, f"entry {h}: witness is not monochromatic"
            return True, f"{len(entries)} table entries re-checked"
        return _check_evaluations(q, cert.get("samples", []))
    return True, "inconclusive verdicts carry no certificate"


def revalidate(env: dict) -> tuple[bool, str]:
    """Re-check an envelope's certificate with the naive validators."""
    try:
        sc = env["scenario"]
        validate_scenario(sc)
        if scenario_hash(sc) != env["scenario_hash"]:
            return False, "scenario hash mismatch"
        verdict, cert, query = env["verdict"], env["certificate"], sc["query"]
        if query in ("arrow", "dual-arrow"):
            cat, make = category_from_spec(sc["category"], dual=query == "dual-arrow")
            return _check_verdict_cert(_arrow_query(sc, cat, make), verdict, cert)
        if query == "product-arrow":
            C_pair, oracle = _product_setup(sc)
            if cert["C"] != jsonable(C_pair):
                return False, "product object mismatch"
            return _check_evaluations(oracle.query, cert["samples"])
        if query == "search":
            cat, make = category_from_spec(sc["category"])
            for entry in cert["trail"]:
                if entry["status"] == FAILS:
                    q = ArrowQuery(cat, make(entry["C"]), make(sc["B"]), make(sc["A"]), sc["k"],
                                   sc.get("variant", "subobject"))
                    ok, why = _check_verdict_cert(q, FAILS, entry)
                    if not ok:
                        return False, f"trail {entry['C']}: {why}"
            if verdict == HOLDS:
                q = ArrowQuery(cat, make(cert["found"]), make(sc["B"]), make(sc["A"]), sc["k"],
                               sc.get("variant", "subobject"))
                return _check_verdict_cert(q, HOLDS, cert["witness"])
            return True, "trail re-checked"
        if query == "transport":
            eq, src, B, A = _transport_setup(sc)
            if verdict != HOLDS:
                return _check_verdict_cert(src, verdict, cert)
            HC = eq.H(eq.E(src.C))
            target = ArrowQuery(eq.C, HC, B, A, sc["k"])
            return _check_evaluations(target, cert["samples"])
        if query == "laws":
            report = _laws_report(sc)
            ok = [str(x) for x in report] == cert["violations"]
            return ok, "violations recomputed" if ok else "violation list differs"
        if query == "fraisse":
            return _check_fraisse(sc, verdict, cert)
        if query == "ordering":
            return _check_ordering(sc, verdict, cert)
    except (KeyError, TypeError, IndexError, ValueError) as e:
        return False, f"malformed envelope: {e}"
    return False, "unknown query"


def _check_fraisse(sc, verdict, cert):
    prop = cert["property"]
    if prop in (HP, ORDER_EXPANSION):
        rep = _fraisse_report(sc)
        ok = rep.status == verdict
        return ok, "recomputed" if ok else "status differs"
    if verdict != "pass":
        return True, "inconclusive reports carry no certificate"
    if prop in (JEP, AP):
        cat, _ = category_from_spec(sc["category"])
        for row in cert["evidence"]:
            if prop == JEP:
                continue
            f, g, u, v = (_decode_mor(cat, m) for m in row)
            if None in (f, g, u, v) or cat.compose(u, f) != cat.compose(v, g):
                return False, f"amalgam does not commute: {row}"
        if prop == JEP:
            rep = _fraisse_report(sc)
            return rep.status == verdict, "recomputed"
        return True, f"{len(cert['evidence'])} amalgams re-checked"
    # reasonable: each lift must be a morphism between the stated expansions
    name = sc["category"]["name"]
    U = forgetful(2 if name == "OFBA" else sc["category"].get("base", 3))
    cat = U.source
    for f_json, a_star, b_star in cert["evidence"]:
        A_star, B_star = cat.ordered(*a_star), cat.ordered(*b_star)
        if tuple(f_json["payload"]) not in {h.payload for h in cat.hom(A_star, B_star)}:
            return False, f"lift of {f_json} fails"
    return True, f"{len(cert['evidence'])} lifts re-checked"


def _decode_mor(cat, m):
    from .serialize import tupled

    for A in cat.objects(max(_grade_hint(m["dom"]), 1)):
        if jsonable(A.payload) != m["dom"]:
            continue
        for B in cat.objects(max(_grade_hint(m["cod"]), 1)):
            if jsonable(B.payload) != m["cod"]:
                continue
            for f in cat.hom(A, B):
                if f.payload == tupled(m["payload"]):
                    return f
    return None


def _grade_hint(payload) -> int:
    if isinstance(payload, int):
        return payload
    if isinstance(payload, list) and payload and isinstance(payload[0], int) and len(payload) == 2 \
            and isinstance(payload[1], list):
        return payload[0]
    return len(payload)


def _check_ordering(sc, verdict, cert):
    if verdict != "pass":
        return True, "inconclusive reports carry no certificate"
    U, A = _ordering_setup(sc)
    B = U.target.power(cert["witness"])
    cat = U.source
    pairs = {(_key(h["dom"]), _key(h["cod"])): h for h in cert["evidence"]}
    for A_star in expansions(U, A):
        for B_star in expansions(U, B):
            h = pairs.get((_key(jsonable(A_star.payload)), _key(jsonable(B_star.payload))))
            if h is None or tuple(h["payload"]) not in {f.payload for f in cat.hom(A_star, B_star)}:
                return False, f"no valid embedding {A_star} -> {B_star}"
    return True, f"{len(pairs)} expansion pairs re-checked"


# ---------------------------------------------------------------------------
# text report


def report(env: dict) -> str:
    sc, cert = env["scenario"], env["certificate"]
    lines = [
        f"arrowlab {env['tool_version']} report",
        f"scenario: {env['scenario_hash'][:16]}",
        f"query: {sc['query']} in {sc['category']['name']}",
        f"mode: {env['mode']}",
    ]
    if "query" in cert:
        lines.append(f"statement: {cert['query']}")
    elif isinstance(cert.get("witness"), dict) and "query" in cert["witness"]:
        lines.append(f"statement: {cert['witness']['query']}")
    if "source" in cert:
        lines.append(f"source: {cert['source']}")
    if "target" in cert and isinstance(cert["target"], str) and sc["query"] == "transport":
        lines.append(f"target: {cert['target']}")
    lines.append(f"verdict: {env['verdict']}")
    if "bad_coloring" in cert:
        lines.append(f"certificate: bad coloring of {len(cert['bad_coloring'])} items")
        for item, c in cert["bad_coloring"]:
            lines.append(f"  {json.dumps(item)} -> {c}")
    elif "witness_table" in cert:
        lines.append(f"certificate: witness table with {len(cert['witness_table'])} colorings")
    elif "samples" in cert:
        lines.append(f"certificate: {len(cert['samples'])} checked oracle evaluations")
    if sc["query"] == "search":
        lines.append(f"found: {json.dumps(cert['found'])} (minimal under grading: {cert['minimal']})")
        for entry in cert["trail"]:
            lines.append(f"  C = {json.dumps(entry['C'])}: {entry['status']}")
    if sc["query"] == "laws":
        lines.append(f"violations: {len(cert['violations'])}")
        lines.extend(f"  {v}" for v in cert["violations"])
    if sc["query"] in ("fraisse", "ordering"):
        lines.append(f"property: {cert['property']} at bound {cert['bound']}: {cert['detail']}")
        if cert.get("witness") is not None:
            lines.append(f"witness: {json.dumps(cert['witness'])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arrowlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["run"]:
        p = sub.add_parser(name, help="run any scenario" if name == "run" else f"run {'an' if name[0] in 'aeiou' else 'a'} {name} scenario")
        p.add_argument("--scenario", required=True)
        p.add_argument("--mode", choices=("exhaustive", "backtracking"))
        p.add_argument("--budget", type=int)
        p.add_argument("--jobs", type=int)
        p.add_argument("--deterministic", action="store_true", default=None)
        p.add_argument("--out")
        p.add_argument("--k", type=int)
        p.add_argument("--variant", choices=("hom", "subobject"))
    for name in ("revalidate", "report"):
        p = sub.add_parser(name, help=f"{name} an envelope")
        p.add_argument("envelope")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command in ("revalidate", "report"):
            with open(args.envelope) as fh:
                env = json.load(fh)
            if args.command == "report":
                sys.stdout.write(report(env))
                return EXIT_OK
            ok, why = revalidate(env)
            print(("valid: " if ok else "invalid: ") + why)
            return EXIT_OK if ok else EXIT_FAIL
        with open(args.scenario) as fh:
            sc = json.load(fh)
        if not isinstance(sc, dict):
            raise ScenarioError("$: a scenario is a JSON object")
        for key in ("mode", "budget", "jobs", "deterministic", "out", "k", "variant"):
            value = getattr(args, key)
            if value is not None:
                sc[key] = value
        if args.command != "run" and sc.get("query") not in COMMANDS[args.command]:
            raise ScenarioError(f"$.query: {sc.get('query')!r} is not a {args.command} scenario")
        if sc.get("deterministic"):
            sc["jobs"] = 1 if sc.get("mode", "backtracking") == "backtracking" else sc.get("jobs", 1)
        env = run(sc)
    except ScenarioError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_envelope(env)
    if sc.get("out"):
        with open(sc["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{env['verdict']}: {env['certificate'].get('query', sc['query'])}", file=sys.stderr)
    return EXIT_CODES.get(env["verdict"], EXIT_INPUT)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
