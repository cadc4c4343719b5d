"""Command line: one JSON document in, one canonical JSON document out.

Input comes from a file argument, ``-`` for stdin, or ``--json``; ``--group``,
``--ring``, ``--K``, ``--H``, ``-p`` and ``--seed`` fill in the common fields.
Exit codes: 0 success, 1 a verification reported failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chains, codec
from .errors import MackeyKitError, MalformedInput
from .groups import all_subgroups, as_group, double_cosets
from .gsets import orbit_decompose, transitive_gset
from .mackey import (
    GModule,
    check_cohomological,
    fp_functor,
    mackey_algebra,
    nat_transforms,
    omega_pullback,
    rho,
    sigma,
    tau,
    yoneda,
)
from .perm import (
    PermModule,
    equivariant_hom_solve,
    linearize_span,
    mackey_formula_check,
    perm_hom_basis,
    quotient_equivalence_check,
    tensor_decompose,
)
from .spans import omega_hom_basis, span_canonicalize, span_compose

VERBS = {}


def verb(name, help_text):
    def deco(fn):
        VERBS[name] = (fn, help_text)
        return fn

    return deco


# ---------------------------------------------------------------------------
# shared field readers


def _group(doc):
    if "group" not in doc:
        raise MalformedInput("missing 'group'")
    return codec.decode_group(doc["group"])


def _ring(doc, default="Q"):
    return codec.decode_ring(doc.get("ring", default))


def _pair(doc, G):
    try:
        return codec.decode_subgroup(G, doc["K"]), codec.decode_subgroup(G, doc["H"])
    except KeyError as e:
        raise MalformedInput(f"missing subgroup {e.args[0]!r}") from None


def _module_gset(doc, G):
    if "gset" in doc:
        return codec.decode_gset(doc["gset"], G)
    if "H" in doc:
        return transitive_gset(G, codec.decode_subgroup(G, doc["H"]))
    raise MalformedInput("give a 'gset' or a subgroup 'H' for G/H")


def _gmodule(doc, G, R):
    m = doc.get("module")
    if m is None:
        return GModule.from_perm(PermModule(_module_gset(doc, G), R))
    if m == "trivial":
        return GModule.trivial(G, R)
    if m == "regular":
        return GModule.regular(G, R)
    rank = int(m["rank"])
    acts = [codec.decode_matrix(A, R, (rank, rank)) for A in m["action"]]
    return GModule(G, R, rank, tuple(acts)).validate()


def _complex(doc):
    return codec.decode_complex(doc.get("complex", doc))


# ---------------------------------------------------------------------------
# group-core and gset


@verb("group", "validate a group and print its table")
def _v_group(doc):
    G = _group(doc)
    return {
        "order": G.order,
        "group": codec.encode_group(G),
        "table": [list(r) for r in G.table],
        "inverses": list(G.inverses),
        "generators": list(G.generators),
    }, 0


@verb("subgroups", "all subgroups and their conjugacy classes")
def _v_subgroups(doc):
    G = _group(doc)
    lat = all_subgroups(G)
    return {
        "subgroups": [list(S.elements) for S in lat.subgroups],
        "classes": [[list(lat.subgroups[i].elements) for i in c] for c in lat.classes],
        "representatives": [list(S.elements) for S in lat.representatives],
    }, 0


@verb("double-cosets", "representatives of K\\G/H")
def _v_double_cosets(doc):
    G = _group(doc)
    K, H = _pair(doc, G)
    reps = double_cosets(G, K, H)
    return {"reps": reps, "count": len(reps)}, 0


@verb("gset", "validate a G-set (or build G/H)")
def _v_gset(doc):
    G = _group(doc)
    X = _module_gset(doc, G)
    return {"gset": codec.encode_gset(X)}, 0


@verb("orbits", "orbit decomposition with stabilizers")
def _v_orbits(doc):
    G = _group(doc)
    X = _module_gset(doc, G)
    orbits = []
    for x in X.orbit_reps:
        orbits.append({"rep": x, "points": X.orbit(x), "stabilizer": list(X.stabilizer(x).elements)})
    return {"orbits": orbits, "types": [[list(S.elements), n] for S, n in orbit_decompose(X)]}, 0


# ---------------------------------------------------------------------------
# spans and permutation modules


@verb("span-canon", "normal form of a span X <- Z -> Y")
def _v_span_canon(doc):
    return {"span_sum": codec.encode_span_sum(span_canonicalize(codec.decode_span(doc.get("span", doc))))}, 0


@verb("span-compose", "composite second ∘ first of two span sums")
def _v_span_compose(doc):
    s1 = codec.decode_span_sum(doc["first"])
    s2 = codec.decode_span_sum(doc["second"])
    if s1.target != s2.source:
        from .errors import SourceTargetMismatch

        raise SourceTargetMismatch("target of 'first' differs from source of 'second'")
    return {"span_sum": codec.encode_span_sum(span_compose(s1, s2))}, 0


@verb("omega-basis", "basis spans of Hom_Omega(G/K, G/H)")
def _v_omega_basis(doc):
    G = _group(doc)
    K, H = _pair(doc, G)
    return {"basis": [{"g": b.g, "L": list(b.L.elements)} for b in omega_hom_basis(K, H)]}, 0


@verb("perm-hom", "basis of Hom(R(G/K), R(G/H)) with the solver cross-check")
def _v_perm_hom(doc):
    G, R = _group(doc), _ring(doc)
    K, H = _pair(doc, G)
    basis = perm_hom_basis(K, H, R)
    solver = equivariant_hom_solve(transitive_gset(G, K), transitive_gset(G, H), R)
    ok = len(solver) == len(basis)
    return {
        "double_cosets": double_cosets(G, K, H),
        "rank": len(basis),
        "solver_rank": len(solver),
        "basis": [codec.encode_matrix(b.matrix, R) for b in basis],
        "ok": ok,
    }, 0 if ok else 1


@verb("linearize", "the permutation-module morphism of a span sum")
def _v_linearize(doc):
    R = _ring(doc)
    s = codec.decode_span_sum(doc.get("span_sum", doc))
    return {"morphism": codec.encode_morphism(linearize_span(s, R))}, 0


@verb("tensor-decompose", "R(G/K) ⊗ R(G/H) as a sum over double cosets")
def _v_tensor(doc):
    G, R = _group(doc), _ring(doc)
    K, H = _pair(doc, G)
    d = tensor_decompose(K, H, R)
    return {
        "summands": [{"g": g, "subgroup": list(S.elements)} for g, S in d.summands],
        "iso": codec.encode_morphism(d.iso),
        "verified": d.verified,
    }, 0 if d.verified else 1


@verb("mackey-check", "set-level Res ∘ Ind decomposition for K, H")
def _v_mackey_check(doc):
    G = _group(doc)
    K, H = _pair(doc, G)
    r = mackey_formula_check(K, H)
    return r, 0 if r["ok"] else 1


@verb("quotient-check", "Omega(G) modulo the ideal versus perm(G; R) on one hom set")
def _v_quotient_check(doc):
    G, R = _group(doc), _ring(doc, "Z")
    K, H = _pair(doc, G)
    r = quotient_equivalence_check(K, H, R)
    return r, 0 if r["ok"] else 1


# ---------------------------------------------------------------------------
# Mackey functors


@verb("fp", "fixed-point functor of a G-module")
def _v_fp(doc):
    G, R = _group(doc), _ring(doc)
    return {"functor": codec.encode_functor(fp_functor(_gmodule(doc, G, R)))}, 0


@verb("yoneda", "the functor Hom(-, R(X))")
def _v_yoneda(doc):
    G, R = _group(doc), _ring(doc)
    return {"functor": codec.encode_functor(yoneda(PermModule(_module_gset(doc, G), R)))}, 0


@verb("nat-hom", "basis of natural transformations source -> target")
def _v_nat_hom(doc):
    M = codec.decode_functor(doc["source"])
    N = codec.decode_functor(doc["target"], M.group)
    basis = nat_transforms(M, N)
    return {"rank": len(basis), "basis": [codec.encode_nat(eta, M) for eta in basis]}, 0


@verb("rho-tau-sigma", "restriction-type operations on functors")
def _v_rts(doc):
    """``op`` is rho (to ``subgroup``), tau (functor over ``subgroup``) or sigma (``gamma``).

    Functors over a subgroup use that subgroup's own element numbering: the i-th
    smallest element index of the subgroup is element i.
    """
    G = _group(doc)
    op = doc.get("op")
    if op == "rho":
        M = codec.decode_functor(doc["functor"], G)
        Sg = as_group(codec.decode_subgroup(G, doc["subgroup"]))
        out = rho(M, Sg)
    elif op in ("tau", "sigma"):
        Sg = as_group(codec.decode_subgroup(G, doc["subgroup"]))
        fdoc = {k: v for k, v in doc["functor"].items() if k != "group"}
        M = codec.decode_functor(fdoc, Sg)
        if op == "tau":
            out = tau(M, G)
        else:
            gamma = int(doc.get("gamma", 0))
            out = sigma(M, G.root_index[gamma])
    else:
        raise MalformedInput("op must be 'rho', 'tau' or 'sigma'")
    problems = out.check()
    res = codec.encode_functor(out)
    res.pop("group", None)
    if out.group is not G:
        res["subgroup"] = [G.local_index[r] for r in out.group.root_index]
    return {"functor": res, "valid": not problems}, 0 if not problems else 1


@verb("algebra", "the cohomological Mackey algebra over all subgroups")
def _v_algebra(doc):
    import random

    G, R = _group(doc), _ring(doc)
    A = mackey_algebra(G, R)
    rng = random.Random(int(doc.get("seed", 0)))
    trials = []
    for _ in range(int(doc.get("trials", 5))):
        x, y, z = ([R.coerce(rng.randint(-2, 2)) for _ in range(A.dimension)] for _ in range(3))
        trials.append(
            A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z)) and A.mul(A.unit, x) == x == A.mul(x, A.unit)
        )
    ok = all(trials)
    return {
        "dimension": A.dimension,
        "subgroups": [list(S.elements) for S in A.subgroups],
        "basis": [list(b) for b in A.basis],
        "unit": [R.encode(c) for c in A.unit],
        "associative_unital": ok,
    }, 0 if ok else 1


@verb("cohomological", "test an Omega-functor given as the pullback of a Mackey functor")
def _v_cohomological(doc):
    M = codec.decode_functor(doc.get("functor", doc))
    r = check_cohomological(omega_pullback(M))
    return {"cohomological": r.cohomological, "witness": [list(S.elements) for S in r.witness] if r.witness else None}, 0


# ---------------------------------------------------------------------------
# complexes


def _homology_table(X, subgroups):
    degs = [0, 1] if X.shape == chains.PERIODIC2 else X.degrees
    out = []
    for H in subgroups:
        C = chains.fixed_point_complex(X, H)
        out.append({"H": list(H.elements), "homology": {str(n): chains.homology(C, n).as_dict() for n in degs}})
    return out


def _subgroups_for(doc, G):
    if "H" in doc:
        return [codec.decode_subgroup(G, doc["H"])]
    return all_subgroups(G).representatives


@verb("complex-homology", "homology of the fixed-point complexes X^H")
def _v_homology(doc):
    X = _complex(doc)
    return {"fixed_point_homology": _homology_table(X, _subgroups_for(doc, X.group))}, 0


@verb("fixed-points", "the fixed-point complex X^H in orbit-sum bases")
def _v_fixed_points(doc):
    X = _complex(doc)
    H = codec.decode_subgroup(X.group, doc.get("H", "G"))
    C = chains.fixed_point_complex(X, H)
    degs = sorted(C.ranks)
    return {
        "ranks": {str(n): C.rank(n) for n in degs},
        "differentials": {str(n): codec.encode_matrix(A, C.ring) for n, A in sorted(C.d.items())},
    }, 0


@verb("gamma-acyclic", "are all fixed-point complexes exact")
def _v_gamma_acyclic(doc):
    X = _complex(doc)
    ok, wit = chains.is_gamma_acyclic(X)
    return {
        "gamma_acyclic": ok,
        "witnesses": [{"H": list(H.elements), "degree": n, "homology": h.as_dict()} for H, n, h in wit],
    }, 0


@verb("qis", "is a chain map a Γ-quasi-isomorphism")
def _v_qis(doc):
    f = codec.decode_chain_map(doc.get("map", doc))
    q = chains.is_gamma_qis(f)
    out = {"qis": q}
    if f.source.ring.is_field:
        direct = chains.fixed_point_qis(f)
        out["fixed_point_qis"] = direct
        if direct != q:
            out["mismatch"] = True
            return out, 1
    return out, 0


@verb("contractible", "is a complex contractible (field coefficients)")
def _v_contractible(doc):
    return {"contractible": chains.is_contractible(_complex(doc))}, 0


@verb("cp-example", "the 2-periodic complex over C_p")
def _v_cp(doc):
    p = doc.get("p")
    if not isinstance(p, int):
        raise MalformedInput("give an odd prime 'p'")
    return {"complex": codec.encode_complex(chains.cp_example(p))}, 0


@verb("probe", "maps from the generators R(G/H)[n] modulo homotopy")
def _v_probe(doc):
    X = _complex(doc)
    table = []
    for H in all_subgroups(X.group).representatives:
        for n in X.degrees:
            table.append(
                {"H": list(H.elements), "degree": n, "classes": chains.homotopy_classes_from_generator(H, n, X).as_dict()}
            )
    orth = chains.compact_generation_probe(X)
    return {"orthogonal": orth, "gamma_acyclic": chains.is_gamma_acyclic(X)[0], "classes": table}, 0


@verb("suite", "acceptance battery (all criteria, or one group and ring)")
def _v_suite(doc):
    from .suite import acceptance_report, criterion, pair_report

    seed = int(doc.get("seed", 0))
    if "group" in doc:
        rep = pair_report(_group(doc), _ring(doc, "Fp:2"), seed)
    elif "criteria" in doc:
        rows = [criterion(int(n), seed) for n in doc["criteria"]]
        rep = {"seed": seed, "criteria": rows, "ok": all(r["ok"] for r in rows)}
    else:
        rep = acceptance_report(seed, include_determinism=bool(doc.get("determinism", False)))
    return rep, 0 if rep["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mackeykit", description="Exact computations with permutation modules and Mackey functors.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")
    for name, (_, help_text) in VERBS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input", nargs="?", help="JSON file, or - for stdin")
        sp.add_argument("--json", help="inline JSON document")
        sp.add_argument("--group", help="named group (C2, S3, D4, ...)")
        sp.add_argument("--ring", help="Z, Q, Fp:p or Zn:n")
        sp.add_argument("--K", help="subgroup as JSON list")
        sp.add_argument("--H", help="subgroup as JSON list")
        sp.add_argument("-p", type=int, help="prime for cp-example")
        sp.add_argument("--seed", type=int, help="seed for random corpora (default 0)")
        if name == "suite":
            sp.add_argument("--criteria", help="comma separated criterion numbers")
            sp.add_argument("--determinism", action="store_true", help="also rerun and compare (criterion 9)")
    return ap


def _read_document(args) -> dict:
    doc: dict = {}
    if args.json:
        doc = json.loads(args.json)
    elif args.input == "-":
        doc = json.load(sys.stdin)
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    if not isinstance(doc, dict):
        raise MalformedInput("the input document must be a JSON object")
    if args.group:
        doc["group"] = args.group
    if args.ring:
        doc["ring"] = args.ring
    for key in ("K", "H"):
        val = getattr(args, key)
        if val is not None:
            doc[key] = val if val in ("G", "e") else json.loads(val)
    if args.p is not None:
        doc["p"] = args.p
    if args.seed is not None:
        doc["seed"] = args.seed
    if getattr(args, "criteria", None):
        doc["criteria"] = [int(x) for x in args.criteria.split(",")]
    if getattr(args, "determinism", False):
        doc["determinism"] = True
    return doc


def run(verb_name: str, doc: dict) -> tuple[dict, int]:
    """Run one verb on a document; never raises for bad input."""
    fn, _ = VERBS[verb_name]
    try:
        return fn(doc)
    except MackeyKitError as e:
        err = {"code": e.code, "message": str(e)}
        if e.witness:
            err["witness"] = e.witness
        return {"error": err}, 2
    except (KeyError, TypeError, ValueError, IndexError, json.JSONDecodeError) as e:
        return {"error": {"code": "malformed_input", "message": f"{type(e).__name__}: {e}"}}, 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _read_document(args)
    except (OSError, ValueError) as e:
        out, code = {"error": {"code": "malformed_input", "message": str(e)}}, 2
    else:
        out, code = run(args.verb, doc)
    sys.stdout.write(codec.dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
