"""Canonical JSON encodings for every object the command line reads or writes.

Ring elements are decimal strings (``"p/q"`` over Q); subgroups are sorted
element-index arrays; output is dumped with sorted keys and fixed separators so
equal inputs give byte-identical documents.
"""

from __future__ import annotations

import json
from typing import Any

from .chains import PERIODIC2, ChainComplex, ChainMap, Invariants, bounded_complex, periodic_complex
from .errors import MalformedInput
from .groups import Group, Subgroup, _named_cache, load_group, named_group, subgroup
from .gsets import EquivariantMap, GSet, transitive_gset
from .mackey import MackeyFunctor, skeleton
from .perm import PermModule, PermMorphism
from .rings import Ring
from .spans import Span, SpanSum


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ---------------------------------------------------------------------------
# groups and subgroups


def encode_group(G: Group) -> dict:
    if G.name and _named_cache.get(G.name) is G:
        return {"kind": "named", "name": G.name}
    return {"kind": "cayley", "table": [list(r) for r in G.table]}


def decode_group(doc) -> Group:
    if isinstance(doc, str):
        return named_group(doc)
    return load_group(doc)


def encode_subgroup(S: Subgroup) -> list[int]:
    return list(S.elements)


def decode_subgroup(G: Group, doc) -> Subgroup:
    if doc == "G" or doc == "whole":
        return G.whole()
    if doc == "e" or doc == "trivial":
        return G.trivial()
    if not isinstance(doc, list):
        raise MalformedInput("a subgroup is a list of element indices")
    return subgroup(G, doc)


def decode_ring(doc) -> Ring:
    if not isinstance(doc, str):
        raise MalformedInput("a ring is written as 'Z', 'Q', 'Fp:p' or 'Zn:n'")
    return Ring.parse(doc)


# ---------------------------------------------------------------------------
# G-sets and maps


def encode_gset(X: GSet, with_group: bool = True) -> dict:
    out = {"size": X.size, "action": [list(r) for r in X.action]}
    if with_group:
        out["group"] = encode_group(X.group)
    return out


def decode_gset(doc, G: Group | None = None) -> GSet:
    """A G-set; ``group`` may be omitted when the enclosing document fixes it.

    ``action`` lists one row per group element, or one row per entry of
    ``generators`` (element indices) when that key is present.
    ``{"transitive": [subgroup]}`` is accepted as a shorthand for G/H.
    """
    if not isinstance(doc, dict):
        raise MalformedInput("a G-set is a JSON object")
    if "group" in doc:
        G = decode_group(doc["group"])
    if G is None:
        raise MalformedInput("G-set without a group")
    if "transitive" in doc:
        return transitive_gset(G, decode_subgroup(G, doc["transitive"]))
    if "coproduct" in doc:
        from .gsets import coproduct, empty_gset

        parts = [decode_gset(p, G) for p in doc["coproduct"]]
        return coproduct(*parts) if parts else empty_gset(G)
    action = doc.get("action")
    if not isinstance(action, list):
        raise MalformedInput("G-set needs an 'action' table")
    size = int(doc.get("size", len(action[0]) if action else 0))
    if "generators" in doc:
        gens = [int(g) for g in doc["generators"]]
        if len(gens) != len(action):
            raise MalformedInput("one action row per listed generator")
        rows = _extend_action(G, gens, [tuple(int(x) for x in r) for r in action], size)
    else:
        rows = tuple(tuple(int(x) for x in r) for r in action)
    X = GSet(G, rows)
    if X.size != size and len(rows):
        raise MalformedInput("'size' does not match the action table")
    return X.validate()


def _extend_action(G: Group, gens, images, size) -> tuple:
    rows: dict[int, tuple] = {0: tuple(range(size))}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, img in zip(gens, images):
                if len(img) != size:
                    raise MalformedInput("action row of the wrong length")
                gh = G.table[g][h]
                row = tuple(img[x] for x in rows[h])
                if gh in rows:
                    if rows[gh] != row:
                        raise MalformedInput("generator action is not compatible with the group law")
                    continue
                rows[gh] = row
                nxt.append(gh)
        frontier = nxt
    if len(rows) != G.order:
        raise MalformedInput("listed generators do not generate the group")
    return tuple(rows[g] for g in range(G.order))


def decode_map(doc, source: GSet, target: GSet) -> EquivariantMap:
    return EquivariantMap(source, target, tuple(int(x) for x in doc)).validate()


# ---------------------------------------------------------------------------
# spans


def encode_span_sum(s: SpanSum) -> dict:
    return {
        "source": encode_gset(s.source),
        "target": encode_gset(s.target, with_group=False),
        "terms": [
            {"i": i, "j": j, "g": g, "L": list(L), "coeff": str(c)} for (i, j, g, L), c in s.terms
        ],
    }


def decode_span_sum(doc) -> SpanSum:
    X = decode_gset(doc["source"])
    Y = decode_gset(doc["target"], X.group)
    terms = {}
    for t in doc.get("terms", []):
        L = subgroup(X.group, t["L"])
        key = (int(t["i"]), int(t["j"]), int(t["g"]), L.elements)
        terms[key] = terms.get(key, 0) + int(t.get("coeff", 1))
    return SpanSum.from_dict(X, Y, terms)


def decode_span(doc) -> Span:
    X = decode_gset(doc["source"])
    G = X.group
    Y = decode_gset(doc["target"], G)
    Z = decode_gset(doc["mid"], G)
    return Span(decode_map(doc["left"], Z, X), decode_map(doc["right"], Z, Y))


# ---------------------------------------------------------------------------
# matrices and morphisms


def encode_matrix(A, R: Ring) -> list[list[str]]:
    return [[R.encode(x) for x in row] for row in A]


def decode_matrix(doc, R: Ring, shape: tuple[int, int] | None = None) -> list:
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise MalformedInput("a matrix is a list of rows")
    A = [[R.decode(x) if isinstance(x, str) else R.coerce(x) for x in r] for r in doc]
    if shape is not None:
        m, n = shape
        if m == 0:
            A = []
        if len(A) != m or any(len(r) != n for r in A):
            raise MalformedInput(f"expected a {m} x {n} matrix")
    return A


def encode_morphism(f: PermMorphism) -> dict:
    return {
        "source": encode_gset(f.source.basis),
        "target": encode_gset(f.target.basis, with_group=False),
        "ring": str(f.ring),
        "matrix": encode_matrix(f.matrix, f.ring),
    }


def decode_morphism(doc) -> PermMorphism:
    R = decode_ring(doc["ring"])
    X = decode_gset(doc["source"])
    Y = decode_gset(doc["target"], X.group)
    A = decode_matrix(doc["matrix"], R, (Y.size, X.size))
    return PermMorphism(PermModule(X, R), PermModule(Y, R), A).validate()


# ---------------------------------------------------------------------------
# Mackey functors


def _subgroup_key(S: Subgroup) -> str:
    return "{" + ",".join(str(x) for x in S.elements) + "}"


def encode_functor(M: MackeyFunctor) -> dict:
    sk = M.skeleton
    keys = [_subgroup_key(S) for S in sk.reps]
    action = {}
    for (a, b, p), A in M.action.items():
        g = sk.double_cosets(a, b)[p]
        action[f"{keys[a]},{keys[b]},{g}"] = encode_matrix(A, M.ring)
    return {
        "group": encode_group(M.group),
        "ring": str(M.ring),
        "values": {k: v for k, v in zip(keys, M.values)},
        "action": action,
    }


def decode_functor(doc, G: Group | None = None) -> MackeyFunctor:
    """Inverse of :func:`encode_functor`; every basis morphism must be present."""
    if "group" in doc:
        G = decode_group(doc["group"])
    if G is None:
        raise MalformedInput("functor without a group")
    R = decode_ring(doc["ring"])
    sk = skeleton(G, R)
    keys = [_subgroup_key(S) for S in sk.reps]
    vals = doc.get("values", {})
    if set(vals) != set(keys):
        raise MalformedInput(f"values must be given exactly at the class representatives {keys}")
    values = tuple(int(vals[k]) for k in keys)
    action = {}
    for a, b in sk.pairs():
        for p, g in enumerate(sk.double_cosets(a, b)):
            key = f"{keys[a]},{keys[b]},{g}"
            if key not in doc.get("action", {}):
                raise MalformedInput(f"missing action of basis morphism {key}")
            action[(a, b, p)] = decode_matrix(doc["action"][key], R, (values[a], values[b]))
    M = MackeyFunctor(G, R, values, action)
    problems = M.check()
    if problems:
        raise MalformedInput("not a functor: " + problems[0])
    return M


def encode_nat(eta: dict, M: MackeyFunctor) -> dict:
    sk = M.skeleton
    return {_subgroup_key(sk.reps[a]): encode_matrix(m, M.ring) for a, m in sorted(eta.items())}


# ---------------------------------------------------------------------------
# complexes


def encode_complex(X: ChainComplex) -> dict:
    if X.shape == PERIODIC2:
        shape = {"periodic2": True}
        mods = [X.module(0), X.module(1)]
        diffs = [X.diff(1), X.diff(0)]
    else:
        shape = {"bounded": [X.lo, X.hi]}
        mods = [X.module(n) for n in X.degrees]
        diffs = [X.diff(n) for n in X.degrees[1:]]
    return {
        "group": encode_group(X.group),
        "ring": str(X.ring),
        "shape": shape,
        "modules": [encode_gset(P.basis, with_group=False) for P in mods],
        "differentials": [encode_matrix(A, X.ring) for A in diffs],
    }


def decode_complex(doc, G: Group | None = None, R: Ring | None = None) -> ChainComplex:
    if "group" in doc:
        G = decode_group(doc["group"])
    if "ring" in doc:
        R = decode_ring(doc["ring"])
    if G is None or R is None:
        raise MalformedInput("complex needs a group and a ring")
    mods = [decode_gset(m, G) for m in doc.get("modules", [])]
    shape = doc.get("shape", {"bounded": [0, len(mods) - 1]})
    raw = doc.get("differentials", [])
    if "periodic2" in shape:
        if len(mods) != 2 or len(raw) != 2:
            raise MalformedInput("a 2-periodic complex has two modules and two differentials")
        diffs = [
            decode_matrix(raw[0], R, (mods[0].size, mods[1].size)),
            decode_matrix(raw[1], R, (mods[1].size, mods[0].size)),
        ]
        return periodic_complex(G, R, mods, diffs).validate()
    if "bounded" not in shape:
        raise MalformedInput("shape must be {'bounded': [lo, hi]} or {'periodic2': true}")
    lo, hi = (int(x) for x in shape["bounded"])
    if hi - lo + 1 != len(mods):
        raise MalformedInput("number of modules does not match the bounded range")
    diffs = [decode_matrix(A, R, (mods[i].size, mods[i + 1].size)) for i, A in enumerate(raw)]
    return bounded_complex(G, R, lo, mods, diffs).validate()


def decode_chain_map(doc) -> ChainMap:
    X = decode_complex(doc["source"])
    Y = decode_complex(doc["target"], X.group, X.ring)
    comps = {}
    for k, A in doc.get("components", {}).items():
        n = int(k)
        comps[n] = decode_matrix(A, X.ring, (Y.rank(n), X.rank(n)))
    return ChainMap(X, Y, comps).validate()


def encode_invariants(h: Invariants) -> dict:
    return h.as_dict()

