"""The acceptance battery, shared by the ``suite`` command and the test suite.

Every check returns plain data; reports contain no timings so that two runs with
the same seed serialize to identical bytes.
"""

from __future__ import annotations

import random

from . import chains, linalg
from .chains import cp_example, random_corpus
from .groups import Group, all_subgroups, as_group, is_normal, named_group, quotient
from .gsets import coproduct, transitive_gset
from .mackey import (
    GModule,
    MackeyFunctor,
    check_cohomological,
    compose_nat,
    direct_sum,
    fp_functor,
    full_faithfulness_report,
    is_epimorphism,
    lifting_exists,
    mackey_functor_formula,
    nat_transforms,
    omega_pullback,
    omega_representable,
    random_combination,
    skeleton,
    yoneda,
    zero_functor,
)
from .perm import (
    PermModule,
    equivariant_hom_solve,
    hom_coordinates,
    inflation_check,
    mackey_formula_check,
    perm_hom_basis,
    quotient_equivalence_check,
    tensor_decompose,
)
from .rings import Ring

TEST_GROUPS = ("C2", "C3", "C4", "C6", "S3", "D4")
TEST_RINGS = ("Fp:2", "Fp:3", "Q", "Z")

CRITERIA = {
    1: "hom-rank law",
    2: "Yoshida quotient",
    3: "Mackey formulas",
    4: "C_p counterexample",
    5: "compact generators",
    6: "FP full faithfulness and projectivity",
    7: "inflation full faithfulness",
    8: "cohomologicality criterion",
    9: "determinism",
}


def _sub(S) -> list[int]:
    return list(S.elements)


class Tally:
    """Counts checks and keeps the first few failures."""

    def __init__(self, limit: int = 10):
        self.checks = 0
        self.failures: list = []
        self.limit = limit

    def record(self, ok: bool, detail) -> None:
        self.checks += 1
        if not ok and len(self.failures) < self.limit:
            self.failures.append(detail)
        elif not ok:
            self.failures.append(None)

    @property
    def ok(self) -> bool:
        return not self.failures

    def report(self, **extra) -> dict:
        out = {"ok": self.ok, "checks": self.checks, "failures": [f for f in self.failures if f is not None]}
        out["failure_count"] = len(self.failures)
        out.update(extra)
        return out


# ---------------------------------------------------------------------------
# per (group, ring) checks


def check_hom_rank(G: Group, R: Ring, t: Tally) -> None:
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            X, Y = transitive_gset(G, K), transitive_gset(G, H)
            solver = equivariant_hom_solve(X, Y, R)
            basis = perm_hom_basis(K, H, R)
            n_dc = len(basis)
            ok = len(solver) == n_dc
            ok &= all(b.is_equivariant() for b in basis)
            if ok and basis:
                ok &= linalg.rank([b.flat() for b in basis], R) == n_dc
                for A in solver:
                    coords = hom_coordinates(A, K, H)
                    acc = linalg.zeros(Y.size, X.size, R)
                    for c, b in zip(coords, basis):
                        acc = linalg.mat_add(acc, linalg.mat_scale(c, b.matrix, R), R)
                    ok &= acc == A.matrix
            t.record(ok, {"group": G.name, "ring": str(R), "K": _sub(K), "H": _sub(H)})


def check_quotient(G: Group, R: Ring, t: Tally) -> None:
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            r = quotient_equivalence_check(K, H, R)
            t.record(r["ok"], dict(r, group=G.name))


def check_mackey_sets(G: Group, t: Tally) -> None:
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            r = mackey_formula_check(K, H)
            t.record(r["ok"], {"group": G.name, "K": r["K"], "H": r["H"]})


def check_tensor(G: Group, R: Ring, t: Tally) -> None:
    subs = all_subgroups(G).subgroups
    for K in subs:
        for H in subs:
            d = tensor_decompose(K, H, R)
            t.record(d.verified, {"group": G.name, "ring": str(R), "K": _sub(K), "H": _sub(H)})


def check_mackey_functor_formula(G: Group, R: Ring, t: Tally) -> None:
    subs = all_subgroups(G).subgroups
    for K in subs:
        Kg = as_group(K)
        functors = [fp_functor(GModule.trivial(Kg, R)), fp_functor(GModule.regular(Kg, R))]
        for H in subs:
            Hg = as_group(H)
            for M in functors:
                r = mackey_functor_formula(M, G, Hg)
                t.record(r["ok"], {"group": G.name, "K": _sub(K), "H": _sub(H), "lhs": r["lhs"], "rhs": r["rhs"]})


def check_cp(p: int, t: Tally) -> dict:
    C = cp_example(p)
    R = C.ring
    dd = all(
        linalg.is_zero(linalg.mat_mul(C.diff(n - 1), C.diff(n), R, inner=C.rank(n - 1))) for n in (0, 1)
    )
    acyclic, _ = chains.is_gamma_acyclic(C)
    contractible = chains.is_contractible(C)
    kdim = len(chains.kernel_basis(C, 1))
    row = {"p": p, "d_squared_zero": dd, "gamma_acyclic": acyclic, "contractible": contractible, "kernel_dim": kdim}
    t.record(dd and acyclic and not contractible and kdim == 2, row)
    return row


def check_corpus(seed: int, t: Tally, groups=("C2", "C3", "S3"), rings=("Fp:2", "Fp:3", "Q")) -> dict:
    corpus = [c for c in random_corpus(seed) if c[0] in groups and c[1] in rings]
    acyclic_count = 0
    for idx, (gname, rname, X) in enumerate(corpus):
        good = True
        for H in all_subgroups(X.group).representatives:
            for n in X.degrees:
                a = chains.homotopy_classes_from_generator(H, n, X)
                b = chains.fixed_homology(X, H, n)
                good &= a == b
        acyclic = chains.is_gamma_acyclic(X)[0]
        good &= chains.compact_generation_probe(X) == acyclic
        if X.ring.is_field and chains.is_contractible(X):
            good &= acyclic
        acyclic_count += acyclic
        t.record(good, {"index": idx, "group": gname, "ring": rname})
    return {"complexes": len(corpus), "gamma_acyclic": acyclic_count}


def gmodule_catalogue(G: Group, R: Ring) -> list[tuple[str, GModule]]:
    out = [("trivial", GModule.trivial(G, R)), ("regular", GModule.regular(G, R))]
    for S in all_subgroups(G).representatives:
        out.append((f"R(G/{_sub(S)})", GModule.from_perm(PermModule(transitive_gset(G, S), R))))
    return out


def check_fp(G: Group, R: Ring, t: Tally) -> None:
    cat = gmodule_catalogue(G, R)
    for na, M in cat:
        for nb, N in cat:
            r = full_faithfulness_report(M, N)
            t.record(r["ok"] and r["natural"], {"group": G.name, "ring": str(R), "M": na, "N": nb, **r})
    sk = skeleton(G, R)
    perms = list(sk.sets)
    perms.append(coproduct(sk.sets[0], sk.sets[-1]))
    for X in perms:
        P = PermModule(X, R)
        t.record(yoneda(P) == fp_functor(GModule.from_perm(P)), {"group": G.name, "ring": str(R), "P": X.size})


def _random_epimorphism(B: MackeyFunctor, rng: random.Random):
    """A sum of representables mapping onto B, with a seeded random natural map."""
    G, R = B.group, B.ring
    sk = skeleton(G, R)
    reps = list(range(len(sk.reps)))
    chosen = [rng.choice(reps) for _ in range(rng.randint(1, 2))]
    for _ in range(40):
        A = None
        for a in chosen:
            Y = yoneda(PermModule(sk.sets[a], R))
            A = Y if A is None else direct_sum(A, Y)
        basis = nat_transforms(A, B)
        if basis:
            eps = random_combination(basis, R, rng)
            if is_epimorphism(eps, B):
                return A, eps
        chosen.append(rng.choice(reps))
    raise RuntimeError("no epimorphism found")


def check_lifting(G: Group, R: Ring, seed: int, t: Tally, count: int = 20) -> None:
    rng = random.Random(f"lift:{seed}:{G.name}:{R}")
    sk = skeleton(G, R)
    targets = [fp_functor(M) for _, M in gmodule_catalogue(G, R)[:2]]
    epis = []
    for i in range(count):
        B = targets[i % len(targets)]
        A, eps = _random_epimorphism(B, rng)
        epis.append((A, B, eps))
    for X in sk.sets:
        P = yoneda(PermModule(X, R))
        for i, (A, B, eps) in enumerate(epis):
            basis = nat_transforms(P, B)
            phi = random_combination(basis, R, rng) if basis else {
                a: linalg.zeros(B.values[a], P.values[a], R) for a in range(len(B.values))
            }
            psi = lifting_exists(eps, A, B, phi, P)
            ok = psi is not None and compose_nat(eps, psi, P) == phi
            t.record(ok, {"group": G.name, "ring": str(R), "P": X.size, "epi": i})


def check_cohomological_criterion(G: Group, R: Ring, t: Tally) -> None:
    functors = [fp_functor(M) for _, M in gmodule_catalogue(G, R)]
    functors += [yoneda(PermModule(X, R)) for X in skeleton(G, R).sets]
    functors.append(zero_functor(G, R))
    for M in functors:
        r = check_cohomological(omega_pullback(M))
        t.record(r.cohomological and r.factored == M, {"group": G.name, "ring": str(R), "values": list(M.values)})


def check_burnside_rejected(R: Ring, t: Tally) -> dict:
    G = named_group("C2")
    top = len(skeleton(G, R).reps) - 1
    r = check_cohomological(omega_representable(G, R, top))
    witness = [_sub(S) for S in r.witness] if r.witness else None
    t.record(not r.cohomological and witness == [[0], [0, 1]], {"ring": str(R), "witness": witness})
    return {"ring": str(R), "witness": witness}


def check_inflation(G: Group, N, R: Ring, t: Tally) -> None:
    r = inflation_check(quotient(N), R)
    t.record(r["ok"], {"group": G.name, "normal": r["normal"], "ring": str(R)})


def _center(G: Group):
    from .groups import subgroup

    return subgroup(G, [z for z in range(G.order) if all(G.table[z][g] == G.table[g][z] for g in range(G.order))])


# ---------------------------------------------------------------------------
# the nine criteria


def criterion(n: int, seed: int = 0) -> dict:
    t = Tally()
    extra: dict = {}
    if n == 1:
        for g in TEST_GROUPS:
            for r in TEST_RINGS:
                check_hom_rank(named_group(g), Ring.parse(r), t)
    elif n == 2:
        for g in ("C2", "C4", "S3"):
            for r in ("Z", "Fp:2"):
                check_quotient(named_group(g), Ring.parse(r), t)
    elif n == 3:
        for g in ("S3", "D4"):
            check_mackey_sets(named_group(g), t)
        for g in TEST_GROUPS:
            for r in TEST_RINGS:
                check_tensor(named_group(g), Ring.parse(r), t)
        for r in ("Q", "Fp:2"):
            check_mackey_functor_formula(named_group("S3"), Ring.parse(r), t)
    elif n == 4:
        extra["cases"] = [check_cp(p, t) for p in (3, 5)]
    elif n == 5:
        extra.update(check_corpus(seed, t))
    elif n == 6:
        for g in ("C2", "C4", "S3"):
            for r in ("Fp:2", "Fp:3", "Q"):
                G, R = named_group(g), Ring.parse(r)
                check_fp(G, R, t)
                check_lifting(G, R, seed, t)
    elif n == 7:
        cases = [("C4", [0, 2]), ("S3", "A3"), ("D4", "center")]
        for g, nd in cases:
            G = named_group(g)
            if nd == "A3":
                N = next(S for S in all_subgroups(G).subgroups if S.order == 3)
            elif nd == "center":
                N = _center(G)
            else:
                from .groups import subgroup

                N = subgroup(G, nd)
            assert is_normal(N)
            for r in ("Fp:2", "Q", "Z"):
                check_inflation(G, N, Ring.parse(r), t)
    elif n == 8:
        for g in ("C2", "C4", "S3"):
            for r in ("Fp:2", "Fp:3", "Q"):
                check_cohomological_criterion(named_group(g), Ring.parse(r), t)
        extra["rejected"] = [check_burnside_rejected(Ring.parse(r), t) for r in ("Q", "Fp:2", "Z")]
    elif n == 9:
        from .codec import dumps

        first = dumps(acceptance_report(seed, include_determinism=False))
        second = dumps(acceptance_report(seed, include_determinism=False))
        t.record(first == second, {"bytes": [len(first), len(second)]})
    else:
        raise ValueError(f"no criterion {n}")
    return {"id": n, "name": CRITERIA[n], **t.report(**extra)}


def acceptance_report(seed: int = 0, include_determinism: bool = True) -> dict:
    ids = list(range(1, 10 if include_determinism else 9))
    rows = [criterion(n, seed) for n in ids]
    return {"seed": seed, "criteria": rows, "ok": all(r["ok"] for r in rows)}


def pair_report(G: Group, R: Ring, seed: int = 0) -> dict:
    """The battery restricted to one group and ring."""
    rows = []

    def run(name, fn, *args):
        t = Tally()
        extra = fn(*args, t) or {}
        rows.append({"check": name, **t.report(**extra)})

    run("hom-rank", check_hom_rank, G, R)
    run("quotient", check_quotient, G, R)
    run("mackey-sets", check_mackey_sets, G)
    run("tensor", check_tensor, G, R)
    if R.is_field:
        run("mackey-functors", check_mackey_functor_formula, G, R)
        run("fp", check_fp, G, R)
        run("lifting", lambda g, r, t: check_lifting(g, r, seed, t), G, R)
        run("cohomological", check_cohomological_criterion, G, R)
    if G.name == "C2":
        run("burnside-rejected", lambda r, t: check_burnside_rejected(r, t), R)
    normals = [N for N in all_subgroups(G).subgroups if is_normal(N) and 1 < N.order < G.order]
    for N in normals:
        run(f"inflation{_sub(N)}", lambda n, r, t: check_inflation(G, n, r, t), N, R)
    if G.name and G.name in {f"C{p}" for p in (3, 5, 7)} and R.kind == "Fp" and R.modulus == G.order:
        run("cp-example", lambda p, t: check_cp(p, t), G.order)
    if G.name in ("C2", "C3", "S3") and str(R) in ("Fp:2", "Fp:3", "Q"):
        run("compact-generators", lambda t: check_corpus(seed, t, (G.name,), (str(R),)))
    return {"group": G.name, "ring": str(R), "seed": seed, "checks": rows, "ok": all(r["ok"] for r in rows)}
