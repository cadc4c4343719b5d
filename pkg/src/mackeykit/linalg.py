"""Exact dense/sparse linear algebra over :class:`~mackeykit.rings.Ring`.

Matrices are lists of rows. Over fields everything goes through sparse Gaussian
elimination; over Z through the Smith normal form; over Z/n by lifting to Z and
adjoining ``n * I``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import FieldRequired
from .rings import QQ, Ring

Matrix = list  # list[list[element]]


# ---------------------------------------------------------------------------
# basic matrix helpers


def zeros(m: int, n: int, ring: Ring) -> Matrix:
    z = ring.zero
    return [[z] * n for _ in range(m)]


def identity(n: int, ring: Ring) -> Matrix:
    M = zeros(n, n, ring)
    for i in range(n):
        M[i][i] = ring.one
    return M


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_mul(A: Matrix, B: Matrix, ring: Ring, inner: int | None = None) -> Matrix:
    """``A @ B``. ``inner`` disambiguates shapes when ``B`` has no rows."""
    if not A:
        return []
    if not B:
        ncols = 0 if inner is None else inner
        return zeros(len(A), ncols, ring)
    Bt = list(zip(*B))
    if not Bt:
        return [[] for _ in A]
    red = ring.coerce
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([red(sum(a * col[k] for k, a in nz)) for col in Bt])
    return out


def mat_add(A: Matrix, B: Matrix, ring: Ring) -> Matrix:
    return [[ring.add(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix, ring: Ring) -> Matrix:
    return [[ring.sub(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(c, A: Matrix, ring: Ring) -> Matrix:
    return [[ring.mul(c, a) for a in r] for r in A]


def mat_vec(A: Matrix, v: Sequence, ring: Ring) -> list:
    red = ring.coerce
    return [red(sum(a * x for a, x in zip(row, v) if a)) for row in A]


def is_zero(A) -> bool:
    return all(not x for row in A for x in row)


def coerce_matrix(A, ring: Ring) -> Matrix:
    return [[ring.coerce(x) for x in row] for row in A]


def block_diag(blocks: list[Matrix], shapes: list[tuple[int, int]], ring: Ring) -> Matrix:
    m = sum(s[0] for s in shapes)
    n = sum(s[1] for s in shapes)
    out = zeros(m, n, ring)
    r0 = c0 = 0
    for B, (bm, bn) in zip(blocks, shapes):
        for i in range(bm):
            for j in range(bn):
                out[r0 + i][c0 + j] = B[i][j]
        r0 += bm
        c0 += bn
    return out


# ---------------------------------------------------------------------------
# sparse elimination over fields


def _as_sparse(row, ring: Ring) -> dict:
    if isinstance(row, dict):
        return {c: ring.coerce(v) for c, v in row.items() if ring.coerce(v)}
    return {c: ring.coerce(v) for c, v in enumerate(row) if v and ring.coerce(v)}


def _echelon(rows, ring: Ring) -> dict[int, dict]:
    """Reduced row echelon form as ``{pivot column: row}`` with unit pivots."""
    if not ring.is_field:
        raise FieldRequired(f"elimination needs a field, got {ring}")
    sub, mul, inv = ring.sub, ring.mul, ring.inv
    piv: dict[int, dict] = {}
    for raw in rows:
        r = _as_sparse(raw, ring)
        while r:
            hits = [c for c in r if c in piv]
            if not hits:
                break
            c = min(hits)
            f = r[c]
            for k, v in piv[c].items():
                nv = sub(r.get(k, 0), mul(f, v))
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        c = min(r)
        s = inv(r[c])
        r = {k: mul(s, v) for k, v in r.items()}
        piv[c] = r
    # back substitution: make every pivot column a unit vector
    for c in sorted(piv, reverse=True):
        pr = piv[c]
        for c2, r2 in piv.items():
            if c2 != c and c in r2:
                f = r2[c]
                for k, v in pr.items():
                    nv = ring.sub(r2.get(k, 0), mul(f, v))
                    if nv:
                        r2[k] = nv
                    else:
                        r2.pop(k, None)
    return piv


def rref(A: Matrix, ring: Ring) -> tuple[Matrix, list[int]]:
    ncols = len(A[0]) if A else 0
    piv = _echelon(A, ring)
    cols = sorted(piv)
    R = []
    for c in cols:
        row = [ring.zero] * ncols
        for k, v in piv[c].items():
            row[k] = v
        R.append(row)
    return R, cols


def _field_nullspace(rows, ncols: int, ring: Ring) -> list[list]:
    piv = _echelon(rows, ring)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ring.zero] * ncols
        v[f] = ring.one
        for c, r in piv.items():
            if f in r:
                v[c] = ring.neg(r[f])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# integers: Smith normal form and friends


def snf(M: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form ``U @ M @ V = D`` over Z.

    Returns the diagonal (length ``min(m, n)``, nonnegative, each dividing the
    next, zeros last) together with the unimodular ``U`` (m x m) and ``V`` (n x n).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[int(x) for x in row] for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t + 1, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(best[1])):
                        best = (("r", i), A[i][t])
                for j in range(t + 1, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < abs(best[1])):
                        best = (("c", j), A[t][j])
                if best is not None and abs(best[1]) < abs(p):
                    kind, k = best[0]
                    (swap_rows if kind == "r" else swap_cols)(t, k)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def invariant_factors(M: Matrix) -> list[int]:
    return [d for d in snf(M)[0] if d]


def integer_kernel(M: Matrix, ncols: int) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : M x = 0}`` (always saturated)."""
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    diag, _, V = snf(M)
    r = sum(1 for d in diag if d)
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def _integer_solve(A: Matrix, b: Sequence[int], ncols: int):
    m = len(A)
    if m == 0:
        return [0] * ncols
    diag, U, V = snf(A)
    Ub = [sum(u * x for u, x in zip(row, b)) for row in U]
    y = [0] * ncols
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
        elif Ub[i]:
            return None
    return [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]


def hnf_basis(vectors: list[list[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form: the canonical Z-basis of the lattice spanned by ``vectors``."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    out: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        if live:
            p = live[0]
            if p[c] < 0:
                p = [-a for a in p]
            for k, r in enumerate(out):
                q = r[c] // p[c]
                if q:
                    out[k] = [a - q * b for a, b in zip(r, p)]
            out.append(p)
        rows = rest
    return out


def lattice_quotient(a_gens: list[list[int]], b_gens: list[list[int]], dim: int) -> tuple[int, tuple[int, ...]]:
    """Invariants of ``span(A) / span(B)`` for lattices ``B <= A <= Z^dim``.

    Returns ``(free rank, torsion invariant factors > 1)``.
    """
    a_gens = [v for v in a_gens if any(v)]
    if not a_gens:
        return 0, ()
    M = transpose(a_gens)  # dim x k, columns are generators
    diag, U, _ = snf(M)
    r = sum(1 for d in diag if d)
    coords = []
    for v in b_gens:
        w = [sum(u * x for u, x in zip(row, v)) for row in U]
        if any(w[i] for i in range(r, dim)) or any(w[i] % diag[i] for i in range(r)):
            raise ValueError("sublattice is not contained in the lattice")
        coords.append([w[i] // diag[i] for i in range(r)])
    if not coords:
        return r, ()
    inv = invariant_factors(transpose(coords))
    return r - len(inv), tuple(d for d in inv if d > 1)


# ---------------------------------------------------------------------------
# ring-generic entry points


def nullspace(rows, ncols: int, ring: Ring) -> list[list]:
    """Basis of the right kernel ``{x : A x = 0}``.

    Over a field or Z this is a basis (a Z-basis of the saturated kernel over Z).
    Over Z/n it is a generating set of the kernel submodule.
    """
    rows = [r for r in rows if (any(r.values()) if isinstance(r, dict) else any(r))]
    if ring.is_field:
        return _field_nullspace(rows, ncols, ring)
    if ring.kind == "Z":
        basis = _field_nullspace(rows, ncols, QQ)
        if all(x.denominator == 1 for v in basis for x in v):
            return [[int(x) for x in v] for v in basis]
        return integer_kernel(_dense(rows, ncols), ncols)
    n = ring.modulus
    dense = _dense(rows, ncols)
    m = len(dense)
    lifted = [row + [n if i == j else 0 for j in range(m)] for i, row in enumerate(dense)]
    gens = integer_kernel(lifted, ncols + m) if m else integer_kernel([], ncols)
    out = []
    for v in gens:
        w = [x % n for x in v[:ncols]]
        if any(w) and w not in out:
            out.append(w)
    return out


def _dense(rows, ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        if isinstance(r, dict):
            row = [0] * ncols
            for c, v in r.items():
                row[c] = int(v)
            out.append(row)
        else:
            out.append([int(x) for x in r])
    return out


def rank(A: Matrix, ring: Ring) -> int:
    """Rank over a field; over Z the rank of the free part (= rank over Q)."""
    if not A:
        return 0
    if ring.is_field:
        return len(_echelon(A, ring))
    if ring.kind == "Z":
        return len(_echelon(A, QQ))
    raise FieldRequired(f"rank is not defined over {ring}; use module invariants")


def solve(A: Matrix, b: Sequence, ring: Ring, ncols: int | None = None):
    """One solution of ``A x = b`` or ``None``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if ring.is_field:
        aug = []
        for row, bi in zip(A, b):
            r = _as_sparse(row, ring)
            if ring.coerce(bi):
                r[ncols] = ring.coerce(bi)
            aug.append(r)
        piv = _echelon(aug, ring)
        if ncols in piv:
            return None
        x = [ring.zero] * ncols
        for c, r in piv.items():
            x[c] = r.get(ncols, ring.zero)
        return x
    dense = _dense(A, ncols)
    if ring.kind == "Z":
        return _integer_solve(dense, [int(x) for x in b], ncols)
    n = ring.modulus
    m = len(dense)
    lifted = [row + [n if i == j else 0 for j in range(m)] for i, row in enumerate(dense)]
    x = _integer_solve(lifted, [int(v) for v in b], ncols + m)
    return None if x is None else [v % n for v in x[:ncols]]


def span_coordinates(basis: list[list], v: Sequence, ring: Ring):
    """Coefficients ``c`` with ``sum c_i basis_i == v`` or ``None``."""
    if not basis:
        return [] if not any(v) else None
    return solve(transpose(basis), v, ring, ncols=len(basis))


def span_rank(vectors: list[list], ring: Ring) -> int:
    vectors = [v for v in vectors if any(v)]
    return rank(vectors, ring) if vectors else 0


def canonical_basis(vectors: list[list], ncols: int, ring: Ring) -> list[list]:
    """Canonical basis of the span: RREF over a field, Hermite normal form over Z."""
    vectors = [list(v) for v in vectors if any(v)]
    if ring.is_field:
        return rref(vectors, ring)[0] if vectors else []
    if ring.kind == "Z":
        return hnf_basis(vectors, ncols)
    raise FieldRequired(f"canonical bases are not defined over {ring}")


def module_invariants_of_quotient(a_gens, b_gens, dim: int, ring: Ring) -> tuple[int, tuple[int, ...]]:
    """``(rank, torsion)`` of ``span(A)/span(B)`` as an R-module, B inside A.

    Over a field: ``(dim, ())``. Over Z: free rank and torsion. Over Z/n: the
    Z-module invariants of the quotient; a summand ``Z/n`` counts toward rank.
    """
    if ring.is_field:
        return span_rank(a_gens, ring) - span_rank(b_gens, ring), ()
    if ring.kind == "Z":
        return lattice_quotient(a_gens, b_gens, dim)
    n = ring.modulus
    unit = [[n if i == j else 0 for j in range(dim)] for i in range(dim)]
    free, tors = lattice_quotient(list(a_gens) + unit, list(b_gens) + unit, dim)
    assert free == 0
    full = sum(1 for t in tors if t == n)
    return full, tuple(t for t in tors if t != n)


def to_fraction_free(v: Sequence[Fraction]) -> list[int]:
    from math import lcm

    d = lcm(*[x.denominator for x in v]) if v else 1
    return [int(x * d) for x in v]
