"""Exact linear algebra over Z and over Z/N.

Z/N is not a field, so plain Gaussian elimination is unsound: pivots need
not be invertible and solution sets are cosets of submodules rather than
affine subspaces.  Everything here therefore works through integer gcd
manipulation:

* Howell forms for row modules of (Z/N)^m.  A Howell basis is an echelon
  basis closed under the "annihilator" rows ``(N/d) * row``; this closure is
  exactly what makes membership tests, back-substitution and greedy
  lexicographic minimisation sound mod N.
* Hermite and Smith normal forms over Z for lattice quotients (invariant
  factors of finitely presented abelian groups).

All mod-N matrices are numpy int64 with entries kept in ``[0, N)``; integer
normal forms use Python ints so nothing can overflow.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def modinv(a: int, n: int) -> int:
    g, s, _ = xgcd(a % n if n > 1 else 0, n)
    if n == 1:
        return 0
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    return s % n


def unit_multiplier(a: int, N: int) -> tuple[int, int]:
    """Return (g, u) with g = gcd(a, N) and u a unit mod N with u*a = g mod N."""
    a %= N if N > 0 else 1
    if N == 1:
        return 1, 0
    g = gcd(a, N)
    if g == N:  # a == 0 mod N
        return N, 1
    step = N // g
    u = modinv((a // g) % step, step)
    # lift to a unit mod N; some shift by N/g must work (CRT on prime powers)
    for _ in range(g + 1):
        if gcd(u, N) == 1:
            break
        u += step
    else:
        raise AssertionError("no unit lift found")
    return g, u % N


# ---------------------------------------------------------------------------
# Howell form over Z/N
# ---------------------------------------------------------------------------


def howell_form(mat, N: int) -> np.ndarray:
    """Canonical Howell basis of the row module of `mat` in (Z/N)^m.

    Rows are echelon with pivot entries dividing N, zero columns left of each
    pivot, entries above a pivot reduced mod the pivot, and the basis closed
    under annihilator rows.  Two generating sets of the same module produce
    identical output.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    m = mat.shape[1]
    if N == 1 or m == 0:
        return np.zeros((0, m), dtype=np.int64)
    mat = mat % N
    pivots: dict[int, np.ndarray] = {}
    queue = [row.copy() for row in mat if row.any()]
    while queue:
        r = queue.pop()
        while True:
            nz = np.flatnonzero(r)
            if nz.size == 0:
                break
            c = int(nz[0])
            if c not in pivots:
                g, u = unit_multiplier(int(r[c]), N)
                r = (r * u) % N
                pivots[c] = r
                ann = (r * (N // g)) % N
                if ann.any():
                    queue.append(ann)
                break
            p = pivots[c]
            pc, rc = int(p[c]), int(r[c])
            if rc % pc == 0:
                r = (r - (rc // pc) * p) % N
                continue
            g, s, t = xgcd(pc, rc)
            new_p = (s * p + t * r) % N
            # pc | N and g | pc, so the new pivot g still divides N
            r = (r - (rc // g) * new_p) % N
            old = (p - (pc // g) * new_p) % N
            pivots[c] = new_p
            if old.any():
                queue.append(old)
            ann = (new_p * (N // g)) % N
            if ann.any():
                queue.append(ann)
    cols = sorted(pivots)
    rows = [pivots[c] for c in cols]
    # reduce entries above each pivot
    for i, c in enumerate(cols):
        p = int(rows[i][c])
        for j in range(i):
            q = int(rows[j][c])
            if q:
                rows[j] = (rows[j] - (q // p) * rows[i]) % N
    if not rows:
        return np.zeros((0, m), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def howell_residue(basis: np.ndarray, vec, N: int) -> np.ndarray:
    """Reduce `vec` modulo the row module given by a Howell `basis`."""
    v = np.asarray(vec, dtype=np.int64) % N
    if N == 1:
        return v * 0
    for row in basis:
        c = int(np.flatnonzero(row)[0])
        if v[c]:
            v = (v - (int(v[c]) // int(row[c])) * row) % N
    return v


def in_row_module(basis: np.ndarray, vec, N: int) -> bool:
    return not howell_residue(basis, vec, N).any()


def solve_mod(A, b, N: int) -> np.ndarray | None:
    """One solution x of A x = b (mod N), or None if there is none."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    b = np.asarray(b, dtype=np.int64)
    r, m = A.shape
    if N == 1:
        return np.zeros(m, dtype=np.int64)
    if r == 0:
        return np.zeros(m, dtype=np.int64)
    aug = np.hstack([A % N, (b % N).reshape(-1, 1)])
    H = howell_form(aug, N)
    x = np.zeros(m, dtype=np.int64)
    for row in H[::-1]:
        c = int(np.flatnonzero(row)[0])
        if c == m:
            return None  # 0 = nonzero: inconsistent
        rhs = int((row[m] - row[:m] @ x) % N)
        p = int(row[c])
        g = gcd(p, N)
        if rhs % g:
            return None
        step = N // g
        x[c] = (rhs // g) * modinv((p // g) % step, step) % step
    if ((A @ x - b) % N).any():  # Howell guarantees this cannot happen
        raise AssertionError("back-substitution produced a non-solution")
    return x


def kernel_mod(A, N: int) -> np.ndarray:
    """Howell basis (rows) of {x : A x = 0 mod N} in (Z/N)^m."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    r, m = A.shape
    if N == 1:
        return np.zeros((0, m), dtype=np.int64)
    # rows (column_i(A) | e_i); combinations are (A c | c), so rows of the
    # Howell form with zero head record exactly the kernel vectors c
    W = np.hstack([A.T % N, np.eye(m, dtype=np.int64)])
    H = howell_form(W, N)
    tails = [row[r:] for row in H if not row[:r].any()]
    if not tails:
        return np.zeros((0, m), dtype=np.int64)
    return howell_form(np.array(tails, dtype=np.int64), N)


def lex_min_solution(A, b, N: int) -> np.ndarray | None:
    """The lexicographically least solution of A x = b (mod N), or None.

    Works because a Howell kernel basis is closed under annihilator rows:
    minimising greedily at each pivot coordinate never cuts off adjustments
    that remain available through later basis rows.
    """
    x = solve_mod(A, b, N)
    if x is None:
        return None
    for row in kernel_mod(A, N):
        c = int(np.flatnonzero(row)[0])
        d = int(row[c])
        t = int(x[c]) // d
        if t:
            x = (x - t * row) % N
    return x % N


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------


def hermite_form(rows) -> list[list[int]]:
    """Row-style Hermite normal form of the integer lattice spanned by `rows`.

    Echelon with positive pivots and entries above each pivot reduced into
    [0, pivot).  Canonical for the lattice.
    """
    work = [[int(v) for v in row] for row in rows]
    work = [row for row in work if any(row)]
    if not work:
        return []
    m = len(work[0])
    done: list[list[int]] = []
    for col in range(m):
        live = [row for row in work if row[col] != 0]
        rest = [row for row in work if row[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[col]))
            base = live[0]
            nxt = [base]
            for row in live[1:]:
                q = row[col] // base[col]
                reduced = [a - q * b for a, b in zip(row, base)]
                if reduced[col] != 0:
                    nxt.append(reduced)
                elif any(reduced):
                    rest.append(reduced)
            live = nxt
        if live:
            pivot_row = live[0]
            if pivot_row[col] < 0:
                pivot_row = [-v for v in pivot_row]
            p = pivot_row[col]
            for i, row in enumerate(done):
                q = row[col] // p
                if q:
                    done[i] = [a - q * b for a, b in zip(row, pivot_row)]
            done.append(pivot_row)
        work = rest
    return done


def smith_form(mat) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (S, U, V) with S = U A V.

    S is diagonal with nonnegative entries d_1 | d_2 | ..., and U, V are
    unimodular.  Pure Python ints; intended for small matrices.
    """
    A = [[int(v) for v in row] for row in mat]
    r = len(A)
    m = len(A[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, q):  # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def clear_position(t: int) -> bool:
        """Pivot at (t, t) and clear its row and column; False if block is zero."""
        best = None
        for i in range(t, r):
            for j in range(t, m):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        return True

    rank = 0
    for t in range(min(r, m)):
        if not clear_position(t):
            break
        rank = t + 1
    # enforce the divisibility chain d_i | d_{i+1}; folding col_{i+1} into
    # col_i and re-clearing replaces (d_i, d_{i+1}) by (gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a and b % a != 0:
                col_op(i, i + 1, -1)
                clear_position(i)
                clear_position(i + 1)
                changed = True
    return A, U, V


def integer_solve_left(B: list[list[int]], x) -> list[int] | None:
    """Solve y B = x over the integers for square invertible B, else None."""
    from fractions import Fraction

    k = len(B)
    if k == 0:
        return [] if all(int(v) == 0 for v in x) else None
    M = [[Fraction(B[i][j]) for j in range(len(B[0]))] for i in range(k)]
    rhs = [Fraction(int(v)) for v in x]
    # solve B^T y^T = x^T by Gaussian elimination over Q
    cols = len(B[0])
    aug = [[M[i][j] for i in range(k)] + [rhs[j]] for j in range(cols)]
    pivot_rows = []
    row = 0
    for col in range(k):
        sel = next((i for i in range(row, len(aug)) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[row])]
        pivot_rows.append((row, col))
        row += 1
    for i in range(len(aug)):
        if all(aug[i][c] == 0 for c in range(k)) and aug[i][k] != 0:
            return None
    y = [Fraction(0)] * k
    for rrow, col in pivot_rows:
        y[col] = aug[rrow][k]
    if any(v.denominator != 1 for v in y):
        return None
    return [int(v) for v in y]
