"""Normalized cochains of a finite abelian group with root-of-unity values.

Scalars are roots of unity mu_N stored additively as exponents in Z/N, so
every check in the package is exact integer arithmetic.  Cochains are dense
numpy tables indexed by element indices of their carrier (a FinAbGroup or a
Subgroup), normalized so that any argument equal to the identity forces the
value 0; the bar differential preserves this normalization.

Two coefficient modules appear: the trivial one (plain `Cochain`) and maps
out of a finite G-set with the translation action (`GSetCochain`), which is
what module-category constraint data lives in.  Shapiro transfer moves
degree-2 data between the two.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import linalg
from .abgroup import FinAbGroup, GSet, Subgroup, Homomorphism, stabiliser
from .errors import ModulusMismatch, NotASubgroup


class ScalarExp:
    """A root of unity exp(2 pi i * exponent / modulus), stored additively."""

    __slots__ = ("exponent", "modulus")

    def __init__(self, exponent: int, modulus: int):
        self.modulus = int(modulus)
        self.exponent = int(exponent) % self.modulus

    def __mul__(self, other: "ScalarExp") -> "ScalarExp":
        if self.modulus != other.modulus:
            raise ModulusMismatch("scalars with different moduli; lift explicitly")
        return ScalarExp(self.exponent + other.exponent, self.modulus)

    def inverse(self) -> "ScalarExp":
        return ScalarExp(-self.exponent, self.modulus)

    def is_one(self) -> bool:
        return self.exponent == 0

    def lift(self, modulus: int) -> "ScalarExp":
        if modulus % self.modulus:
            raise ModulusMismatch(f"{modulus} is not a multiple of {self.modulus}")
        return ScalarExp(self.exponent * (modulus // self.modulus), modulus)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarExp)
            and self.modulus == other.modulus
            and self.exponent == other.exponent
        )

    def __hash__(self):
        return hash((self.exponent, self.modulus))

    def __repr__(self):
        return f"ScalarExp({self.exponent} mod {self.modulus})"


class Cochain:
    """A normalized map carrier^degree -> Z/N, stored densely."""

    def __init__(self, carrier, degree: int, modulus: int, table, check: bool = True):
        self.carrier = carrier
        self.degree = int(degree)
        self.modulus = int(modulus)
        arr = np.array(np.asarray(table, dtype=np.int64) % self.modulus, dtype=np.int64)
        if arr.shape != (carrier.order,) * self.degree:
            raise ValueError(
                f"table shape {arr.shape} does not match degree {self.degree} over "
                f"a carrier of order {carrier.order}"
            )
        arr.flags.writeable = False
        self.table = arr
        if check and not _is_normalized(arr, self.degree):
            raise ValueError("cochain is not normalized (identity arguments must map to 0)")

    def __call__(self, *args) -> int:
        idx = tuple(self.carrier.index_of(a) for a in args)
        return int(self.table[idx])

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.carrier == other.carrier
            and self.degree == other.degree
            and self.modulus == other.modulus
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.degree, self.modulus, self.table.tobytes()))

    def __repr__(self):
        nz = int(np.count_nonzero(self.table))
        return f"Cochain(degree={self.degree}, modulus={self.modulus}, nonzero={nz})"

    def is_zero(self) -> bool:
        return not self.table.any()

    def add(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        return Cochain(self.carrier, self.degree, self.modulus, self.table + other.table)

    def sub(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        return Cochain(self.carrier, self.degree, self.modulus, self.table - other.table)

    def neg(self) -> "Cochain":
        return Cochain(self.carrier, self.degree, self.modulus, -self.table)

    def lift(self, modulus: int) -> "Cochain":
        """Re-express in mu_M for a multiple M of the current modulus."""
        if modulus % self.modulus:
            raise ModulusMismatch(f"{modulus} is not a multiple of {self.modulus}")
        return Cochain(self.carrier, self.degree, modulus, self.table * (modulus // self.modulus))

    def _compat(self, other: "Cochain"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"moduli differ ({self.modulus} vs {other.modulus}); lift explicitly"
            )
        if self.carrier != other.carrier or self.degree != other.degree:
            raise ValueError("cochains live over different carriers or degrees")


def _is_normalized(table: np.ndarray, degree: int) -> bool:
    for axis in range(degree):
        if np.take(table, 0, axis=axis).any():
            return False
    return True


def zero_cochain(carrier, degree: int, modulus: int) -> Cochain:
    return Cochain(carrier, degree, modulus, np.zeros((carrier.order,) * degree, dtype=np.int64))


def cochain_from_function(carrier, degree: int, modulus: int, fn) -> Cochain:
    """Tabulate fn(element tuples...) -> exponent; identity slices are forced to 0."""
    n = carrier.order
    table = np.zeros((n,) * degree, dtype=np.int64)
    elements = carrier.elements
    for idx in np.ndindex(*table.shape):
        if 0 in idx:
            continue
        table[idx] = fn(*(elements[i] for i in idx)) % modulus
    return Cochain(carrier, degree, modulus, table)


def random_cochain(carrier, degree: int, modulus: int, rng) -> Cochain:
    table = rng.integers(0, modulus, size=(carrier.order,) * degree)
    for axis in range(degree):
        sl = [slice(None)] * degree
        sl[axis] = 0
        table[tuple(sl)] = 0
    return Cochain(carrier, degree, modulus, table)


def standard_cyclic_cocycle(G: FinAbGroup, s: int, modulus: int | None = None, factor: int = 0) -> Cochain:
    """The degree-3 cocycle s * a_i * floor((b_i + c_i) / n_i) on factor i of G.

    With modulus n_i these span the classes of degree-3 cocycles on a cyclic
    group; on products they are pulled back along the coordinate projection.
    """
    n = G.factors[factor]
    N = modulus if modulus is not None else n

    def fn(a, b, c):
        return s * a[factor] * ((b[factor] + c[factor]) // n)

    return cochain_from_function(G, 3, N, fn)


# ---------------------------------------------------------------------------
# bar differential, trivial coefficients
# ---------------------------------------------------------------------------


def coboundary(c: Cochain) -> Cochain:
    """The bar differential: alternating sum over faces, trivial coefficients."""
    carrier, deg, N = c.carrier, c.degree, c.modulus
    n = carrier.order
    add = carrier.add_table
    shape = (n,) * (deg + 1)
    gs = np.meshgrid(*([np.arange(n)] * (deg + 1)), indexing="ij", sparse=True)
    out = np.zeros(shape, dtype=np.int64)
    if deg == 0:
        out += int(c.table)
    else:
        out += c.table[tuple(gs[1:])]
    sign = -1
    for i in range(1, deg + 1):
        merged = add[gs[i - 1], gs[i]]
        idx = tuple(gs[j] for j in range(i - 1)) + (merged,) + tuple(
            gs[j] for j in range(i + 1, deg + 1)
        )
        out = out + sign * c.table[idx]
        sign = -sign
    if deg == 0:
        out += sign * int(c.table)
    else:
        out = out + sign * c.table[tuple(gs[:deg])]
    return Cochain(carrier, deg + 1, N, out)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


@lru_cache(maxsize=256)
def _coboundary_system(carrier, out_degree: int):
    """Linear system rows for d(psi) = target in degree `out_degree`.

    Returns (matrix, var_index, row_tuples): matrix has one row per
    output tuple with no identity argument, one column per normalized input
    entry; coefficients are the face signs and do not depend on the modulus.
    """
    n = carrier.order
    deg_in = out_degree - 1
    add = carrier.add_table
    var_index = -np.ones((n,) * deg_in, dtype=np.int64)
    free = np.array(list(np.ndindex(*(n - 1,) * deg_in)), dtype=np.int64).reshape(
        -1, deg_in
    ) + 1
    for col, idx in enumerate(free):
        var_index[tuple(idx)] = col
    nv = len(free)
    rows = np.array(list(np.ndindex(*(n - 1,) * out_degree)), dtype=np.int64) + 1
    R = len(rows)
    M = np.zeros((R, nv), dtype=np.int64)
    row_ids = np.arange(R)

    def scatter(col_tuple_arrays, sign):
        cols = var_index[tuple(col_tuple_arrays)]
        ok = cols >= 0
        np.add.at(M, (row_ids[ok], cols[ok]), sign)

    args = [rows[:, j] for j in range(out_degree)]
    if deg_in > 0:
        scatter(args[1:], +1)
        sign = -1
        for i in range(1, out_degree):
            merged = add[args[i - 1], args[i]]
            cols = args[: i - 1] + [merged] + args[i + 1 :]
            scatter(cols, sign)
            sign = -sign
        scatter(args[:deg_in], sign)
    M.flags.writeable = False
    rows.flags.writeable = False
    return M, var_index, rows


def solve_coboundary(target: Cochain, lex_min: bool = False) -> Cochain | None:
    """A primitive psi with d(psi) = target, or None if no primitive exists.

    Solved by elementary-divisor reduction over Z/N; with ``lex_min`` the
    returned entry vector is the lexicographically least solution (entries
    ordered by argument tuple).
    """
    if target.degree < 1:
        raise ValueError("targets of degree >= 1 only")
    carrier, N = target.carrier, target.modulus
    deg_in = target.degree - 1
    if deg_in == 0:
        # d of a degree-0 cochain is zero with trivial coefficients
        return zero_cochain(carrier, 0, N) if target.is_zero() else None
    M, var_index, rows = _coboundary_system(carrier, target.degree)
    rhs = target.table[tuple(rows[:, j] for j in range(target.degree))]
    solver = linalg.lex_min_solution if lex_min else linalg.solve_mod
    x = solver(M, rhs, N)
    if x is None:
        return None
    table = np.zeros((carrier.order,) * deg_in, dtype=np.int64)
    table[var_index >= 0] = x[var_index[var_index >= 0]]
    psi = Cochain(carrier, deg_in, N, table)
    if coboundary(psi) != target:
        raise AssertionError("solver returned a non-primitive")
    return psi


# ---------------------------------------------------------------------------
# restriction, pullback
# ---------------------------------------------------------------------------


def restrict(c: Cochain, H: Subgroup) -> Cochain:
    """Restrict the table to arguments from H; commutes with the differential."""
    carrier = c.carrier
    try:
        idx = np.array([carrier.index_of(t) for t in H.elements], dtype=np.int64)
    except (KeyError, NotASubgroup) as exc:
        raise NotASubgroup("H is not contained in the cochain's carrier") from exc
    table = c.table[np.ix_(*([idx] * c.degree))] if c.degree else c.table
    return Cochain(H, c.degree, c.modulus, table)


def pullback(c: Cochain, hom: Homomorphism) -> Cochain:
    """(hom* c)(g1, ..., gn) = c(hom g1, ..., hom gn)."""
    if not isinstance(c.carrier, FinAbGroup) or c.carrier != hom.target:
        raise ValueError("cochain must live over the homomorphism's target group")
    im = hom.index_map
    table = c.table[np.ix_(*([im] * c.degree))] if c.degree else c.table
    return Cochain(hom.source, c.degree, c.modulus, table)


# ---------------------------------------------------------------------------
# G-set coefficients
# ---------------------------------------------------------------------------


class GSetCochain:
    """A normalized map G^degree -> Map(X, Z/N) with the translation action."""

    def __init__(self, gset: GSet, degree: int, modulus: int, table, check: bool = True):
        self.gset = gset
        self.group = gset.group
        self.degree = int(degree)
        self.modulus = int(modulus)
        arr = np.asarray(table, dtype=np.int64) % self.modulus
        expected = (self.group.order,) * self.degree + (gset.size,)
        if arr.shape != expected:
            raise ValueError(f"table shape {arr.shape}, expected {expected}")
        arr = arr.copy()
        arr.flags.writeable = False
        self.table = arr
        if check and not _is_normalized(arr, self.degree):
            raise ValueError("G-set cochain is not normalized")

    def __eq__(self, other):
        return (
            isinstance(other, GSetCochain)
            and self.gset is other.gset
            and self.degree == other.degree
            and self.modulus == other.modulus
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self):
        return (
            f"GSetCochain(degree={self.degree}, modulus={self.modulus}, "
            f"points={self.gset.size})"
        )

    def is_zero(self) -> bool:
        return not self.table.any()


def zero_gset_cochain(X: GSet, degree: int, modulus: int) -> GSetCochain:
    shape = (X.group.order,) * degree + (X.size,)
    return GSetCochain(X, degree, modulus, np.zeros(shape, dtype=np.int64))


def constant_gset_cochain(c: Cochain, X: GSet) -> GSetCochain:
    """View an ordinary cochain as a G-set cochain constant in the point."""
    if c.carrier != X.group:
        raise ValueError("cochain carrier must be the acting group")
    table = np.repeat(c.table[..., None], X.size, axis=-1)
    return GSetCochain(X, c.degree, c.modulus, table)


def gset_coboundary(xi: GSetCochain) -> GSetCochain:
    """Bar differential with permutation-module coefficients.

    The leading face twists the point by the inverse of the first argument:
    (d xi)(g1, ..., g_{n+1})(x) = xi(g2, ..., g_{n+1})(g1^{-1} x) - ... .
    """
    X, deg, N = xi.gset, xi.degree, xi.modulus
    G = X.group
    n, P = G.order, X.size
    add, neg, act = G.add_table, G.neg_table, X.action_table
    shape = (n,) * (deg + 1) + (P,)
    gs = np.meshgrid(
        *([np.arange(n)] * (deg + 1) + [np.arange(P)]), indexing="ij", sparse=True
    )
    xp = gs[-1]
    moved = act[neg[gs[0]], xp]
    out = np.zeros(shape, dtype=np.int64)
    out = out + xi.table[tuple(gs[1 : deg + 1]) + (moved,)]
    sign = -1
    for i in range(1, deg + 1):
        merged = add[gs[i - 1], gs[i]]
        idx = (
            tuple(gs[j] for j in range(i - 1))
            + (merged,)
            + tuple(gs[j] for j in range(i + 1, deg + 1))
            + (xp,)
        )
        out = out + sign * xi.table[idx]
        sign = -sign
    out = out + sign * xi.table[tuple(gs[:deg]) + (xp,)]
    return GSetCochain(X, deg + 1, N, out)


def shapiro_restrict(xi: GSetCochain, point: int | None = None) -> Cochain:
    """Evaluate a degree-2 G-set cochain on its stabiliser at one point.

    For a transitive X = G/H this is the Shapiro transfer: if d(xi) is the
    constant cochain alpha then the result satisfies d = alpha restricted to
    the stabiliser.
    """
    if xi.degree != 2:
        raise ValueError("Shapiro transfer is implemented for degree 2")
    X = xi.gset
    if not X.is_transitive():
        raise ValueError("G-set must be transitive (a coset space)")
    p = 0 if point is None else int(point)
    H = stabiliser(X, p)
    G = X.group
    idx = np.array([G.index_of(t) for t in H.elements], dtype=np.int64)
    table = xi.table[np.ix_(idx, idx)][:, :, p]
    return Cochain(H, 2, xi.modulus, table)


def solve_gset_coboundary(alpha: Cochain, X: GSet) -> GSetCochain | None:
    """A degree-2 xi with d(xi) equal to alpha in Map(X, Z/N), or None.

    Works orbit by orbit.  On an orbit with base point x0 every value
    xi(b, c)(y) is an affine function of the base values F(a, b) =
    xi(a, b)(x0) (an instance of the cocycle equation), so the system is
    solved in the (|G|-1)^2 base unknowns with constraints added lazily and
    the candidate verified against the full equation grid each round.
    """
    G = alpha.carrier
    if not isinstance(G, FinAbGroup) or G != X.group:
        raise ValueError("alpha must live over the acting group")
    if alpha.degree != 3:
        raise ValueError("alpha must have degree 3")
    n, P, N = G.order, X.size, alpha.modulus
    add, neg, act = G.add_table, G.neg_table, X.action_table
    at = alpha.table

    var_index = -np.ones((n, n), dtype=np.int64)
    cols = 0
    for a in range(1, n):
        for b in range(1, n):
            var_index[a, b] = cols
            cols += 1

    full_table = np.zeros((n, n, P), dtype=np.int64)
    for orbit in X.orbits:
        x0 = orbit[0]
        rep = np.full(P, -1, dtype=np.int64)
        for g in range(n):
            y = int(act[g, x0])
            if rep[y] < 0:
                rep[y] = g
        orb = np.array(orbit, dtype=np.int64)

        def e_terms(b, c, y):
            """E(b, c, y) as (constant, [(cols, sign), ...]) index arrays."""
            rn = neg[rep[y]]
            const = at[rn, b, c]
            parts = [
                (var_index[add[rn, b], c], +1),
                (var_index[rn, add[b, c]], -1),
                (var_index[rn, b], +1),
            ]
            return const, parts

        def build_rows(A_, B_, C_, X_):
            R = len(A_)
            M = np.zeros((R, cols), dtype=np.int64)
            rhs = at[A_, B_, C_].astype(np.int64).copy()
            rid = np.arange(R)
            instances = [
                ((B_, C_, act[neg[A_], X_]), +1),
                ((add[A_, B_], C_, X_), -1),
                ((A_, add[B_, C_], X_), +1),
                ((A_, B_, X_), -1),
            ]
            for (b, c, y), outer in instances:
                const, parts = e_terms(b, c, y)
                rhs = (rhs - outer * const) % N
                for col_arr, sign in parts:
                    ok = col_arr >= 0
                    np.add.at(M, (rid[ok], col_arr[ok]), outer * sign)
            return M, rhs

        def reconstruct(F):
            vals = np.zeros((n, n), dtype=np.int64)
            vals[var_index >= 0] = F[var_index[var_index >= 0]]
            bb, cc, yy = np.meshgrid(
                np.arange(n), np.arange(n), orb, indexing="ij", sparse=True
            )
            rn = neg[rep[yy]]
            out = (
                at[rn, bb, cc]
                + vals[add[rn, bb], cc]
                - vals[rn, add[bb, cc]]
                + vals[rn, bb]
            ) % N
            return out

        # round 0: the base-point equations; refine with violated rows
        nonid = np.arange(1, n)
        A0, B0, C0 = [w.ravel() for w in np.meshgrid(nonid, nonid, nonid, indexing="ij")]
        X0 = np.full(A0.shape, x0, dtype=np.int64)
        M, rhs = build_rows(A0, B0, C0, X0)
        sol = None
        for _ in range(16):
            joined = np.unique(np.hstack([M, rhs[:, None]]), axis=0)
            F = linalg.solve_mod(joined[:, :-1], joined[:, -1], N)
            if F is None:
                return None
            orbit_vals = reconstruct(F)
            # verify d(xi) == alpha on this orbit
            pos = {int(y): i for i, y in enumerate(orb)}
            sub_act = np.array([[pos[int(act[g, y])] for y in orb] for g in range(n)])
            sub = _orbit_coboundary(orbit_vals, add, neg, sub_act, N)
            want = np.repeat(at[..., None], len(orb), axis=-1)
            bad = np.argwhere((sub - want) % N != 0)
            if len(bad) == 0:
                sol = orbit_vals
                break
            extra = bad[:2000]
            Ae, Be, Ce = extra[:, 0], extra[:, 1], extra[:, 2]
            Xe = orb[extra[:, 3]]
            Me, rhse = build_rows(Ae, Be, Ce, Xe)
            M = np.vstack([M, Me])
            rhs = np.concatenate([rhs, rhse])
        else:
            raise AssertionError("lazy constraint solving did not converge")
        full_table[:, :, orb] = sol
    return GSetCochain(X, 2, N, full_table)


def _orbit_coboundary(vals, add, neg, act, N):
    """d of a degree-2 table over one orbit (local point indices)."""
    n = vals.shape[0]
    P = vals.shape[2]
    gs = np.meshgrid(
        np.arange(n), np.arange(n), np.arange(n), np.arange(P), indexing="ij", sparse=True
    )
    a, b, c, x = gs
    moved = act[neg[a], x]
    out = (
        vals[b, c, moved]
        - vals[add[a, b], c, x]
        + vals[a, add[b, c], x]
        - vals[a, b, x]
    ) % N
    return out
