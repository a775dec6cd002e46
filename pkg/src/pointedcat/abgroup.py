"""Finite abelian groups as explicit cyclic factor lists.

Everything downstream (cochains, braidings, algebra data) is evaluated
pointwise over desk-scale groups, so a group materialises its element list
and addition/negation tables once, as numpy arrays, and all higher layers
work with element *indices*.  Elements are residue tuples; the element list
is in lexicographic order, which puts the identity at index 0 and makes
index comparison agree with lexicographic comparison of tuples.

Subgroups are canonicalised through the Hermite normal form of their
generator lattice (together with the factor relations), so two subgroups
are equal exactly when they contain the same elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _iterproduct
from math import gcd, lcm, prod

import numpy as np

from . import linalg
from .config import enumeration_bound
from .errors import (
    BoundExceeded,
    DimensionMismatch,
    InvalidHomomorphism,
    NotASubgroup,
)


def _as_tuple(el) -> tuple[int, ...]:
    if isinstance(el, GroupElement):
        return el.residues
    return tuple(int(v) for v in el)


class FinAbGroup:
    """The group Z/n1 x ... x Z/nk given by its factor list.

    Factors need not divide each other; any list of integers >= 2 is a valid
    presentation, and the empty list is the trivial group.

    >>> G = FinAbGroup([2, 4])
    >>> G.order, G.exponent
    (8, 4)
    >>> G.add((1, 3), (1, 2))
    (0, 1)
    >>> G.neg((1, 3))
    (1, 1)
    """

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        if any(n < 2 for n in factors):
            raise ValueError(f"factors must all be >= 2, got {factors}")
        self.factors = factors
        self.rank = len(factors)
        self.order = prod(factors) if factors else 1
        self.exponent = lcm(*factors) if factors else 1
        self.identity = (0,) * self.rank

    def __repr__(self):
        return f"FinAbGroup({list(self.factors)})"

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(("FinAbGroup", self.factors))

    # -- element arithmetic on raw residue tuples --------------------------

    def reduce(self, el) -> tuple[int, ...]:
        el = _as_tuple(el)
        if len(el) != self.rank:
            raise DimensionMismatch(f"element {el} has wrong rank for {self}")
        return tuple(v % n for v, n in zip(el, self.factors))

    def add(self, a, b) -> tuple[int, ...]:
        a, b = _as_tuple(a), _as_tuple(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a) -> tuple[int, ...]:
        a = _as_tuple(a)
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a) -> tuple[int, ...]:
        a = _as_tuple(a)
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def element_order(self, a) -> int:
        a = self.reduce(a)
        return lcm(*(n // gcd(n, x) for x, n in zip(a, self.factors))) if self.rank else 1

    def element(self, residues) -> "GroupElement":
        return GroupElement(self, self.reduce(residues))

    def generator(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(self.rank))

    # -- dense structure tables --------------------------------------------

    @cached_property
    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(t) for t in _iterproduct(*(range(n) for n in self.factors))]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.elements)}

    def index_of(self, el) -> int:
        return self._index[self.reduce(el)]

    @property
    def identity_index(self) -> int:
        return 0

    @cached_property
    def add_table(self) -> np.ndarray:
        n = self.order
        strides = np.array(self._strides, dtype=np.int64)
        elts = np.array(self.elements, dtype=np.int64).reshape(n, 1, self.rank)
        sums = (elts + elts.reshape(1, n, self.rank)) % np.array(self.factors, dtype=np.int64)
        table = (sums * strides).sum(axis=2).astype(np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = np.array([self.index_of(self.neg(t)) for t in self.elements], dtype=np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        # index of (r1, ..., rk) in the lexicographic element list
        strides = []
        acc = 1
        for n in reversed(self.factors):
            strides.append(acc)
            acc *= n
        return tuple(reversed(strides))

    # cochains treat any carrier uniformly; a group carries itself
    @property
    def parent(self) -> "FinAbGroup":
        return self

    def describe(self) -> str:
        if not self.factors:
            return "1"
        return " x ".join(f"Z/{n}" for n in self.factors)


@dataclass(frozen=True)
class GroupElement:
    """An element of a FinAbGroup in canonical (reduced) form."""

    group: FinAbGroup
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != self.group.rank:
            raise DimensionMismatch(
                f"residue vector {self.residues} does not match rank {self.group.rank}"
            )

    def __add__(self, other):
        return GroupElement(self.group, self.group.add(self.residues, _as_tuple(other)))

    def __neg__(self):
        return GroupElement(self.group, self.group.neg(self.residues))

    def __sub__(self, other):
        return GroupElement(self.group, self.group.sub(self.residues, _as_tuple(other)))

    def order(self) -> int:
        return self.group.element_order(self.residues)

    def __iter__(self):
        return iter(self.residues)


class Subgroup:
    """A subgroup of a FinAbGroup, canonicalised by its generator lattice.

    The canonical basis is the Hermite normal form of the lattice spanned by
    the generators together with the factor relations; two subgroups of the
    same parent are equal iff they contain the same elements, which the HNF
    detects without enumerating when groups are large.
    """

    def __init__(self, parent: FinAbGroup, generators):
        self.parent = parent
        gens = [parent.reduce(g) for g in generators]
        self.generators = tuple(gens)
        rows = [list(g) for g in gens]
        for i, n in enumerate(parent.factors):
            rows.append([n if j == i else 0 for j in range(parent.rank)])
        hnf = linalg.hermite_form(rows)
        basis = [parent.reduce(row) for row in hnf]
        self.canonical_basis = tuple(b for b in basis if any(b))

    @cached_property
    def element_set(self) -> frozenset[tuple[int, ...]]:
        seen = {self.parent.identity}
        frontier = [self.parent.identity]
        while frontier:
            v = frontier.pop()
            for g in self.canonical_basis:
                w = self.parent.add(v, g)
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return frozenset(seen)

    @cached_property
    def elements(self) -> list[tuple[int, ...]]:
        return sorted(self.element_set)

    @cached_property
    def order(self) -> int:
        return len(self.element_set)

    def __contains__(self, el) -> bool:
        return self.parent.reduce(el) in self.element_set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.canonical_basis == other.canonical_basis
        )

    def __hash__(self):
        return hash(("Subgroup", self.parent.factors, self.canonical_basis))

    def __repr__(self):
        return f"Subgroup({self.parent!r}, {list(self.canonical_basis)})"

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(g in other for g in self.canonical_basis)

    # -- carrier interface (used by cochains over a subgroup) --------------

    @property
    def factors(self):  # exponent data of the ambient coordinates
        return self.parent.factors

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.elements)}

    def index_of(self, el) -> int:
        t = self.parent.reduce(el)
        if t not in self._index:
            raise NotASubgroup(f"{t} is not in {self!r}")
        return self._index[t]

    @property
    def identity_index(self) -> int:
        return 0  # identity is lexicographically least

    @cached_property
    def add_table(self) -> np.ndarray:
        idx = [self.index_of(self.parent.add(a, b)) for a in self.elements for b in self.elements]
        table = np.array(idx, dtype=np.int64).reshape(self.order, self.order)
        table.flags.writeable = False
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = np.array(
            [self.index_of(self.parent.neg(t)) for t in self.elements], dtype=np.int64
        )
        table.flags.writeable = False
        return table

    def reduce(self, el) -> tuple[int, ...]:
        return self.parent.reduce(el)

    def describe(self) -> str:
        return f"<{', '.join(str(list(b)) for b in self.canonical_basis) or 'e'}> in {self.parent.describe()}"


def subgroup_from_generators(G: FinAbGroup, gens) -> Subgroup:
    """The subgroup of G generated by `gens` (all finite sums)."""
    return Subgroup(G, gens)


def trivial_subgroup(G: FinAbGroup) -> Subgroup:
    return Subgroup(G, [])


def full_subgroup(G: FinAbGroup) -> Subgroup:
    return Subgroup(G, [G.generator(i) for i in range(G.rank)])


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism between explicit groups, given by generator images."""

    source: FinAbGroup
    target: FinAbGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise InvalidHomomorphism("one image per source factor is required")
        images = tuple(self.target.reduce(im) for im in self.images)
        object.__setattr__(self, "images", images)
        for n, im in zip(self.source.factors, images):
            if any(v % m for v, m in zip(self.target.scale(n, im), self.target.factors)):
                raise InvalidHomomorphism(
                    f"image {im} of an order-{n} generator does not have order dividing {n}"
                )

    def apply(self, el) -> tuple[int, ...]:
        el = self.source.reduce(el)
        out = self.target.identity
        for v, im in zip(el, self.images):
            out = self.target.add(out, self.target.scale(v, im))
        return out

    @cached_property
    def index_map(self) -> np.ndarray:
        table = np.array(
            [self.target.index_of(self.apply(t)) for t in self.source.elements],
            dtype=np.int64,
        )
        table.flags.writeable = False
        return table

    @cached_property
    def image_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.apply(t) for t in self.source.elements)

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(self.image_set) == self.target.order

    def kernel(self) -> Subgroup:
        gens = [t for t in self.source.elements if self.apply(t) == self.target.identity]
        return Subgroup(self.source, gens)

    @staticmethod
    def identity_on(G: FinAbGroup) -> "Homomorphism":
        return Homomorphism(G, G, tuple(G.generator(i) for i in range(G.rank)))

    @staticmethod
    def zero(G: FinAbGroup, Q: FinAbGroup) -> "Homomorphism":
        return Homomorphism(G, Q, tuple(Q.identity for _ in range(G.rank)))

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self o inner."""
        if inner.target != self.source:
            raise InvalidHomomorphism("composition mismatch")
        return Homomorphism(
            inner.source, self.target, tuple(self.apply(im) for im in inner.images)
        )


def quotient(G: FinAbGroup, H: Subgroup) -> tuple[FinAbGroup, Homomorphism]:
    """The quotient G/H with its projection homomorphism.

    Invariant factors come from the Smith form of the relation lattice
    spanned by the factor relations and the subgroup generators.
    """
    if H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")
    rows = [[n if j == i else 0 for j in range(G.rank)] for i, n in enumerate(G.factors)]
    rows.extend(list(g) for g in H.canonical_basis)
    if not rows:  # trivial group / trivial subgroup
        return FinAbGroup([]), Homomorphism(G, FinAbGroup([]), ())
    S, _, V = linalg.smith_form(rows)
    diag = [S[i][i] for i in range(min(len(S), G.rank))]
    keep = [i for i, d in enumerate(diag) if d > 1]
    Q = FinAbGroup([diag[i] for i in keep])
    V = np.array(V, dtype=object)
    images = []
    for i in range(G.rank):
        y = V[i, :]  # row i of V is e_i . V
        images.append(tuple(int(y[j]) % diag[j] for j in keep))
    proj = Homomorphism(G, Q, tuple(images))
    return Q, proj


def quotient_of_subgroups(
    A: Subgroup, B: Subgroup
) -> tuple[FinAbGroup, dict[tuple[int, ...], tuple[int, ...]]]:
    """The quotient A/B for nested subgroups, with the full projection map.

    Returns the quotient as an explicit group together with a dict sending
    every element of A (ambient coordinates) to its class in the quotient.
    """
    G = A.parent
    if B.parent != G or not B.is_subgroup_of(A):
        raise NotASubgroup("B must be a subgroup of A")
    rows_a = [list(g) for g in A.canonical_basis]
    rows_a.extend([n if j == i else 0 for j in range(G.rank)] for i, n in enumerate(G.factors))
    basis_a = linalg.hermite_form(rows_a)  # full-rank basis of A's lattice
    rows_b = [list(g) for g in B.canonical_basis]
    rows_b.extend([n if j == i else 0 for j in range(G.rank)] for i, n in enumerate(G.factors))
    basis_b = linalg.hermite_form(rows_b)
    # write B's basis in A-coordinates: C basis_a = basis_b
    C = []
    for row in basis_b:
        coeffs = linalg.integer_solve_left(basis_a, row)
        if coeffs is None:
            raise NotASubgroup("B's lattice does not lie inside A's lattice")
        C.append(coeffs)
    S, _, V = linalg.smith_form(C) if C else ([], [], [])
    k = len(basis_a)
    diag = [S[i][i] if i < len(S) and i < len(S[0]) else 0 for i in range(k)]
    if any(d == 0 for d in diag):
        raise AssertionError("quotient of finite lattices cannot have free part")
    keep = [i for i, d in enumerate(diag) if d != 1]
    Q = FinAbGroup([diag[i] for i in keep])
    # with y the coordinates of x in A's basis, x lies in B's lattice exactly
    # when y V lies in the diagonal lattice, so the class of x is (y V) % diag
    mapping: dict[tuple[int, ...], tuple[int, ...]] = {}
    for el in A.elements:
        y = linalg.integer_solve_left(basis_a, list(el))
        if y is None:
            raise AssertionError("element of A not in A's lattice")
        yV = [sum(y[t] * V[t][j] for t in range(k)) for j in range(k)]
        mapping[el] = tuple(yV[i] % diag[i] for i in keep)
    return Q, mapping


def enumerate_subgroups(G: FinAbGroup) -> list[Subgroup]:
    """All subgroups of G, duplicate-free, sorted by order then basis."""
    bound = enumeration_bound()
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds the enumeration bound {bound}")
    n = G.order
    add = G.add_table
    cyclic_masks: dict[bytes, np.ndarray] = {}
    for i in range(n):
        idxs = [0]
        cur = 0
        while True:
            cur = int(add[cur, i])
            if cur == 0:
                break
            idxs.append(cur)
        member = np.zeros(n, dtype=bool)
        member[idxs] = True
        cyclic_masks[member.tobytes()] = np.flatnonzero(member)
    trivial = np.zeros(n, dtype=bool)
    trivial[0] = True
    seen: dict[bytes, np.ndarray] = {trivial.tobytes(): np.array([0])}
    frontier = [trivial.tobytes()]
    while frontier:
        key = frontier.pop()
        idx = seen[key]
        mask = np.frombuffer(key, dtype=bool)
        for ckey, cidx in cyclic_masks.items():
            cmask = np.frombuffer(ckey, dtype=bool)
            if not (cmask & ~mask).any():
                continue
            sums = add[np.ix_(idx, cidx)].ravel()
            member = mask.copy()
            member[sums] = True
            jkey = member.tobytes()
            if jkey not in seen:
                seen[jkey] = np.flatnonzero(member)
                frontier.append(jkey)
    elements = G.elements
    subs = [Subgroup(G, [elements[i] for i in idx]) for idx in seen.values()]
    subs.sort(key=lambda H: (H.order, H.canonical_basis))
    return subs


class GSet:
    """A finite G-set, stored as an action table on labelled points."""

    def __init__(self, group: FinAbGroup, points, action_table, check: bool = True):
        self.group = group
        self.points = tuple(points)
        table = np.asarray(action_table, dtype=np.int64)
        if table.shape != (group.order, len(self.points)):
            raise DimensionMismatch("action table has wrong shape")
        table = table.copy()
        table.flags.writeable = False
        self.action_table = table
        if check:
            self._validate()

    def _validate(self):
        n = self.group.order
        add = self.group.add_table
        act = self.action_table
        if (act[0] != np.arange(len(self.points))).any():
            raise ValueError("identity does not act trivially")
        for g in range(n):
            # act(g, act(h, x)) == act(g + h, x), vectorised over (h, x)
            lhs = act[g][act]
            rhs = act[add[g]]
            if (lhs != rhs).any():
                raise ValueError("action is not compatible with the group law")

    @property
    def size(self) -> int:
        return len(self.points)

    def point_index(self, point) -> int:
        return self.points.index(point)

    def act(self, g, point_idx: int) -> int:
        return int(self.action_table[self.group.index_of(g), point_idx])

    @cached_property
    def orbits(self) -> list[list[int]]:
        out = []
        unseen = set(range(self.size))
        while unseen:
            x = min(unseen)
            orbit = sorted(set(int(i) for i in self.action_table[:, x]))
            out.append(orbit)
            unseen -= set(orbit)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits) == 1


def coset_space(G: FinAbGroup, H: Subgroup) -> GSet:
    """The translation action of G on the cosets of H.

    Points are labelled by the lexicographically least coset representative.
    """
    if H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")
    add = G.add_table
    h_idx = np.array([G.index_of(t) for t in H.elements], dtype=np.int64)
    rep = add[:, h_idx].min(axis=1)  # coset representative index per element
    reps = np.unique(rep)
    pos = {int(r): i for i, r in enumerate(reps)}
    points = [G.elements[int(r)] for r in reps]
    action = np.zeros((G.order, len(points)), dtype=np.int64)
    for p, r in enumerate(reps):
        action[:, p] = [pos[int(rep[int(add[g, int(r)])])] for g in range(G.order)]
    return GSet(G, points, action)


def regular_gset(G: FinAbGroup) -> GSet:
    return coset_space(G, trivial_subgroup(G))


def one_point_gset(G: FinAbGroup) -> GSet:
    return coset_space(G, full_subgroup(G))


def characters(G: FinAbGroup, modulus: int) -> list[tuple[int, ...]]:
    """All homomorphisms G -> Z/modulus, as tuples of generator images.

    The i-th entry must be a multiple of modulus / gcd(n_i, modulus); the
    value at an element g is sum(chi_i * g_i) mod modulus.
    """
    choices = []
    for n in G.factors:
        step = modulus // gcd(n, modulus)
        choices.append(range(0, modulus, step))
    return [tuple(c) for c in _iterproduct(*choices)] if G.rank else [()]


def character_value(chi: tuple[int, ...], el, modulus: int) -> int:
    el = _as_tuple(el)
    return sum(c * v for c, v in zip(chi, el)) % modulus


def character_table(G: FinAbGroup, chi: tuple[int, ...], modulus: int) -> np.ndarray:
    return np.array(
        [character_value(chi, t, modulus) for t in G.elements], dtype=np.int64
    )


def stabiliser(X: GSet, point) -> Subgroup:
    """The stabiliser of a point, as a canonical subgroup."""
    if point in X.points:
        p = X.point_index(point)
    elif isinstance(point, int) and 0 <= point < X.size:
        p = point
    else:
        raise ValueError(f"{point!r} is not a point of the G-set")
    fixed = np.flatnonzero(X.action_table[:, p] == p)
    return Subgroup(X.group, [X.group.elements[int(i)] for i in fixed])
