"""Pointed monoidal categories: graded lines with a 3-cocycle associator.

A category is the pair (group, associator); simples are group elements and
every structure map is a root-of-unity scalar.  This module verifies the
coherence laws on simples (pentagon, monoidal functors and their natural
isomorphisms), computes duality data, and enumerates pivotal structures
with their quantum dimensions.

Two deliberately independent code paths exist for the pentagon: the direct
two-path comparison below and the generic cocycle test in `cochain`; tests
hold them against each other on random data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import diagrams
from .abgroup import FinAbGroup, GroupElement, Homomorphism, characters
from .cochain import (
    Cochain,
    ScalarExp,
    coboundary,
    is_cocycle,
    pullback,
    solve_coboundary,
    zero_cochain,
)
from .errors import InvalidHomomorphism, ModulusMismatch, PcatError
from . import linalg


class PointedCategory:
    """Graded lines over a finite abelian group with associator alpha."""

    def __init__(self, group: FinAbGroup, associator: Cochain):
        if associator.carrier != group:
            raise ValueError("associator must live over the category's group")
        if associator.degree != 3:
            raise ValueError("associator must be a degree-3 cochain")
        if not pentagon_check(associator):
            raise ValueError("associator fails the pentagon")
        self.group = group
        self.modulus = associator.modulus
        self.associator = associator

    @staticmethod
    def trivial(group: FinAbGroup, modulus: int) -> "PointedCategory":
        return PointedCategory(group, zero_cochain(group, 3, modulus))

    def __eq__(self, other):
        return (
            isinstance(other, PointedCategory)
            and self.group == other.group
            and self.associator == other.associator
        )

    def __hash__(self):
        return hash((self.group, self.associator))

    def __repr__(self):
        return f"PointedCategory({self.group.describe()}, N={self.modulus})"

    def global_dimension(self) -> int:
        return self.group.order


def pentagon_check(alpha: Cochain) -> bool:
    """Both pentagon paths agree at every quadruple of simples."""
    return pentagon_witness(alpha) is None


def pentagon_witness(alpha: Cochain):
    """A quadruple of simples where the pentagon fails, or None.

    Composes the two sides of the pentagon directly (top: two associators;
    bottom: three) rather than delegating to the cocycle test.
    """
    G = alpha.carrier
    n, N = G.order, alpha.modulus
    add = G.add_table
    at = alpha.table
    f, g, h, k = np.meshgrid(*([np.arange(n)] * 4), indexing="ij", sparse=True)
    top = at[f, g, add[h, k]] + at[add[f, g], h, k]
    bottom = at[g, h, k] + at[f, add[g, h], k] + at[f, g, h]
    bad = np.argwhere((top - bottom) % N != 0)
    if len(bad) == 0:
        return None
    i = tuple(int(v) for v in bad[0])
    els = G.elements
    return tuple(els[j] for j in i)


@dataclass(frozen=True)
class FunctorData:
    """A grading-induced functor: a group homomorphism plus a 2-cochain."""

    source: PointedCategory
    target: PointedCategory
    hom: Homomorphism
    constraint: Cochain

    def __post_init__(self):
        if self.hom.source != self.source.group or self.hom.target != self.target.group:
            raise InvalidHomomorphism("functor homomorphism does not match its categories")
        if self.source.modulus != self.target.modulus:
            raise ModulusMismatch("source and target categories must share a modulus")
        if self.constraint.carrier != self.source.group or self.constraint.degree != 2:
            raise ValueError("constraint must be a degree-2 cochain over the source group")
        if self.constraint.modulus != self.source.modulus:
            raise ModulusMismatch("constraint modulus must match the categories")

    @staticmethod
    def identity(C: PointedCategory) -> "FunctorData":
        return FunctorData(
            C, C, Homomorphism.identity_on(C.group), zero_cochain(C.group, 2, C.modulus)
        )


def functor_check(F: FunctorData) -> bool:
    """d(constraint) = alpha_source^{-1} * hom^*(alpha_target) on the nose."""
    lhs = coboundary(F.constraint)
    rhs = pullback(F.target.associator, F.hom).sub(F.source.associator)
    return lhs == rhs


def functor_witness(F: FunctorData):
    lhs = coboundary(F.constraint)
    rhs = pullback(F.target.associator, F.hom).sub(F.source.associator)
    diff = (lhs.table - rhs.table) % F.source.modulus
    bad = np.argwhere(diff != 0)
    if len(bad) == 0:
        return None
    els = F.source.group.elements
    return tuple(els[int(v)] for v in bad[0])


def nat_iso_check(c: Cochain, F: FunctorData, G: FunctorData) -> bool:
    """Is the degree-1 cochain c a monoidal natural isomorphism F -> G?

    The defining square on simples reads
    constraint_G(f, g) - constraint_F(f, g) = c(f + g) - c(f) - c(g).
    Functors with different homomorphisms are rejected: no nonzero natural
    transformation exists between them on pointed data.
    """
    if F.source != G.source or F.target != G.target:
        raise PcatError("natural isomorphisms need functors with equal source and target")
    if F.hom != G.hom:
        raise PcatError("functors with different homomorphisms admit no natural isomorphism")
    if c.carrier != F.source.group or c.degree != 1 or c.modulus != F.source.modulus:
        raise ValueError("the component data must be a normalized degree-1 cochain")
    grp = F.source.group
    n, N = grp.order, F.source.modulus
    add = grp.add_table
    ct = c.table
    f, g = np.meshgrid(np.arange(n), np.arange(n), indexing="ij", sparse=True)
    lhs = G.constraint.table - F.constraint.table
    rhs = ct[add[f, g]] - ct[f] - ct[g]
    return bool((((lhs - rhs) % N) == 0).all())


def equivalence_search(
    C: PointedCategory, D: PointedCategory, hom: Homomorphism
) -> FunctorData | None:
    """A monoidal structure on the grading isomorphism `hom`, if one exists."""
    if not hom.is_bijective():
        raise InvalidHomomorphism("equivalences require a bijective homomorphism")
    if C.modulus != D.modulus:
        raise ModulusMismatch("categories must share a modulus")
    target = pullback(D.associator, hom).sub(C.associator)
    phi = solve_coboundary(target)
    if phi is None:
        return None
    F = FunctorData(C, D, hom, phi)
    if not functor_check(F):
        raise AssertionError("solver produced an invalid monoidal constraint")
    return F


# ---------------------------------------------------------------------------
# duals and internal homs on simples
# ---------------------------------------------------------------------------


def dual(g: GroupElement) -> GroupElement:
    return -g


def internal_hom_left(g: GroupElement, h: GroupElement) -> GroupElement:
    """[I(g), I(h)]: the unique degree f with f + g = h."""
    return h - g


def internal_hom_right(g: GroupElement, h: GroupElement) -> GroupElement:
    """{I(g), I(h)}: the unique degree f with g + f = h (equal for abelian G)."""
    return -g + h


# ---------------------------------------------------------------------------
# pivotal structures
# ---------------------------------------------------------------------------


def pivotal_defect(C: PointedCategory) -> np.ndarray:
    """Table D with t(f) + t(g) - t(f+g) = D[f, g] for pivotal data t.

    D is the (sign-adjusted) monoidal constraint of the double-dual functor,
    composed mechanically from evaluation and coevaluation diagrams.
    """
    return (-diagrams.double_dual_constraint(C)) % C.modulus


class PivotalData:
    """A monoidal trivialisation of the double dual, on simples."""

    def __init__(self, category: PointedCategory, values):
        self.category = category
        vals = np.asarray(values, dtype=np.int64) % category.modulus
        if vals.shape != (category.group.order,):
            raise ValueError("one exponent per simple is required")
        vals = vals.copy()
        vals.flags.writeable = False
        self.values = vals
        if not self.is_coherent():
            raise ValueError("values do not satisfy the pivotal coherence condition")

    def is_coherent(self) -> bool:
        C = self.category
        n, N = C.group.order, C.modulus
        t = self.values
        D = pivotal_defect(C)
        f, g = np.meshgrid(np.arange(n), np.arange(n), indexing="ij", sparse=True)
        add = C.group.add_table
        return bool((((t[f] + t[g] - t[add[f, g]] - D) % N) == 0).all())

    def __eq__(self, other):
        return (
            isinstance(other, PivotalData)
            and self.category == other.category
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"PivotalData({list(map(int, self.values))})"


def pivotal_enumerate(C: PointedCategory) -> list[PivotalData]:
    """All pivotal structures; empty, or a torsor under the character group."""
    G, N = C.group, C.modulus
    n = G.order
    D = pivotal_defect(C)
    # linear system over the non-identity values of t
    var = -np.ones(n, dtype=np.int64)
    var[1:] = np.arange(n - 1)
    add = G.add_table
    rows = []
    rhs = []
    for f in range(n):
        for g in range(n):
            coeff = np.zeros(n - 1, dtype=np.int64)
            for idx, sgn in ((f, 1), (g, 1), (int(add[f, g]), -1)):
                if var[idx] >= 0:
                    coeff[var[idx]] += sgn
            rows.append(coeff)
            rhs.append(int(D[f, g]))
    M = np.array(rows, dtype=np.int64)
    b = np.array(rhs, dtype=np.int64)
    x0 = linalg.solve_mod(M, b, N)
    if x0 is None:
        return []
    kernel = linalg.kernel_mod(M, N)
    # enumerate the whole solution coset
    seen = {tuple(int(v) for v in x0)}
    frontier = [x0]
    while frontier:
        v = frontier.pop()
        for k in kernel:
            w = (v + k) % N
            tw = tuple(int(u) for u in w)
            if tw not in seen:
                seen.add(tw)
                frontier.append(np.array(tw, dtype=np.int64))
    out = []
    for sol in sorted(seen):
        t = np.zeros(n, dtype=np.int64)
        t[1:] = sol
        out.append(PivotalData(C, t))
    return out


def quantum_dimension(C: PointedCategory, t: PivotalData, g) -> ScalarExp:
    """Trace of the identity of the degree-g simple under the pivotal t.

    With coevaluation normalised to 1 the evaluation exponent is forced to
    alpha(g, -g, g), so the dimension exponent is t(g) - alpha(g, -g, g).
    """
    if t.category != C:
        raise ValueError("pivotal data belongs to a different category")
    g = C.group.reduce(g)
    diag = diagrams.ScalarDiagrams(C)
    exp = (int(t.values[C.group.index_of(g)]) - diag.ev_exponent(g)) % C.modulus
    return ScalarExp(exp, C.modulus)


def is_spherical(C: PointedCategory, t: PivotalData) -> bool:
    """d(g) = d(-g) for every simple."""
    return all(
        quantum_dimension(C, t, g) == quantum_dimension(C, t, C.group.neg(g))
        for g in C.group.elements
    )
