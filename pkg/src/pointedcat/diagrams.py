"""A small calculus for composing canonical scalar morphisms on simples.

In a skeletal pointed category every morphism between simples is a scalar,
but associator bookkeeping is error-prone when diagrams are transcribed by
hand.  Morphisms here carry their domain and codomain as *tensor trees*
(parenthesized words of simples), so composing in the wrong order or
forgetting an associator is caught structurally.  Merging a tensor word
into its total-degree leaf is an explicit scalar-0 step (the objects are
equal in the skeleton; the tree is bookkeeping only).

The payoff is `double_dual_constraint`: the monoidal-structure exponent of
the double-dual endofunctor, computed by actually composing the defining
diagrams instead of trusting a closed-form expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Leaf:
    element: tuple


@dataclass(frozen=True)
class Node:
    left: "Leaf | Node"
    right: "Leaf | Node"


Tree = "Leaf | Node"


@dataclass(frozen=True)
class Morphism:
    dom: "Leaf | Node"
    cod: "Leaf | Node"
    exp: int


class ScalarDiagrams:
    """Composable canonical morphisms for one pointed category."""

    def __init__(self, category):
        self.cat = category
        self.G = category.group
        self.N = category.modulus
        self._alpha = category.associator

    # -- tree helpers -------------------------------------------------------

    def degree(self, tree) -> tuple:
        if isinstance(tree, Leaf):
            return tree.element
        return self.G.add(self.degree(tree.left), self.degree(tree.right))

    def leaf(self, el) -> Leaf:
        return Leaf(self.G.reduce(el))

    def unit(self) -> Leaf:
        return Leaf(self.G.identity)

    # -- generators ---------------------------------------------------------

    def identity(self, tree) -> Morphism:
        return Morphism(tree, tree, 0)

    def scalar(self, tree, exp: int) -> Morphism:
        return Morphism(tree, tree, exp % self.N)

    def compose(self, *steps) -> Morphism:
        """Apply morphisms in diagram order (first argument acts first)."""
        out = steps[0]
        for step in steps[1:]:
            if step.dom != out.cod:
                raise ValueError(f"composition mismatch:\n  {out.cod}\n  vs {step.dom}")
            out = Morphism(out.dom, step.cod, (out.exp + step.exp) % self.N)
        return out

    def tensor(self, m1: Morphism, m2: Morphism) -> Morphism:
        return Morphism(
            Node(m1.dom, m2.dom), Node(m1.cod, m2.cod), (m1.exp + m2.exp) % self.N
        )

    def assoc(self, t1, t2, t3) -> Morphism:
        """t1 (t2 t3) -> (t1 t2) t3, the associator component on simples."""
        exp = self._alpha(self.degree(t1), self.degree(t2), self.degree(t3))
        return Morphism(Node(t1, Node(t2, t3)), Node(Node(t1, t2), t3), exp)

    def assoc_inv(self, t1, t2, t3) -> Morphism:
        m = self.assoc(t1, t2, t3)
        return Morphism(m.cod, m.dom, (-m.exp) % self.N)

    def lunit(self, tree) -> Morphism:
        return Morphism(Node(self.unit(), tree), tree, 0)

    def lunit_inv(self, tree) -> Morphism:
        return Morphism(tree, Node(self.unit(), tree), 0)

    def runit(self, tree) -> Morphism:
        return Morphism(Node(tree, self.unit()), tree, 0)

    def runit_inv(self, tree) -> Morphism:
        return Morphism(tree, Node(tree, self.unit()), 0)

    def merge(self, tree) -> Morphism:
        """Collapse a tensor word to its total-degree leaf (the same object)."""
        return Morphism(tree, Leaf(self.degree(tree)), 0)

    def split(self, tree) -> Morphism:
        return Morphism(Leaf(self.degree(tree)), tree, 0)

    # -- duality data -------------------------------------------------------
    # Convention: coev_g : I -> I(g) (x) I(-g) is the canonical inclusion
    # (exponent 0); the snake equations then force the evaluation exponent.

    def ev_exponent(self, g) -> int:
        g = self.G.reduce(g)
        return self._alpha(g, self.G.neg(g), g)

    def ev(self, g) -> Morphism:
        g = self.G.reduce(g)
        return Morphism(
            Node(Leaf(self.G.neg(g)), Leaf(g)), self.unit(), self.ev_exponent(g)
        )

    def coev(self, g) -> Morphism:
        g = self.G.reduce(g)
        return Morphism(self.unit(), Node(Leaf(g), Leaf(self.G.neg(g))), 0)

    def snake_right(self, g) -> Morphism:
        """X -> (X X*) X -> X (X* X) -> X; must be the identity scalar."""
        g = self.G.reduce(g)
        X = Leaf(g)
        Xd = Leaf(self.G.neg(g))
        return self.compose(
            self.lunit_inv(X),
            self.tensor(self.coev(g), self.identity(X)),
            self.assoc_inv(X, Xd, X),
            self.tensor(self.identity(X), self.ev(g)),
            self.runit(X),
        )

    def snake_left(self, g) -> Morphism:
        """X* -> X* (X X*) -> (X* X) X* -> X*; must be the identity scalar."""
        g = self.G.reduce(g)
        X = Leaf(g)
        Xd = Leaf(self.G.neg(g))
        return self.compose(
            self.runit_inv(Xd),
            self.tensor(self.identity(Xd), self.coev(g)),
            self.assoc(Xd, X, Xd),
            self.tensor(self.ev(g), self.identity(Xd)),
            self.lunit(Xd),
        )

    def transpose_exponent(self, g, exp: int) -> int:
        """The scalar of f* for f a scalar endomorphism of the degree-g simple."""
        g = self.G.reduce(g)
        X = Leaf(g)
        Xd = Leaf(self.G.neg(g))
        m = self.compose(
            self.runit_inv(Xd),
            self.tensor(self.identity(Xd), self.coev(g)),
            self.tensor(self.identity(Xd), self.tensor(self.scalar(X, exp), self.identity(Xd))),
            self.assoc(Xd, X, Xd),
            self.tensor(self.ev(g), self.identity(Xd)),
            self.lunit(Xd),
        )
        return m.exp

    def pairing_exponent(self, f, g) -> int:
        """(X* Y*) (Y X) -> I by nested evaluations, X, Y of degrees f, g."""
        f, g = self.G.reduce(f), self.G.reduce(g)
        A = Leaf(self.G.neg(f))
        B = Leaf(self.G.neg(g))
        C = Leaf(g)
        D = Leaf(f)
        m = self.compose(
            self.assoc_inv(A, B, Node(C, D)),
            self.tensor(self.identity(A), self.assoc(B, C, D)),
            self.tensor(self.identity(A), self.tensor(self.ev(g), self.identity(D))),
            self.tensor(self.identity(A), self.lunit(D)),
            self.ev(f),
        )
        return m.exp

    def dual_constraint_exponent(self, f, g) -> int:
        """Scalar of the canonical X* (x) Y* -> (Y X)* (as a leaf).

        Characterised by: following with the evaluation of Y (x) X equals the
        nested pairing.  All homs are one-dimensional, so the exponent is the
        difference of the two composite scalars.
        """
        f, g = self.G.reduce(f), self.G.reduce(g)
        return (self.pairing_exponent(f, g) - self.ev_exponent(self.G.add(g, f))) % self.N

    def double_dual_exponent(self, f, g) -> int:
        """Monoidal-constraint exponent of (-)** at a pair of simples.

        Composite of the dual constraint at (X*, Y*) with the inverse
        transpose of the dual constraint at (Y, X); transposition preserves
        scalars (verified by `transpose_exponent`).
        """
        f, g = self.G.reduce(f), self.G.reduce(g)
        lam_duals = self.dual_constraint_exponent(self.G.neg(f), self.G.neg(g))
        lam_yx = self.dual_constraint_exponent(g, f)
        return (lam_duals - lam_yx) % self.N


@lru_cache(maxsize=64)
def double_dual_constraint(category) -> np.ndarray:
    """Table D with D[f, g] = exponent of the double-dual constraint."""
    diag = ScalarDiagrams(category)
    n = category.group.order
    elements = category.group.elements
    D = np.zeros((n, n), dtype=np.int64)
    for i, f in enumerate(elements):
        for j, g in enumerate(elements):
            D[i, j] = diag.double_dual_exponent(f, g)
    D.flags.writeable = False
    return D
