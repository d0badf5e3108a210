"""Term algebra of group constructions and attribute inference.

Group expressions are immutable trees.  Compact open subgroups and
permutation actions are never materialised: each node only records the
capability flags that the rank rules consume (see :class:`AttributeSet`).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Optional, Tuple, Union


class GroupExpr:
    """Base class of every node; subclasses are frozen dataclasses."""

    __slots__ = ()

    def children(self) -> Tuple["GroupExpr", ...]:
        return ()

    def __str__(self) -> str:
        from .parsing import print_group_expr

        return print_group_expr(self)


@dataclass(frozen=True)
class Trivial(GroupExpr):
    pass


@dataclass(frozen=True)
class ProfiniteAtom(GroupExpr):
    name: str


@dataclass(frozen=True)
class DiscreteAtom(GroupExpr):
    name: str
    finitely_generated: bool = False
    topologically_perfect: bool = False


@dataclass(frozen=True)
class SeedAtom(GroupExpr):
    """A compactly generated, topologically perfect group of rank 2 acting
    transitively on a countable set, with a proper compact open subgroup
    whose normal closure is dense."""

    name: str


@dataclass(frozen=True)
class Prod(GroupExpr):
    factors: Tuple[GroupExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("Prod needs at least one factor")

    def children(self):
        return self.factors


@dataclass(frozen=True)
class LDP(GroupExpr):
    """Local direct product of copies of ``child``; ``multiplicity=None``
    means countably many copies."""

    child: GroupExpr
    multiplicity: Optional[int] = None

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class LDPFamily(GroupExpr):
    """Local direct product of the family ``F(n, seed)`` over all n."""

    seed: SeedAtom

    def children(self):
        return (self.seed,)


@dataclass(frozen=True)
class Ext(GroupExpr):
    normal: GroupExpr
    quotient: GroupExpr

    def children(self):
        return (self.normal, self.quotient)


@dataclass(frozen=True)
class CocompactExt(GroupExpr):
    normal: GroupExpr

    def children(self):
        return (self.normal,)


@dataclass(frozen=True)
class Wr(GroupExpr):
    """Restricted wreath product of ``L`` over the designated action of ``K``."""

    L: GroupExpr
    K: GroupExpr

    def children(self):
        return (self.L, self.K)


@dataclass(frozen=True)
class Pow(GroupExpr):
    """Iterated wreath power: Pow(c, 0) is trivial, Pow(c, n) = Wr(c, Pow(c, n-1))."""

    child: GroupExpr
    n: int

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class EX(GroupExpr):
    """The tree group built from a transitive permutation group."""

    child: GroupExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Fn(GroupExpr):
    n: int
    seed: SeedAtom

    def children(self):
        return (self.seed,)


@dataclass(frozen=True)
class Res(GroupExpr):
    """Discrete residual."""

    child: GroupExpr

    def children(self):
        return (self.child,)


NODE_TYPES = (
    Trivial, ProfiniteAtom, DiscreteAtom, SeedAtom, Prod, LDP, LDPFamily,
    Ext, CocompactExt, Wr, Pow, EX, Fn, Res,
)


def make_pow(child: GroupExpr, n: int) -> GroupExpr:
    """``Pow`` with the identifications for n = 0 and n = 1 applied."""
    if n == 0:
        return Trivial()
    if n == 1:
        return child
    return Pow(child, n)


def unfold_pow(expr: Pow) -> GroupExpr:
    """One step of the Pow recursion."""
    if expr.n <= 0:
        return Trivial()
    if expr.n == 1:
        return expr.child
    return Wr(expr.child, Pow(expr.child, expr.n - 1))


def size(expr: GroupExpr) -> int:
    return 1 + sum(size(c) for c in expr.children())


def expr_depth(expr: GroupExpr) -> int:
    return 1 + max((expr_depth(c) for c in expr.children()), default=0)


# -- attributes ------------------------------------------------------------


@dataclass(frozen=True)
class AttributeSet:
    nontrivial: bool = False
    compactly_generated: bool = False
    topologically_perfect: bool = False
    transitive_permutation: bool = False
    dense_U: bool = False
    has_witnessing_chain: bool = False
    monolithic: bool = False

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


NONE = AttributeSet()
SEED_BUNDLE = AttributeSet(
    nontrivial=True,
    compactly_generated=True,
    topologically_perfect=True,
    transitive_permutation=True,
    dense_U=True,
    has_witnessing_chain=True,
)


def _wr_attributes(L: AttributeSet, K: AttributeSet) -> AttributeSet:
    cg = L.compactly_generated and K.compactly_generated and K.transitive_permutation
    return AttributeSet(
        nontrivial=L.nontrivial or K.nontrivial,
        compactly_generated=cg,
        topologically_perfect=(
            L.topologically_perfect and K.topologically_perfect and K.transitive_permutation
        ),
        transitive_permutation=L.transitive_permutation and K.transitive_permutation,
        dense_U=L.dense_U and K.dense_U,
        has_witnessing_chain=(
            L.has_witnessing_chain and K.has_witnessing_chain and L.dense_U and L.nontrivial
            and K.nontrivial and cg
        ),
        monolithic=False,
    )


@lru_cache(maxsize=None)
def infer_attributes(expr: GroupExpr) -> AttributeSet:
    """Bottom-up flag propagation.  Total: never raises on a valid tree."""
    if isinstance(expr, Trivial):
        return NONE
    if isinstance(expr, ProfiniteAtom):
        return AttributeSet(nontrivial=True, compactly_generated=True, dense_U=True)
    if isinstance(expr, DiscreteAtom):
        return AttributeSet(
            nontrivial=True,
            compactly_generated=expr.finitely_generated,
            topologically_perfect=expr.topologically_perfect,
        )
    if isinstance(expr, SeedAtom):
        return SEED_BUNDLE
    if isinstance(expr, Prod):
        kids = [infer_attributes(c) for c in expr.factors]
        return AttributeSet(
            nontrivial=any(k.nontrivial for k in kids),
            compactly_generated=all(k.compactly_generated for k in kids),
            topologically_perfect=all(k.topologically_perfect for k in kids),
            dense_U=all(k.dense_U for k in kids),
        )
    if isinstance(expr, LDP):
        c = infer_attributes(expr.child)
        finite = expr.multiplicity is not None
        return AttributeSet(
            nontrivial=c.nontrivial and (expr.multiplicity is None or expr.multiplicity >= 1),
            compactly_generated=c.compactly_generated and finite,
            dense_U=c.dense_U,
        )
    if isinstance(expr, LDPFamily):
        return AttributeSet(nontrivial=True, dense_U=True)
    if isinstance(expr, Ext):
        n, q = infer_attributes(expr.normal), infer_attributes(expr.quotient)
        return AttributeSet(
            nontrivial=n.nontrivial or q.nontrivial,
            compactly_generated=n.compactly_generated and q.compactly_generated,
        )
    if isinstance(expr, CocompactExt):
        n = infer_attributes(expr.normal)
        return AttributeSet(nontrivial=n.nontrivial, compactly_generated=n.compactly_generated)
    if isinstance(expr, Wr):
        return _wr_attributes(infer_attributes(expr.L), infer_attributes(expr.K))
    if isinstance(expr, Pow):
        # iterate instead of recursing through unfold_pow, so large n stays flat
        if expr.n <= 0:
            return NONE
        c = infer_attributes(expr.child)
        acc = c
        for _ in range(min(expr.n, 3) - 1):
            acc = _wr_attributes(c, acc)
        # the Wr rule is idempotent after two steps, so the tail is constant
        return acc
    if isinstance(expr, EX):
        c = infer_attributes(expr.child)
        return AttributeSet(
            nontrivial=True,
            compactly_generated=True,
            monolithic=True,
            has_witnessing_chain=c.has_witnessing_chain and c.transitive_permutation,
        )
    if isinstance(expr, Fn):
        return SEED_BUNDLE
    if isinstance(expr, Res):
        return NONE
    raise TypeError(f"unknown node {expr!r}")


def is_seed_grade(expr: GroupExpr) -> bool:
    """Carries the full seed hypothesis bundle."""
    return infer_attributes(expr) == SEED_BUNDLE


# -- well-formedness -------------------------------------------------------


def _node_violations(expr: GroupExpr):
    # messages are data; the CLI prints them verbatim
    if isinstance(expr, EX):
        c = infer_attributes(expr.child)
        if not (c.nontrivial and c.transitive_permutation):
            yield "EX requires nontrivial transitive child"
        if not c.compactly_generated:
            yield "EX requires compactly generated child"
        if not c.dense_U:
            yield "EX requires child with dense normal closure of U"
    elif isinstance(expr, Res):
        if not infer_attributes(expr.child).compactly_generated:
            yield "Res requires compactly generated child"
    elif isinstance(expr, Wr):
        if not infer_attributes(expr.K).transitive_permutation:
            yield "Wr requires K with a transitive permutation action"
    elif isinstance(expr, Pow):
        if expr.n < 0:
            yield "Pow requires a nonnegative exponent"
        elif expr.n >= 2 and not infer_attributes(expr.child).transitive_permutation:
            yield "Pow requires a child with a transitive permutation action"
    elif isinstance(expr, LDP):
        if expr.multiplicity is not None and expr.multiplicity < 1:
            yield "LDP requires multiplicity at least 1"
    elif isinstance(expr, CocompactExt):
        if not infer_attributes(expr.normal).nontrivial:
            yield "CoExt requires nontrivial normal subgroup"
    elif isinstance(expr, Fn):
        if expr.n < 0:
            yield "F requires a nonnegative index"


def well_formed(expr: GroupExpr) -> list:
    """List of structural violations, children first; empty means evaluable."""
    out: list = []
    seen = set()
    stack = [(expr, False)]
    while stack:
        node, done = stack.pop()
        if done:
            for v in _node_violations(node):
                out.append(v)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for c in reversed(node.children()):
            stack.append((c, False))
    return out


GroupLike = Union[GroupExpr]
