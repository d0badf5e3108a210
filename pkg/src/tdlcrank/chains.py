"""Symbolic witnessing chains.

A chain for a compactly generated group of rank ``a + 1`` is indexed by the
ordinals ``gamma < a``; the entry at ``gamma`` is a compactly generated
subgroup of residual height ``gamma + 1``.  Chains are usually infinite, so a
:class:`WitnessChain` computes entries on demand from their index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from . import groups as g
from .errors import NoWitnessChainError
from .ordinal import OMEGA, ZERO, Ordinal, add, mul, omega_power, predecessor, successor
from .rank import eval_rank


@dataclass(frozen=True)
class ChainEntry:
    index: Ordinal
    height: Ordinal
    expr: g.GroupExpr
    path: str


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique d with ``a + d == b``; requires ``a <= b``."""
    if a > b:
        raise ValueError(f"{a} > {b}")
    at, bt = a.terms, b.terms
    i = 0
    while i < len(at) and i < len(bt) and at[i] == bt[i]:
        i += 1
    if i == len(at):
        return Ordinal(bt[i:])
    # first differing term: same exponent with smaller coefficient, or a
    # smaller exponent in a; either way everything after it in a is absorbed
    ea, ca = at[i]
    eb, cb = bt[i]
    if ea == eb:
        return Ordinal(((eb, cb - ca),) + bt[i + 1:])
    return Ordinal(bt[i:])


def _height_of(expr: g.GroupExpr) -> Ordinal:
    return predecessor(eval_rank(expr).value)


def _entry(expr: g.GroupExpr, gamma: Ordinal, path: str) -> Tuple[g.GroupExpr, str]:
    if isinstance(expr, (g.SeedAtom,)) or (isinstance(expr, g.Fn) and expr.n == 0):
        if gamma != ZERO:
            raise IndexError(f"index {gamma} out of range for {expr}")
        return expr, path + "self"
    if isinstance(expr, g.Pow):
        return _pow_entry(expr, gamma, path)
    if isinstance(expr, g.Wr):
        yL = _height_of(expr.L)
        if gamma < yL:
            sub, p = _entry(expr.L, gamma, "")
            return sub, f"{path}coord(y).{p}"
        beta = left_subtract(yL, gamma)
        sub, p = _entry(expr.K, beta, "")
        return _fold_wr(expr.L, sub), f"{path}Wr(L, K[{beta}]).{p}"
    if isinstance(expr, g.EX):
        return _tree_entry(expr, expr.child, gamma, path)
    if isinstance(expr, g.Fn):
        prev = g.Fn(expr.n - 1, expr.seed)
        return _tree_entry(expr, prev, gamma, path)
    raise NoWitnessChainError(f"no constructive chain for {expr}")


def _pow_entry(expr: g.Pow, gamma: Ordinal, path: str):
    # Pow(c, m) = Wr(c, Pow(c, m - 1)): strip whole copies of c's chain, the
    # same walk as the Wr case without re-evaluating c at every level
    c, m = expr.child, expr.n
    if m <= 1:
        return _entry(g.make_pow(c, m), gamma, path)
    y = _height_of(c)
    j = 0
    while j < m - 1 and not gamma < y:
        gamma = left_subtract(y, gamma)
        j += 1
    sub, p = _entry(c, gamma, "")
    out = sub
    for _ in range(j):
        out = _fold_wr(c, out)
    prefix = f"Wr(L, K[..]).x{j}." if j else "coord(y)."
    return out, f"{path}{prefix}{p}"


def _fold_wr(L: g.GroupExpr, K: g.GroupExpr) -> g.GroupExpr:
    # keep wreath towers of one factor as a single Pow node
    if K == L:
        return g.Pow(L, 2)
    if isinstance(K, g.Pow) and K.child == L:
        return g.Pow(L, K.n + 1)
    return g.Wr(L, K)


def _tree_entry(whole: g.GroupExpr, child: g.GroupExpr, gamma: Ordinal, path: str):
    # union over m of the chains of the m-fold wreath powers, capped by the
    # group itself
    y = _height_of(child)
    top = mul(y, OMEGA)
    if gamma == top:
        return whole, path + "self"
    if gamma > top:
        raise IndexError(f"index {gamma} out of range for {whole}")
    m = 1
    while not gamma < mul(y, m):
        m += 1
    sub, p = _entry(g.make_pow(child, m), gamma, "")
    return sub, f"{path}Pow(child,{m}).{p}"


@dataclass(frozen=True)
class WitnessChain:
    target: g.GroupExpr
    length: Ordinal

    def entry(self, gamma) -> ChainEntry:
        gamma = Ordinal(gamma) if isinstance(gamma, int) else gamma
        if not gamma < self.length:
            raise IndexError(f"index {gamma} outside chain of length {self.length}")
        expr, path = _entry(self.target, gamma, "")
        return ChainEntry(gamma, successor(gamma), expr, path)

    def is_empty(self) -> bool:
        return self.length == ZERO

    def sample_indices(self, k: int = 4) -> List[Ordinal]:
        return sample_below(self.length, k)

    def sample(self, k: int = 4) -> List[ChainEntry]:
        return [self.entry(i) for i in self.sample_indices(k)]


def witness_chain(expr: g.GroupExpr) -> WitnessChain:
    if isinstance(expr, g.Trivial):
        return WitnessChain(expr, ZERO)
    if not g.infer_attributes(expr).has_witnessing_chain:
        raise NoWitnessChainError(f"no witnessing chain available for {expr}")
    r = eval_rank(expr)
    if not r.exact:
        raise NoWitnessChainError(f"rank of {expr} is not exact")
    return WitnessChain(expr, predecessor(r.lo))


# -- sampling indices below an ordinal --------------------------------------


def sample_below(alpha: Ordinal, k: int = 4) -> List[Ordinal]:
    """A finite, sorted sample of ordinals below ``alpha``.

    Includes every index below ``alpha`` that is at most ``k`` steps past a
    sampled limit point, so all finite indices below ``min(alpha, k)`` and
    the start of every CNF block are present.
    """
    out = set()
    prefix = ZERO
    for e, c in alpha.terms:
        for i in range(min(c, k)):
            base = add(prefix, omega_power(e, i)) if i else prefix
            for d in _sample_below_power(e, k):
                out.add(add(base, d))
        if c > k:
            base = add(prefix, omega_power(e, c - 1))
            for d in _sample_below_power(e, k):
                out.add(add(base, d))
        prefix = add(prefix, omega_power(e, c))
    return sorted(out)


def _sample_below_power(e: Ordinal, k: int) -> List[Ordinal]:
    if e == ZERO:
        return [ZERO]
    out = set(Ordinal(n) for n in range(k))
    for eps in sample_below(e, k):
        if eps == ZERO:
            continue
        for i in range(1, k):
            for n in range(k):
                out.add(add(omega_power(eps, i), n))
    return sorted(out)
