"""Rank evaluation for group expressions.

Every rule produces a closed interval ``[lo, hi]`` of successor ordinals; a
result is exact when the endpoints coincide.  Interval endpoints move
monotonically through every rule, so an interval child always yields a sound
interval parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

from . import groups as g
from .errors import HypothesisError, IllFormedError, OrdinalDomainError, OrdinalOverflowError
from .ordinal import (
    MAX_FINITE_EXPONENT,
    OMEGA,
    ONE,
    ConstantRepeated,
    FiniteSet,
    Ordinal,
    PowerOfOmega,
    add,
    is_successor,
    leading_exponent,
    max_ordinal,
    mul,
    omega_power,
    predecessor,
    successor,
    sup_plus,
)

TWO = Ordinal(2)
THREE = Ordinal(3)
OMEGA_PLUS_2 = add(OMEGA, 2)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    cite: str
    lo: Ordinal
    hi: Ordinal
    inputs: Tuple[str, ...] = ()

    @property
    def value(self) -> str:
        if self.lo == self.hi:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"

    def as_dict(self) -> dict:
        return {"rule": self.rule, "cite": self.cite, "value": self.value}


@dataclass(frozen=True)
class RankResult:
    lo: Ordinal
    hi: Ordinal
    trace: Tuple[TraceStep, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty rank interval [{self.lo}, {self.hi}]")
        for end in (self.lo, self.hi):
            if not is_successor(end):
                raise ValueError(f"rank endpoint {end} is not a successor ordinal")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Ordinal:
        if not self.exact:
            raise HypothesisError(f"rank is only known to lie in [{self.lo}, {self.hi}]")
        return self.lo

    def contains(self, alpha: Ordinal) -> bool:
        return self.lo <= alpha <= self.hi

    def text(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo}, {self.hi}]"

    def to_json(self) -> dict:
        out: dict = {"kind": "exact" if self.exact else "interval"}
        if self.exact:
            out["value"] = str(self.lo)
        else:
            out["lo"] = str(self.lo)
            out["hi"] = str(self.hi)
        out["trace"] = [s.as_dict() for s in self.trace]
        return out


def _round_up(a: Ordinal) -> Ordinal:
    # a rank bounded below by a limit is bounded below by its successor
    return a if is_successor(a) else successor(a)


def _minus_two(a: Ordinal):
    """The alpha with alpha + 2 = a, or None when a has no such form."""
    f = a.finite_part()
    if f < 2:
        return None
    return Ordinal(a.terms[:-1]) if f == 2 else Ordinal(a.terms[:-1] + ((Ordinal(0), f - 2),))


def _step(rule, cite, lo, hi, *inputs) -> TraceStep:
    return TraceStep(rule, cite, lo, hi, tuple(str(i) for i in inputs))


# -- the Wr rule -----------------------------------------------------------


def _wreath(rL: RankResult, aL, rK: RankResult, aK, use_chains: bool):
    """Return ``(lo, hi, step)`` for Wr(L, K) given child results and flags."""
    both_cg = (
        aL.nontrivial and aL.compactly_generated and aK.nontrivial and aK.compactly_generated
    )
    if (
        use_chains
        and aL.dense_U
        and both_cg
        and aK.has_witnessing_chain
        # infinite orbit of the first chain entry, waived once rank(K) > w
        and (aK.transitive_permutation or rK.lo >= OMEGA_PLUS_2)
    ):
        lo = add(predecessor(rL.lo), rK.lo)
        hi = add(predecessor(rL.hi), rK.hi)
        return lo, hi, _step(
            "wr-exact", "exact wreath rank from a witnessing chain of K", lo, hi,
            rL.text(), rK.text(),
        )
    if (
        aL.dense_U
        and both_cg
        and aK.transitive_permutation
        and rK.exact
        and rK.lo == TWO
        and g.SEED_BUNDLE == aK
    ):
        lo, hi = successor(rL.lo), successor(rL.hi)
        return lo, hi, _step(
            "wr-plus-one", "wreath over a rank-2 acting group adds one", lo, hi, rL.text(),
        )
    hi = add(predecessor(rL.hi), rK.hi)
    alpha = _minus_two(rK.lo)
    if aL.dense_U and both_cg and alpha is not None:
        lo = max_ordinal(_round_up(add(rL.lo, alpha)), rK.lo)
        return lo, hi, _step(
            "wr-interval", "wreath bounds: L + alpha below, extension bound above", lo, hi,
            rL.text(), rK.text(),
        )
    if both_cg and rK.lo >= THREE:
        lo = max_ordinal(successor(rL.lo), rK.lo)
        rule, cite = "wr-weak", "wreath over a non-residually-discrete group gains one"
    else:
        lo = max_ordinal(rL.lo, rK.lo)
        rule, cite = "wr-monotone", "closed subgroup and quotient monotonicity"
    return lo, hi, _step(rule, cite, lo, hi, rL.text(), rK.text())


# -- the F_n replay --------------------------------------------------------


def fn_replay(n: int):
    """Replay the iterated tree construction; return ``(rank, steps)``."""
    if n > MAX_FINITE_EXPONENT:
        raise OrdinalOverflowError(f"F index {n} exceeds {MAX_FINITE_EXPONENT}")
    r = TWO
    steps = [_step("seed", "seed hypotheses give rank 2", r, r)]
    for k in range(1, n + 1):
        e = add(omega_power(successor(leading_exponent(r))), 2)
        steps.append(_step("ex", "rank of the tree group", e, e, r))
        steps.append(_step("perfection", "perfection step preserves rank", e, e, e))
        # a compact kernel gives rank(F) <= e <= 2 + rank(F); e is infinite
        # so 2 + e = e pins rank(F) to e
        if add(TWO, e) != e:
            raise AssertionError("absorption 2 + e = e failed")
        steps.append(_step(
            "quotient", "compact-kernel quotient with absorption 2+a=a", e, e, f"F({k - 1})",
        ))
        r = e
    return r, steps


# -- evaluation ------------------------------------------------------------


def _res(lo, hi, steps) -> RankResult:
    return RankResult(lo, hi, tuple(steps))


@lru_cache(maxsize=4096)
def _eval(expr: g.GroupExpr, use_chains: bool) -> RankResult:
    if isinstance(expr, g.Trivial):
        return _res(ONE, ONE, [_step("trivial", "rank of the trivial group is 1", ONE, ONE)])
    if isinstance(expr, (g.ProfiniteAtom, g.DiscreteAtom, g.SeedAtom)):
        kind = type(expr).__name__
        return _res(TWO, TWO, [_step("atom", f"{kind}: nontrivial residually discrete", TWO, TWO)])
    if isinstance(expr, g.Prod):
        kids = [_eval(c, use_chains) for c in expr.factors]
        lo = max_ordinal(*(k.lo for k in kids))
        hi = max_ordinal(*(k.hi for k in kids))
        steps = [s for k in kids for s in k.trace]
        steps.append(_step("prod", "finite products take the max", lo, hi, *(k.text() for k in kids)))
        return _res(lo, hi, steps)
    if isinstance(expr, g.LDP):
        c = _eval(expr.child, use_chains)
        if expr.multiplicity is None:
            lo, hi = sup_plus(ConstantRepeated(c.lo)), sup_plus(ConstantRepeated(c.hi))
        else:
            # finitely many equal copies: the set of ranks is a singleton
            lo, hi = sup_plus(FiniteSet((c.lo,))), sup_plus(FiniteSet((c.hi,)))
        return _res(lo, hi, list(c.trace) + [
            _step("ldp", "local direct products take sup+", lo, hi, c.text()),
        ])
    if isinstance(expr, g.LDPFamily):
        fam = PowerOfOmega(scale=1, offset=TWO)
        v = sup_plus(fam)
        return _res(v, v, [
            _step("ldp-family", "sup+ over F(n) with ranks w^n+2", v, v, "w^n+2"),
        ])
    if isinstance(expr, g.Ext):
        n, q = _eval(expr.normal, use_chains), _eval(expr.quotient, use_chains)
        lo = max_ordinal(n.lo, q.lo)
        hi = add(predecessor(n.hi), q.hi)
        return _res(lo, hi, list(n.trace) + list(q.trace) + [
            _step("ext", "monotonicity below, extension bound N-1+Q above", lo, hi,
                  n.text(), q.text()),
        ])
    if isinstance(expr, g.CocompactExt):
        n = _eval(expr.normal, use_chains)
        return _res(n.lo, n.hi, list(n.trace) + [
            _step("coext", "cocompact normal subgroup has the same rank", n.lo, n.hi, n.text()),
        ])
    if isinstance(expr, g.Wr):
        rL, rK = _eval(expr.L, use_chains), _eval(expr.K, use_chains)
        lo, hi, step = _wreath(
            rL, g.infer_attributes(expr.L), rK, g.infer_attributes(expr.K), use_chains
        )
        return _res(lo, hi, list(rL.trace) + list(rK.trace) + [step])
    if isinstance(expr, g.Pow):
        return _eval_pow(expr, use_chains)
    if isinstance(expr, g.EX):
        c = _eval(expr.child, use_chains)
        lo = add(omega_power(successor(leading_exponent(c.lo))), 2)
        hi = add(omega_power(successor(leading_exponent(c.hi))), 2)
        return _res(lo, hi, list(c.trace) + [
            _step("ex", "rank of the tree group: w^(b+1)+2", lo, hi, c.text()),
        ])
    if isinstance(expr, g.Fn):
        v, steps = fn_replay(expr.n)
        return _res(v, v, steps)
    if isinstance(expr, g.Res):
        c = _eval(expr.child, use_chains)
        # a limit lower end is not a rank, so the true value lies above it
        lo, hi = _round_up(predecessor(c.lo)), predecessor(c.hi)
        if not is_successor(hi):
            raise OrdinalDomainError(f"residual of a group of rank {c.hi} has no successor rank")
        return _res(lo, hi, list(c.trace) + [
            _step("res", "compactly generated: rank = rank(Res) + 1", lo, hi, c.text()),
        ])
    raise TypeError(f"unknown node {expr!r}")


def _eval_pow(expr: g.Pow, use_chains: bool) -> RankResult:
    if expr.n <= 0:
        return _eval(g.Trivial(), use_chains)
    if expr.n > MAX_FINITE_EXPONENT:
        raise OrdinalOverflowError(f"Pow exponent {expr.n} exceeds {MAX_FINITE_EXPONENT}")
    c = _eval(expr.child, use_chains)
    ac = g.infer_attributes(expr.child)
    acc, aacc = c, ac
    steps = list(c.trace)
    for k in range(2, expr.n + 1):
        lo, hi, step = _wreath(c, ac, acc, aacc, use_chains)
        steps.append(step)
        acc = RankResult(lo, hi)
        prev, aacc = aacc, g.infer_attributes(g.Pow(expr.child, k))
        rest = expr.n - k
        if rest and step.rule == "wr-exact" and aacc == prev:
            # the exact rule now repeats, adding pred(child) each time
            lo = add(mul(predecessor(c.lo), rest), acc.lo)
            hi = add(mul(predecessor(c.hi), rest), acc.hi)
            steps.append(_step("wr-exact", f"exact wreath rule repeated {rest} more times",
                               lo, hi, c.text(), acc.text()))
            acc = RankResult(lo, hi)
            break
    steps.append(_step("pow", "iterated wreath power", acc.lo, acc.hi, c.text(), expr.n))
    return _res(acc.lo, acc.hi, steps)


def eval_rank(expr: g.GroupExpr, *, use_chains: bool = True) -> RankResult:
    """Evaluate the rank of a well-formed expression.

    ``use_chains=False`` disables the witnessing-chain rule for wreath
    products, leaving only the interval rules.
    """
    violations = g.well_formed(expr)
    if violations:
        raise IllFormedError(violations)
    return _eval(expr, use_chains)


def monolith_rank(expr: g.GroupExpr) -> Ordinal:
    """Rank of the monolith of a tree group over a topologically perfect child."""
    if not isinstance(expr, g.EX):
        raise HypothesisError("monolith rank is defined for EX nodes only")
    if not g.infer_attributes(expr.child).topologically_perfect:
        raise HypothesisError("EX child is not topologically perfect")
    violations = g.well_formed(expr)
    if violations:
        raise IllFormedError(violations)
    r = _eval(expr.child, True)
    if not r.exact:
        raise HypothesisError(f"child rank is not exact: {r.text()}")
    return add(omega_power(successor(leading_exponent(r.lo))), 1)


def residual_height(expr: g.GroupExpr) -> Ordinal:
    """rank - 1 for compactly generated nodes with exact rank."""
    if not g.infer_attributes(expr).compactly_generated:
        raise HypothesisError("residual height is exposed for compactly generated nodes only")
    return predecessor(eval_rank(expr).value)


__all__ = [
    "RankResult", "TraceStep", "eval_rank", "monolith_rank", "residual_height", "fn_replay",
    "OrdinalDomainError",
]
