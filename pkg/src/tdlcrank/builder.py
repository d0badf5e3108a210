"""Build a group expression with a prescribed rank below w^w + 2."""

from __future__ import annotations

from . import groups as g
from .errors import OrdinalDomainError
from .ordinal import OMEGA, Ordinal, add, coerce, is_limit, omega_power, successor

OMEGA_OMEGA_PLUS_1 = add(omega_power(OMEGA), 1)


def build_group(target, seed: str = "s") -> g.GroupExpr:
    """Return an expression whose evaluated rank is exactly ``target``.

    Write ``target = sum_{i>=1} w^i * a_i + f``.  The expression is a
    right-nested wreath product of the powers ``Pow(F(i), a_i)``, highest
    ``i`` first, with ``Pow(F(0), f - 2)`` as the innermost factor when
    ``f >= 3``.  ``f = 1`` is handled as the residual of ``target + 1``.
    """
    target = coerce(target)
    s = g.SeedAtom(seed)
    if target == OMEGA_OMEGA_PLUS_1:
        return g.LDPFamily(s)
    if target.is_zero():
        raise OrdinalDomainError("no group has rank 0")
    if is_limit(target):
        raise OrdinalDomainError(f"ranks are successors; {target} is a limit")
    if target > OMEGA_OMEGA_PLUS_1:
        raise OrdinalDomainError(f"{target} exceeds w^w+1")
    coeffs = {}
    f = 0
    for e, c in target.terms:
        if e.is_zero():
            f = c
        else:
            # target < w^w, so every exponent is finite
            coeffs[e.to_int()] = c
    if not coeffs:
        return g.make_pow(s, f - 1)
    if f == 1:
        return g.Res(build_group(successor(target), seed))
    layers = [g.make_pow(g.Fn(i, s), coeffs[i]) for i in sorted(coeffs, reverse=True)]
    if f >= 3:
        layers.append(g.make_pow(g.Fn(0, s), f - 2))
    out = layers[-1]
    for layer in reversed(layers[:-1]):
        out = g.Wr(layer, out)
    return out


def build_and_verify(target, seed: str = "s"):
    """Build, evaluate, and check the fixpoint; returns ``(expr, result)``."""
    from .rank import eval_rank

    target = coerce(target)
    expr = build_group(target, seed)
    res = eval_rank(expr)
    if not (res.exact and res.lo == target):
        raise AssertionError(f"builder fixpoint failed: {target} -> {res.text()}")
    return expr, res


__all__ = ["build_group", "build_and_verify", "Ordinal"]
