"""Cantor normal form ordinals below epsilon_0.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents and positive integer coefficients.  The empty
tuple is ``0``.  Because the representation is unique, structural equality is
ordinal equality, and values hash like the ``int`` they equal when finite.

All arithmetic is the ordinal (non-commutative) arithmetic::

    >>> from tdlcrank.ordinal import OMEGA, Ordinal
    >>> Ordinal(2) + OMEGA == OMEGA
    True
    >>> OMEGA + 2 > OMEGA
    True
    >>> str(OMEGA * 2 + 1)
    'w*2+1'
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import OrdinalDomainError, OrdinalError, OrdinalOverflowError

DEFAULT_DEPTH_LIMIT = 32
# Largest finite exponent accepted when the base is infinite; beyond this the
# result has an unmanageable number of terms.
MAX_FINITE_EXPONENT = 10_000
# Largest bit length of a finite coefficient produced by exponentiation.
MAX_COEFFICIENT_BITS = 1_000_000

OrdinalLike = Union["Ordinal", int]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True, eq=False, repr=False)
class Ordinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    ``Ordinal(n)`` builds a finite ordinal.  Passing a tuple of terms is
    allowed only when it is already normal; use :func:`normalize` otherwise.
    """

    terms: tuple = ()

    def __post_init__(self):
        t = self.terms
        if isinstance(t, bool):
            raise OrdinalError("bool is not an ordinal")
        if isinstance(t, int):
            if t < 0:
                raise OrdinalError(f"negative integer {t} is not an ordinal")
            object.__setattr__(self, "terms", () if t == 0 else ((ZERO_TERMS_SENTINEL, t),))
            return
        if not isinstance(t, tuple):
            raise OrdinalError(f"cannot build an ordinal from {type(t).__name__}")
        _check_normal(t)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def to_int(self) -> int:
        if not self.is_finite():
            raise OrdinalDomainError(f"{self} is infinite")
        return self.finite_part()

    def __int__(self) -> int:
        return self.to_int()

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_finite():
            return hash(self.finite_part())
        return hash(self.terms)

    def __lt__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _cmp(self, other) < 0

    def __le__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _cmp(self, other) <= 0

    def __gt__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _cmp(self, other) > 0

    def __ge__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return _cmp(self, other) >= 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else add(self, other)

    def __radd__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else add(other, self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else mul(self, other)

    def __rmul__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else mul(other, self)

    def __pow__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else power(self, other)

    def __rpow__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else power(other, self)

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"Ordinal({to_string(self)!r})"


def _check_normal(terms: tuple) -> None:
    prev = None
    for item in terms:
        if not (isinstance(item, tuple) and len(item) == 2):
            raise OrdinalError(f"malformed term {item!r}")
        e, c = item
        if not isinstance(e, Ordinal):
            raise OrdinalError(f"exponent {e!r} is not an Ordinal")
        if isinstance(c, bool) or not isinstance(c, int) or c < 1:
            raise OrdinalError(f"coefficient {c!r} must be a positive integer")
        if prev is not None and _cmp(prev, e) <= 0:
            raise OrdinalError("exponents must be strictly decreasing; use normalize()")
        prev = e


# Exponent 0 is needed while constructing finite ordinals, before ZERO exists.
ZERO_TERMS_SENTINEL = object.__new__(Ordinal)
object.__setattr__(ZERO_TERMS_SENTINEL, "terms", ())
ZERO = ZERO_TERMS_SENTINEL
ONE = Ordinal(1)
OMEGA = Ordinal(((ONE, 1),))


def coerce(x: OrdinalLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal(x)
    raise OrdinalError(f"cannot interpret {x!r} as an ordinal")


def _coerce_or_none(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        if x < 0:
            return None
        return Ordinal(x)
    return None


def omega_power(e: OrdinalLike, c: int = 1) -> Ordinal:
    """Return ``w^e * c``."""
    if c == 0:
        return ZERO
    return Ordinal(((coerce(e), c),))


# -- core operations -------------------------------------------------------


def normalize(raw: Iterable) -> Ordinal:
    """Canonicalise a sequence of ``(exponent, coefficient)`` pairs.

    The pairs are read as the *commutative* sum of their monomials: equal
    exponents are merged, zero coefficients dropped and exponents sorted
    descending.  This is a canonicaliser for term lists, not ordinal addition.
    """
    merged: dict = {}
    for e, c in raw:
        e = coerce(e)
        if isinstance(c, bool) or not isinstance(c, int):
            raise OrdinalError(f"coefficient {c!r} is not an integer")
        if c < 0:
            raise OrdinalError(f"negative coefficient {c}")
        merged[e] = merged.get(e, 0) + c
    items = [(e, c) for e, c in merged.items() if c > 0]
    items.sort(key=_SortKey, reverse=True)
    return Ordinal(tuple(items))


class _SortKey:
    __slots__ = ("e",)

    def __init__(self, item):
        self.e = item[0]

    def __lt__(self, other):
        return _cmp(self.e, other.e) < 0


def _cmp(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    at, bt = a.terms, b.terms
    for (ea, ca), (eb, cb) in zip(at, bt):
        r = _cmp(ea, eb)
        if r:
            return r
        if ca != cb:
            return -1 if ca < cb else 1
    if len(at) == len(bt):
        return 0
    return -1 if len(at) < len(bt) else 1


def compare(a: OrdinalLike, b: OrdinalLike) -> Ordering:
    return Ordering(_cmp(coerce(a), coerce(b)))


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = coerce(a), coerce(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    head_e, head_c = b.terms[0]
    kept = []
    for e, c in a.terms:
        r = _cmp(e, head_e)
        if r > 0:
            kept.append((e, c))
        elif r == 0:
            kept.append((e, c + head_c))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = coerce(a), coerce(b)
    if not a.terms or not b.terms:
        return ZERO
    lead_e, lead_c = a.terms[0]
    out = []
    for e, c in b.terms:
        if e.terms:
            out.append((add(lead_e, e), c))
        else:
            # a * c for finite c: only the leading coefficient scales
            out.append((lead_e, lead_c * c))
            out.extend(a.terms[1:])
    # exponents lead_e + e are strictly decreasing in e, and all exceed the
    # exponents of a's tail, so `out` is already normal
    return Ordinal(tuple(out))


def depth(a: OrdinalLike) -> int:
    """Nesting depth: 0 for zero, 1 for nonzero finite, else 1 + max exponent depth."""
    a = coerce(a)
    if not a.terms:
        return 0
    return 1 + max(depth(e) for e, _ in a.terms)


def _split(b: Ordinal):
    """Split ``b`` into its infinite part and its finite part."""
    n = b.finite_part()
    if n:
        return Ordinal(b.terms[:-1]), n
    return b, 0


def _finite_power(a: Ordinal, n: int) -> Ordinal:
    result = ONE
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def power(a: OrdinalLike, b: OrdinalLike, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Ordinal:
    """Ordinal exponentiation ``a^b`` with a bound on the nesting depth."""
    a, b = coerce(a), coerce(b)
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    b_inf, n = _split(b)
    if a.is_finite():
        k = a.finite_part()
        if b_inf.terms:
            # k^(w*d) = w^d, where d has each exponent e replaced by -1+e
            d = Ordinal(tuple((_minus_one_plus(e), c) for e, c in b_inf.terms))
            head = omega_power(d)
        else:
            head = ONE
        if n and k.bit_length() * n > MAX_COEFFICIENT_BITS:
            raise OrdinalOverflowError(f"{k}^{n} is too large")
        result = mul(head, Ordinal(k**n)) if n else head
    else:
        if n > MAX_FINITE_EXPONENT:
            raise OrdinalOverflowError(f"finite exponent {n} exceeds {MAX_FINITE_EXPONENT}")
        lead = a.terms[0][0]
        head = omega_power(mul(lead, b_inf)) if b_inf.terms else ONE
        result = mul(head, _finite_power(a, n)) if n else head
    if depth(result) > depth_limit:
        raise OrdinalOverflowError(f"result depth {depth(result)} exceeds limit {depth_limit}")
    return result


def _minus_one_plus(e: Ordinal) -> Ordinal:
    if e.is_finite():
        return Ordinal(e.finite_part() - 1)
    return e


# -- successor structure ---------------------------------------------------


def successor(a: OrdinalLike) -> Ordinal:
    return add(a, ONE)


def predecessor(a: OrdinalLike) -> Ordinal:
    a = coerce(a)
    f = a.finite_part()
    if f == 0:
        what = "0" if not a.terms else f"limit ordinal {a}"
        raise OrdinalDomainError(f"predecessor of {what} is undefined")
    if f == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((ZERO, f - 1),))


def is_limit(a: OrdinalLike) -> bool:
    a = coerce(a)
    return bool(a.terms) and a.finite_part() == 0


def is_successor(a: OrdinalLike) -> bool:
    return coerce(a).finite_part() > 0


def leading_exponent(a: OrdinalLike) -> Ordinal:
    a = coerce(a)
    if not a.terms:
        raise OrdinalDomainError("leading exponent of 0 is undefined")
    return a.terms[0][0]


def max_ordinal(*values: OrdinalLike) -> Ordinal:
    if not values:
        raise OrdinalError("max of no ordinals")
    best = coerce(values[0])
    for v in values[1:]:
        v = coerce(v)
        if _cmp(v, best) > 0:
            best = v
    return best


# -- families and sup+ -----------------------------------------------------


@dataclass(frozen=True)
class FiniteSet:
    values: tuple

    def __post_init__(self):
        vals = tuple(coerce(v) for v in self.values)
        if not vals:
            raise OrdinalError("FiniteSet must be nonempty")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class ConstantRepeated:
    value: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "value", coerce(self.value))


@dataclass(frozen=True)
class Linear:
    """The sequence ``n -> base + step*n``."""

    base: Ordinal
    step: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "base", coerce(self.base))
        object.__setattr__(self, "step", coerce(self.step))
        if not self.step.terms:
            raise OrdinalError("Linear step must be nonzero")

    def __getitem__(self, n: int) -> Ordinal:
        return add(self.base, mul(self.step, n))


@dataclass(frozen=True)
class PowerOfOmega:
    """The sequence ``n -> w^n*scale + offset``."""

    scale: int = 1
    offset: Ordinal = ZERO

    def __post_init__(self):
        if isinstance(self.scale, bool) or not isinstance(self.scale, int) or self.scale < 1:
            raise OrdinalError("PowerOfOmega scale must be a positive integer")
        off = coerce(self.offset)
        if off >= omega_power(OMEGA):
            raise OrdinalError("PowerOfOmega offset must be below w^w")
        object.__setattr__(self, "offset", off)

    def __getitem__(self, n: int) -> Ordinal:
        return add(omega_power(n, self.scale), self.offset)


Family = Union[FiniteSet, ConstantRepeated, Linear, PowerOfOmega]


def _adjust(s: Ordinal) -> Ordinal:
    return s if is_successor(s) else successor(s)


def sup(family: Family) -> Ordinal:
    """Plain supremum of a family."""
    if isinstance(family, FiniteSet):
        return max_ordinal(*family.values)
    if isinstance(family, ConstantRepeated):
        return family.value
    if isinstance(family, Linear):
        return add(family.base, mul(family.step, OMEGA))
    if isinstance(family, PowerOfOmega):
        return omega_power(OMEGA)
    raise OrdinalError(f"unsupported family {family!r}")


def sup_plus(family: Family) -> Ordinal:
    """Supremum, bumped to its successor unless it is already a successor."""
    return _adjust(sup(family))


# -- printing --------------------------------------------------------------


def _exponent_text(e: Ordinal) -> str:
    if e.is_finite() or e == OMEGA:
        return to_string(e)
    return f"({to_string(e)})"


def to_string(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        base = "w" if e == ONE else f"w^{_exponent_text(e)}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)
