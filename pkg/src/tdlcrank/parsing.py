"""Recursive-descent parsers and canonical printers.

Three text formats share one lexer:

* ordinals, e.g. ``w^(w+1)*2+w*3+5`` (the parser also accepts arbitrary
  sums, products and powers with parentheses and normalises them);
* group expressions, e.g. ``Wr(Pow(F(2,g),2), F(1,g))``;
* tree vertices ``(k,"word")`` and elements ``t^n ; { (k,"word"): (images), ... }``.

Errors carry the byte offset of the offending token in the UTF-8 input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Union

from . import groups as g
from .errors import ParseError
from .ordinal import OMEGA, Ordinal, add, mul, power, to_string

MAX_NESTING = 200
MAX_DIGITS = 4000
PUNCT = set("+*^(),;:{}-")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, STR, PUNCT, EOF
    text: str
    offset: int


def _describe(tok: Token) -> str:
    if tok.kind == "EOF":
        return "end of input"
    if tok.kind == "STR":
        return f'string "{tok.text}"'
    return repr(tok.text)


def _decode(data: Union[str, bytes]) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(exc.start, "UTF-8 text", "invalid byte") from None
    return data


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    i, n = 0, len(text)
    byte = 0  # byte offset of position i

    def width(s: str) -> int:
        return len(s.encode("utf-8", "surrogatepass"))

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            byte += 1
            continue
        start, bstart = i, byte
        if c.isascii() and c.isdigit():
            while i < n and text[i].isascii() and text[i].isdigit():
                i += 1
            lit = text[start:i]
            if len(lit) > MAX_DIGITS:
                raise ParseError(bstart, "a reasonably sized number", f"{len(lit)}-digit numeral")
            toks.append(Token("NUM", lit, bstart))
        elif c.isascii() and (c.isalpha() or c == "_"):
            while i < n and text[i].isascii() and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(Token("IDENT", text[start:i], bstart))
        elif c == '"':
            i += 1
            while i < n and text[i] != '"':
                i += 1
            if i >= n:
                raise ParseError(bstart, "closing quote", "end of input")
            i += 1
            toks.append(Token("STR", text[start + 1:i - 1], bstart))
        elif c in PUNCT:
            i += 1
            toks.append(Token("PUNCT", c, bstart))
        else:
            raise ParseError(bstart, "a token", repr(c))
        byte = bstart + width(text[start:i])
    toks.append(Token("EOF", "", byte))
    return toks


class _Parser:
    def __init__(self, data: Union[str, bytes]):
        self.text = _decode(data)
        self.toks = tokenize(self.text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def fail(self, expected: str, tok: Optional[Token] = None, message: Optional[str] = None):
        tok = tok or self.tok
        raise ParseError(tok.offset, expected, _describe(tok), message)

    def expect(self, text: str) -> Token:
        if self.tok.kind == "PUNCT" and self.tok.text == text:
            return self.advance()
        self.fail(repr(text))

    def at(self, text: str) -> bool:
        return self.tok.kind == "PUNCT" and self.tok.text == text

    def end(self):
        if self.tok.kind != "EOF":
            self.fail("end of input")

    def enter(self):
        self.depth += 1
        if self.depth > MAX_NESTING:
            self.fail(f"nesting depth at most {MAX_NESTING}")

    def leave(self):
        self.depth -= 1

    def nat(self) -> int:
        if self.tok.kind != "NUM":
            self.fail("a natural number")
        return int(self.advance().text)

    # -- ordinals ----------------------------------------------------------

    def ordinal(self) -> Ordinal:
        self.enter()
        acc = self.ord_product()
        while self.at("+"):
            self.advance()
            acc = add(acc, self.ord_product())
        self.leave()
        return acc

    def ord_product(self) -> Ordinal:
        acc = self.ord_power()
        while self.at("*"):
            self.advance()
            acc = mul(acc, self.ord_power())
        return acc

    def ord_power(self) -> Ordinal:
        base = self.ord_atom()
        if self.at("^"):
            self.advance()
            self.enter()
            exp = self.ord_power()  # right associative
            self.leave()
            return power(base, exp)
        return base

    def ord_atom(self) -> Ordinal:
        t = self.tok
        if t.kind == "NUM":
            return Ordinal(self.nat())
        if t.kind == "IDENT" and t.text == "w":
            self.advance()
            return OMEGA
        if self.at("("):
            self.advance()
            v = self.ordinal()
            self.expect(")")
            return v
        self.fail("a number, 'w' or '('")

    # -- group expressions -------------------------------------------------

    def group(self) -> g.GroupExpr:
        t = self.tok
        if t.kind != "IDENT":
            self.fail("a group expression")
        name = t.text
        if name not in _SIGNATURES:
            self.fail("a constructor name", message=f"unknown constructor {name!r}")
        self.advance()
        if name == "Trivial":
            if self.at("("):
                self.advance()
                self.expect(")")
            return g.Trivial()
        self.enter()
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.group_arg())
            while self.at(","):
                self.advance()
                args.append(self.group_arg())
        close = self.tok
        self.expect(")")
        self.leave()
        return _build(name, args, t, close)

    def group_arg(self):
        t = self.tok
        if t.kind == "NUM":
            return ("num", self.nat(), t)
        if t.kind == "IDENT":
            nxt = self.toks[self.pos + 1]
            if nxt.kind == "PUNCT" and nxt.text == "(":
                return ("expr", self.group(), t)
            self.advance()
            return ("ident", t.text, t)
        self.fail("an argument")


def _arity(name: str, want: str, args, tok: Token):
    raise ParseError(
        tok.offset, f"{name}({want})", f"{len(args)} argument(s)",
        f"arity error: {name} expects {want}, got {len(args)} argument(s)",
    )


def _as_expr(name, arg):
    kind, val, tok = arg
    if kind == "expr":
        return val
    if kind == "ident" and val == "Trivial":
        return g.Trivial()
    raise ParseError(tok.offset, "a group expression", repr(str(val)),
                     f"{name} expects a group expression here")


def _as_ident(name, arg):
    kind, val, tok = arg
    if kind == "ident":
        return val
    raise ParseError(tok.offset, "a name", repr(str(val)) if kind == "num" else "an expression",
                     f"{name} expects a name here")


def _as_nat(name, arg):
    kind, val, tok = arg
    if kind == "num":
        return val
    raise ParseError(tok.offset, "a natural number", repr(str(val)) if kind == "ident" else "an expression",
                     f"{name} expects a natural number here")


_SIGNATURES = {
    "Trivial": "", "Seed": "name", "Profinite": "name", "Discrete": "name[, fg][, perfect]",
    "Prod": "expr, ...", "LDP": "expr, inf|nat", "LDPfam": "name", "Ext": "expr, expr",
    "CoExt": "expr", "Wr": "expr, expr", "Pow": "expr, nat", "EX": "expr", "F": "nat, name",
    "Res": "expr",
}
_FIXED_ARITY = {
    "Seed": 1, "Profinite": 1, "LDP": 2, "LDPfam": 1, "Ext": 2, "CoExt": 1, "Wr": 2,
    "Pow": 2, "EX": 1, "F": 2, "Res": 1,
}


def _build(name: str, args, tok: Token, close: Token) -> g.GroupExpr:
    want = _SIGNATURES[name]
    if name in _FIXED_ARITY and len(args) != _FIXED_ARITY[name]:
        _arity(name, want, args, tok)
    if name == "Seed":
        return g.SeedAtom(_as_ident(name, args[0]))
    if name == "Profinite":
        return g.ProfiniteAtom(_as_ident(name, args[0]))
    if name == "Discrete":
        if not 1 <= len(args) <= 3:
            _arity(name, want, args, tok)
        ident = _as_ident(name, args[0])
        flags = [_as_ident(name, a) for a in args[1:]]
        for f, a in zip(flags, args[1:]):
            if f not in ("fg", "perfect"):
                raise ParseError(a[2].offset, "'fg' or 'perfect'", repr(f))
        if len(set(flags)) != len(flags):
            raise ParseError(args[-1][2].offset, "distinct flags", "repeated flag")
        return g.DiscreteAtom(ident, "fg" in flags, "perfect" in flags)
    if name == "Prod":
        if not args:
            _arity(name, want, args, tok)
        return g.Prod(tuple(_as_expr(name, a) for a in args))
    if name == "LDP":
        child = _as_expr(name, args[0])
        kind, val, t = args[1]
        if kind == "ident" and val == "inf":
            return g.LDP(child, None)
        if kind == "num":
            return g.LDP(child, val)
        raise ParseError(t.offset, "'inf' or a natural number", repr(str(val)))
    if name == "LDPfam":
        return g.LDPFamily(g.SeedAtom(_as_ident(name, args[0])))
    if name == "Ext":
        return g.Ext(_as_expr(name, args[0]), _as_expr(name, args[1]))
    if name == "CoExt":
        return g.CocompactExt(_as_expr(name, args[0]))
    if name == "Wr":
        return g.Wr(_as_expr(name, args[0]), _as_expr(name, args[1]))
    if name == "Pow":
        return g.Pow(_as_expr(name, args[0]), _as_nat(name, args[1]))
    if name == "EX":
        return g.EX(_as_expr(name, args[0]))
    if name == "F":
        return g.Fn(_as_nat(name, args[0]), g.SeedAtom(_as_ident(name, args[1])))
    if name == "Res":
        return g.Res(_as_expr(name, args[0]))
    raise AssertionError(name)


# -- public API -------------------------------------------------------------


def parse_ordinal(text: Union[str, bytes]) -> Ordinal:
    p = _Parser(text)
    v = p.ordinal()
    p.end()
    return v


def print_ordinal(o: Ordinal) -> str:
    return to_string(o)


def parse_group_expr(text: Union[str, bytes]) -> g.GroupExpr:
    p = _Parser(text)
    e = p.group()
    p.end()
    return e


def print_group_expr(e: g.GroupExpr) -> str:
    # explicit stack so very deep trees print without recursion limits
    out: List[str] = []
    stack: list = [e]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        parts = _print_parts(item)
        stack.extend(reversed(parts))
    return "".join(out)


def _print_parts(e: g.GroupExpr) -> list:
    if isinstance(e, g.Trivial):
        return ["Trivial"]
    if isinstance(e, g.SeedAtom):
        return [f"Seed({e.name})"]
    if isinstance(e, g.ProfiniteAtom):
        return [f"Profinite({e.name})"]
    if isinstance(e, g.DiscreteAtom):
        flags = (["fg"] if e.finitely_generated else []) + (["perfect"] if e.topologically_perfect else [])
        return [f"Discrete({','.join([e.name] + flags)})"]
    if isinstance(e, g.Prod):
        parts: list = ["Prod("]
        for i, f in enumerate(e.factors):
            if i:
                parts.append(",")
            parts.append(f)
        return parts + [")"]
    if isinstance(e, g.LDP):
        m = "inf" if e.multiplicity is None else str(e.multiplicity)
        return ["LDP(", e.child, f",{m})"]
    if isinstance(e, g.LDPFamily):
        return [f"LDPfam({e.seed.name})"]
    if isinstance(e, g.Ext):
        return ["Ext(", e.normal, ",", e.quotient, ")"]
    if isinstance(e, g.CocompactExt):
        return ["CoExt(", e.normal, ")"]
    if isinstance(e, g.Wr):
        return ["Wr(", e.L, ",", e.K, ")"]
    if isinstance(e, g.Pow):
        return ["Pow(", e.child, f",{e.n})"]
    if isinstance(e, g.EX):
        return ["EX(", e.child, ")"]
    if isinstance(e, g.Fn):
        return [f"F({e.n},{e.seed.name})"]
    if isinstance(e, g.Res):
        return ["Res(", e.child, ")"]
    raise TypeError(f"unknown node {e!r}")


# -- tree formats -----------------------------------------------------------


def _int(p: _Parser) -> int:
    neg = False
    if p.at("-"):
        p.advance()
        neg = True
    v = p.nat()
    return -v if neg else v


def _vertex(p: _Parser, b: Optional[int]):
    from .tree import TreeError, TreeVertex

    start = p.expect("(")
    k = _int(p)
    p.expect(",")
    t = p.tok
    if t.kind != "STR":
        p.fail("a quoted color word")
    p.advance()
    p.expect(")")
    if not all(c.isascii() and c.isdigit() for c in t.text):
        raise ParseError(t.offset, "a word of decimal colors", repr(t.text))
    w = tuple(int(c) for c in t.text)
    if b is not None and any(x >= b for x in w):
        raise ParseError(t.offset, f"colors below {b}", repr(t.text))
    try:
        return TreeVertex(k, w)
    except TreeError as exc:
        raise ParseError(start.offset, "a canonical vertex", repr(t.text), str(exc)) from None


def parse_vertex(text: Union[str, bytes], branching: Optional[int] = None):
    p = _Parser(text)
    v = _vertex(p, branching)
    p.end()
    return v


def parse_automorphism(text: Union[str, bytes], branching: Optional[int] = None):
    from .tree import TreeAutomorphism, TreeError

    p = _Parser(text)
    t = p.tok
    if not (t.kind == "IDENT" and t.text == "t"):
        p.fail("'t'")
    p.advance()
    p.expect("^")
    n = _int(p)
    p.expect(";")
    p.expect("{")
    entries = []
    while not p.at("}"):
        if entries:
            p.expect(",")
            if p.at("}"):
                break
        v = _vertex(p, branching)
        p.expect(":")
        ptok = p.expect("(")
        images = [p.nat()]
        while p.at(","):
            p.advance()
            images.append(p.nat())
        p.expect(")")
        entries.append((v, tuple(images), ptok))
    p.expect("}")
    p.end()
    if branching is None:
        branching = len(entries[0][1]) if entries else 3
    for v, images, ptok in entries:
        if len(images) != branching or sorted(images) != list(range(branching)):
            raise ParseError(ptok.offset, f"a permutation of 0..{branching - 1}", str(images))
    seen = set()
    for v, _, ptok in entries:
        if v in seen:
            raise ParseError(ptok.offset, "distinct vertices", f"repeated vertex {v}")
        seen.add(v)
    try:
        return TreeAutomorphism(n, tuple((v, im) for v, im, _ in entries), branching)
    except TreeError as exc:
        raise ParseError(0, "a valid element", "invalid entries", str(exc)) from None
