"""Finitely supported automorphisms of the colored directed tree.

Vertices are ``(k, w)``: start at level ``k`` of the monochromatic line and
walk inward along the colors in ``w``.  Color ``0`` is the line color, so a
canonical word never starts with ``0``.  Edges point outward, towards the
fixed end; ``eta`` drops by one per inward step.

An automorphism is stored as ``t^n . p`` where ``p`` fixes the line far up
and is given by its finitely many non-identity local actions.  Local actions
are source-indexed: ``sigma(g, v)`` sends the color of an in-neighbor ``u``
of ``v`` to the color of ``g(u)`` as an in-neighbor of ``g(v)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import HypothesisError, TdlcRankError

LocalPerm = Tuple[int, ...]


class TreeError(TdlcRankError, ValueError):
    """Invalid tree input: bad color, non-line vertex, empty window, ..."""


# -- permutations ------------------------------------------------------------


def perm_identity(b: int) -> LocalPerm:
    return tuple(range(b))


def perm_compose(p: LocalPerm, q: LocalPerm) -> LocalPerm:
    """``p after q``."""
    return tuple(p[x] for x in q)


def perm_inverse(p: LocalPerm) -> LocalPerm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def is_identity(p: LocalPerm) -> bool:
    return all(x == y for x, y in enumerate(p))


def check_perm(p: Sequence[int], b: int) -> LocalPerm:
    p = tuple(p)
    if len(p) != b or sorted(p) != list(range(b)):
        raise TreeError(f"{p} is not a permutation of range({b})")
    return p


def generated_group(gens: Iterable[LocalPerm], b: int) -> set:
    """Closure of ``gens`` under composition inside Sym(b)."""
    ident = perm_identity(b)
    gens = [tuple(g) for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = perm_compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def colors_to_zero(gens: Sequence[LocalPerm], b: int) -> Dict[int, LocalPerm]:
    """For each color x in the orbit of 0, an element of <gens> sending x to 0.

    Schreier-tree search on colors, so <gens> itself is never enumerated.
    """
    out = {0: perm_identity(b)}
    queue = deque([0])
    while queue:
        y = queue.popleft()
        for p in gens:
            x = perm_inverse(p)[y]
            if x not in out:
                out[x] = perm_compose(out[y], p)
                queue.append(x)
    return out


# -- vertices ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TreeVertex:
    k: int
    w: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        if self.w and self.w[0] == 0:
            raise TreeError(f"non-canonical vertex ({self.k}, {self.w}): word starts with 0")
        if any(x < 0 for x in self.w):
            raise TreeError("negative color")

    @property
    def eta(self) -> int:
        return self.k - len(self.w)

    @property
    def color(self) -> int:
        return self.w[-1] if self.w else 0

    @property
    def on_line(self) -> bool:
        return not self.w

    def __str__(self) -> str:
        return f"({self.k},\"{''.join(str(x) for x in self.w)}\")"


def eta(v: TreeVertex) -> int:
    return v.eta


def color_of(v: TreeVertex) -> int:
    return v.color


def in_neighbor(v: TreeVertex, x: int, b: Optional[int] = None) -> TreeVertex:
    if x < 0 or (b is not None and x >= b):
        raise TreeError(f"color {x} out of range")
    if not v.w:
        return TreeVertex(v.k - 1) if x == 0 else TreeVertex(v.k, (x,))
    return TreeVertex(v.k, v.w + (x,))


def out_neighbor(v: TreeVertex) -> TreeVertex:
    if not v.w:
        return TreeVertex(v.k + 1)
    return TreeVertex(v.k, v.w[:-1])


def inward_path(anchor_level: int, v: TreeVertex) -> List[int]:
    """Colors leading from line vertex ``(anchor_level, "")`` inward to ``v``."""
    if v.k > anchor_level:
        raise TreeError(f"{v} is not below level {anchor_level}")
    return [0] * (anchor_level - v.k) + list(v.w)


def vertex_from_path(anchor_level: int, colors: Iterable[int]) -> TreeVertex:
    v = TreeVertex(anchor_level)
    for x in colors:
        v = in_neighbor(v, x)
    return v


def canonical_vertices(eta_min: int, eta_max: int, wmax: int, b: int) -> List[TreeVertex]:
    """All canonical vertices with ``eta_min <= eta <= eta_max`` and ``|w| <= wmax``."""
    out = []
    for length in range(wmax + 1):
        if length == 0:
            words = [()]
        else:
            words = [(a,) + rest for a in range(1, b) for rest in iproduct(range(b), repeat=length - 1)]
        for e in range(eta_min, eta_max + 1):
            for w in words:
                out.append(TreeVertex(e + length, w))
    return sorted(out)


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class TreeAutomorphism:
    """``t^translation . p`` with ``p`` given by its non-identity local actions."""

    translation: int = 0
    sigma: Tuple[Tuple[TreeVertex, LocalPerm], ...] = ()
    branching: int = 3

    def __post_init__(self):
        items = self.sigma.items() if isinstance(self.sigma, dict) else self.sigma
        clean = {}
        for v, p in items:
            p = check_perm(p, self.branching)
            if not isinstance(v, TreeVertex):
                v = TreeVertex(*v)
            if any(x >= self.branching for x in v.w):
                raise TreeError(f"vertex {v} uses a color >= {self.branching}")
            if not is_identity(p):
                clean[v] = p
        object.__setattr__(self, "sigma", tuple(sorted(clean.items())))

    @cached_property
    def table(self) -> Dict[TreeVertex, LocalPerm]:
        return dict(self.sigma)

    @property
    def support(self) -> List[TreeVertex]:
        return [v for v, _ in self.sigma]

    def is_identity(self) -> bool:
        return self.translation == 0 and not self.sigma

    def __str__(self) -> str:
        return format_automorphism(self)


def identity(b: int = 3) -> TreeAutomorphism:
    return TreeAutomorphism(0, (), b)


def translation(n: int = 1, b: int = 3) -> TreeAutomorphism:
    return TreeAutomorphism(n, (), b)


def local_at(v: TreeVertex, perm: Sequence[int], b: Optional[int] = None) -> TreeAutomorphism:
    """The element acting by ``perm`` at ``v`` and trivially elsewhere."""
    b = len(perm) if b is None else b
    return TreeAutomorphism(0, ((v, tuple(perm)),), b)


def local_action(g: TreeAutomorphism, v: TreeVertex) -> LocalPerm:
    return g.table.get(v, perm_identity(g.branching))


def _apply_p(g: TreeAutomorphism, v: TreeVertex) -> TreeVertex:
    levels = [s.k for s, _ in g.sigma]
    anchor = 1 + max([v.k] + levels)
    src = cur = TreeVertex(anchor)
    table = g.table
    for x in inward_path(anchor, v):
        # local actions are indexed by the source vertex
        p = table.get(src)
        cur = in_neighbor(cur, p[x] if p is not None else x)
        src = in_neighbor(src, x)
    return cur


def apply(g: TreeAutomorphism, v: TreeVertex) -> TreeVertex:
    u = _apply_p(g, v) if g.sigma else v
    return TreeVertex(u.k + g.translation, u.w) if g.translation else u


def _shift(v: TreeVertex, m: int) -> TreeVertex:
    return TreeVertex(v.k + m, v.w)


def conj_by_t(g: TreeAutomorphism, m: int) -> TreeAutomorphism:
    """``t^m g t^-m``: every support vertex moves up ``m`` levels."""
    return TreeAutomorphism(
        g.translation, tuple((_shift(v, m), p) for v, p in g.sigma), g.branching
    )


def inverse(g: TreeAutomorphism) -> TreeAutomorphism:
    # sigma(g^-1, g(s)) = sigma(g, s)^-1, and t^n p inverts to t^-n (t^n p^-1 t^-n)
    p = TreeAutomorphism(0, g.sigma, g.branching)
    inv_sigma = tuple((_apply_p(p, s), perm_inverse(q)) for s, q in g.sigma)
    return conj_by_t(TreeAutomorphism(-g.translation, inv_sigma, g.branching), g.translation)


def compose(g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
    """The automorphism acting as ``g`` after ``h``."""
    if g.branching != h.branching:
        raise TreeError("branching mismatch")
    if not g.sigma:
        return TreeAutomorphism(g.translation + h.translation, h.sigma, h.branching)
    hinv = inverse(h)
    candidates = set(h.table)
    candidates.update(apply(hinv, s) for s in g.table)
    ident = perm_identity(g.branching)
    sigma = []
    for v in candidates:
        q = perm_compose(g.table.get(apply(h, v), ident), h.table.get(v, ident))
        sigma.append((v, q))
    return TreeAutomorphism(g.translation + h.translation, tuple(sigma), g.branching)


def compose_all(elements: Sequence[TreeAutomorphism], b: int = 3) -> TreeAutomorphism:
    out = identity(b)
    for e in elements:
        out = compose(out, e)
    return out


def decompose(g: TreeAutomorphism) -> Tuple[int, TreeAutomorphism]:
    """``g = t^n . p`` with ``p`` translation-free."""
    return g.translation, TreeAutomorphism(0, g.sigma, g.branching)


def check_subgroup(U: Iterable[LocalPerm], b: int) -> frozenset:
    U = frozenset(tuple(u) for u in U)
    if perm_identity(b) not in U:
        raise TreeError("U must contain the identity")
    for p in U:
        check_perm(p, b)
        for q in U:
            if perm_compose(p, q) not in U:
                raise TreeError("U is not closed under composition")
    return U


def singularities(g: TreeAutomorphism, U: Iterable[LocalPerm]) -> set:
    U = check_subgroup(U, g.branching)
    return {v for v, p in g.sigma if p not in U}


def stabilizer(b: int, x: int = 0) -> set:
    from itertools import permutations

    return {p for p in permutations(range(b)) if p[x] == x}


# -- horoballs ---------------------------------------------------------------


def max_moved_level(p: TreeAutomorphism) -> Optional[int]:
    if p.translation:
        raise TreeError("max_moved_level needs a translation-free element")
    if not p.sigma:
        return None
    return max(v.eta - 1 for v, _ in p.sigma)


def in_horoball_fixator(p: TreeAutomorphism, n: int) -> bool:
    m = max_moved_level(p)
    return m is None or m < n


# -- transitivity ------------------------------------------------------------


def gamma_for_geodesic(
    w: TreeVertex, v: TreeVertex, G: Sequence[LocalPerm], b: int = 3
) -> TreeAutomorphism:
    """An element of <G at v, t> moving ``w`` onto the line vertex ``v``.

    The result only has non-identity local actions at the vertices of the
    geodesic strictly past ``w``; both post-conditions are checked.
    """
    if not v.on_line:
        raise TreeError(f"{v} is not on the monochromatic line")
    if w.k > v.k:
        raise TreeError(f"no directed geodesic from {w} to {v}")
    to_zero = colors_to_zero([check_perm(p, b) for p in G], b)
    if len(to_zero) != b:
        raise HypothesisError("G does not act transitively on the colors")
    path = [w]
    while path[-1] != v:
        path.append(out_neighbor(path[-1]))
    # path = w_0, ..., w_n = v; build gamma for w_i from gamma for w_{i+1}
    gamma = identity(b)
    t = translation(1, b)
    for i in range(len(path) - 2, -1, -1):
        u = apply(gamma, path[i])
        g = local_at(v, to_zero[u.color], b)
        gamma = compose(t, compose(g, gamma))
    if apply(gamma, w) != v:
        raise AssertionError("gamma does not map w to v")
    allowed = set(path[1:])
    if not set(gamma.support) <= allowed:
        raise AssertionError("gamma has local actions off the geodesic")
    return gamma


def orbit(
    generators: Sequence[TreeAutomorphism],
    start: TreeVertex,
    eta_min: int,
    eta_max: int,
    wmax: int,
    pad: int = 2,
) -> List[TreeVertex]:
    """Vertices of the window reachable from ``start`` under the generators."""
    if eta_min > eta_max or wmax < 0:
        raise TreeError("empty window")
    if not generators:
        raise TreeError("orbit needs at least one generator")
    moves = list(generators) + [inverse(x) for x in generators]

    def inside(u: TreeVertex, slack: int) -> bool:
        return eta_min - slack <= u.eta <= eta_max + slack and len(u.w) <= wmax + slack

    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for m in moves:
            x = apply(m, u)
            if x not in seen and inside(x, pad):
                seen.add(x)
                queue.append(x)
    return sorted(u for u in seen if inside(u, 0))


# -- wreath embedding --------------------------------------------------------


@dataclass(frozen=True)
class WreathElement:
    """An element of the m-fold iterated wreath power of Sym(b), in portrait form.

    ``perms`` maps address words of length < m to local permutations, and the
    element acts on words ``u`` of length m letter by letter: the i-th letter
    is permuted by the entry at the image-independent address ``u[:i]``.
    """

    m: int
    perms: Tuple[Tuple[Tuple[int, ...], LocalPerm], ...] = ()
    branching: int = 3

    def __post_init__(self):
        items = self.perms.items() if isinstance(self.perms, dict) else self.perms
        clean = {}
        for a, p in items:
            a = tuple(a)
            if len(a) >= self.m or any(not 0 <= x < self.branching for x in a):
                raise TreeError(f"address {a} outside depth {self.m}")
            p = check_perm(p, self.branching)
            if not is_identity(p):
                clean[a] = p
        object.__setattr__(self, "perms", tuple(sorted(clean.items())))

    @cached_property
    def table(self) -> dict:
        return dict(self.perms)

    def at(self, address: Tuple[int, ...]) -> LocalPerm:
        return self.table.get(tuple(address), perm_identity(self.branching))

    def act(self, u: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.at(tuple(u[:i]))[x] for i, x in enumerate(u))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        """Imprimitive product: ``(a*b).act == a.act after b.act``."""
        if (self.m, self.branching) != (other.m, other.branching):
            raise TreeError("wreath elements of different shapes")
        addrs = set(self.table) | set(other.table)
        # a's entry at b(u) also matters, so pull a's addresses back through b
        inv = other.inverse()
        addrs |= {inv.act(a) for a in self.table}
        perms = [(u, perm_compose(self.at(other.act(u)), other.at(u))) for u in addrs]
        return WreathElement(self.m, tuple(perms), self.branching)

    def inverse(self) -> "WreathElement":
        perms = [(self.act(u), perm_inverse(p)) for u, p in self.perms]
        return WreathElement(self.m, tuple(perms), self.branching)


def address_vertex(address: Sequence[int]) -> TreeVertex:
    """Vertex reached from ``v0 = (0, "")`` by walking inward along ``address``."""
    return vertex_from_path(0, address)


def vertex_address(v: TreeVertex) -> Tuple[int, ...]:
    if v.k > 0:
        raise TreeError(f"{v} is not below v0")
    return tuple(inward_path(0, v))


def embed_wreath(x: WreathElement) -> TreeAutomorphism:
    return TreeAutomorphism(
        0, tuple((address_vertex(a), p) for a, p in x.perms), x.branching
    )


def extract_wreath(g: TreeAutomorphism, m: int) -> WreathElement:
    if g.translation:
        raise TreeError("extract needs a translation-free element")
    perms = []
    for v, p in g.sigma:
        a = vertex_address(v)
        if len(a) > m - 1:
            raise TreeError(f"support vertex {v} lies deeper than {m - 1} under v0")
        perms.append((a, p))
    return WreathElement(m, tuple(perms), g.branching)


def random_wreath(rng: random.Random, m: int, b: int = 3, density: float = 0.5) -> WreathElement:
    perms = []
    for length in range(m):
        for a in iproduct(range(b), repeat=length):
            if rng.random() < density:
                perms.append((a, tuple(rng.sample(range(b), b))))
    return WreathElement(m, tuple(perms), b)


# -- random elements ---------------------------------------------------------


def random_vertex(rng: random.Random, b: int = 3, kmin: int = -6, kmax: int = 6, wmax: int = 4) -> TreeVertex:
    k = rng.randint(kmin, kmax)
    length = rng.randint(0, wmax)
    if length == 0:
        return TreeVertex(k)
    w = (rng.randrange(1, b),) + tuple(rng.randrange(b) for _ in range(length - 1))
    return TreeVertex(k, w)


def random_automorphism(
    rng: random.Random,
    b: int = 3,
    max_support: int = 4,
    max_translation: int = 2,
    kmin: int = -6,
    kmax: int = 6,
    wmax: int = 4,
) -> TreeAutomorphism:
    n = rng.randint(-max_translation, max_translation)
    sigma = []
    for _ in range(rng.randint(0, max_support)):
        v = random_vertex(rng, b, kmin, kmax, wmax)
        sigma.append((v, tuple(rng.sample(range(b), b))))
    return TreeAutomorphism(n, tuple(sigma), b)


def random_translation_free(rng: random.Random, b: int = 3, **kw) -> TreeAutomorphism:
    return decompose(random_automorphism(rng, b, **kw))[1]


def support_closure(g: TreeAutomorphism, h: TreeAutomorphism) -> set:
    """Vertices where sigma(g o h) can differ from the identity, plus their images."""
    hinv = inverse(h)
    out = set(h.table) | {apply(hinv, s) for s in g.table}
    return out | {apply(h, v) for v in out}


# -- text format -------------------------------------------------------------


def format_automorphism(g: TreeAutomorphism) -> str:
    body = ", ".join(f"{v}: ({','.join(str(x) for x in p)})" for v, p in g.sigma)
    return f"t^{g.translation} ; {{{(' ' + body + ' ') if body else ''}}}"


def sym_generators(b: int) -> List[LocalPerm]:
    """A transposition and a b-cycle; together they generate Sym(b)."""
    swap = list(range(b))
    if b >= 2:
        swap[0], swap[1] = 1, 0
    cycle = tuple((x + 1) % b for x in range(b))
    return [tuple(swap), cycle]

