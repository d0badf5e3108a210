"""Randomised identity checks for the tree simulator.

Each check draws its cases from a seeded ``random.Random`` and returns a
:class:`CheckResult`; nothing here raises on a failed identity, so callers can
report every check.  The CLI ``tree selftest`` and the acceptance tests both
use these functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import List

from . import tree as T


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < 5:
            self.failures.append(msg)
        else:
            self.failures[-1] = "..."

    def as_dict(self) -> dict:
        return {"check": self.name, "cases": self.cases, "passed": self.passed,
                "failures": list(self.failures)}


def check_cocycle(b: int, rng: random.Random, cases: int) -> CheckResult:
    """Cocycle and pointwise composition on the support closure of each pair."""
    r = CheckResult("cocycle")
    for _ in range(cases):
        g, h = T.random_automorphism(rng, b), T.random_automorphism(rng, b)
        gh = T.compose(g, h)
        closure = T.support_closure(g, h)
        extra = [T.random_vertex(rng, b) for _ in range(4)]
        for v in sorted(closure) + extra:
            lhs = T.local_action(gh, v)
            rhs = T.perm_compose(T.local_action(g, T.apply(h, v)), T.local_action(h, v))
            if lhs != rhs:
                r.fail(f"sigma mismatch at {v} for g={g} h={h}")
            if T.apply(gh, v) != T.apply(g, T.apply(h, v)):
                r.fail(f"apply mismatch at {v} for g={g} h={h}")
        r.cases += 1
    return r


def check_group_axioms(b: int, rng: random.Random, cases: int) -> CheckResult:
    r = CheckResult("group-axioms")
    e = T.identity(b)
    for _ in range(cases):
        f, g, h = (T.random_automorphism(rng, b) for _ in range(3))
        if T.compose(T.compose(f, g), h) != T.compose(f, T.compose(g, h)):
            r.fail(f"associativity fails for {f}, {g}, {h}")
        gi = T.inverse(g)
        if not (T.compose(g, gi).is_identity() and T.compose(gi, g).is_identity()):
            r.fail(f"inverse fails for {g}")
        if T.compose(e, g) != g or T.compose(g, e) != g:
            r.fail(f"identity fails for {g}")
        r.cases += 1
    return r


def check_semidirect(b: int, rng: random.Random, cases: int) -> CheckResult:
    r = CheckResult("semidirect")
    for _ in range(cases):
        g = T.random_automorphism(rng, b)
        n, p = T.decompose(g)
        if p.translation != 0 or T.compose(T.translation(n, b), p) != g:
            r.fail(f"decompose round trip fails for {g}")
        h = T.random_automorphism(rng, b)
        n2, p2 = T.decompose(h)
        expect = (n + n2, T.compose(T.conj_by_t(p, -n2), p2))
        if T.decompose(T.compose(g, h)) != expect:
            r.fail(f"semidirect product law fails for {g}, {h}")
        r.cases += 1
    return r


def check_translation_shift(b: int, rng: random.Random, cases: int) -> CheckResult:
    r = CheckResult("translation-shift")
    t, ti = T.translation(1, b), T.translation(-1, b)
    for _ in range(cases):
        g = T.random_automorphism(rng, b)
        c = T.conj_by_t(g, 1)
        for _ in range(4):
            v = T.random_vertex(rng, b)
            if T.apply(c, v) != T.apply(t, T.apply(g, T.apply(ti, v))):
                r.fail(f"conj_by_t mismatch at {v} for {g}")
        r.cases += 1
    return r


def _moves_above(p: T.TreeAutomorphism, n: int) -> bool:
    """Whether p moves some vertex with eta >= n, by direct evaluation.

    The topmost moved vertex on any path is an in-neighbor of a support
    vertex, so scanning those in-neighbors is exhaustive.
    """
    scan = {T.in_neighbor(s, x) for s in p.support for x in range(p.branching)}
    return any(v.eta >= n and T.apply(p, v) != v for v in scan)


def check_horoballs(b: int, rng: random.Random, cases: int) -> CheckResult:
    r = CheckResult("horoballs")
    for _ in range(cases):
        p = T.random_translation_free(rng, b, kmin=-3, kmax=3, wmax=2)
        q = T.random_translation_free(rng, b, kmin=-3, kmax=3, wmax=2)
        n = rng.randint(-4, 5)
        # nesting H_n <= H_m for m >= n
        for m in range(n, n + 4):
            if T.in_horoball_fixator(p, n) and not T.in_horoball_fixator(p, m):
                r.fail(f"nesting fails for {p} at {n} <= {m}")
        # membership matches a pointwise scan of vertices with eta >= n
        if T.in_horoball_fixator(p, n) == _moves_above(p, n):
            r.fail(f"membership of {p} in H_{n} disagrees with a scan")
        # conjugation stability with q taken inside H_n
        mq = T.max_moved_level(q)
        nq = n if mq is None else max(n, mq + 1)
        conj = T.compose(p, T.compose(q, T.inverse(p)))
        if not T.in_horoball_fixator(conj, nq):
            r.fail(f"p q p^-1 left H_{nq} for p={p} q={q}")
        # eta equivariance under t and under a random element
        g = T.random_automorphism(rng, b)
        for v in (T.random_vertex(rng, b) for _ in range(3)):
            if T.apply(T.translation(1, b), v).eta != v.eta + 1:
                r.fail(f"t does not raise eta at {v}")
            if T.apply(g, v).eta != v.eta + g.translation:
                r.fail(f"eta equivariance fails for {g} at {v}")
        r.cases += 1
    return r


def check_orbit(b: int, eta_bound: int = 2, wmax: int = 2) -> CheckResult:
    r = CheckResult("orbit-transitivity")
    v0 = T.TreeVertex(0)
    gens = [T.translation(1, b)] + [T.local_at(v0, s, b) for s in T.sym_generators(b)]
    got = T.orbit(gens, v0, -eta_bound, eta_bound, wmax)
    want = T.canonical_vertices(-eta_bound, eta_bound, wmax, b)
    r.cases = len(want)
    missing = set(want) - set(got)
    if missing or set(got) - set(want):
        r.fail(f"orbit misses {sorted(missing)[:5]}")
    return r


def random_descendant(rng: random.Random, v: T.TreeVertex, b: int, max_depth: int = 4) -> T.TreeVertex:
    """A vertex with a directed geodesic of length <= max_depth up to line vertex v."""
    d = rng.randint(0, max_depth)
    up = rng.randint(0, d)  # steps taken along the line
    length = d - up
    if length == 0:
        return T.TreeVertex(v.k - up)
    w = (rng.randrange(1, b),) + tuple(rng.randrange(b) for _ in range(length - 1))
    return T.TreeVertex(v.k - up, w)


def check_gamma(b: int, rng: random.Random, cases: int) -> CheckResult:
    r = CheckResult("gamma-geodesic")
    gens = T.sym_generators(b)
    for _ in range(cases):
        v = T.TreeVertex(rng.randint(-3, 3))
        w = random_descendant(rng, v, b)
        try:
            gamma = T.gamma_for_geodesic(w, v, gens, b)
        except AssertionError as exc:
            r.fail(f"{w} -> {v}: {exc}")
            continue
        path = [w]
        while path[-1] != v:
            path.append(T.out_neighbor(path[-1]))
        if T.apply(gamma, w) != v or not set(gamma.support) <= set(path[1:]):
            r.fail(f"post-condition fails for {w} -> {v}")
        r.cases += 1
    return r


def check_wreath(b: int, rng: random.Random, cases: int, m: int = 3) -> CheckResult:
    r = CheckResult("wreath-embedding")
    words = list(iproduct(range(b), repeat=m))
    for _ in range(cases):
        a, c = T.random_wreath(rng, m, b), T.random_wreath(rng, m, b)
        if T.extract_wreath(T.embed_wreath(a), m) != a:
            r.fail("extract(embed(a)) != a")
        ea, ec, eac = T.embed_wreath(a), T.embed_wreath(c), T.embed_wreath(a * c)
        if eac != T.compose(ea, ec):
            r.fail("embed is not multiplicative")
        for u in words:
            vu = T.address_vertex(u)
            if T.apply(eac, vu) != T.apply(ea, T.apply(ec, vu)):
                r.fail(f"pointwise mismatch at {u}")
            if T.apply(ea, vu) != T.address_vertex(a.act(u)):
                r.fail(f"embedding disagrees with the imprimitive action at {u}")
        r.cases += 1
    return r


def run_selftest(b: int = 3, seed: int = 0, cases: int = 100) -> List[CheckResult]:
    rng = random.Random(seed)
    return [
        check_cocycle(b, rng, cases),
        check_group_axioms(b, rng, cases),
        check_semidirect(b, rng, cases),
        check_translation_shift(b, rng, cases),
        check_horoballs(b, rng, cases),
        check_orbit(b, wmax=2 if b <= 5 else 1),
        check_gamma(b, rng, cases),
        check_wreath(b, rng, max(1, cases // 10)),
    ]
