"""Acceptance gate: ten criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline, or
``python tests/test_acceptance.py`` for the report alone.  The lines are also
repeated in the pytest terminal summary.
"""

import random
import time

from tdlcrank import checks
from tdlcrank import groups as g
from tdlcrank import tree as T
from tdlcrank.builder import build_and_verify
from tdlcrank.chains import witness_chain
from tdlcrank.ordinal import OMEGA, add, compare, is_successor, mul, normalize, omega_power, power
from tdlcrank.parsing import parse_group_expr as P
from tdlcrank.rank import _eval, eval_rank, monolith_rank

REPORT = {}


def _cold():
    # time rank work from empty caches
    _eval.cache_clear()
    g.infer_attributes.cache_clear()


def gate(number, title, budget):
    """Run ``body``, which returns a list of failure messages, under a time budget."""
    def wrap(body):
        def test():
            t0 = time.perf_counter()
            problems = list(body())
            elapsed = time.perf_counter() - t0
            if elapsed >= budget:
                problems.append(f"runtime {elapsed:.4f}s exceeds {budget}s")
            status = "FAIL" if problems else "PASS"
            line = f"criterion {number:2d} {status}  {title}  ({elapsed * 1000:.1f} ms)"
            if problems:
                line += "  -- " + "; ".join(problems[:3])
            REPORT[number] = line
            print(line)
            assert not problems, line
        test.__name__ = body.__name__
        return test
    return wrap


@gate(1, "ordinal identities", 0.001)
def test_c01_ordinal_identities():
    w = OMEGA
    out = []
    if add(2, w) != w:
        out.append("2+w != w")
    if mul(2, w) != w:
        out.append("2*w != w")
    if mul(w, 2) != add(w, w):
        out.append("w*2 != w+w")
    if power(2, w) != w:
        out.append("2^w != w")
    if not (add(w, 2) < mul(w, 2) < power(w, 2)):
        out.append("w+2 < w*2 < w^2 fails")
    return out


def _tri_add(x, y):
    if y[0]:
        return (x[0] + y[0], y[1], y[2])
    if y[1]:
        return (x[0], x[1] + y[1], y[2])
    return (x[0], x[1], x[2] + y[2])


@gate(2, "CNF add/compare vs triple-encoding oracle below w^3", 5.0)
def test_c02_oracle_equivalence():
    rng = random.Random(42)
    enc = {}
    for t in ((a, b, c) for a in range(20) for b in range(20) for c in range(20)):
        enc[t] = normalize([(2, t[0]), (1, t[1]), (0, t[2])])
    keys = list(enc)
    out, pairs = [], 0
    for _ in range(10_000):
        x, y = rng.choice(keys), rng.choice(keys)
        s = _tri_add(x, y)
        if add(enc[x], enc[y]) != normalize([(2, s[0]), (1, s[1]), (0, s[2])]):
            out.append(f"add mismatch {x}+{y}")
        if int(compare(enc[x], enc[y])) != (x > y) - (x < y):
            out.append(f"compare mismatch {x},{y}")
        pairs += 1
    if pairs < 8000:
        out.append(f"only {pairs} pairs")
    return out


@gate(3, "rank reproduction: EX(Seed), F(n) for n=0..4, monolith, LDPfam", 1.0)
def test_c03_rank_reproduction():
    _cold()
    out = []
    if eval_rank(P("EX(Seed(s))")).value != add(OMEGA, 2):
        out.append("EX(Seed) != w+2")
    for n in range(5):
        got = eval_rank(P(f"F({n},s)")).value
        want = add(omega_power(n), 2)
        if got != want:
            out.append(f"F({n},s) = {got}, criterion asks {want}")
    if monolith_rank(P("EX(F(1,s))")) != add(omega_power(2), 1):
        out.append("monolith of EX(F(1,s)) != w^2+1")
    if eval_rank(P("LDPfam(s)")).value != add(omega_power(OMEGA), 1):
        out.append("LDPfam != w^w+1")
    return out


@gate(4, "builder fixpoint on the target grid", 2.0)
def test_c04_builder_fixpoint():
    _cold()
    targets = [normalize([(2, a2), (1, a1), (0, f)])
               for a2 in range(4) for a1 in range(4) for f in range(1, 5)]
    targets += [add(omega_power(n), 1) for n in range(5)]
    targets.append(add(omega_power(OMEGA), 1))
    out = []
    for t in targets:
        try:
            _, res = build_and_verify(t)
        except AssertionError as exc:
            out.append(str(exc))
            continue
        if not (res.exact and res.value == t):
            out.append(f"{t}: got {res.text()}")
    return out


@gate(5, "interval soundness for Wr(F(1,s),F(1,s)) without chains", 1.0)
def test_c05_interval_soundness():
    _cold()
    e = P("Wr(F(1,s),F(1,s))")
    exact = eval_rank(e)
    loose = eval_rank(e, use_chains=False)
    out = []
    if not (exact.exact and exact.value == add(mul(OMEGA, 2), 2)):
        out.append(f"exact value is {exact.text()}")
    if not loose.contains(exact.lo):
        out.append(f"{loose.text()} misses {exact.text()}")
    return out


@gate(6, "witness chain of F(1,s)", 1.0)
def test_c06_witness_chain():
    _cold()
    c = witness_chain(P("F(1,s)"))
    out = []
    if c.length != add(OMEGA, 1):
        out.append(f"order type {c.length}, want w+1")
    indices = list(range(200)) + [OMEGA]
    prev = None
    for i in indices:
        e = c.entry(i)
        if not is_successor(e.height) or e.height != add(e.index, 1):
            out.append(f"entry {i}: height {e.height}")
        if prev is not None and not prev < e.height:
            out.append(f"heights not increasing at {i}")
        if not eval_rank(e.expr).value <= add(e.height, 1):
            out.append(f"entry {i}: rank exceeds height + 1")
        prev = e.height
    return out


@gate(7, "tree cocycle suite, b=3, seed 42, 500 pairs", 5.0)
def test_c07_cocycle():
    r = checks.check_cocycle(3, random.Random(42), 500)
    return r.failures + ([] if r.cases == 500 else [f"{r.cases} cases"])


@gate(8, "semidirect round trips and orbit transitivity", 5.0)
def test_c08_semidirect_and_orbit():
    rng = random.Random(42)
    out = []
    for _ in range(200):
        x = T.random_automorphism(rng, 3)
        n, p = T.decompose(x)
        if p.translation or T.compose(T.translation(n), p) != x:
            out.append(f"round trip fails for {x}")
    r = checks.check_orbit(3, eta_bound=2, wmax=2)
    return out + r.failures


@gate(9, "gamma constructor on 100 geodesics of depth <= 4", 5.0)
def test_c09_gamma():
    r = checks.check_gamma(3, random.Random(42), 100)
    return r.failures + ([] if r.cases == 100 else [f"{r.cases} cases"])


@gate(10, "horoball lattice on 200 cases", 2.0)
def test_c10_horoballs():
    r = checks.check_horoballs(3, random.Random(42), 200)
    return r.failures + ([] if r.cases == 200 else [f"{r.cases} cases"])


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
