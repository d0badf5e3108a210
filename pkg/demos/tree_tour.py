"""The colored directed tree and its automorphisms, simulated exactly.

Vertices are (k, w): k is the level of the line vertex above, w the colors
walked inward from it.  The translation t shifts the line.
"""

import random

from tdlcrank import tree as T
from tdlcrank.checks import run_selftest

v0 = T.TreeVertex(0)
t = T.translation(1)
g = T.local_at(v0, (1, 0, 2))  # swap colors 0 and 1 below v0

print("t . v0               =", T.apply(t, v0))
print('g . (0,"1")          =', T.apply(g, T.TreeVertex(0, (1,))))
print("g t                  =", T.format_automorphism(T.compose(g, t)))
print("t g t^-1             =", T.format_automorphism(T.conj_by_t(g, 1)))

# move a deep vertex onto the line using only local actions from Sym(3)
w = T.TreeVertex(0, (2, 1, 1))
gamma = T.gamma_for_geodesic(w, v0, T.sym_generators(3))
print()
print("gamma moving", w, "to", v0)
print("  ", T.format_automorphism(gamma))
print("   image:", T.apply(gamma, w))

# t together with Sym(3) at v0 acts transitively on the vertices
gens = [t] + [T.local_at(v0, p) for p in T.sym_generators(3)]
orbit = T.orbit(gens, v0, -1, 1, 1)
print()
print(f"orbit of v0 in the window |eta| <= 1, |w| <= 1: {len(orbit)} vertices")
print("  ", " ".join(str(v) for v in sorted(orbit)))

# the randomised identity checks used by the acceptance suite
print()
for r in run_selftest(3, seed=42, cases=50):
    print(f"{r.name:<20} {'PASS' if r.passed else 'FAIL'} ({r.cases} cases)")

rng = random.Random(0)
x = T.random_automorphism(rng)
print()
print("a random element:", T.format_automorphism(x))
print("its inverse:     ", T.format_automorphism(T.inverse(x)))
