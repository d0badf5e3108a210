"""Evaluating decomposition ranks and building groups of a chosen rank."""

from tdlcrank.builder import build_and_verify
from tdlcrank.chains import witness_chain
from tdlcrank.parsing import parse_group_expr, parse_ordinal, print_group_expr
from tdlcrank.rank import eval_rank, monolith_rank

# The seed is a compactly generated, topologically perfect rank-2 group.
# Each tree construction moves the leading exponent up by one.
for n in range(5):
    e = parse_group_expr(f"F({n},s)")
    print(f"rank F({n},s) = {eval_rank(e).text()}")

print()
print("rank EX(Seed(s))          =", eval_rank(parse_group_expr("EX(Seed(s))")).text())
print("monolith of EX(F(1,s))    =", monolith_rank(parse_group_expr("EX(F(1,s))")))
print("rank LDPfam(s)            =", eval_rank(parse_group_expr("LDPfam(s)")).text())

# Wreath products add ranks; without the chain rule only bounds are known.
e = parse_group_expr("Wr(F(1,s),F(1,s))")
print()
print("rank Wr(F(1,s),F(1,s))    =", eval_rank(e).text())
print("  without chains          =", eval_rank(e, use_chains=False).text())
print("  derivation:")
for step in eval_rank(e).trace:
    print(f"    {step.rule:<12} {step.value}")

# A chain of subgroups of increasing height certifies a lower bound.
chain = witness_chain(parse_group_expr("F(1,s)"))
print()
print("witness chain of F(1,s) has order type", chain.length)
for entry in chain.sample(3):
    print(f"  height {entry.height}: {print_group_expr(entry.expr)}")

# The builder inverts the evaluator for every successor below w^w + 2.
print()
for text in ["5", "w+3", "w^2*2+w+4", "w^3+1", "w^w+1"]:
    expr, res = build_and_verify(parse_ordinal(text))
    print(f"build {text:<11} -> {print_group_expr(expr)}")
