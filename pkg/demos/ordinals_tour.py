"""A short walk through ordinal arithmetic below epsilon_0.

Ordinal addition and multiplication are not commutative: adding a finite
number on the left of w is absorbed, on the right it is not.
"""

from tdlcrank.ordinal import OMEGA as w
from tdlcrank.ordinal import add, mul, power, predecessor, sup_plus, Linear, PowerOfOmega
from tdlcrank.parsing import parse_ordinal


def show(label, value):
    print(f"{label:<28} = {value}")


show("2 + w", add(2, w))
show("w + 2", add(w, 2))
show("2 * w", mul(2, w))
show("w * 2", mul(w, 2))
show("2 ^ w", power(2, w))
show("(w+1) * 2", mul(add(w, 1), 2))
show("(w+1) ^ 3", power(add(w, 1), 3))

# ranks are successor ordinals, so "minus one" is the predecessor
show("pred(w*2+2)", predecessor(add(mul(w, 2), 2)))

# sup+ of a family bumps a limit supremum to its successor
show("sup+ of n -> n", sup_plus(Linear(0, 1)))
show("sup+ of n -> w^n + 2", sup_plus(PowerOfOmega(1, 2)))

# the text grammar normalizes on parse
show('parse "w*2 + (2+w)"', parse_ordinal("w*2 + (2+w)"))
