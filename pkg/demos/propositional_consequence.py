"""
Paraconsistent consequence with countermodels
=============================================

Checking mbC consequence in the five-valued matrix, reading off the
countermodel, and confirming the verdict with two-valued bivaluations.
"""

from lfiswap import bival_consequence, is_valid, parse_formula, prop_consequence

f = parse_formula

# A contradiction does not entail everything.
verdict = prop_consequence([f("p"), f("~p")], f("q"))
print("p, ~p |= q ?", verdict.holds)
print(verdict.countermodel.format())

# Adding consistency of p restores explosion.
print("*p, p, ~p |= q ?", prop_consequence([f("*p"), f("p"), f("~p")], f("q")).holds)

# Excluded middle holds; double negation elimination does not.
for text in ("p | ~p", "~~p -> p", "~(p & ~p) -> *p"):
    print(f"{text:<18} valid: {is_valid(f(text))}")

# The same questions answered by bivaluations, a non-truth-functional semantics.
b = bival_consequence([f("p"), f("~p")], f("q"))
print("bivaluation countermodel:", {str(k): v for k, v in b.countermodel.items()})
