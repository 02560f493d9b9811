"""
First-order models
==================

Twist models evaluate sentences to a single pair; swap models only
constrain them, so consequence is a search over the ground closure.
"""

from pathlib import Path

from lfiswap import load_model, parse_formula
from lfiswap.fosem import possible_values, qlfi1_consequence, qlfi1_interpret, qmbc_consequence

here = Path(__file__).parent / "data"

# A two-element twist model: P holds of a, and both holds and fails of b.
S = load_model(here / "twist_model.json")
M = S.matrix
for text in ("forall x. P(x)", "~(forall x. P(x))", "exists x. ~P(x)", "*(c = c)"):
    phi = parse_formula(text, S.signature)
    print(f"{text:<20} {M.name(qlfi1_interpret(S, phi))}")

# Equality there is standard but contradictory on the diagonal.
print("|= *(c = c) ?", qlfi1_consequence([], parse_formula("*(c = c)", S.signature), S).holds)

# In a swap model the value of a sentence is not determined.
W = load_model(here / "swap_model.json")
phi = parse_formula("forall x. P(x)", W.signature)
print("possible values of forall x. P(x):", [W.matrix.name(z) for z in possible_values(W, phi)])

# Without the quantifier De Morgan axioms the law can fail.
goal = parse_formula("~(forall x. P(x)) -> exists x. ~P(x)", W.signature)
v = qmbc_consequence([], goal, W)
print(v.note)
print(v.countermodel.format())
