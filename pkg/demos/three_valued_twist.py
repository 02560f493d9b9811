"""
Twist structures and the three-valued matrix
============================================

LFI1 is deterministic: each formula gets a pair (z1, z2). Over the
two-element algebra these are 1, 1/2 and 0.
"""

from lfiswap import lfi1_consequence, lfi1_matrix, parse_formula, powerset_algebra, twist_matrix
from lfiswap.twist import eval_twist, format_tables, lfi1_value

f = parse_formula
L = lfi1_matrix()
print(format_tables(L))

# Evaluate a formula once the letters are fixed.
half = lfi1_value("1/2")
print("*(p & ~p) at p=1/2:", L.name(eval_twist(f("*(p & ~p)"), {"p": half})))

# Explosion fails at p = 1/2.
v = lfi1_consequence([f("p"), f("~p")], f("q"))
print("countermodel:", {k: L.name(x) for k, x in v.countermodel.items()})

# De Morgan laws for negation hold in every twist algebra.
law = f("(~(p & q) -> ~p | ~q) & (~p | ~q -> ~(p & q))")
for n in range(3):
    M = twist_matrix(powerset_algebra(n))
    print(f"atoms={n} |T|={len(M.domain)} law holds: {lfi1_consequence([], law, M).holds}")
