"""
Swap structures and the five-valued matrix
==========================================

Snapshots over a Boolean algebra, the five values of the two-element case,
and what the connectives do to them.
"""

from lfiswap import full_swap, m5, m5_values, powerset_algebra, swap_domain
from lfiswap.swap import condensed, format_tables

# A snapshot (z1, z2, z3) records a formula, its negation and its consistency.
# Legal ones satisfy z1 | z2 = 1 and z1 & z2 & z3 = 0.
for n in range(4):
    print(f"atoms={n}: {len(swap_domain(powerset_algebra(n)))} snapshots")

# Over the two-element algebra there are exactly five of them.
M = m5()
for name, z in m5_values().items():
    tag = "designated" if M.is_designated(z) else ""
    print(f"{name:>3} = {z!r}  {tag}")

# Every output set is either the whole designated set D or its complement ND.
print(format_tables(M, True))

# Negation of T may be F or f0: the matrix is non-deterministic.
v = m5_values()
print("~T can be", [M.name(z) for z in M.apply("neg", v["T"])])
print("*t lands in", condensed(M, M.apply("cons", v["t"])))

# Larger algebras work the same way; 25 snapshots over two atoms.
M2 = full_swap(powerset_algebra(2))
print(M2)
