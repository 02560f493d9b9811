"""
Checking Hilbert derivations
============================

Derivations carry their justifications; the checker validates each step
and reports the first one that fails.
"""

import json
import random
from pathlib import Path

from lfiswap import check_derivation, parse_formula, random_derivation
from lfiswap.hilbert import CATALOG, derivation_from_json, derivation_to_json, load_derivation, read_premises

here = Path(__file__).parent / "data"

print("QLFI1o axioms:", ", ".join(CATALOG["QLFI1o"]))

# Explosion from a consistent contradiction, read from a proof script.
premises = read_premises((here / "premises.txt").read_text(), constants=("c",))
d = load_derivation(here / "explosion.json", "QmbC", premises, ("c",))
print("accepted:", check_derivation(d).holds)

# Universal introduction with x free in the antecedent is rejected.
bad = [{"formula": "P(x) -> Q(x)", "by": "premise"},
       {"formula": "P(x) -> forall x. Q(x)", "by": "forall-in:1"}]
d = derivation_from_json(bad, "QmbC", [parse_formula("P(x) -> Q(x)")])
print(check_derivation(d).note)

# A randomly forward-chained derivation, printed as a proof script.
d = random_derivation("mbC", random.Random(3), length=6)
print(json.dumps(derivation_to_json(d), indent=1))
