"""Twin-root-datum axiom verification with reproducible reports, and what a
broken datum looks like: fault injection makes the checker emit witnesses.

Run: python3 demos/07_axioms_and_fault_injection.py
"""

from dataclasses import replace

from twinroot import trd
from twinroot.chevalley import loop_group

G = loop_group(3, 2)
orc = trd.split_oracle(G)

print("== the healthy datum ==")
report = trd.check_trd(orc, sample_budget=80, level_window=2, seed=7)
print(report.to_json())

print()
print("== three sabotaged oracles ==")
tilt = G.root_group_element((1, 0, 1), 1)
tilt_inv = tilt.inverse()
base = orc.root_group_elements


def wrong_conjugate(vector):
    if vector == (0, 1):
        return [tilt * u * tilt_inv for u in base(vector)]
    return base(vector)


mutants = {
    "one root group replaced by a wrong conjugate": replace(
        orc, root_group_elements=wrong_conjugate
    ),
    "a torus test that rejects everything": replace(orc, is_torus=lambda g: False),
    "positive and negative root groups swapped": replace(
        orc, root_group_elements=lambda v: base(tuple(-x for x in v))
    ),
}
for label, mutant in mutants.items():
    rep = trd.check_trd(mutant, sample_budget=40, level_window=1, seed=7)
    failed = [r for r in rep.results if not r.passed]
    print(f"{label}:")
    for r in failed:
        print(f"  {r.axiom} fails: {r.witness}")
