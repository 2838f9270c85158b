"""
The tabulated Chatterjea example and its triangle defect
========================================================

The table on X = {0, 1, 2} satisfies the Chatterjea condition, but one
triangle inequality fails, so it is not a partial cone metric.
"""

import warnings

from pcmfix import ContractionParams, check_cm_axioms, check_condition, check_pcm_axioms, induce_cone_metric, min_constant
from pcmfix.cli import load

doc = load("chatterjea_example")
space = doc.space()
T = doc.tmap(space)

# every violation is listed, not just the first
report = check_pcm_axioms(space)
for v in report.violations:
    print(f"{v.axiom} at {v.witness}: {v.lhs} is not below {v.rhs} (slack {v.slack})")

# i.e. p(0, 2) = 7/10 exceeds p(0, 1) + p(1, 2) - p(1, 1) = 1/6 + 1/2
print(space.p("0", "2"), "vs", space.p("0", "1") + space.p("1", "2") - space.p("1", "1"))

# the defect carries over to the induced cone metric
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    d = induce_cone_metric(space)
for v in check_cm_axioms(d).violations:
    print(f"induced metric: {v.axiom} at {v.witness}, slack {v.slack}")

# the contraction claims themselves still check out
print("Chatterjea at 1/4:", check_condition(space, T, ContractionParams.chatterjea("1/4")).passed)
print("least lambda:", min_constant(space, T, "chatterjea").value)
