"""
A Kannan-type multi-valued contraction
======================================

The space X = {0, 1, 4} with p(x, y) = (|x - y|/4, max{x, y}/2) in Q^2,
and the map T(0) = T(1) = {0}, T(4) = {0, 1}.
"""

from pcmfix import (
    ContractionParams,
    check_condition,
    check_pcm_axioms,
    hausdorff,
    iterate,
    min_constant,
)
from pcmfix.cli import load

doc = load("kannan_example")
space = doc.space()
T = doc.tmap(space)

# self-distances are not zero, so this is a partial cone metric only
for x in space:
    print(f"p({x}, {x}) = {space.p(x, x)}")
print("PCM axioms hold:", check_pcm_axioms(space).passed)

# Hausdorff-type distances between images, in the coordinatewise lattice
print("H({0}, {0,1}) =", hausdorff(space, ["0"], ["0", "1"]).value)
print("H({0,1}, {0,1}) =", hausdorff(space, ["0", "1"], ["0", "1"]).value)

# the smallest admissible lambda, and what goes wrong just below it
mc = min_constant(space, T, "kannan")
print(f"least lambda = {mc.value}, attained at pair {mc.binding[:2]}")
for lam in ("1/4", "1/3"):
    report = check_condition(space, T, ContractionParams.kannan(lam))
    print(f"lambda = {lam}: passed = {report.passed}, violations = {len(report.violations)}")

# the iteration from every start, with the default selection constant
params = ContractionParams.kannan("1/3")
for x0 in space:
    trace, diag = iterate(space, T, x0, params)
    print(f"from {x0}: {' -> '.join(trace.points)}  (h = {trace.h}, k = {trace.k}, bound ok = {diag.geometric_bound_ok})")
