"""
When no member of a set meets the selection bound
=================================================

In the lattice Q^n the infimum p(a, B) is taken coordinatewise, so it can
be smaller than every single p(a, b).  The selection step of the iteration
then has no valid choice, even for a contractive map with closed images.
"""

from pcmfix import ContractionParams, check_pcm_axioms, iterate, lattice_inf, min_constant, point_set_dist, select
from pcmfix.cli import load
from pcmfix.setdist import hausdorff, lemma_h_floor

doc = load("selection_failure")
space = doc.space()
T = doc.tmap(space)
print("PCM axioms hold:", check_pcm_axioms(space).passed)
print("images closed and bounded:", T.images_in_cbp(space))

A, B = T.image("u"), T.image("a")
print(f"p(a, b1) = {space.p('a', 'b1')}, p(a, b2) = {space.p('a', 'b2')}")
print("their infimum:", lattice_inf([space.p("a", "b1"), space.p("a", "b2")]), "=", point_set_dist(space, "a", B).value)
print("H(A, B) =", hausdorff(space, A, B).value)

# the best h for which some b works is far above 1
print("least workable h:", lemma_h_floor(space, "a", A, B))
print("select with h = 7/4:", select(space, "a", A, B, "7/4"))

for kind in ("kannan", "chatterjea", "nadler"):
    mc = min_constant(space, T, kind)
    params = ContractionParams(kind, **({"k": mc.value} if kind == "nadler" else {"lam": mc.value}))
    trace, diag = iterate(space, T, "u", params)
    print(
        f"{kind} at {mc.value}: trace {trace.points}, selections ok = {trace.all_selections_satisfied}, "
        f"geometric bound ok = {diag.geometric_bound_ok}, ends at fixed point = {trace.fixed_point}"
    )
