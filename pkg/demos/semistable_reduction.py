# %% [markdown]
# # Lattice indices and the nearly-semistable test
#
# The map (a, b, c, d) -> (a + b, c + d) on the positive orthant of R^4,
# with the source lattice enlarged by w = (1/2, 1/2, 1/2, 1/2).

# %%
from fractions import Fraction

from polytri import fixtures, cone_index, check_nearly_semistable, weak_to_nearly_semistable

f = fixtures.build("r4-to-r2")
gens = [f.source.generator(r) for r in sorted(f.source.rays)]
print("index of the orthant:", cone_index(gens, f.source.integral))
report = check_nearly_semistable(f, f.source)
print(report.summary())
print(report.witnesses)

# %% [markdown]
# Every edge of the orthant maps to an edge of the base with primitive
# image, and the two-dimensional faces over the base edges have index one.
# Only the top cone has index two.

# %%
for k in (1, 2):
    for cone in f.source.cones_of_dim(k):
        print(sorted(cone.vertices), f.index(cone))

# %% [markdown]
# Doubling the half-line is not reduced.  A base change by 2 fixes it.

# %%
d = fixtures.build("doubling")
print(check_nearly_semistable(d, d.source).summary())
_, _, report = weak_to_nearly_semistable(d, (2,), {})
print(report.summary())
