# %% [markdown]
# # A boundary triangulation that cannot be extended
#
# The triangular prism has six vertices.  Cutting each of its three square
# faces by a diagonal, with the diagonals turning the same way around the
# prism, gives a triangulation of the boundary.  No lifting induces it, and
# no triangulation of the prism on its six vertices restricts to it.

# %%
from polytri import fixtures, is_regular, enumerate_triangulations
from polytri.triangulation import NonRegularityWitness

prism = fixtures.build("prism")
bnd = fixtures.build("prism-boundary")
twisted = fixtures.build("prism-twisted-boundary")
print(sorted(sorted(c) for c in twisted.maximal_key()))

# %% [markdown]
# `is_regular` sets up the fold inequalities and solves them exactly.  When
# they are infeasible it returns Farkas multipliers, which can be checked
# without trusting the solver.

# %%
verdict = is_regular(bnd, twisted)
assert isinstance(verdict, NonRegularityWitness)
print(len(verdict.infeasible_constraint_subset), "constraints, certificate valid:", verdict.verify())
for con in verdict.infeasible_constraint_subset:
    print(sorted(con.cell), con.point, con.kind, con.multiplier)

# %% [markdown]
# The prism has six triangulations without new vertices.  None of them
# restricts to the twisted boundary.

# %%
tris = enumerate_triangulations(prism)
print(len(tris), "triangulations")
print([t.restrict(bnd) == twisted for t in tris])

# %% [markdown]
# Tilting one diagonal the other way gives a regular boundary, and then the
# extension goes through with three tetrahedra.

# %%
from polytri import extend_triangulation
from polytri.triangulation import check_extension

staircase = fixtures.build("prism-staircase-boundary")
res = extend_triangulation(prism, bnd, staircase, fixtures.build("prism-staircase-lifting"))
print(sorted(sorted(c) for c in res.subdivision.maximal_key()))
print(check_extension(prism, bnd, staircase, res))
