# %% [markdown]
# # Extending a triangulation from the boundary of a cube
#
# Start from a regular triangulation of the cube's boundary, push its
# lifting inward, and finish with a generic lifting.  Every intermediate
# object is kept on the result.

# %%
from polytri import fixtures, boundary, induced_subdivision, extend_triangulation
from polytri.triangulation import check_extension, generic_simplicial_lifting, stability_radius

cube = fixtures.build("cube")
bnd = boundary(cube)
f0 = generic_simplicial_lifting(bnd, "random", seed=11)
tri0 = induced_subdivision(bnd, f0)
print(len(tri0.refined.maximal_cells()), "boundary triangles")

# %%
res = extend_triangulation(cube, bnd, tri0, f0)
print("shift:", res.shift)
print("intermediate cells:", len(res.intermediate.refined.maximal_cells()))
print("epsilon:", res.epsilon)
print("tetrahedra:", len(res.subdivision.refined.maximal_cells()))
print(check_extension(cube, bnd, tri0, res))

# %% [markdown]
# The final lifting is simplicial, so small perturbations of it give the same
# triangulation.  `stability_radius` bounds how small.

# %%
r = stability_radius(cube, res.lifting)
print("radius:", r)

# %% [markdown]
# The same thing in the conical setting: cone over the cube and extend the
# coned boundary triangulation.  No new rays appear.

# %%
from polytri import cone_over
from polytri.conical import (ConicalSubdivision, check_conical_extension, conical_carriers,
                             extend_conical_triangulation)

sigma, h = cone_over(cube)
sigma0 = sigma.subcomplex([c.vertices for c in bnd.maximal_cells()])
coned, _ = cone_over(tri0.refined)
sub0 = ConicalSubdivision(coned, sigma0, conical_carriers(coned, sigma0))
ext = extend_conical_triangulation(sigma, h, sigma0, sub0, dict(f0.values))
print(check_conical_extension(sigma, sigma0, sub0, ext))
