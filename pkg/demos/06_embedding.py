"""Resistive embeddings: every class member is a hyperacute simplex.

The spectral coordinates place the n nodes as vertices of a simplex in
(n-1) dimensions whose squared edge lengths are the effective
resistances.  The circumcenter is the curvature-weighted barycenter, the
circumradius is the resistance radius, and both angle families (between
faces, and at the circumcenter) come straight from the Laplacian and its
pseudoinverse.  Positive couplings force obtuse face angles.
"""

import os
import tempfile

import numpy as np

from resgeo import (
    curvature_radius_q,
    embed,
    export_coordinates,
    laplacian_from_edges,
    random_class_q,
    read_coordinates,
    resistance_matrix_q,
    simplex_geometry,
    undirect,
    verify_angles_geometric,
)

np.set_printoptions(precision=4, suppress=True)


def banner(text):
    print(f"\n=== {text} ===")


banner("a digraph, undirected and embedded")
lap = laplacian_from_edges(4, [
    (0, 1, 1.0), (0, 2, 2.0), (1, 3, 1.0), (2, 3, 2.0), (3, 0, 3.0),
])
q = undirect(lap)
emb = embed(q)
print("coordinates (one column per node):\n", emb.coordinates)

omega = resistance_matrix_q(q).omega
diff = emb.coordinates[:, :, None] - emb.coordinates[:, None, :]
print("squared distances minus resistances:",
      np.abs((diff ** 2).sum(axis=0) - omega).max())

banner("circumcenter and circumradius")
geo = simplex_geometry(q, emb)
cr = curvature_radius_q(q)
print("circumcenter:", geo.circumcenter)
print("circumradius:", geo.circumradius, "= sqrt(sigma^2) =",
      np.sqrt(cr.sigma2))
dist = np.linalg.norm(emb.coordinates - geo.circumcenter[:, None], axis=0)
print("vertex distances to the center:", dist)

banner("angles, twice")
print("cos of face angles:\n", geo.cos_dihedral)
print("cos at the circumcenter:\n", geo.cos_vertex)
check = verify_angles_geometric(q, emb)
print("geometric recomputation deviations:",
      check.dihedral_deviation, check.vertex_deviation)
pos = q.matrix > 1e-10
np.fill_diagonal(pos, False)
print("positive couplings force obtuse faces:",
      bool((geo.cos_dihedral[pos] < 0).all()))

banner("a signed example")
rng = np.random.default_rng(3)
signed = random_class_q(5, rng, ensure_signed=True)
semb = embed(signed)
sgeo = simplex_geometry(signed, semb)
print("circumradius:", sgeo.circumradius)
print("angle check:", verify_angles_geometric(signed, semb).passed)

banner("round-tripping through a coordinates file")
path = os.path.join(tempfile.mkdtemp(), "coords.csv")
export_coordinates(semb, sgeo, path)
data = read_coordinates(path)
print("wrote", path)
print("coordinates identical:",
      np.array_equal(data["coordinates"], semb.coordinates))
print("radius identical:", data["circumradius"] == sgeo.circumradius)
