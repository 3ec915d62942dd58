"""Effective resistance beyond undirected graphs.

For a strongly connected digraph the resistance between two nodes is read
off the two-node Kron reduction, and it is generally asymmetric.  A
weight-balanced graph gets a symmetric resistance matrix in closed form,
a merely strongly connected one inherits it through the balancing vector,
and a signed Laplacian gets the same construction from its pseudoinverse.
The classifier at the end places any squared-distance matrix in the
negative-type hierarchy.
"""

import numpy as np

from resgeo import (
    classify_metric,
    effective_resistance_directed,
    kron_reduce,
    laplacian_from_edges,
    q_from_distance,
    random_class_q,
    random_keep,
    random_sc_laplacian,
    resistance_matrix_q,
    resistance_matrix_sc,
    SignedLaplacianQ,
)

np.set_printoptions(precision=4, suppress=True)


def banner(text):
    print(f"\n=== {text} ===")


banner("asymmetric resistance on a two-node digraph")
two = laplacian_from_edges(2, [(0, 1, 2.0), (1, 0, 1.0)])
print("R(1 -> 2) =", effective_resistance_directed(two, 0, 1))
print("R(2 -> 1) =", effective_resistance_directed(two, 1, 0))
rm = resistance_matrix_sc(two)
print("matrix form (kind", rm.kind + "):\n", rm.omega)

banner("reduction leaves resistances alone")
rng = np.random.default_rng(13)
lap = random_sc_laplacian(7, rng)
keep = random_keep(7, rng, size=4)
before = resistance_matrix_sc(lap).omega[np.ix_(keep, keep)]
after = resistance_matrix_sc(kron_reduce(lap, keep).reduced).omega
print("kept nodes:", keep)
print("max difference:", np.abs(before - after).max())

banner("signed Laplacians have resistances too")
q = random_class_q(5, rng, ensure_signed=True)
omega = resistance_matrix_q(q).omega
print("off-diagonal positive:", omega[~np.eye(5, dtype=bool)].min() > 0)
print(omega)

banner("the negative-type hierarchy")
path = SignedLaplacianQ(np.array([
    [1.0, -1.0, 0.0],
    [-1.0, 2.0, -1.0],
    [0.0, -1.0, 1.0],
]))
print("unsigned path:", classify_metric(resistance_matrix_q(path).omega).label)
print("signed graph: ", classify_metric(omega).label)

square = np.array([
    [0.0, 1.0, 2.0, 1.0],
    [1.0, 0.0, 1.0, 2.0],
    [2.0, 1.0, 0.0, 1.0],
    [1.0, 2.0, 1.0, 0.0],
])
print("planar unit square:", classify_metric(square).label,
      "(the square is not the resistance matrix of any graph)")

banner("recovering the graph from its distances")
recovered = q_from_distance(omega)
print("round-trip error:", np.abs(recovered.matrix - q.matrix).max())
