"""Laplacian types and structural predicates for directed and signed graphs.

Two matrix classes anchor the package.  :class:`DirectedLaplacian` holds the
Laplacian of a weighted directed graph: nonpositive off-diagonal entries
(``L[i, j] = -w(i -> j)``) and zero row sums, with the diagonal always
recomputed from the off-diagonal part so the zero-row-sum property is
enforced rather than trusted.  :class:`SignedLaplacianQ` holds a symmetric
Laplacian that is positive semidefinite with kernel exactly ``span(1)`` and
strictly positive diagonal; off-diagonal entries of either sign are allowed.
Matrices of this class arise as pseudoinverses of symmetrized pseudoinverse
Laplacians of strongly connected weight-balanced graphs, and they are the
natural domain for resistance geometry on signed graphs.

Edge existence is decided by exact nonzero weight; no epsilon thresholding
is applied to the sparsity pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError, StructureError, ValidationError
from .linalg import (
    as_square,
    normalize_indices,
    pseudoinverse,
    solve_conditioned,
    svd,
    sym_eig,
)

#: Default tolerance for structural predicates (weight balance, class
#: membership); scale-aware, applied as ``tol * max(1, |A|_max)``.
STRUCTURAL_TOL = 1e-9


def _scale(m):
    return max(1.0, float(np.abs(m).max())) if m.size else 1.0


def _successors(matrix):
    """Adjacency lists of the off-diagonal sparsity pattern."""
    n = matrix.shape[0]
    adj = []
    for i in range(n):
        row = matrix[i]
        adj.append([j for j in range(n) if j != i and row[j] != 0.0])
    return adj


def _count_sccs(adj):
    """Number of strongly connected components (iterative Tarjan)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    count = 0
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    if w == v:
                        break
                count += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return count


class DirectedLaplacian:
    """Laplacian of a weighted directed graph without self-loops.

    The stored matrix is read-only; its diagonal equals minus the row sum
    of the off-diagonal part by construction.  Strong connectivity and
    weight balance are computed once at construction and cached.

    Raises
    ------
    ValidationError
        If an off-diagonal entry is positive or a row sum is nonzero
        beyond ``1e-12`` (relative to the matrix magnitude).
    """

    __slots__ = ("matrix", "n", "strongly_connected", "weight_balanced")

    def __init__(self, matrix):
        m = as_square(matrix, "laplacian").copy()
        n = m.shape[0]
        if n < 1:
            raise ValidationError("laplacian must have at least one node")
        scale = _scale(m)
        off = m.copy()
        np.fill_diagonal(off, 0.0)
        if off.size and off.max() > 0.0:
            i, j = np.unravel_index(np.argmax(off), off.shape)
            raise ValidationError(
                f"off-diagonal entry ({i}, {j}) = {m[i, j]:.6e} is positive; "
                "directed edge weights enter as nonpositive entries"
            )
        rowsum = np.abs(m.sum(axis=1)).max()
        if rowsum > 1e-12 * scale:
            raise ValidationError(
                f"row sums deviate from zero by {rowsum:.3e}"
            )
        np.fill_diagonal(m, -off.sum(axis=1))
        m.setflags(write=False)
        self.matrix = m
        self.n = n
        self.strongly_connected = _count_sccs(_successors(m)) == 1
        colsum = np.abs(m.sum(axis=0)).max() if n else 0.0
        self.weight_balanced = bool(colsum <= STRUCTURAL_TOL * scale)

    def __repr__(self):
        flags = []
        if self.strongly_connected:
            flags.append("SC")
        if self.weight_balanced:
            flags.append("WB")
        tag = ",".join(flags) if flags else "general"
        return f"DirectedLaplacian(n={self.n}, {tag})"


class SignedLaplacianQ:
    """Symmetric signed Laplacian: PSD, kernel exactly ``span(1)``,
    strictly positive diagonal, off-diagonal entries of either sign.

    The diagonal is recomputed from the off-diagonal part so row sums are
    zero by construction; the stored matrix is read-only.
    """

    __slots__ = ("matrix", "n")

    def __init__(self, matrix, tol=STRUCTURAL_TOL):
        failure, details, cleaned = _classify_q(matrix, tol)
        if failure is not None:
            raise ValidationError(f"not a valid signed Laplacian: {failure}")
        cleaned.setflags(write=False)
        self.matrix = cleaned
        self.n = cleaned.shape[0]

    def __repr__(self):
        off = self.matrix - np.diag(np.diag(self.matrix))
        kind = "signed" if off.size and off.max() > 0 else "unsigned"
        return f"SignedLaplacianQ(n={self.n}, {kind})"


@dataclass(frozen=True)
class ClassQReport:
    """Outcome of signed-Laplacian validation.

    ``failure`` is ``None`` on success, otherwise one of the reason strings
    produced by the checks (asymmetry, nonzero row sums, indefiniteness,
    oversized kernel, nonpositive diagonal).  ``details`` holds the
    residuals that drove the verdict.
    """

    ok: bool
    failure: str | None
    laplacian: SignedLaplacianQ | None
    details: dict = field(default_factory=dict)


def _classify_q(matrix, tol):
    """Shared checks behind ``SignedLaplacianQ`` and ``validate_class_q``.

    Returns ``(failure, details, cleaned)`` where ``cleaned`` is the
    symmetrized matrix with recomputed diagonal (``None`` on failure).
    """
    try:
        m = as_square(matrix, "matrix")
    except ValidationError as exc:
        return str(exc), {}, None
    n = m.shape[0]
    if n < 1:
        return "matrix must have at least one node", {}, None
    scale = _scale(m)
    details = {}
    asym = float(np.abs(m - m.T).max())
    details["asymmetry"] = asym
    if asym > 1e-12 * scale:
        return f"asymmetric (max deviation {asym:.3e})", details, None
    sym = (m + m.T) / 2.0
    rowsum = float(np.abs(sym.sum(axis=1)).max())
    details["row_sum"] = rowsum
    if rowsum > tol * scale:
        return f"row sums deviate from zero by {rowsum:.3e}", details, None
    cleaned = sym.copy()
    off = cleaned.copy()
    np.fill_diagonal(off, 0.0)
    np.fill_diagonal(cleaned, -off.sum(axis=1))
    eig = sym_eig(cleaned)
    w = eig.values
    peak = float(np.abs(w).max())
    details["eigenvalue_min"] = float(w[-1])
    if peak == 0.0:
        kernel = n
    else:
        if w[-1] < -tol * peak:
            return (
                f"not positive semidefinite (eigenvalue {w[-1]:.3e})",
                details,
                None,
            )
        kernel = int(np.sum(np.abs(w) <= tol * peak))
    details["kernel_dimension"] = kernel
    if kernel != 1:
        return (
            f"kernel has dimension {kernel}, expected exactly span(1)",
            details,
            None,
        )
    dmin = float(np.diag(cleaned).min())
    details["diagonal_min"] = dmin
    if dmin <= 0.0:
        return f"diagonal entry {dmin:.3e} is not positive", details, None
    return None, details, cleaned


def validate_class_q(matrix, tol=STRUCTURAL_TOL):
    """Check membership in the signed-Laplacian class without raising.

    All failures are reported through :class:`ClassQReport`; on success the
    report carries the constructed :class:`SignedLaplacianQ`.
    """
    failure, details, cleaned = _classify_q(matrix, tol)
    if failure is not None:
        return ClassQReport(ok=False, failure=failure, laplacian=None,
                            details=details)
    return ClassQReport(ok=True, failure=None,
                        laplacian=SignedLaplacianQ(cleaned, tol=tol),
                        details=details)


def laplacian_from_edges(n, edges):
    """Build a :class:`DirectedLaplacian` from ``(src, dst, weight)`` triples.

    Node indices are 0-based.  Duplicate edges accumulate their weights.

    Raises
    ------
    ValidationError
        On out-of-range endpoints, self-loops, or nonpositive weights; the
        message names the offending entry.
    """
    if n < 1:
        raise ValidationError("node count must be at least 1")
    adjacency = np.zeros((n, n))
    for k, (src, dst, weight) in enumerate(edges):
        src, dst, weight = int(src), int(dst), float(weight)
        if not (0 <= src < n and 0 <= dst < n):
            raise ValidationError(
                f"edge {k}: endpoints ({src}, {dst}) outside [0, {n - 1}]"
            )
        if src == dst:
            raise ValidationError(f"edge {k}: self-loop at node {src}")
        if not weight > 0.0:
            raise ValidationError(
                f"edge {k}: weight {weight} must be positive"
            )
        adjacency[src, dst] += weight
    lap = -adjacency
    np.fill_diagonal(lap, adjacency.sum(axis=1))
    return DirectedLaplacian(lap)


def is_strongly_connected(lap: DirectedLaplacian) -> bool:
    """Whether every node reaches every other along directed edges."""
    return lap.strongly_connected


def is_weight_balanced(lap: DirectedLaplacian, tol=STRUCTURAL_TOL) -> bool:
    """Whether column sums vanish as well (in-weight equals out-weight)."""
    colsum = np.abs(lap.matrix.sum(axis=0)).max()
    return bool(colsum <= tol * _scale(lap.matrix))


@dataclass(frozen=True)
class WeightBalancing:
    """Positive diagonal reweighting that balances a strongly connected graph.

    ``balanced.matrix = diag(m) @ original.matrix`` with ``m`` normalized to
    ``sum(m) = n``; ``m`` is a scaled left null vector of the original
    Laplacian, strictly positive by irreducibility.
    """

    m: np.ndarray
    balanced: DirectedLaplacian


def weight_balance(lap: DirectedLaplacian) -> WeightBalancing:
    """Balance a strongly connected directed Laplacian by row scaling.

    Raises
    ------
    StructureError
        If the graph is not strongly connected (the left null vector is
        then not unique or not positive).
    NumericError
        If the numerical left null space is not one-dimensional or the
        computed vector is not strictly positive.
    """
    if not lap.strongly_connected:
        raise StructureError(
            "weight balancing requires a strongly connected graph"
        )
    n = lap.n
    if n == 1:
        m = np.ones(1)
        return WeightBalancing(m=m, balanced=lap)
    d = svd(lap.matrix.T)
    smax = d.s[0]
    if smax > 0 and d.s[-2] <= STRUCTURAL_TOL * smax:
        raise NumericError(
            "left null space of the Laplacian is not one-dimensional "
            f"(second-smallest singular value {d.s[-2]:.3e})"
        )
    null = d.v[:, -1]
    if null.sum() < 0:
        null = -null
    if null.min() <= 1e-12 * null.max():
        raise NumericError(
            "computed left null vector is not strictly positive; "
            f"minimum component {null.min():.3e}"
        )
    m = n * null / null.sum()
    balanced = DirectedLaplacian(m[:, None] * lap.matrix)
    colsum = np.abs(balanced.matrix.sum(axis=0)).max()
    if colsum > 1e-10 * _scale(balanced.matrix):
        raise NumericError(
            f"balancing failed: residual column sum {colsum:.3e}"
        )
    return WeightBalancing(m=m, balanced=balanced)


def is_reachable_subset(lap: DirectedLaplacian, alpha) -> bool:
    """Whether every node outside ``alpha`` has a directed path into it.

    This is the structural precondition for Kron reduction onto ``alpha``:
    eliminated nodes must drain into the kept set.  ``alpha`` needs at
    least two nodes.
    """
    kept = normalize_indices(alpha, lap.n, min_size=2, name="alpha")
    return not _unreachable_nodes(lap, kept)


def _unreachable_nodes(lap: DirectedLaplacian, kept):
    """Nodes with no directed path into ``kept`` (backward search)."""
    matrix = lap.matrix
    n = lap.n
    visited = np.zeros(n, dtype=bool)
    visited[kept] = True
    frontier = list(kept)
    while frontier:
        nxt = []
        for v in frontier:
            for u in range(n):
                if not visited[u] and u != v and matrix[u, v] != 0.0:
                    visited[u] = True
                    nxt.append(u)
        frontier = nxt
    return [int(u) for u in np.flatnonzero(~visited)]


def symmetrized(lap: DirectedLaplacian) -> np.ndarray:
    """Symmetric part ``(L + L^T) / 2`` as a plain array."""
    m = lap.matrix
    return (m + m.T) / 2.0


def sym_pinv(lap: DirectedLaplacian) -> np.ndarray:
    """Symmetrized pseudoinverse ``(L^+ + (L^+)^T) / 2``.

    For a strongly connected graph this matrix is symmetric PSD with
    kernel exactly ``span(1)``, and its pseudoinverse is again a (possibly
    signed) Laplacian.  Note it differs from the pseudoinverse of the
    symmetric part except in the undirected case.
    """
    if not lap.strongly_connected:
        raise StructureError(
            "symmetrized pseudoinverse geometry requires strong connectivity"
        )
    p = pseudoinverse(lap.matrix)
    return (p + p.T) / 2.0


def pinv_via_shift(lap: DirectedLaplacian, gamma=1.0) -> np.ndarray:
    """Pseudoinverse of a balanced Laplacian through a rank-one shift.

    For strongly connected weight-balanced graphs and any ``gamma != 0``,
    ``L^+ = (L + (gamma/n) 11^T)^{-1} - (1/(n*gamma)) 11^T``.  Serves as an
    independent route to cross-check the SVD pseudoinverse.
    """
    if gamma == 0.0:
        raise ValidationError("gamma must be nonzero")
    if not (lap.strongly_connected and lap.weight_balanced):
        raise StructureError(
            "the rank-one shift identity requires a strongly connected "
            "weight-balanced graph"
        )
    n = lap.n
    ones = np.full((n, n), 1.0 / n)
    shifted = lap.matrix + gamma * ones
    inv = solve_conditioned(shifted, np.eye(n), what="shifted Laplacian")
    return inv - ones / gamma
