"""Maximum graph variance over the probability simplex.

The problem: maximize ``(1/2) f^T Omega f`` over distributions ``f`` on
the nodes, where ``Omega`` is a symmetric resistance matrix.  At an
optimum the gradient ``Omega f`` is constant on the support and no larger
off it, which is what :func:`verify_kkt` measures.  The maximizer is the
subset curvature vector of its own support and the optimal value is that
subset's squared resistance radius, so the solvers and the curvature
machinery check each other.

Two solvers are provided.  :func:`solve_maxvar_exact` enumerates supports
(largest first) and certifies the stationary distribution on each face;
it is exponential and capped at 15 nodes.  :func:`solve_maxvar` runs
projected gradient ascent with periodic support extraction, exact
re-solving on the identified face, and KKT re-certification, so an
accepted answer is exact up to one linear solve regardless of the
iteration count.

For unsigned graphs every support node has positive whole-graph
curvature, so greedily discarding negative-curvature nodes is sound; for
signed Laplacians that heuristic fails, and
:func:`find_negative_curvature_support_instance` searches random signed
instances for a certified counterexample: an optimal support containing a
node of negative whole-graph curvature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .curvature import CurvatureRadius, subset_curvature_radius
from .errors import (
    CapacityError,
    ConvergenceError,
    NumericError,
    ValidationError,
)
from .generators import random_class_q
from .graph import DirectedLaplacian, SignedLaplacianQ, _scale
from .linalg import as_square
from .resistance import (
    ResistanceMatrix,
    resistance_matrix_q,
    resistance_matrix_scwb,
)

#: Entries above this count as support when reading a numeric iterate.
SUPPORT_TOL = 1e-10

#: A solved face distribution counts as interior only above this; smaller
#: entries are boundary-degenerate zeros and get dropped from the support.
INTERIOR_TOL = 1e-12

#: Hard cap for exhaustive support enumeration (2^n faces).
MAX_EXACT_NODES = 15


@dataclass(frozen=True)
class MaxVarSolution:
    """A certified maximizer: distribution, support, value, KKT residual."""

    f: np.ndarray
    support: np.ndarray
    value: float
    kkt_residual: float
    method: str


@dataclass(frozen=True)
class KktCheck:
    """Stationarity report: gradient spread on/off the support."""

    ok: bool
    residual: float
    support: np.ndarray


@dataclass(frozen=True)
class CharacterizationReport:
    """Maximizer versus subset curvature of its support.

    ``curvature_residual`` compares ``f*`` on its support with the subset
    curvature vector; ``value_residual`` compares the optimal variance
    with the subset squared radius.
    """

    curvature: CurvatureRadius
    curvature_residual: float
    value_residual: float

    @property
    def passed(self) -> bool:
        return max(self.curvature_residual, self.value_residual) <= 1e-8


@dataclass(frozen=True)
class NegativeCurvatureInstance:
    """A signed instance whose optimal support holds a node of negative
    whole-graph curvature (with the certified solution as evidence)."""

    q: SignedLaplacianQ
    solution: MaxVarSolution
    node: int
    curvature_value: float
    attempts_used: int


def _as_omega(omega):
    m = omega.omega if isinstance(omega, ResistanceMatrix) else as_square(omega)
    if np.abs(m - m.T).max(initial=0.0) > 1e-9 * _scale(m):
        raise ValidationError(
            "variance maximization needs a symmetric resistance matrix"
        )
    return (m + m.T) / 2.0


def _check_distribution(f, n):
    v = np.asarray(f, dtype=float)
    if v.shape != (n,):
        raise ValidationError(f"distribution must have shape ({n},)")
    if v.min() < -1e-12:
        raise ValidationError("distribution entries must be nonnegative")
    if abs(v.sum() - 1.0) > 1e-9:
        raise ValidationError("distribution must sum to 1")
    return np.clip(v, 0.0, None)


def variance(omega, f) -> float:
    """Graph variance ``(1/2) f^T Omega f`` of a distribution."""
    om = _as_omega(omega)
    v = _check_distribution(f, om.shape[0])
    return float(0.5 * v @ om @ v)


def verify_kkt(omega, f, tol=1e-9) -> KktCheck:
    """Check first-order optimality of ``f`` for the variance problem.

    The residual is ``max_j (Omega f)_j - min_{i in supp f} (Omega f)_i``
    clipped at zero: it vanishes exactly when the gradient is constant on
    the support and no larger elsewhere.  ``tol`` is applied relative to
    the magnitude of ``Omega``.
    """
    om = _as_omega(omega)
    v = _check_distribution(f, om.shape[0])
    support = np.flatnonzero(v > 1e-12)
    if support.size == 0:
        raise ValidationError("distribution has empty support")
    g = om @ v
    residual = float(max(0.0, g.max() - g[support].min()))
    return KktCheck(ok=residual <= tol * _scale(om), residual=residual,
                    support=support)


def _stationary_on_face(om, nodes):
    """Interior stationary distribution on a face, or ``None``.

    Solves ``Omega[V, V] x = 1`` and normalizes; rejects faces whose
    stationary point is not strictly positive or whose block is singular.
    """
    block = om[np.ix_(nodes, nodes)]
    try:
        x = np.linalg.solve(block, np.ones(nodes.size))
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(x)):
        return None
    s = x.sum()
    if s <= 1e-14:
        return None
    fv = x / s
    if fv.min() <= INTERIOR_TOL:
        return None
    f = np.zeros(om.shape[0])
    f[nodes] = fv
    return f


def solve_maxvar_exact(omega) -> MaxVarSolution:
    """Certified maximizer by exhaustive support enumeration.

    Scans supports by decreasing size, solves the stationarity system on
    each face, and returns the first strictly positive stationary
    distribution that passes the KKT check (unique by strict concavity on
    the simplex for strict-negative-type ``Omega``).

    Raises
    ------
    CapacityError
        Above 15 nodes (enumeration is exponential).
    NumericError
        If no face certifies, which signals an invalid resistance matrix.
    """
    om = _as_omega(omega)
    n = om.shape[0]
    if n > MAX_EXACT_NODES:
        raise CapacityError(
            f"exact enumeration is capped at {MAX_EXACT_NODES} nodes, got {n}"
        )
    if n == 1:
        return MaxVarSolution(f=np.ones(1), support=np.array([0]), value=0.0,
                              kkt_residual=0.0, method="exact")
    tol_cert = 1e-9 * _scale(om)
    for size in range(n, 1, -1):
        for nodes in itertools.combinations(range(n), size):
            f = _stationary_on_face(om, np.array(nodes))
            if f is None:
                continue
            g = om @ f
            support = np.array(nodes)
            residual = float(max(0.0, g.max() - g[support].min()))
            if residual <= tol_cert:
                return MaxVarSolution(
                    f=f, support=support, value=float(0.5 * f @ g),
                    kkt_residual=residual, method="exact",
                )
    raise NumericError(
        "no support admits a certified maximizer; "
        "the matrix is not a valid resistance geometry"
    )


def project_to_simplex(v):
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u * idx > css)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.clip(v - theta, 0.0, None)


def solve_maxvar(omega, x0=None, tol=1e-9, max_iter=10000) -> MaxVarSolution:
    """Maximizer by projected gradient ascent with exact finishing.

    Steps of size ``1/||Omega||_2`` (halved on backtracking) with
    projection keep iterates feasible; the projection zeroes small
    entries, so the optimal face is identified in finitely many steps.
    Every 25 iterations, and whenever the iterate's KKT residual is small,
    the support is extracted, the face system re-solved exactly (dropping
    nonpositive components and re-solving as needed), and the candidate
    re-certified.  Only a certified candidate is returned.

    Raises
    ------
    ConvergenceError
        If the budget runs out; carries the residual history.
    """
    om = _as_omega(omega)
    n = om.shape[0]
    if n == 1:
        return MaxVarSolution(f=np.ones(1), support=np.array([0]), value=0.0,
                              kkt_residual=0.0, method="iterative")
    if x0 is None:
        f = np.full(n, 1.0 / n)
    else:
        f = _check_distribution(x0, n)
        f = f / f.sum()
    spectral = float(np.abs(np.linalg.eigvalsh(om)).max())
    if spectral <= 0.0:
        raise ValidationError("resistance matrix must be nonzero")
    step = 1.0 / spectral
    tol_cert = tol * _scale(om)
    history = []
    for it in range(max_iter):
        g = om @ f
        current = 0.5 * f @ g
        support = np.flatnonzero(f > 1e-12)
        residual = float(max(0.0, g.max() - g[support].min()))
        history.append(residual)
        if residual <= tol_cert or it % 25 == 24:
            finished = _finish(om, f, tol_cert)
            if finished is not None:
                return finished
        t = step
        for _ in range(50):
            cand = project_to_simplex(f + t * g)
            if 0.5 * cand @ om @ cand >= current - 1e-15 * max(1.0, abs(current)):
                break
            t /= 2.0
        f = cand
    raise ConvergenceError(
        f"no certified maximizer within {max_iter} iterations "
        f"(last residual {history[-1]:.3e})",
        history=history,
    )


def _finish(om, f, tol_cert):
    """Support extraction, exact face solve, and re-certification."""
    nodes = np.flatnonzero(f > SUPPORT_TOL)
    while nodes.size >= 2:
        block = om[np.ix_(nodes, nodes)]
        try:
            x = np.linalg.solve(block, np.ones(nodes.size))
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(x)) or x.sum() <= 1e-14:
            return None
        fv = x / x.sum()
        if fv.min() > INTERIOR_TOL:
            exact = np.zeros(om.shape[0])
            exact[nodes] = fv
            g = om @ exact
            residual = float(max(0.0, g.max() - g[nodes].min()))
            if residual <= tol_cert:
                return MaxVarSolution(
                    f=exact, support=nodes, value=float(0.5 * exact @ g),
                    kkt_residual=residual, method="iterative",
                )
            return None
        nodes = nodes[fv > INTERIOR_TOL]
    return None


def characterize(solution: MaxVarSolution, source) -> CharacterizationReport:
    """Compare a maximizer against the curvature of its own support.

    ``source`` may be a signed Laplacian, an SCWB directed Laplacian, or
    the resistance matrix itself.  The maximizer restricted to its support
    should be that subset's curvature vector, and the optimal variance the
    subset's squared radius.
    """
    if isinstance(source, SignedLaplacianQ):
        omega = resistance_matrix_q(source)
    elif isinstance(source, DirectedLaplacian):
        omega = resistance_matrix_scwb(source)
    else:
        omega = ResistanceMatrix(_as_omega(source), kind="class_q")
    cr = subset_curvature_radius(omega, solution.support)
    curvature_residual = float(
        np.abs(solution.f[solution.support] - cr.p).max()
    )
    value_residual = float(abs(solution.value - cr.sigma2))
    return CharacterizationReport(
        curvature=cr,
        curvature_residual=curvature_residual,
        value_residual=value_residual,
    )


def find_negative_curvature_support_instance(
    n, seed=0, attempts=100000
) -> NegativeCurvatureInstance | None:
    """Search for an optimal support containing negative curvature.

    Draws random signed Laplacians until one has a certified maximizer
    whose support includes a node with negative whole-graph curvature
    (below ``-1e-10``).  Returns ``None`` if the budget is exhausted,
    which for sizes 4 to 6 and default seeds does not happen in practice.
    """
    if not 4 <= n <= 12:
        raise ValidationError(f"search size must be in [4, 12], got {n}")
    rng = np.random.default_rng(seed)
    for attempt in range(1, attempts + 1):
        q = random_class_q(n, rng, ensure_signed=True)
        omega = resistance_matrix_q(q)
        whole = subset_curvature_radius(omega, range(n))
        if whole.p.min() >= -1e-10:
            continue
        solution = solve_maxvar_exact(omega)
        negative = [int(i) for i in solution.support if whole.p[i] < -1e-10]
        if negative:
            return NegativeCurvatureInstance(
                q=q,
                solution=solution,
                node=negative[0],
                curvature_value=float(whole.p[negative[0]]),
                attempts_used=attempt,
            )
    return None
