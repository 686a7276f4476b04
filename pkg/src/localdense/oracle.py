"""Ground-truth machinery: exact densest pair, spectral estimate, good seeds.

These routines are deliberately independent of the growth process so they can
serve as referees for it.  The exact search enumerates one side outright and
is meant for desk-scale graphs; the spectral estimate and the seed analysis
scale to anything the rest of the package handles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from .errors import DomainError, EmptyGraph, PreconditionFailed, TooLarge
from .graph import (
    LEFT,
    RIGHT,
    BipartiteGraph,
    Subgraph,
    density,
    edge_weight_between,
    restrict,
)

__all__ = [
    "EigenEstimate",
    "Certificate",
    "GoodSeedReport",
    "exact_densest",
    "top_eigenvalue",
    "good_seed_set",
]


def biadjacency(g: BipartiteGraph) -> csr_matrix:
    """Left-by-right sparse weight matrix sharing the graph's arrays."""
    ptr, nbr, wt = g.csr_arrays(LEFT)
    return csr_matrix((wt, nbr, ptr), shape=(g.left_count, g.right_count))


# ---------------------------------------------------------------------------
# exact search


def exact_densest(g: BipartiteGraph, side_cap: int = 20) -> Subgraph:
    """Maximize density over all vertex-set pairs by enumerating one side.

    Every subset of the smaller side is tried; for a fixed subset the best
    partner of each size is formed greedily from the vertices with the
    largest incident weight into the subset, which is optimal because the
    denominator depends only on the partner's size.  Ties are broken toward
    the subset enumerated first and then the smaller partner.

    Raises TooLarge when the smaller side exceeds side_cap.
    """
    if side_cap < 1:
        raise DomainError("side cap must be at least one")
    flip = g.right_count < g.left_count
    small = g.right_count if flip else g.left_count
    if small > side_cap:
        raise TooLarge(
            f"smaller side has {small} vertices, above the cap of {side_cap}"
        )
    mat = biadjacency(g).toarray()
    if flip:
        mat = mat.T
    other = mat.shape[1]
    partner_order_tiebreak = np.arange(other)
    sizes = np.sqrt(np.arange(1, other + 1, dtype=np.float64))

    best = None  # (density, weight, subset tuple, partner tuple)
    members: list[int] = []
    for mask in range(1, 1 << small):
        members = [u for u in range(small) if mask >> u & 1]
        incident = mat[members].sum(axis=0)
        order = np.lexsort((partner_order_tiebreak, -incident))
        prefix = np.cumsum(incident[order])
        dens = prefix / (math.sqrt(len(members)) * sizes)
        k = int(np.argmax(dens))
        d = float(dens[k])
        if best is None or d > best[0]:
            partner = tuple(sorted(order[: k + 1].tolist()))
            best = (d, float(prefix[k]), tuple(members), partner)

    _, _, subset, partner = best
    if flip:
        left_set, right_set = frozenset(partner), frozenset(subset)
    else:
        left_set, right_set = frozenset(subset), frozenset(partner)
    return density(g, left_set, right_set)


# ---------------------------------------------------------------------------
# spectral estimate


@dataclass
class EigenEstimate:
    """Top adjacency eigenvalue estimate with a nonnegative unit vector.

    left and right are the vector's two halves; residual is the norm of
    (vector times adjacency minus value times vector).  The true top
    eigenvalue lies within residual of value once the iteration has settled,
    and it always dominates every subgraph density.
    """

    value: float
    left: np.ndarray
    right: np.ndarray
    residual: float
    iterations: int
    converged: bool


def top_eigenvalue(g: BipartiteGraph, tol: float = 1e-9, max_iters: int = 10000) -> EigenEstimate:
    """Power iteration for the top eigenvalue of the bipartite adjacency.

    Iterates the two-step product (adjacency squared), which keeps the sign
    structure stable, and reports the square root.  The final vector is
    symmetrized across the two sides so it approximates an eigenvector of the
    one-step adjacency, and the reported value is its Rayleigh quotient.
    A run that hits max_iters returns its best estimate with converged False.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    mat = biadjacency(g)
    nl, nr = mat.shape
    xl = np.ones(nl) / math.sqrt(nl + nr)
    xr = np.ones(nr) / math.sqrt(nl + nr)

    def apply_adj(al, ar):
        return mat @ ar, mat.T @ al

    def symmetrized(al, ar, scale):
        # blend x with x A / scale so both sides carry the same growth rate,
        # then renormalize; this is the eigenvector once the two-step
        # iteration has converged
        yl, yr = apply_adj(al, ar)
        if scale > 0.0:
            pl, pr = al + yl / scale, ar + yr / scale
        else:
            pl, pr = al, ar
        pnorm = math.sqrt(float(pl @ pl + pr @ pr))
        if pnorm > 0.0:
            pl, pr = pl / pnorm, pr / pnorm
        ql, qr = apply_adj(pl, pr)
        rayleigh = float(pl @ ql + pr @ qr)
        residual = math.sqrt(
            float((ql - rayleigh * pl) @ (ql - rayleigh * pl))
            + float((qr - rayleigh * pr) @ (qr - rayleigh * pr))
        )
        return pl, pr, rayleigh, residual

    prev = None
    value = 0.0
    iterations = 0
    while iterations < max_iters:
        iterations += 1
        yl, yr = apply_adj(xl, xr)
        value = math.sqrt(float(yl @ yl + yr @ yr))
        zl, zr = apply_adj(yl, yr)
        znorm = math.sqrt(float(zl @ zl + zr @ zr))
        if znorm == 0.0:
            break
        xl, xr = zl / znorm, zr / znorm
        if prev is not None and abs(value - prev) <= tol * max(value, 1e-300):
            pl, pr, rayleigh, residual = symmetrized(xl, xr, value)
            if residual <= tol * max(rayleigh, 1e-300):
                return EigenEstimate(rayleigh, pl, pr, residual, iterations, True)
        prev = value

    pl, pr, rayleigh, residual = symmetrized(xl, xr, value)
    return EigenEstimate(rayleigh, pl, pr, residual, iterations, False)


# ---------------------------------------------------------------------------
# good seeds


@dataclass
class Certificate:
    """Witness that one left vertex sits heavily in a dense direction.

    left and right map vertex indices of the original graph to the entries
    of a nonnegative unit vector supported inside the analyzed pair.  The
    vector satisfies (vector times full adjacency) >= threshold * vector on
    its support up to the recorded margin, and gives the certified vertex
    weight at least 1 / sqrt(2 |S|).
    """

    left: dict
    right: dict
    vertex_value: float
    margin: float
    eigenvalue: float
    residual: float


@dataclass
class GoodSeedReport:
    """Left vertices certified as productive seeds for a given pair (S, T).

    coverage is the fraction of the pair's edge weight touching the certified
    set; it is at least one half when the pair's density is at least twice
    the threshold.
    """

    good: frozenset
    certificates: dict
    coverage: float
    edge_weight_good: float
    edge_weight_total: float
    batches: int


def _certificate_margin(g: BipartiteGraph, vec_left: dict, vec_right: dict, threshold: float):
    """Smallest slack of (vector times adjacency - threshold * vector) on the support."""
    worst = math.inf
    for side, vec, other in ((LEFT, vec_left, vec_right), (RIGHT, vec_right, vec_left)):
        for u, pu in vec.items():
            nbr, wt = g.neighbors(side, u)
            acc = 0.0
            for v, w in zip(nbr.tolist(), wt.tolist()):
                pv = other.get(v)
                if pv is not None:
                    acc += pv * w
            worst = min(worst, acc - threshold * pu)
    return worst


def good_seed_set(
    g: BipartiteGraph,
    left_set,
    right_set,
    density_threshold: float,
    tol: float = 1e-9,
    max_iters: int = 10000,
) -> GoodSeedReport:
    """Certify left vertices of a dense pair as productive local seeds.

    Requires density(left_set, right_set) >= 2 * density_threshold.  Peels in
    batches: take the principal direction of the graph restricted to the
    remaining pair, certify every left vertex carrying weight at least
    1 / sqrt(2 |S|), remove them, and repeat while the restricted eigenvalue
    stays at or above the threshold.  The certified set touches at least half
    of the pair's edge weight.
    """
    if not density_threshold > 0:
        raise DomainError("density threshold must be positive")
    base = density(g, left_set, right_set)
    if base.density < 2.0 * density_threshold:
        raise PreconditionFailed(
            f"pair density {base.density:g} is below twice the threshold {density_threshold:g}"
        )
    min_weight = 1.0 / math.sqrt(2.0 * len(base.left))
    remaining = set(base.left)
    good: list[int] = []
    certificates: dict = {}
    batches = 0

    while remaining:
        try:
            h = restrict(g, remaining, base.right)
        except EmptyGraph:
            break
        est = top_eigenvalue(h, tol, max_iters)
        if est.value < density_threshold:
            break
        vec_left = {}
        for k, val in enumerate(est.left.tolist()):
            if val > 0.0:
                vec_left[g.find_vertex(h.left_id(k), LEFT)[1]] = val
        vec_right = {}
        for k, val in enumerate(est.right.tolist()):
            if val > 0.0:
                vec_right[g.find_vertex(h.right_id(k), RIGHT)[1]] = val
        qualified = [
            v for v in sorted(remaining)
            if vec_left.get(v, 0.0) >= min_weight - 1e-12
        ]
        if not qualified:
            break
        batches += 1
        margin = _certificate_margin(g, vec_left, vec_right, density_threshold)
        for v in qualified:
            certificates[v] = Certificate(
                left=vec_left,
                right=vec_right,
                vertex_value=vec_left[v],
                margin=margin,
                eigenvalue=est.value,
                residual=est.residual,
            )
            good.append(v)
            remaining.discard(v)

    e_good = edge_weight_between(g, frozenset(good), base.right) if good else 0.0
    coverage = e_good / base.edge_weight if base.edge_weight > 0 else 0.0
    return GoodSeedReport(
        good=frozenset(good),
        certificates=certificates,
        coverage=coverage,
        edge_weight_good=e_good,
        edge_weight_total=base.edge_weight,
        batches=batches,
    )
