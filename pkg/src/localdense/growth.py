"""The pruned growth process and its level-set bookkeeping.

The process walks a sparse nonnegative vector back and forth across the
bipartition: multiply by the adjacency, round every entry up to a power of
two, then drop entries that are small relative to the vector norm.  Because
entries are always exact powers of two, a vector is stored as a map from
vertex index to integer exponent; per-vertex floats are never materialized.

Grouping a vector's support by exponent gives its level sets, and each step's
candidate subgraphs are the pairs (level of the current vector, level of the
rounded product).  The densest pair over all steps is the process output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import DomainError, NegativeEntry, NoCandidate, ZeroVector
from .graph import LEFT, BipartiteGraph, Subgraph, opposite

__all__ = [
    "LevelVector",
    "LevelSets",
    "Candidate",
    "StepRecord",
    "GrowthTrace",
    "ProcessOutcome",
    "round_up_pow2",
    "truncate",
    "multiply",
    "step",
    "level_sets",
    "evaluate_candidates",
    "growth_bound_check",
    "run_pruned_growth",
]


def _pow2(i: int) -> float:
    return math.ldexp(1.0, i)


def _norm_of(exponents: Mapping[int, int]) -> float:
    return math.sqrt(math.fsum(math.ldexp(1.0, 2 * i) for i in exponents.values()))


@dataclass(frozen=True)
class LevelVector:
    """Sparse vector whose entries are exact powers of two.

    exponents maps vertex index (on `side`) to the integer i with value 2**i.
    The Euclidean norm is cached at construction.
    """

    side: str
    exponents: dict
    norm: float

    @classmethod
    def from_exponents(cls, side: str, exponents: Mapping[int, int]) -> "LevelVector":
        exps = dict(exponents)
        return cls(side, exps, _norm_of(exps))

    @classmethod
    def unit(cls, side: str, vertex: int) -> "LevelVector":
        return cls(side, {vertex: 0}, 1.0)

    @classmethod
    def ones(cls, side: str, count: int) -> "LevelVector":
        return cls(side, {u: 0 for u in range(count)}, math.sqrt(count))

    @property
    def support_size(self) -> int:
        return len(self.exponents)

    def value(self, vertex: int) -> float:
        i = self.exponents.get(vertex)
        return 0.0 if i is None else _pow2(i)


@dataclass(frozen=True)
class LevelSets:
    """A vector's support grouped by exponent, each group sorted."""

    side: str
    by_exponent: dict

    @property
    def level_count(self) -> int:
        return len(self.by_exponent)

    @property
    def support_size(self) -> int:
        return sum(len(vs) for vs in self.by_exponent.values())

    def vertex_exponents(self) -> dict:
        return {v: i for i, vs in self.by_exponent.items() for v in vs}


@dataclass(frozen=True)
class Candidate:
    """Best level pair of one step: the subgraph plus its level exponents.

    i is the exponent of the current vector's level, j the exponent of the
    rounded product's level.  The subgraph is reported with its left set on
    the graph's left side regardless of which direction the step ran.
    """

    subgraph: Subgraph
    i: int
    j: int

    @property
    def density(self) -> float:
        return self.subgraph.density


def round_up_pow2(entries: Mapping[int, float], side: str) -> LevelVector:
    """Round each positive entry up to the nearest power of two.

    The exponent chosen for value z is the smallest i with 2**i >= z, so the
    result is within a factor of two above the input.  Zero entries vanish.
    """
    exps = {}
    for u, val in entries.items():
        if not (val >= 0.0) or math.isinf(val):
            raise NegativeEntry(f"entry {u!r} has invalid value {val!r}")
        if val == 0.0:
            continue
        m, e = math.frexp(val)
        # frexp gives val = m * 2**e with 0.5 <= m < 1, so 2**e covers val
        # and 2**(e-1) suffices exactly when m == 0.5.
        exps[u] = e - 1 if m == 0.5 else e
    return LevelVector(side, exps, _norm_of(exps))


def truncate(z: LevelVector, eps: float) -> LevelVector:
    """Keep entries strictly above eps times the vector norm."""
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"truncation fraction {eps!r} outside [0, 1]")
    threshold = eps * z.norm
    kept = {u: i for u, i in z.exponents.items() if _pow2(i) > threshold}
    return LevelVector(z.side, kept, _norm_of(kept))


def multiply(g: BipartiteGraph, x: LevelVector) -> dict:
    """Sparse product of x with the adjacency; lands on the opposite side.

    Touches only edges incident to the support of x.
    """
    out: dict = {}
    for u in sorted(x.exponents):
        val = _pow2(x.exponents[u])
        nbr, wt = g.neighbors(x.side, u)
        for v, w in zip(nbr.tolist(), wt.tolist()):
            out[v] = out.get(v, 0.0) + val * w
    return out


def level_sets(x: LevelVector) -> LevelSets:
    buckets: dict = {}
    for u, i in x.exponents.items():
        buckets.setdefault(i, []).append(u)
    ordered = {i: tuple(sorted(buckets[i])) for i in sorted(buckets)}
    return LevelSets(x.side, ordered)


def step(g: BipartiteGraph, x: LevelVector, eps_next: float):
    """One move of the process: multiply, round, then truncate at eps_next.

    Returns (next vector, level sets of the rounded product, norm of the
    rounded product).  Raises ZeroVector, carrying those last two values,
    when truncation empties the vector.
    """
    rounded = round_up_pow2(multiply(g, x), opposite(x.side))
    post = level_sets(rounded)
    pre_norm = rounded.norm
    nxt = truncate(rounded, eps_next)
    if not nxt.exponents:
        raise ZeroVector("truncation removed every entry", post, pre_norm)
    return nxt, post, pre_norm


def evaluate_candidates(g: BipartiteGraph, x_levels: LevelSets, y_levels: LevelSets) -> Candidate:
    """Densest pair (level of x, level of the rounded product).

    All pair weights are accumulated in a single pass over the edges incident
    to the support of x.  Ties prefer the smaller (i, j).
    """
    if not x_levels.by_exponent or not y_levels.by_exponent:
        raise NoCandidate("a level family is empty")
    ymap = y_levels.vertex_exponents()
    ysizes = {j: len(vs) for j, vs in y_levels.by_exponent.items()}
    pair_weight: dict = {}
    for i, verts in x_levels.by_exponent.items():
        for u in verts:
            nbr, wt = g.neighbors(x_levels.side, u)
            for v, w in zip(nbr.tolist(), wt.tolist()):
                j = ymap.get(v)
                if j is None:
                    continue
                key = (i, j)
                pair_weight[key] = pair_weight.get(key, 0.0) + w
    if not pair_weight:
        raise NoCandidate("no edges between the level families")
    best = None
    for i, j in sorted(pair_weight):
        e = pair_weight[(i, j)]
        si = len(x_levels.by_exponent[i])
        sj = ysizes[j]
        d = e / math.sqrt(si * sj)
        if best is None or d > best[0]:
            best = (d, i, j, e, si, sj)
    d, i, j, e, si, sj = best
    xs = frozenset(x_levels.by_exponent[i])
    ys = frozenset(y_levels.by_exponent[j])
    if x_levels.side == LEFT:
        sub = Subgraph(xs, ys, e, d)
    else:
        sub = Subgraph(ys, xs, e, d)
    return Candidate(sub, i, j)


def growth_bound_check(
    density_threshold: float,
    max_degree: float,
    eps: float,
    vec_norm: float,
    rounded_norm: float,
    max_pair_density: float,
) -> bool:
    """Check the one-step norm growth cap.

    When every level pair of the step has density at most density_threshold,
    the rounded product's norm must stay within
    2 * density_threshold * vec_norm * log2(2 * max_degree / eps).
    Vacuously true when some pair exceeds the threshold or the step involved
    a zero vector.
    """
    if vec_norm == 0.0 or rounded_norm == 0.0:
        return True
    if max_pair_density > density_threshold:
        return True
    cap = 2.0 * density_threshold * vec_norm * math.log2(2.0 * max_degree / eps)
    return rounded_norm <= cap


@dataclass(frozen=True)
class StepRecord:
    """Everything observed while moving from the step's source vector.

    eps_t is the schedule value indexed with the source vector (used by the
    growth and level-count checks); eps_prune is the next schedule value,
    applied by the truncation that produced the following vector.
    """

    t: int
    eps_t: float
    eps_prune: float
    x_side: str
    x_norm: float
    x_support: int
    x_levels: LevelSets
    pre_norm: float
    post_levels: LevelSets
    max_pair_density: float
    pruned_mass: float
    pruned_count: int
    next_support: int
    next_norm: float
    best_so_far: tuple


@dataclass
class GrowthTrace:
    start: str
    steps: list = field(default_factory=list)


@dataclass
class ProcessOutcome:
    best: Candidate | None
    best_at: tuple | None
    steps_executed: int
    edges_touched: int
    stopped_early: bool
    trace: GrowthTrace | None


def run_pruned_growth(
    g: BipartiteGraph,
    start: LevelVector,
    epsilons: Sequence[float],
    keep_trace: bool = False,
    label: str = "",
) -> ProcessOutcome:
    """Drive the process for len(epsilons) - 1 steps from `start`.

    epsilons[t + 1] prunes the step taken from the t-th vector; epsilons[0]
    is never applied (the start vector is used as given) but is recorded with
    the first step for bound checking.  Candidates are evaluated from the
    rounded product before each truncation, so a step that prunes to zero
    still contributes its level pairs.
    """
    x = start
    x_lv = level_sets(x)
    best: Candidate | None = None
    best_at: tuple | None = None
    edges_touched = 0
    executed = 0
    stopped = False
    trace = GrowthTrace(label) if keep_trace else None

    for t in range(len(epsilons) - 1):
        incident = sum(g.fanout(x.side, u) for u in x.exponents)
        if incident == 0:
            stopped = True
            break
        died = False
        try:
            x_next, post, pre_norm = step(g, x, epsilons[t + 1])
        except ZeroVector as zv:
            x_next, post, pre_norm = None, zv.post_levels, zv.pre_norm
            died = True
        executed += 1
        edges_touched += 2 * incident

        cand = evaluate_candidates(g, x_lv, post)
        if best is None or cand.density > best.density:
            best = cand
            best_at = (t, cand.i, cand.j)

        if keep_trace:
            kept = set() if x_next is None else set(x_next.exponents)
            removed = [
                (v, j)
                for j, vs in post.by_exponent.items()
                for v in vs
                if v not in kept
            ]
            pruned_mass = math.sqrt(
                math.fsum(math.ldexp(1.0, 2 * j) for _, j in removed)
            )
            trace.steps.append(
                StepRecord(
                    t=t,
                    eps_t=epsilons[t],
                    eps_prune=epsilons[t + 1],
                    x_side=x.side,
                    x_norm=x.norm,
                    x_support=x.support_size,
                    x_levels=x_lv,
                    pre_norm=pre_norm,
                    post_levels=post,
                    max_pair_density=cand.density,
                    pruned_mass=pruned_mass,
                    pruned_count=len(removed),
                    next_support=0 if x_next is None else x_next.support_size,
                    next_norm=0.0 if x_next is None else x_next.norm,
                    best_so_far=best_at + (best.density,),
                )
            )

        if died:
            stopped = True
            break
        x = x_next
        x_lv = level_sets(x)

    return ProcessOutcome(best, best_at, executed, edges_touched, stopped, trace)
