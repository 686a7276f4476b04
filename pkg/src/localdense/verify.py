"""Named self-checks over a loaded graph.

Each property either passes, fails, or is skipped when its inputs don't
apply (for example, the exact cross-check on a graph too large to
enumerate).  The CLI turns a failed property into exit code 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoCandidate, TooLarge, UnknownVertex
from .graph import LEFT, BipartiteGraph, density
from .globalopt import global_density, global_guarantee_bound
from .growth import growth_bound_check
from .local import local_density, local_guarantee_bound
from .oracle import exact_densest, good_seed_set, top_eigenvalue

PROPERTY_NAMES = (
    "support-bound",
    "level-count",
    "growth-cap",
    "prune-mass",
    "spectral-dominance",
    "global-guarantee",
    "exact-agreement",
    "planted-coverage",
    "planted-certificates",
    "planted-local-guarantee",
)


@dataclass
class PropertyResult:
    name: str
    status: str  # "pass", "fail", or "skip"
    detail: str


def _collect_traces(g: BipartiteGraph, target_size: int, seed_count: int):
    """Traces from the whole-graph run plus a handful of local runs."""
    results = []
    glob = global_density(g, keep_trace=True)
    results.append(("global", glob))
    for idx in range(min(seed_count, g.left_count)):
        try:
            res = local_density(g, g.left_id(idx), target_size, LEFT, keep_trace=True)
        except (NoCandidate, UnknownVertex):
            continue
        results.append(("local", res))
    traces = []
    for _, res in results:
        traces.extend(res.traces or ())
    return results, traces


def run_verification(
    g: BipartiteGraph,
    density_threshold: float | None = None,
    planted: tuple | None = None,
    side_cap: int = 20,
    target_size: int = 8,
    seed_count: int = 8,
) -> list:
    """Evaluate every property against the graph; returns one result each.

    planted, when given, is a pair of id lists naming a known dense block;
    density_threshold defaults to half that block's density.
    """
    out: list[PropertyResult] = []
    runs, traces = _collect_traces(g, target_size, seed_count)
    delta = g.max_degree

    # support-bound: a vector truncated at fraction eps has at most 1/eps^2
    # surviving entries
    bad = 0
    checked = 0
    for tr in traces:
        for rec in tr.steps:
            checked += 2
            if rec.x_support > 1.0 / rec.eps_t**2:
                bad += 1
            if rec.next_support > 1.0 / rec.eps_prune**2:
                bad += 1
    out.append(
        PropertyResult(
            "support-bound",
            "pass" if bad == 0 else "fail",
            f"{checked} support checks, {bad} violations",
        )
    )

    # level-count: the rounded product occupies few distinct powers of two;
    # edge weights below one widen the spread, so the cap folds them in
    wfloor = min(g.min_weight, 1.0)
    bad = 0
    checked = 0
    for tr in traces:
        for rec in tr.steps:
            checked += 1
            cap = math.ceil(math.log2(2.0 * delta / (rec.eps_t * wfloor))) + 1
            if rec.post_levels.level_count > cap:
                bad += 1
    out.append(
        PropertyResult(
            "level-count",
            "pass" if bad == 0 else "fail",
            f"{checked} level counts, {bad} violations",
        )
    )

    # growth-cap: per-step norm growth against the measured densest pair
    bad = 0
    checked = 0
    for tr in traces:
        for rec in tr.steps:
            checked += 1
            ok = growth_bound_check(
                rec.max_pair_density,
                delta,
                rec.eps_t,
                rec.x_norm,
                rec.pre_norm,
                rec.max_pair_density,
            )
            if not ok:
                bad += 1
    out.append(
        PropertyResult(
            "growth-cap",
            "pass" if bad == 0 else "fail",
            f"{checked} growth checks, {bad} violations",
        )
    )

    # prune-mass: what truncation removed is small relative to what existed
    bad = 0
    checked = 0
    for tr in traces:
        for rec in tr.steps:
            if rec.pruned_count == 0:
                continue
            checked += 1
            cap = rec.eps_prune * rec.pre_norm * math.sqrt(rec.pruned_count)
            if rec.pruned_mass > cap * (1.0 + 1e-12):
                bad += 1
    out.append(
        PropertyResult(
            "prune-mass",
            "pass" if bad == 0 else "fail",
            f"{checked} pruning checks, {bad} violations",
        )
    )

    est = top_eigenvalue(g)
    best_density = max(res.density for _, res in runs)

    # spectral-dominance: no observed density may exceed the eigenvalue
    # estimate plus its residual
    ok = best_density <= est.value + est.residual + 1e-9
    out.append(
        PropertyResult(
            "spectral-dominance",
            "pass" if ok else "fail",
            f"best density {best_density:.6g} vs eigenvalue {est.value:.6g} "
            f"(residual {est.residual:.2g})",
        )
    )

    glob = next(res for kind, res in runs if kind == "global")
    if g.vertex_count >= 2 and est.value > 0:
        floor = global_guarantee_bound(est.value, g.vertex_count)
        ok = glob.density >= floor
        out.append(
            PropertyResult(
                "global-guarantee",
                "pass" if ok else "fail",
                f"global density {glob.density:.6g} vs floor {floor:.6g}",
            )
        )
    else:
        out.append(PropertyResult("global-guarantee", "skip", "graph too small"))

    try:
        exact = exact_densest(g, side_cap)
        ok = all(res.density <= exact.density + 1e-9 for _, res in runs)
        out.append(
            PropertyResult(
                "exact-agreement",
                "pass" if ok else "fail",
                f"exact optimum {exact.density:.6g} dominates all runs",
            )
        )
    except TooLarge:
        out.append(
            PropertyResult(
                "exact-agreement", "skip", f"smaller side above cap {side_cap}"
            )
        )

    if planted is None:
        out.append(PropertyResult("planted-coverage", "skip", "no planted block given"))
        out.append(PropertyResult("planted-certificates", "skip", "no planted block given"))
        out.append(
            PropertyResult("planted-local-guarantee", "skip", "no planted block given")
        )
        return out

    left_ids, right_ids = planted
    left_set = g.left_indices(left_ids)
    right_set = g.right_indices(right_ids)
    base = density(g, left_set, right_set)
    threshold = (
        density_threshold if density_threshold is not None else base.density / 2.0
    )
    report = good_seed_set(g, left_set, right_set, threshold)

    ok = report.coverage >= 0.5
    out.append(
        PropertyResult(
            "planted-coverage",
            "pass" if ok else "fail",
            f"coverage {report.coverage:.3f} over {len(report.good)} seeds",
        )
    )

    min_weight = 1.0 / math.sqrt(2.0 * len(left_set))
    bad = 0
    for v, cert in report.certificates.items():
        if cert.margin < -1e-9 or cert.vertex_value < min_weight - 1e-12:
            bad += 1
    out.append(
        PropertyResult(
            "planted-certificates",
            "pass" if bad == 0 else "fail",
            f"{len(report.certificates)} certificates, {bad} invalid",
        )
    )

    size = max(len(left_set), len(right_set))
    floor = local_guarantee_bound(threshold, max(delta, 1.0), size)
    bad = 0
    for v in sorted(report.good):
        res = local_density(g, g.left_id(v), size, LEFT)
        if res.density < floor:
            bad += 1
    out.append(
        PropertyResult(
            "planted-local-guarantee",
            "pass" if bad == 0 else "fail",
            f"{len(report.good)} good seeds vs floor {floor:.6g}, {bad} below",
        )
    )
    return out


def exit_code(results) -> int:
    return 3 if any(r.status == "fail" for r in results) else 0
