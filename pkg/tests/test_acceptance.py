"""Acceptance gate: ten end-to-end checks with fixed tolerances and budgets.

Each test prints one PASS/FAIL line through the terminal-summary hook in
conftest.py.  The planted and whole-graph suites are built once per session
and shared by the criteria that reuse their traces.
"""

import json
import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from localdense import (
    density,
    exact_densest,
    generate_planted,
    global_density,
    good_seed_set,
    local_density,
    local_guarantee_bound,
    ratio_density,
    top_eigenvalue,
)

from conftest import (
    ACCEPTANCE_LINES,
    dense_biadjacency,
    k_ab,
    naive_densest,
    random_bipartite,
)


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="session")
def planted_suite():
    """Fifty planted-block instances with good seeds, local runs, and traces."""
    rng = random.Random(20250817)
    t0 = time.perf_counter()
    instances = []
    for _ in range(50):
        a = rng.randint(3, 8)
        b = rng.randint(3, 8)
        nl = rng.randint(3 * a, 6 * a)
        nr = rng.randint(3 * b, 6 * b)
        noise = rng.randint(0, 4 * a * b)
        g, left, right = generate_planted(
            nl, nr, noise, a, b, rng_seed=rng.randrange(2**32)
        )
        sub = density(g, left, right)
        theta = sub.density / 2.0
        target = max(len(left), len(right))
        report_ = good_seed_set(g, left, right, theta)
        runs = {
            v: local_density(g, g.left_id(v), target, side="L", keep_trace=True)
            for v in sorted(report_.good)
        }
        instances.append(
            {
                "g": g,
                "left": left,
                "right": right,
                "block": sub,
                "theta": theta,
                "target": target,
                "report": report_,
                "runs": runs,
            }
        )
    return {"instances": instances, "build_seconds": time.perf_counter() - t0}


@pytest.fixture(scope="session")
def global_suite():
    """Fifty random and planted graphs (n <= 2000) with traced global runs."""
    rng = random.Random(20250818)
    t0 = time.perf_counter()
    entries = []
    for i in range(50):
        if i % 2 == 0:
            g = random_bipartite(rng, 1000, 1000, weighted=False, min_edges=5)
        else:
            a = rng.randint(3, 8)
            b = rng.randint(3, 8)
            nl = rng.randint(100, 950)
            nr = rng.randint(100, 950)
            noise = rng.randint(100, 3000)
            g, _, _ = generate_planted(
                nl, nr, noise, a, b, rng_seed=rng.randrange(2**32)
            )
        assert g.vertex_count <= 2000
        res = global_density(g, keep_trace=True)
        est = top_eigenvalue(g)
        entries.append({"g": g, "res": res, "est": est})
    return {"entries": entries, "build_seconds": time.perf_counter() - t0}


def test_c01_closed_form_families():
    t0 = time.perf_counter()
    worst = 0.0
    for a in range(1, 9):
        for b in range(1, 9):
            g = k_ab(a, b)
            want = math.sqrt(a * b)
            full_l = frozenset(range(a))
            full_r = frozenset(range(b))
            for got in (exact_densest(g).density, density(g, full_l, full_r).density):
                worst = max(worst, abs(got - want) / want)
            ratio = ratio_density(g, full_l, full_r)
            worst = max(worst, abs(ratio - a * b / (a + b)) / (a * b / (a + b)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    report(
        "c01 closed-form-families",
        ok,
        f"64 complete blocks, worst rel err {worst:.2e}, {elapsed:.2f}s (budget 1s)",
    )


def test_c02_exact_matches_full_enumeration():
    t0 = time.perf_counter()
    rng = random.Random(20250819)
    worst = 0.0
    for _ in range(200):
        g = random_bipartite(rng, 8, 8, weighted=rng.random() < 0.5, min_edges=1)
        ours = exact_densest(g)
        ref_density, _, _ = naive_densest(g)
        scale = max(1.0, ref_density)
        worst = max(worst, abs(ours.density - ref_density) / scale)
        # the returned sets must achieve the returned density
        achieved = density(g, ours.left, ours.right).density
        worst = max(worst, abs(achieved - ours.density) / scale)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 30.0
    report(
        "c02 exact-vs-enumeration",
        ok,
        f"200 graphs, worst rel gap {worst:.2e}, {elapsed:.1f}s (budget 30s)",
    )


def test_c03_spectral_upper_bound():
    t0 = time.perf_counter()
    rng = random.Random(20250820)
    worst_slack = math.inf
    for _ in range(100):
        g = random_bipartite(rng, 12, 28, weighted=True, min_edges=2)
        assert g.vertex_count <= 40
        est = top_eigenvalue(g)
        opt = exact_densest(g, side_cap=12)
        worst_slack = min(worst_slack, est.value + est.residual - opt.density)
    elapsed = time.perf_counter() - t0
    ok = worst_slack >= 0.0 and elapsed < 30.0
    report(
        "c03 spectral-upper-bound",
        ok,
        f"100 weighted graphs, worst slack {worst_slack:.2e}, {elapsed:.1f}s (budget 30s)",
    )


def test_c04_local_guarantee_on_planted_blocks(planted_suite):
    t0 = time.perf_counter()
    instances = planted_suite["instances"]
    assert len(instances) == 50
    worst_ratio = math.inf
    winners = 0
    for inst in instances:
        g = inst["g"]
        floor = local_guarantee_bound(inst["theta"], g.max_degree, inst["target"])
        hits = [v for v, res in inst["runs"].items() if res.density >= floor]
        if hits:
            winners += 1
        best = max(res.density for res in inst["runs"].values())
        worst_ratio = min(worst_ratio, best / floor)
    elapsed = planted_suite["build_seconds"] + (time.perf_counter() - t0)
    ok = winners == 50 and elapsed < 120.0
    report(
        "c04 local-guarantee",
        ok,
        f"{winners}/50 instances have a good seed meeting the bound, "
        f"min density/bound {worst_ratio:.1f}x, {elapsed:.1f}s (budget 120s)",
    )


def test_c05_good_set_coverage_and_certificates(planted_suite):
    worst_coverage = math.inf
    worst_margin = math.inf
    worst_weight_slack = math.inf
    checked = 0
    for inst in planted_suite["instances"]:
        g = inst["g"]
        rep = inst["report"]
        worst_coverage = min(worst_coverage, rep.coverage)
        min_weight = 1.0 / math.sqrt(2.0 * len(inst["left"]))
        mat = dense_biadjacency(g)
        for v in rep.good:
            cert = rep.certificates[v]
            psi_l = np.zeros(g.left_count)
            psi_r = np.zeros(g.right_count)
            for u, val in cert.left.items():
                psi_l[u] = val
            for u, val in cert.right.items():
                psi_r[u] = val
            slack_l = mat @ psi_r - inst["theta"] * psi_l
            slack_r = mat.T @ psi_l - inst["theta"] * psi_r
            slack = min(
                min(float(slack_l[u]) for u in cert.left),
                min(float(slack_r[u]) for u in cert.right),
            )
            worst_margin = min(worst_margin, slack)
            worst_weight_slack = min(
                worst_weight_slack, cert.left[v] - min_weight
            )
            checked += 1
    ok = (
        worst_coverage >= 0.5
        and worst_margin >= -1e-9
        and worst_weight_slack >= -1e-12
    )
    report(
        "c05 good-set-coverage",
        ok,
        f"min coverage {worst_coverage:.3f}, {checked} certificates re-verified, "
        f"min inequality slack {worst_margin:.2e}, min weight slack {worst_weight_slack:.2e}",
    )


def test_c06_global_guarantee(global_suite):
    t0 = time.perf_counter()
    entries = global_suite["entries"]
    assert len(entries) == 50
    worst_ratio = math.inf
    for entry in entries:
        n = entry["g"].vertex_count
        floor = entry["est"].value / (8.0 + 4.0 * math.log2(n))
        worst_ratio = min(worst_ratio, entry["res"].density / floor)
    elapsed = global_suite["build_seconds"] + (time.perf_counter() - t0)
    ok = worst_ratio >= 1.0 and elapsed < 120.0
    report(
        "c06 global-guarantee",
        ok,
        f"50 graphs up to n=2000, min density/floor {worst_ratio:.2f}x, "
        f"{elapsed:.1f}s (budget 120s)",
    )


def _all_traced_steps(planted_suite, global_suite):
    for inst in planted_suite["instances"]:
        for res in inst["runs"].values():
            for trace in res.traces:
                for rec in trace.steps:
                    yield inst["g"], rec
    for entry in global_suite["entries"]:
        for trace in entry["res"].traces:
            for rec in trace.steps:
                yield entry["g"], rec


def test_c07_support_and_level_bounds(planted_suite, global_suite):
    steps = 0
    violations = 0
    for g, rec in _all_traced_steps(planted_suite, global_suite):
        steps += 1
        if rec.x_support > 1.0 / rec.eps_t**2:
            violations += 1
            continue
        cap = math.ceil(math.log2(2.0 * g.max_degree / rec.eps_t)) + 1
        if rec.x_levels.level_count > cap:
            violations += 1
    ok = steps > 0 and violations == 0
    report(
        "c07 support-and-level-bounds",
        ok,
        f"{steps} recorded steps, {violations} violations",
    )


def test_c08_growth_cap(planted_suite, global_suite):
    steps = 0
    violations = 0
    tightest = math.inf
    for g, rec in _all_traced_steps(planted_suite, global_suite):
        steps += 1
        cap = (
            2.0
            * rec.max_pair_density
            * rec.x_norm
            * math.log2(2.0 * g.max_degree / rec.eps_t)
        )
        if rec.pre_norm > cap:
            violations += 1
        elif cap > 0:
            tightest = min(tightest, cap / rec.pre_norm)
    ok = steps > 0 and violations == 0
    report(
        "c08 growth-cap",
        ok,
        f"{steps} recorded steps, {violations} violations, tightest headroom {tightest:.2f}x",
    )


def test_c09_work_independent_of_graph_size():
    t_all = time.perf_counter()
    touches = {}
    timings = {}
    gen_seconds = {}
    for scale in (10_000, 100_000, 1_000_000):
        t0 = time.perf_counter()
        g, left, _ = generate_planted(
            n_left=scale // 2 + 4,
            n_right=scale // 2 + 4,
            noise_edges=scale,
            planted_a=4,
            planted_b=4,
            rng_seed=77,
            noise_avoids_planted=True,
        )
        gen_seconds[scale] = time.perf_counter() - t0
        seed = g.left_id(min(left))
        first = local_density(g, seed, target_size=4, side="L")
        assert first.density == pytest.approx(4.0)
        touches[scale] = first.edges_touched
        best = math.inf
        for _ in range(3):
            t1 = time.perf_counter()
            for _ in range(200):
                local_density(g, seed, target_size=4, side="L")
            best = min(best, time.perf_counter() - t1)
        timings[scale] = best
        del g
    elapsed = time.perf_counter() - t_all
    spread = max(timings.values()) / min(timings.values())
    ok = (
        len(set(touches.values())) == 1
        and spread < 2.0
        and elapsed < 180.0
    )
    report(
        "c09 size-independent-work",
        ok,
        f"edge touches {sorted(set(touches.values()))} across n=1e4..1e6, "
        f"wall-time spread {spread:.2f}x (cap 2x), {elapsed:.1f}s (budget 180s)",
    )


def _run_cli_bytes(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "localdense", *args],
        capture_output=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


def test_c10_byte_identical_documents(tmp_path_factory):
    work = tmp_path_factory.mktemp("accept-cli")
    a, b = 4, 4
    gen_args = (
        "--left", "30", "--right", "30", "--noise", "60",
        "--block", str(a), str(b), "--rng-seed", "5",
    )
    out_a, out_b = work / "gen-a.txt", work / "gen-b.txt"
    _run_cli_bytes("generate", str(out_a), *gen_args)
    _run_cli_bytes("generate", str(out_b), *gen_args)
    graph = str(out_a)

    g, left, right = generate_planted(30, 30, 60, a, b, rng_seed=5)
    seed_id = str(g.left_id(min(left)))
    seeds = work / "seeds.txt"
    seeds.write_text(
        f"{seed_id}\nL:{seed_id}\nR:{g.right_id(min(right))}\nmissing\n"
    )
    s_file, t_file = work / "S.txt", work / "T.txt"
    s_file.write_text("\n".join(str(g.left_id(u)) for u in sorted(left)) + "\n")
    t_file.write_text("\n".join(str(g.right_id(v)) for v in sorted(right)) + "\n")
    theta = str(math.sqrt(a * b) / 2.0)

    small = work / "small.txt"
    small.write_text("".join(f"l{i} r{j} 1.0\n" for i in range(2) for j in range(3)))

    invocations = {
        "stats": ("stats", graph),
        "local": ("local", graph, "--seed", seed_id, "--target-size", "4", "--trace"),
        "global": ("global", graph, "--trace"),
        "exact": ("exact", str(small)),
        "scan": ("scan", graph, "--seeds", str(seeds), "--target-size", "4", "--top", "5"),
        "verify": (
            "verify", graph, "--theta", theta,
            "--planted", str(s_file), str(t_file), "--target-size", "4",
        ),
    }
    unstable = []
    for name, args in invocations.items():
        if _run_cli_bytes(*args) != _run_cli_bytes(*args):
            unstable.append(name)
    if out_a.read_bytes() != out_b.read_bytes():
        unstable.append("generate")
    ok = not unstable
    report(
        "c10 byte-identical-documents",
        ok,
        "all 7 subcommands stable across repeated runs"
        if ok
        else f"unstable: {', '.join(unstable)}",
    )
