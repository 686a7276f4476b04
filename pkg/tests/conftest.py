"""Shared builders and independent referee implementations.

The referees recompute quantities the library also computes, but through
different routes (dense matrices, full enumeration), so agreement is
meaningful.
"""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from localdense import build_bipartite


def k_ab(a, b, weight=1.0):
    """Complete bipartite graph with left ids l0.. and right ids r0.."""
    return build_bipartite(
        (f"l{i}", f"r{j}", weight) for i in range(a) for j in range(b)
    )


def dense_biadjacency(g):
    mat = np.zeros((g.left_count, g.right_count))
    for u, v, w in g.edges():
        mat[u, v] = w
    return mat


def dense_eigenvalue(g):
    """Top eigenvalue of the full symmetric adjacency, by dense solve."""
    mat = dense_biadjacency(g)
    n = g.left_count + g.right_count
    adj = np.zeros((n, n))
    adj[: g.left_count, g.left_count :] = mat
    adj[g.left_count :, : g.left_count] = mat.T
    return float(np.linalg.eigvalsh(adj)[-1])


def naive_densest(g):
    """Enumerate every (S, T) pair outright; referee for the exact oracle.

    Returns (density, left frozenset, right frozenset) for the first maximum
    in (left mask, right mask) counting order.
    """
    mat = dense_biadjacency(g)
    nl, nr = mat.shape
    assert nl <= 12 and nr <= 12
    tmasks = np.arange(1, 1 << nr)
    tbits = (tmasks[:, None] >> np.arange(nr)) & 1
    tsizes = tbits.sum(axis=1)
    best = None
    for smask in range(1, 1 << nl):
        rows = [u for u in range(nl) if smask >> u & 1]
        weights_into = mat[rows].sum(axis=0)
        e = tbits @ weights_into
        dens = e / np.sqrt(len(rows) * tsizes)
        k = int(np.argmax(dens))
        d = float(dens[k])
        if best is None or d > best[0]:
            cols = [v for v in range(nr) if tmasks[k] >> v & 1]
            best = (d, frozenset(rows), frozenset(cols))
    return best


def random_bipartite(rng: random.Random, max_left, max_right, weighted=False, min_edges=1):
    nl = rng.randint(1, max_left)
    nr = rng.randint(1, max_right)
    cap = nl * nr
    m = rng.randint(min_edges, max(min_edges, min(cap, 4 * (nl + nr))))
    m = min(m, cap)
    pairs = set()
    edges = []
    while len(pairs) < m:
        u, v = rng.randrange(nl), rng.randrange(nr)
        if (u, v) in pairs:
            continue
        pairs.add((u, v))
        w = rng.uniform(0.1, 3.0) if weighted else 1.0
        edges.append((f"l{u}", f"r{v}", w))
    return build_bipartite(edges)


@pytest.fixture
def star4():
    """One left hub joined to four right leaves."""
    return build_bipartite([("c", t, 1.0) for t in ("w", "x", "y", "z")])


# one line per acceptance criterion, echoed after the test summary so the
# verdicts are visible even when every test passes
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
