"""Shared fixtures-in-code: small graphs, seeded random instances, oracles."""

from __future__ import annotations

import numpy as np

import specgrow as sg


def graph(n, triples):
    return sg.WeightedGraph.from_edge_list(n, triples)


def two_node():
    return graph(2, [(0, 1, 1.0)])


def k3():
    return graph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])


def k4():
    return graph(4, [(i, j, 1.0) for i in range(4) for j in range(i + 1, 4)])


def path_graph(n):
    return graph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def ring_graph(n):
    return graph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def random_connected(rng, n, extra=None, wlo=0.5, whi=2.0):
    """Random spanning tree plus `extra` random weighted chords."""
    if extra is None:
        extra = n
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = float(rng.uniform(wlo, whi))
    budget = extra
    guard = 0
    while budget > 0 and guard < 100 * n:
        guard += 1
        i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
        if i == j:
            continue
        e = (min(i, j), max(i, j))
        if e in edges:
            continue
        edges[e] = float(rng.uniform(wlo, whi))
        budget -= 1
    return sg.WeightedGraph(n, edges)


def random_candidates(rng, n, p, unit=False, wlo=0.5, whi=2.0):
    """p distinct candidate pairs (may coincide with existing edges)."""
    pairs = set()
    guard = 0
    while len(pairs) < p and guard < 1000 * p:
        guard += 1
        i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
        if i != j:
            pairs.add((min(i, j), max(i, j)))
    links = [(i, j, 1.0 if unit else float(rng.uniform(wlo, whi)))
             for (i, j) in sorted(pairs)]
    return sg.CandidateSet.from_triples(links)


def laplacian_of(n, items):
    L = np.zeros((n, n))
    for (i, j), w in items:
        L[i, i] += w
        L[j, j] += w
        L[i, j] -= w
        L[j, i] -= w
    return L


def full_recompute_value(m, L):
    """Oracle: measure value by fresh eigendecomposition of an explicit L."""
    vals = np.linalg.eigvalsh(L)
    return sg.spectral_value(m, vals[1:], L.shape[0])


def kind_suite(state):
    """One representative spec per measure family, tuned to the state."""
    lam2 = float(state.eigvals[1])
    return [
        sg.parse_measure("zeta:q=1"),
        sg.parse_measure("zeta:q=2"),
        sg.parse_measure(f"gamma:gamma={10.0 / lam2}"),
        sg.parse_measure("tau:t=1"),
        sg.parse_measure("hankel"),
        sg.parse_measure("volume"),
        sg.parse_measure("hp:p=3"),
        sg.parse_measure("mq:q=0.5"),
    ]


def differentiable_suite(state):
    return [m for m in kind_suite(state) if m.differentiable]
