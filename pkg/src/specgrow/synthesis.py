"""Solvers for growing a network by k new weighted links.

Three algorithms minimize a performance measure over size-k subsets of a
candidate link set:

* :func:`brute_force` - exhaustive search over all subsets, each scored by a
  full eigendecomposition (the reference answer on small instances).
* :func:`greedy` - picks the single best link k times.  For the zeta:q=1,
  zeta:q=2 and volume measures each candidate is scored in O(1) from cached
  effective resistances; every other measure is scored from the spectrum of
  the rank-one-downdated pseudo-inverse.
* :func:`linearized` - one gradient of the measure, then the k candidates
  with the largest first-order improvement in a single pass.

All tie-breaking is deterministic: scores within a 1e-12 relative band are
tied and the lexicographically smallest canonical edge wins.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from time import perf_counter
from typing import Iterable

import numpy as np

from .errors import (CombinatorialBlowup, GraphFormatError, InvalidParameter,
                     UnsupportedMeasure)
from .graphs import Edge, canonical_edge
from .laplacian import LaplacianState
from .measures import MeasureSpec, companion_value, evaluate, gradient, spectral_value

TIE_REL = 1e-12


def _tie(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_REL * max(1.0, abs(a))


@dataclass(frozen=True)
class CandidateSet:
    """Distinct candidate links with fixed positive weights, kept edge-sorted."""

    links: tuple[tuple[Edge, float], ...]

    def __post_init__(self):
        canon = []
        seen = set()
        for (edge, w) in self.links:
            e = canonical_edge(*edge)
            w = float(w)
            if not (w > 0.0) or not math.isfinite(w):
                raise GraphFormatError(f"candidate {e} has non-positive weight {w}")
            if e in seen:
                raise GraphFormatError(f"duplicate candidate link {e}")
            seen.add(e)
            canon.append((e, w))
        if not canon:
            raise GraphFormatError("candidate set is empty")
        object.__setattr__(self, "links", tuple(sorted(canon)))

    @property
    def p(self) -> int:
        return len(self.links)

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, float]]) -> CandidateSet:
        return cls(tuple(((i, j), w) for i, j, w in triples))

    @classmethod
    def from_json_obj(cls, obj) -> CandidateSet:
        if not isinstance(obj, dict) or "links" not in obj:
            raise GraphFormatError('expected an object with "links"')
        try:
            return cls.from_triples((int(i), int(j), float(w)) for i, j, w in obj["links"])
        except (TypeError, ValueError) as exc:
            raise GraphFormatError(f"bad candidate entry: {exc}") from exc

    @classmethod
    def parse(cls, text: str) -> CandidateSet:
        try:
            return cls.from_json_obj(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc

    @classmethod
    def complete(cls, n: int, weight: float = 1.0) -> CandidateSet:
        """All n(n-1)/2 node pairs at one common weight."""
        return cls(tuple(((i, j), weight) for i in range(n) for j in range(i + 1, n)))

    def validate_for(self, n: int) -> None:
        for (i, j), _ in self.links:
            if j >= n:
                raise GraphFormatError(f"candidate edge ({i}, {j}) outside node range [0, {n})")

    def to_json_obj(self) -> dict:
        return {"links": [[i, j, w] for (i, j), w in self.links]}


@dataclass(frozen=True)
class SynthesisResult:
    """Outcome of one growth run: ordered picks and the value trajectory."""

    algorithm: str
    chosen: tuple[tuple[Edge, float], ...]
    values: tuple[float, ...]          # length k+1, values[0] is the starting value
    elapsed: tuple[float, ...]         # seconds per step
    tie_breaks: int
    seed: int | None = None

    @property
    def final_value(self) -> float:
        return self.values[-1]

    def to_json_obj(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "chosen": [[i, j, w] for (i, j), w in self.chosen],
            "values": list(self.values),
            "elapsed": list(self.elapsed),
            "tie_breaks": self.tie_breaks,
            "seed": self.seed,
        }


# --- scoring helpers ---------------------------------------------------------


def _closed_form_kind(m: MeasureSpec) -> str | None:
    if m.kind == "zeta" and m.param == 1.0:
        return "zeta1"
    if m.kind == "zeta" and m.param == 2.0:
        return "zeta2"
    if m.kind == "volume":
        return "volume"
    return None


def closed_form_delta(m: MeasureSpec, state: LaplacianState, edge: Edge, weight: float) -> float:
    """Exact decrease from adding one weighted link, via resistances only.

    Supported: zeta:q=1, volume, and zeta:q=2 (for which the returned
    decrease is on the squared scale, tr of the squared pseudo-inverse).
    """
    kind = _closed_form_kind(m)
    if kind is None:
        raise UnsupportedMeasure(f"no resistance closed form for {m.label}")
    res = state.edge_resistances(edge)
    c = 1.0 / (1.0 / float(weight) + res.r1)
    if kind == "zeta1":
        return c * res.r2
    if kind == "zeta2":
        return 2.0 * c * res.r3 - (c * res.r2) ** 2
    return math.log1p(res.r1 * float(weight))


def _downdated_inverse_spectrum(state: LaplacianState, edge: Edge, weight: float) -> np.ndarray:
    """Nonzero eigenvalues of the pseudo-inverse after adding the edge."""
    i, j = edge
    P1 = np.asarray(state.pinv_power(1))
    u = P1[:, i] - P1[:, j]
    r1 = float(u[i] - u[j])
    c = 1.0 / (1.0 / float(weight) + r1)
    mus = np.linalg.eigvalsh(P1 - c * np.outer(u, u))
    return np.maximum(mus[1:], 0.0)


def _initial_value(m: MeasureSpec, state: LaplacianState) -> float:
    kind = _closed_form_kind(m)
    if kind == "zeta1":
        return float(np.trace(state.pinv_power(1)))
    if kind == "zeta2":
        return math.sqrt(float(np.trace(state.pinv_power(2))))
    return evaluate(m, state)


def _score_candidates(m: MeasureSpec, state: LaplacianState,
                      links: list[tuple[Edge, float]], current: float) -> np.ndarray:
    """Post-addition measure value for every remaining candidate link."""
    kind = _closed_form_kind(m)
    if kind is not None:
        rows = np.fromiter((e[0] for e, _ in links), dtype=int)
        cols = np.fromiter((e[1] for e, _ in links), dtype=int)
        ws = np.fromiter((w for _, w in links), dtype=float)
        r1 = state.resistance_matrix(1)[rows, cols]
        c = 1.0 / (1.0 / ws + r1)
        if kind == "zeta1":
            r2 = state.resistance_matrix(2)[rows, cols]
            return float(np.trace(state.pinv_power(1))) - c * r2
        if kind == "zeta2":
            r2 = state.resistance_matrix(2)[rows, cols]
            r3 = state.resistance_matrix(3)[rows, cols]
            sq = float(np.trace(state.pinv_power(2))) - (2.0 * c * r3 - (c * r2) ** 2)
            return np.sqrt(np.maximum(sq, 0.0))
        return current - np.log1p(r1 * ws)
    scores = np.empty(len(links))
    for idx, (e, w) in enumerate(links):
        scores[idx] = companion_value(m, _downdated_inverse_spectrum(state, e, w), state.n)
    return scores


def _argmin_lex(scores) -> tuple[int, int]:
    """Index of the smallest score; ties go to the earliest (lex-smallest) entry."""
    best, ties = 0, 0
    for idx in range(1, len(scores)):
        s, b = float(scores[idx]), float(scores[best])
        if _tie(b, s):
            ties += 1
        elif s < b:
            best, ties = idx, 0
    return best, ties


def _check_instance(state: LaplacianState, candidates: CandidateSet, k: int) -> None:
    candidates.validate_for(state.n)
    if not 0 <= k <= candidates.p:
        raise InvalidParameter(f"k must lie in [0, {candidates.p}], got {k}")


# --- algorithms ---------------------------------------------------------------


def greedy(state: LaplacianState, candidates: CandidateSet, k: int,
           m: MeasureSpec) -> SynthesisResult:
    """Add the best single link k times, updating the state rank-one each pick."""
    _check_instance(state, candidates, k)
    remaining = list(candidates.links)
    values = [_initial_value(m, state)]
    chosen: list[tuple[Edge, float]] = []
    elapsed: list[float] = []
    tie_breaks = 0

    for _ in range(k):
        t0 = perf_counter()
        scores = _score_candidates(m, state, remaining, values[-1])
        pick, ties = _argmin_lex(scores)
        tie_breaks += ties
        edge, w = remaining.pop(pick)
        chosen.append((edge, w))
        state = state.with_edge(edge, w)
        values.append(float(scores[pick]))
        elapsed.append(perf_counter() - t0)

    return SynthesisResult("greedy", tuple(chosen), tuple(values), tuple(elapsed), tie_breaks)


def best_single_link(state: LaplacianState, candidates: CandidateSet,
                     m: MeasureSpec) -> tuple[Edge, float]:
    """The exact best single link and the measure value after adding it."""
    result = greedy(state, candidates, 1, m)
    return result.chosen[0][0], result.values[1]


def _subset_value(m: MeasureSpec, state: LaplacianState,
                  subset: Iterable[tuple[Edge, float]]) -> float:
    L = np.array(state.matrix)
    for (i, j), w in subset:
        L[i, i] += w
        L[j, j] += w
        L[i, j] -= w
        L[j, i] -= w
    vals = np.linalg.eigvalsh(L)
    return spectral_value(m, vals[1:], state.n)


def brute_force(state: LaplacianState, candidates: CandidateSet, k: int,
                m: MeasureSpec, cap: int = 2_000_000) -> SynthesisResult:
    """Global minimizer over all (p choose k) subsets by full recomputation.

    Subset selection time is attributed to the first step of `elapsed`.
    """
    _check_instance(state, candidates, k)
    n_subsets = math.comb(candidates.p, k)
    if n_subsets > cap:
        raise CombinatorialBlowup(f"{n_subsets} subsets exceed the cap of {cap}")

    t0 = perf_counter()
    best_subset, best_value = (), evaluate(m, state)
    if k > 0:
        best_subset, best_value = None, None
        for subset in combinations(candidates.links, k):
            value = _subset_value(m, state, subset)
            if best_value is None or (not _tie(best_value, value) and value < best_value):
                best_subset, best_value = subset, value
    search_time = perf_counter() - t0

    values = [_initial_value(m, state)]
    elapsed = []
    for step in range(1, k + 1):
        t1 = perf_counter()
        values.append(_subset_value(m, state, best_subset[:step]))
        elapsed.append(perf_counter() - t1 + (search_time if step == 1 else 0.0))

    return SynthesisResult("brute", tuple(best_subset), tuple(values), tuple(elapsed), 0)


def linearized(state: LaplacianState, candidates: CandidateSet, k: int,
               m: MeasureSpec) -> SynthesisResult:
    """One-shot selection of the k largest first-order improvements.

    The score of link e = {i, j} with weight w is
    delta(e) = -w (grad_ii + grad_jj - 2 grad_ij) >= 0, the first-order
    decrease of the measure.  The gradient is computed once; gradient and
    sort time are attributed to the first step of `elapsed`.
    """
    _check_instance(state, candidates, k)
    t0 = perf_counter()
    G = gradient(m, state)
    deltas = []
    for (i, j), w in candidates.links:
        deltas.append(-w * float(G[i, i] + G[j, j] - 2.0 * G[i, j]))
    order = sorted(range(candidates.p), key=lambda idx: (-deltas[idx], candidates.links[idx][0]))
    picked = order[:k]
    tie_breaks = 0
    if 0 < k < candidates.p:
        boundary = deltas[picked[-1]]
        tie_breaks = sum(1 for idx in order[k:] if _tie(boundary, deltas[idx]))
    select_time = perf_counter() - t0

    values = [_initial_value(m, state)]
    elapsed = []
    cur = state
    for step, idx in enumerate(picked):
        t1 = perf_counter()
        edge, w = candidates.links[idx]
        prev = cur
        cur = cur.with_edge(edge, w)
        values.append(_augmented_value(m, prev, values[-1], edge, w, cur))
        elapsed.append(perf_counter() - t1 + (select_time if step == 0 else 0.0))

    chosen = tuple(candidates.links[idx] for idx in picked)
    return SynthesisResult("linear", chosen, tuple(values), tuple(elapsed), tie_breaks)


def _augmented_value(m: MeasureSpec, prev_state: LaplacianState, prev_value: float,
                     edge: Edge, w: float, new_state: LaplacianState) -> float:
    kind = _closed_form_kind(m)
    if kind == "zeta1":
        return float(np.trace(new_state.pinv_power(1)))
    if kind == "zeta2":
        return math.sqrt(float(np.trace(new_state.pinv_power(2))))
    if kind == "volume":
        return prev_value - math.log1p(prev_state.edge_resistance(edge) * w)
    mus = np.maximum(np.linalg.eigvalsh(np.asarray(new_state.pinv_power(1)))[1:], 0.0)
    return companion_value(m, mus, new_state.n)
