"""Hamilton-cycle construction: exact bitmask DP, 1.5-ratio heuristic tours,
minimum-weight perfect matchings, and the pivoted cycle the scheduler needs.

All tie-breaks (DP, MST, matching, Euler traversal) resolve to the lowest
vertex index so outputs are bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .instance import DistanceMatrix, Number

HELD_KARP_CAP = 20
MATCHING_EXACT_MAX = 16


class TspError(ValueError):
    """Invalid arguments to a tour-construction routine."""


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a cycle so it starts at its lowest vertex and its
    second element is the smaller of the two neighbours."""
    k = len(seq)
    i = min(range(k), key=lambda idx: seq[idx])
    fwd = tuple(seq[(i + off) % k] for off in range(k))
    if k >= 3 and fwd[1] > fwd[-1]:
        fwd = (fwd[0],) + tuple(reversed(fwd[1:]))
    return fwd


def cycle_length(D: DistanceMatrix, seq: Sequence[int]) -> Number:
    d = D.d
    return sum(d[seq[i]][seq[(i + 1) % len(seq)]] for i in range(len(seq)))


@dataclass(frozen=True)
class Tour:
    """A Hamilton cycle over its vertex set; closing edge implicit."""

    vertices: tuple[int, ...]
    length: Number

    @classmethod
    def from_vertices(cls, D: DistanceMatrix, seq: Sequence[int]) -> "Tour":
        if len(set(seq)) != len(seq):
            raise TspError("tour repeats a vertex")
        canon = _canonical_cycle(seq)
        return cls(vertices=canon, length=cycle_length(D, canon))


@dataclass(frozen=True)
class Matching:
    """Disjoint vertex pairs; ``exact`` records whether the DP (not the
    greedy fallback) produced them."""

    pairs: tuple[tuple[int, int], ...]
    weight: Number
    exact: bool


@dataclass(frozen=True)
class PivotedCycle:
    """The scheduler's input: the pivot vertex plus an ordered cycle over
    the remaining vertices."""

    pivot: int
    cycle: tuple[int, ...]
    cycle_length: Number
    mode: str  # exact | christofides | tour_file
    matching_exact: Optional[bool]  # None unless mode == christofides
    full_tour: Optional[Tour]  # the all-vertex cycle the pivot was skipped from


def select_pivot(D: DistanceMatrix) -> int:
    """Vertex with minimum total distance to the others; ties break low."""
    best = 0
    best_sum = D.row_sum(0)
    for v in range(1, D.n):
        s = D.row_sum(v)
        if s < best_sum:
            best, best_sum = v, s
    return best


def _check_vertex_set(D: DistanceMatrix, vertex_set: Optional[Iterable[int]]) -> list[int]:
    verts = sorted(set(range(D.n) if vertex_set is None else vertex_set))
    if verts and (verts[0] < 0 or verts[-1] >= D.n):
        raise TspError(f"vertex out of range 0..{D.n - 1}")
    return verts


def held_karp(
    D: DistanceMatrix,
    vertex_set: Optional[Iterable[int]] = None,
    cap: int = HELD_KARP_CAP,
) -> Tour:
    """Exact shortest Hamilton cycle by subset DP over the induced subgraph."""
    verts = _check_vertex_set(D, vertex_set)
    k = len(verts)
    if k < 3:
        raise TspError(f"need at least 3 vertices, got {k}")
    if k > cap:
        raise TspError(f"{k} vertices exceeds the exact-DP cap of {cap}")
    if D.integral:
        order = _held_karp_ints(D, verts)
    else:
        order = _held_karp_exact(D, verts)
    return Tour.from_vertices(D, order)


def _held_karp_ints(D: DistanceMatrix, verts: list[int]) -> list[int]:
    k = len(verts)
    dist = np.array([[D.d[u][v] for v in verts] for u in verts], dtype=np.int64)
    size = 1 << k
    INF = np.iinfo(np.int64).max // 4
    dp = np.full((size, k), INF, dtype=np.int64)
    parent = np.full((size, k), -1, dtype=np.int8)
    dp[1, 0] = 0
    for mask in range(3, size, 2):  # masks containing the start vertex 0
        members = [j for j in range(1, k) if (mask >> j) & 1]
        if not members:
            continue
        js = np.array(members)
        prev_masks = mask ^ (1 << js)
        cand = dp[prev_masks] + dist[:, js].T  # (m, k): via each last vertex
        arg = np.argmin(cand, axis=1)
        dp[mask, js] = cand[np.arange(len(js)), arg]
        parent[mask, js] = arg
    full = size - 1
    closing = dp[full] + dist[:, 0]
    closing[0] = INF
    j = int(np.argmin(closing))
    order = []
    mask = full
    while j != -1:
        order.append(j)
        j2 = int(parent[mask, j])
        mask ^= 1 << j
        j = j2
    order.reverse()  # starts at vertex 0
    return [verts[i] for i in order]


def _held_karp_exact(D: DistanceMatrix, verts: list[int]) -> list[int]:
    """Plain-Python DP for non-integral (Fraction) distances; small k only."""
    k = len(verts)
    d = [[D.d[u][v] for v in verts] for u in verts]
    dp: list[dict[int, Number]] = [dict() for _ in range(1 << k)]
    par: list[dict[int, int]] = [dict() for _ in range(1 << k)]
    dp[1][0] = 0
    for mask in range(3, 1 << k, 2):
        for j in range(1, k):
            if not (mask >> j) & 1:
                continue
            prev = mask ^ (1 << j)
            best = None
            best_i = -1
            for i, cost in dp[prev].items():
                val = cost + d[i][j]
                if best is None or val < best or (val == best and i < best_i):
                    best, best_i = val, i
            if best is not None:
                dp[mask][j] = best
                par[mask][j] = best_i
    full = (1 << k) - 1
    best = None
    best_j = -1
    for j in range(1, k):
        if j in dp[full]:
            val = dp[full][j] + d[j][0]
            if best is None or val < best or (val == best and j < best_j):
                best, best_j = val, j
    order = []
    mask, j = full, best_j
    while j != -1:
        order.append(j)
        j2 = par[mask].get(j, -1)
        mask ^= 1 << j
        j = j2
    order.reverse()
    return [verts[i] for i in order]


def min_weight_perfect_matching(
    D: DistanceMatrix,
    odd_set: Iterable[int],
    exact_threshold: int = MATCHING_EXACT_MAX,
) -> Matching:
    """Pair up an even-cardinality vertex set at minimum total distance.

    Exact subset DP up to ``exact_threshold`` vertices; greedy nearest-pair
    plus pairwise-swap improvement beyond that, with the mode recorded.
    """
    verts = _check_vertex_set(D, odd_set)
    if len(verts) % 2 != 0:
        raise TspError(f"matching needs an even vertex count, got {len(verts)}")
    if not verts:
        return Matching(pairs=(), weight=0, exact=True)
    if len(verts) <= exact_threshold:
        pairs, weight = _matching_dp(D, verts)
        return Matching(pairs=pairs, weight=weight, exact=True)
    pairs, weight = _matching_greedy_swap(D, verts)
    return Matching(pairs=pairs, weight=weight, exact=False)


def _matching_dp(D: DistanceMatrix, verts: list[int]) -> tuple[tuple[tuple[int, int], ...], Number]:
    k = len(verts)
    d = D.d
    full = (1 << k) - 1
    best: list[Optional[Number]] = [None] * (full + 1)
    choice: list[Optional[tuple[int, int]]] = [None] * (full + 1)
    best[0] = 0
    for mask in range(1, full + 1):
        if bin(mask).count("1") % 2:
            continue
        i = (mask & -mask).bit_length() - 1  # lowest set bit pairs first
        rest = mask ^ (1 << i)
        b = None
        ch = None
        j = rest
        while j:
            jbit = j & -j
            jj = jbit.bit_length() - 1
            sub = best[rest ^ jbit]
            if sub is not None:
                val = sub + d[verts[i]][verts[jj]]
                if b is None or val < b:
                    b, ch = val, (i, jj)
            j ^= jbit
        best[mask] = b
        choice[mask] = ch
    pairs = []
    mask = full
    while mask:
        i, j = choice[mask]  # type: ignore[misc]
        pairs.append((verts[i], verts[j]))
        mask ^= (1 << i) | (1 << j)
    pairs.sort()
    return tuple(pairs), best[full]  # type: ignore[return-value]


def _matching_greedy_swap(D: DistanceMatrix, verts: list[int]) -> tuple[tuple[tuple[int, int], ...], Number]:
    d = D.d
    unmatched = set(verts)
    pairs: list[tuple[int, int]] = []
    while unmatched:
        best = None
        for a in sorted(unmatched):
            for b in sorted(unmatched):
                if b <= a:
                    continue
                if best is None or d[a][b] < d[best[0]][best[1]]:
                    best = (a, b)
        pairs.append(best)  # type: ignore[arg-type]
        unmatched.discard(best[0])  # type: ignore[index]
        unmatched.discard(best[1])  # type: ignore[index]
    improved = True
    while improved:
        improved = False
        for x in range(len(pairs)):
            for y in range(x + 1, len(pairs)):
                a, b = pairs[x]
                c, e = pairs[y]
                cur = d[a][b] + d[c][e]
                alt1 = d[a][c] + d[b][e]
                alt2 = d[a][e] + d[b][c]
                if alt1 < cur and alt1 <= alt2:
                    pairs[x], pairs[y] = tuple(sorted((a, c))), tuple(sorted((b, e)))
                    improved = True
                elif alt2 < cur:
                    pairs[x], pairs[y] = tuple(sorted((a, e))), tuple(sorted((b, c)))
                    improved = True
    pairs.sort()
    weight = sum(d[a][b] for a, b in pairs)
    return tuple(pairs), weight


def _prim_mst(D: DistanceMatrix, verts: list[int]) -> list[tuple[int, int]]:
    """MST edges on the induced subgraph; equal keys keep the earlier vertex."""
    d = D.d
    in_tree = {verts[0]}
    edges: list[tuple[int, int]] = []
    key: dict[int, tuple[Number, int]] = {
        v: (d[verts[0]][v], verts[0]) for v in verts[1:]
    }
    while key:
        v = min(key, key=lambda u: (key[u][0], u))
        w, attach = key.pop(v)
        edges.append((min(attach, v), max(attach, v)))
        in_tree.add(v)
        for u in key:
            if d[v][u] < key[u][0]:
                key[u] = (d[v][u], v)
    return edges


def _euler_circuit(adj: dict[int, list[int]], start: int) -> list[int]:
    """Hierholzer with sorted adjacency; consumes the multigraph."""
    for v in adj:
        adj[v].sort(reverse=True)  # pop() then yields the lowest neighbour
    stack = [start]
    circuit: list[int] = []
    while stack:
        v = stack[-1]
        if adj[v]:
            u = adj[v].pop()
            adj[u].remove(v)
            stack.append(u)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


@dataclass(frozen=True)
class ChristofidesResult:
    tour: Tour
    matching_exact: bool


def christofides(
    D: DistanceMatrix,
    vertex_set: Optional[Iterable[int]] = None,
    matching_threshold: int = MATCHING_EXACT_MAX,
) -> ChristofidesResult:
    """MST + odd-vertex matching + Euler circuit + first-visit shortcutting.

    Guarantees length <= 1.5x the optimum only on metric input with an exact
    matching; ``matching_exact`` says which matching mode ran.
    """
    verts = _check_vertex_set(D, vertex_set)
    if len(verts) < 3:
        raise TspError(f"need at least 3 vertices, got {len(verts)}")
    mst = _prim_mst(D, verts)
    degree = {v: 0 for v in verts}
    for a, b in mst:
        degree[a] += 1
        degree[b] += 1
    odd = [v for v in verts if degree[v] % 2 == 1]
    matching = min_weight_perfect_matching(D, odd, exact_threshold=matching_threshold)
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in list(mst) + list(matching.pairs):
        adj[a].append(b)
        adj[b].append(a)
    circuit = _euler_circuit(adj, verts[0])
    seen = set()
    order = []
    for v in circuit:
        if v not in seen:
            seen.add(v)
            order.append(v)
    return ChristofidesResult(
        tour=Tour.from_vertices(D, order), matching_exact=matching.exact
    )


def parse_tour_file(text: str, n: int) -> tuple[int, ...]:
    """One line of n whitespace-separated vertex indices (a permutation)."""
    try:
        seq = tuple(int(t) for t in text.split())
    except ValueError as exc:
        raise TspError(f"tour file contains a non-integer token: {exc}") from exc
    if sorted(seq) != list(range(n)):
        raise TspError(
            f"tour file must be a permutation of 0..{n - 1}, got {len(seq)} tokens"
        )
    return seq


def _skip_vertex(seq: Sequence[int], pivot: int) -> list[int]:
    return [v for v in seq if v != pivot]


def build_pivoted_cycle(
    D: DistanceMatrix,
    mode: str = "exact",
    cap: int = HELD_KARP_CAP,
    tour: Optional[Sequence[int]] = None,
) -> PivotedCycle:
    """Pick the pivot, build a cycle on the remaining vertices.

    exact: shortest all-vertex cycle, then skip the pivot (its neighbours
    join directly; the triangle inequality means no length increase).
    christofides: 1.5-ratio cycle built directly on the non-pivot vertices.
    tour_file: apply the same pivot-skipping to a supplied all-vertex tour.
    """
    if D.n % 2 != 0 or D.n < 4:
        raise TspError(f"need an even vertex count >= 4, got {D.n}")
    pivot = select_pivot(D)
    if mode == "exact":
        full = held_karp(D, cap=cap)
        cycle = _canonical_cycle(_skip_vertex(full.vertices, pivot))
        return PivotedCycle(
            pivot=pivot,
            cycle=cycle,
            cycle_length=cycle_length(D, cycle),
            mode="exact",
            matching_exact=None,
            full_tour=full,
        )
    if mode == "christofides":
        res = christofides(D, [v for v in range(D.n) if v != pivot])
        return PivotedCycle(
            pivot=pivot,
            cycle=res.tour.vertices,
            cycle_length=res.tour.length,
            mode="christofides",
            matching_exact=res.matching_exact,
            full_tour=None,
        )
    if mode == "tour_file":
        if tour is None:
            raise TspError("tour_file mode needs a tour")
        if sorted(tour) != list(range(D.n)):
            raise TspError(f"supplied tour must be a permutation of 0..{D.n - 1}")
        full = Tour.from_vertices(D, tour)
        cycle = _canonical_cycle(_skip_vertex(full.vertices, pivot))
        return PivotedCycle(
            pivot=pivot,
            cycle=cycle,
            cycle_length=cycle_length(D, cycle),
            mode="tour_file",
            matching_exact=None,
            full_tour=full,
        )
    raise TspError(f"unknown mode {mode!r}")
