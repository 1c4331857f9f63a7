"""Candidate enumeration and travel evaluation.

A candidate is a team labeling (cycle rotation r plus direction, with the
pivot always playing as team n-1) combined with a slot rotation m. All
2(n-1)(2n-2) candidates are evaluated under the athome travel rule and the
lexicographically first minimum (r, direction, m) wins, so results are
deterministic and independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .instance import DistanceMatrix, Number
from .schedule import Schedule, mirror_and_assign, relabel, rotate
from .tsp import HELD_KARP_CAP, PivotedCycle, build_pivoted_cycle, held_karp

DIRECTIONS = ("forward", "reversed")


class SolverError(ValueError):
    """Invalid solver parameters."""


class InternalCheckError(RuntimeError):
    """A redundant internal recomputation disagreed; indicates a bug."""


@dataclass(frozen=True)
class CandidateTransform:
    cycle_rotation: int
    direction: str  # forward | reversed
    slot_rotation: int


@dataclass(frozen=True)
class SolveReport:
    n: int
    total_distance: Number
    per_team_distances: tuple[Number, ...]
    best_transform: CandidateTransform
    tau: Optional[Number]  # shortest cycle over all venues, when known
    tau_prime: Number  # the pivoted cycle's length
    tsp_mode: str
    matching_exact: Optional[bool]
    lower_bound: Optional[Number]
    gap_percent: Optional[Fraction]
    metric: bool
    guarantees_valid: bool
    ratio_bound: Fraction
    certificate: Optional[object] = None  # analysis.BoundCertificate
    candidates: Optional[tuple[tuple[int, str, int, Number], ...]] = None


def team_assignment(cycle: PivotedCycle, r: int, direction: str) -> tuple[int, ...]:
    """Map teams to venues: team n-1 gets the pivot; teams 0..n-2 read the
    cycle from offset r, forward or reversed."""
    k = len(cycle.cycle)
    if not 0 <= r < k:
        raise SolverError(f"cycle rotation {r} out of range 0..{k - 1}")
    if direction not in DIRECTIONS:
        raise SolverError(f"direction must be one of {DIRECTIONS}")
    if direction == "forward":
        mapping = [cycle.cycle[(r + i) % k] for i in range(k)]
    else:
        mapping = [cycle.cycle[(r - i) % k] for i in range(k)]
    mapping.append(cycle.pivot)
    return tuple(mapping)


def _venues(sched: Schedule, mapping: Sequence[int], team: int) -> list[int]:
    home_v = mapping[team]
    return [
        home_v if sched.home[team][s] else mapping[sched.opp[team][s]]
        for s in range(sched.num_slots)
    ]


def evaluate_athome(
    sched: Schedule, mapping: Sequence[int], D: DistanceMatrix
) -> tuple[tuple[Number, ...], Number]:
    """Travel per team: start home, walk the slot venues, return home.

    Staying put costs nothing (d[v][v] = 0); consecutive away games travel
    venue to venue directly. Assumes a feasible schedule and a bijective
    team-to-venue mapping.
    """
    d = D.d
    per_team = []
    for t in range(sched.n):
        home_v = mapping[t]
        dist: Number = 0
        prev = home_v
        for v in _venues(sched, mapping, t):
            dist += d[prev][v]
            prev = v
        dist += d[prev][home_v]
        per_team.append(dist)
    return tuple(per_team), sum(per_team)


def evaluate_assumption_a(
    sched: Schedule, mapping: Sequence[int], D: DistanceMatrix
) -> tuple[tuple[Number, ...], Number]:
    """Like evaluate_athome, except a team that is away in both the first
    and last slot travels last-venue -> first-venue instead of the two legs
    through home, which closes its route into a cycle."""
    d = D.d
    per_team = []
    for t in range(sched.n):
        home_v = mapping[t]
        seq = _venues(sched, mapping, t)
        legs = sum(d[seq[i]][seq[i + 1]] for i in range(len(seq) - 1))
        if not sched.home[t][0] and not sched.home[t][-1]:
            legs += d[seq[-1]][seq[0]]
        else:
            legs += d[home_v][seq[0]] + d[seq[-1]][home_v]
        per_team.append(legs)
    return tuple(per_team), sum(per_team)


def assumption_a_route(
    sched: Schedule, mapping: Sequence[int], team: int
) -> tuple[int, ...]:
    """The cyclic venue route of a team under the first/last-slot rule,
    normalized to start at the team's own venue.

    Consecutive stays collapse; the home stand must be one contiguous
    cyclic block for the normalization to be well defined (true for every
    schedule this package constructs).
    """
    seq = _venues(sched, mapping, team)
    route: list[int] = []
    for v in seq:
        if not route or route[-1] != v:
            route.append(v)
    if len(route) > 1 and route[0] == route[-1]:
        route.pop()
    home_v = mapping[team]
    if home_v not in route:
        route.insert(0, home_v)  # away every slot never happens, but be total
    i = route.index(home_v)
    return tuple(route[i:] + route[:i])


@dataclass(frozen=True)
class ScheduleFamily:
    """The mirrored base schedule plus all its slot rotations, with stacked
    arrays for vectorized evaluation."""

    n: int
    base: Schedule
    rotations: tuple[Schedule, ...]
    opp_all: np.ndarray  # (M, n, L) int16
    home_all: np.ndarray  # (M, n, L) bool


def schedule_family(n: int) -> ScheduleFamily:
    base = mirror_and_assign(n)
    L = base.num_slots
    rotations = tuple(rotate(base, m) for m in range(L))
    opp_all = np.array([s.opp for s in rotations], dtype=np.int16)
    home_all = np.array([s.home for s in rotations], dtype=bool)
    return ScheduleFamily(n=n, base=base, rotations=rotations, opp_all=opp_all, home_all=home_all)


Table = Union[np.ndarray, list[list[Number]]]


def athome_table(D: DistanceMatrix, family: ScheduleFamily, mapping: Sequence[int]) -> Table:
    """Per-slot-rotation, per-team athome distances: shape (2n-2, n).

    Integral matrices take a vectorized exact-integer path; anything else
    falls back to the reference evaluator.
    """
    if D.integral:
        d_arr = np.array(D.d, dtype=np.int64)
        map_arr = np.array(mapping, dtype=np.int64)
        venues = np.where(
            family.home_all,
            map_arr[None, :, None],
            map_arr[family.opp_all],
        )
        legs = d_arr[venues[:, :, :-1], venues[:, :, 1:]].sum(axis=2)
        legs += d_arr[map_arr[None, :], venues[:, :, 0]]
        legs += d_arr[venues[:, :, -1], map_arr[None, :]]
        return legs
    return [list(evaluate_athome(s, mapping, D)[0]) for s in family.rotations]


def assumption_a_table(D: DistanceMatrix, family: ScheduleFamily, mapping: Sequence[int]) -> Table:
    """Per-slot-rotation, per-team distances under the first/last-slot rule."""
    if D.integral:
        d_arr = np.array(D.d, dtype=np.int64)
        map_arr = np.array(mapping, dtype=np.int64)
        venues = np.where(
            family.home_all,
            map_arr[None, :, None],
            map_arr[family.opp_all],
        )
        legs = d_arr[venues[:, :, :-1], venues[:, :, 1:]].sum(axis=2)
        away_both = ~family.home_all[:, :, 0] & ~family.home_all[:, :, -1]
        wrap = d_arr[venues[:, :, -1], venues[:, :, 0]]
        ends = d_arr[map_arr[None, :], venues[:, :, 0]] + d_arr[venues[:, :, -1], map_arr[None, :]]
        return legs + np.where(away_both, wrap, ends)
    return [list(evaluate_assumption_a(s, mapping, D)[0]) for s in family.rotations]


def _table_totals(table: Table) -> list[Number]:
    if isinstance(table, np.ndarray):
        return [int(x) for x in table.sum(axis=1)]
    return [sum(row) for row in table]


def solve(
    D: DistanceMatrix,
    mode: str = "exact",
    cap: int = HELD_KARP_CAP,
    tour: Optional[Sequence[int]] = None,
    want_certificate: bool = True,
    keep_candidates: bool = False,
) -> tuple[SolveReport, Schedule]:
    """Build the pivoted cycle, enumerate every candidate schedule, and
    return the best one relabeled so row v is venue v's team."""
    n = D.n
    if n % 2 != 0 or n < 4:
        raise SolverError(f"n must be even and >= 4, got {n}")
    pivoted = build_pivoted_cycle(D, mode=mode, cap=cap, tour=tour)
    if pivoted.full_tour is not None:
        tau: Optional[Number] = pivoted.full_tour.length
    elif n <= cap:
        tau = held_karp(D, cap=cap).length
    else:
        tau = None

    family = schedule_family(n)
    best: Optional[tuple[Number, int, int, int]] = None
    candidates: list[tuple[int, str, int, Number]] = []
    for r in range(n - 1):
        for di, direction in enumerate(DIRECTIONS):
            mapping = team_assignment(pivoted, r, direction)
            totals = _table_totals(athome_table(D, family, mapping))
            for m, tot in enumerate(totals):
                if keep_candidates:
                    candidates.append((r, direction, m, tot))
                if best is None or tot < best[0]:
                    best = (tot, r, di, m)

    assert best is not None
    total, r, di, m = best
    direction = DIRECTIONS[di]
    mapping = team_assignment(pivoted, r, direction)
    out_sched = relabel(family.rotations[m], mapping)
    per_team, check_total = evaluate_athome(out_sched, tuple(range(n)), D)
    if check_total != total:
        raise InternalCheckError(
            f"fast evaluation ({total}) disagrees with reference walk ({check_total})"
        )

    lower = n * tau if tau is not None else None
    if lower is not None and lower > 0:
        gap: Optional[Fraction] = (Fraction(total, lower) - 1) * 100
    else:
        gap = None
    guarantees = D.metric and (
        mode == "exact" or (mode == "christofides" and bool(pivoted.matching_exact))
    )
    ratio_bound = Fraction(11, 4) if mode == "christofides" else Fraction(9, 4)

    certificate = None
    if want_certificate and tau is not None:
        from .analysis import certify

        certificate = certify(
            D, pivoted, family, tau, total=total, ratio_bound=ratio_bound
        )

    report = SolveReport(
        n=n,
        total_distance=total,
        per_team_distances=per_team,
        best_transform=CandidateTransform(r, direction, m),
        tau=tau,
        tau_prime=pivoted.cycle_length,
        tsp_mode=mode.replace("_", "-"),
        matching_exact=pivoted.matching_exact,
        lower_bound=lower,
        gap_percent=gap,
        metric=D.metric,
        guarantees_valid=guarantees,
        ratio_bound=ratio_bound,
        certificate=certificate,
        candidates=tuple(candidates) if keep_candidates else None,
    )
    return report, out_sched
