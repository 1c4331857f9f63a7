"""Circle-method round robins, mirrored double round robins with home/away
assignment, slot rotations, relabelings, and validators.

Slots are indexed 0..2n-3. Validators return structured violation lists so
callers can report exactly what broke instead of a bare boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence


class ScheduleError(ValueError):
    """Structurally invalid schedule data or parameters."""


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    message: str


@dataclass(frozen=True)
class OpponentTable:
    """Single round robin without venues: opponent of team t in slot s."""

    n: int
    entries: tuple[tuple[int, ...], ...]  # [team][slot] -> opponent

    def opponent(self, team: int, slot: int) -> int:
        return self.entries[team][slot]


@dataclass(frozen=True)
class Schedule:
    """Double round robin: per team and slot, (opponent, home flag)."""

    n: int
    opp: tuple[tuple[int, ...], ...]  # [team][slot] -> opponent
    home: tuple[tuple[bool, ...], ...]  # [team][slot] -> plays at home?

    @property
    def num_slots(self) -> int:
        return 2 * self.n - 2

    def game(self, team: int, slot: int) -> tuple[int, bool]:
        return self.opp[team][slot], self.home[team][slot]


def circle_schedule(n: int) -> OpponentTable:
    """Classical circle-method single round robin over slots 0..n-2.

    Team t != n-1 meets (s - t) mod (n-1) in slot s, except in the slot
    where that value folds back onto t itself, which is its game against
    team n-1. Team n-1 walks 0, n/2, 1, n/2+1, ... across the slots.
    """
    if n < 4 or n % 2 != 0:
        raise ScheduleError(f"need an even team count >= 4, got {n}")
    entries = []
    for t in range(n - 1):
        row = []
        for s in range(n - 1):
            r = (s - t) % (n - 1)
            row.append(n - 1 if r == t else r)
        entries.append(tuple(row))
    last = tuple(s // 2 if s % 2 == 0 else (s + n - 1) // 2 for s in range(n - 1))
    entries.append(last)
    return OpponentTable(n=n, entries=tuple(entries))


def mirror_and_assign(n: int) -> Schedule:
    """Mirror the circle schedule into 2n-2 slots and assign venues.

    Home slots: team t < n/2 is home exactly in slots 2t..n+2t-2; teams
    n/2..n-2 are away exactly in slots 2t-n+2..2t; team n-1 is away in the
    whole first half. Every rotation of the result stays feasible.
    """
    table = circle_schedule(n)
    half = n - 1
    opp = tuple(tuple(row[s % half] for s in range(2 * half)) for row in table.entries)
    home_rows = []
    for t in range(n):
        if t < n // 2:
            row = [2 * t <= s <= n + 2 * t - 2 for s in range(2 * half)]
        elif t <= n - 2:
            row = [not (2 * t - n + 2 <= s <= 2 * t) for s in range(2 * half)]
        else:
            row = [s > n - 2 for s in range(2 * half)]
        home_rows.append(tuple(row))
    return Schedule(n=n, opp=opp, home=tuple(home_rows))


def rotate(sched: Schedule, m: int) -> Schedule:
    """Slot s of the result holds slot (s+m) mod (2n-2) of the input."""
    L = sched.num_slots
    if not 0 <= m <= L - 1:
        raise ScheduleError(f"rotation {m} out of range 0..{L - 1}")
    if m == 0:
        return sched
    opp = tuple(tuple(row[(s + m) % L] for s in range(L)) for row in sched.opp)
    home = tuple(tuple(row[(s + m) % L] for s in range(L)) for row in sched.home)
    return Schedule(n=sched.n, opp=opp, home=home)


def relabel(sched: Schedule, perm: Sequence[int]) -> Schedule:
    """Team perm[t] takes team t's row, with opponents mapped through perm."""
    n = sched.n
    if sorted(perm) != list(range(n)):
        raise ScheduleError("relabeling permutation must be a bijection on 0..n-1")
    opp: list[tuple[int, ...]] = [()] * n
    home: list[tuple[bool, ...]] = [()] * n
    for t in range(n):
        opp[perm[t]] = tuple(perm[o] for o in sched.opp[t])
        home[perm[t]] = sched.home[t]
    return Schedule(n=n, opp=tuple(opp), home=tuple(home))


def check_drr(sched: Schedule) -> list[Violation]:
    """Double-round-robin feasibility: consistent pairings with one home and
    one away side per game, and every ordered hosting exactly once."""
    out: list[Violation] = []
    n, L = sched.n, sched.num_slots
    for s in range(L):
        for t in range(n):
            o = sched.opp[t][s]
            if o == t or not 0 <= o < n:
                out.append(Violation("self_or_range", (t, s), f"team {t} has opponent {o} in slot {s}"))
                continue
            if sched.opp[o][s] != t:
                out.append(Violation("pairing", (t, s), f"slot {s}: team {t} lists {o} but {o} lists {sched.opp[o][s]}"))
            elif t < o and sched.home[t][s] == sched.home[o][s]:
                out.append(Violation("venue_clash", (t, o, s), f"slot {s}: teams {t} and {o} both {'home' if sched.home[t][s] else 'away'}"))
    hostings: dict[tuple[int, int], int] = {}
    for s in range(L):
        for t in range(n):
            o = sched.opp[t][s]
            if o == t or not 0 <= o < n:
                continue
            if sched.home[t][s]:
                key = (t, o)
                hostings[key] = hostings.get(key, 0) + 1
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = hostings.get((i, j), 0)
            if c != 1:
                out.append(Violation("hosting_count", (i, j), f"team {i} hosts {j} {c} times (want 1)"))
    return out


def check_mirrored(sched: Schedule) -> list[Violation]:
    """Slots s and s+n-1 (cyclically) must repeat pairings with venues swapped."""
    out: list[Violation] = []
    n, L = sched.n, sched.num_slots
    half = n - 1
    for t in range(n):
        for s in range(L):
            s2 = (s + half) % L
            if sched.opp[t][s] != sched.opp[t][s2]:
                out.append(Violation("mirror_opponent", (t, s), f"team {t}: slots {s} and {s2} pair different opponents"))
            elif sched.home[t][s] == sched.home[t][s2]:
                out.append(Violation("mirror_venue", (t, s), f"team {t}: slots {s} and {s2} repeat the same venue side"))
    return out


def check_no_repeater(sched: Schedule) -> list[Violation]:
    """No pair may meet in two consecutive slots."""
    out: list[Violation] = []
    for t in range(sched.n):
        for s in range(sched.num_slots - 1):
            if sched.opp[t][s] == sched.opp[t][s + 1] and t < sched.opp[t][s]:
                out.append(Violation("repeater", (t, sched.opp[t][s], s), f"teams {t} and {sched.opp[t][s]} meet in slots {s} and {s + 1}"))
    return out


def streak_stats(sched: Schedule) -> list[tuple[int, int]]:
    """Per team: (max consecutive home games, max consecutive away games)."""
    out = []
    for t in range(sched.n):
        best_h = best_a = cur_h = cur_a = 0
        for flag in sched.home[t]:
            if flag:
                cur_h += 1
                cur_a = 0
            else:
                cur_a += 1
                cur_h = 0
            best_h = max(best_h, cur_h)
            best_a = max(best_a, cur_a)
        out.append((best_h, best_a))
    return out


def _cell(sched: Schedule, t: int, s: int) -> str:
    return f"{sched.opp[t][s]}{'H' if sched.home[t][s] else 'A'}"


def render_schedule(sched: Schedule, fmt: str = "grid") -> str:
    """grid: slot-indexed table for humans. rows: one line per team,
    tokens like ``9H`` / ``0A``, machine round-trippable."""
    if fmt == "rows":
        return "\n".join(
            " ".join(_cell(sched, t, s) for s in range(sched.num_slots))
            for t in range(sched.n)
        ) + "\n"
    if fmt != "grid":
        raise ScheduleError(f"unknown format {fmt!r}")
    width = max(3, len(str(sched.n - 1)) + 1)
    header = "team\\slot " + " ".join(f"{s:>{width}}" for s in range(sched.num_slots))
    lines = [header]
    for t in range(sched.n):
        cells = " ".join(f"{_cell(sched, t, s):>{width}}" for s in range(sched.num_slots))
        lines.append(f"{t:>9} " + cells)
    return "\n".join(lines) + "\n"


def parse_schedule_rows(text: str) -> Schedule:
    """Inverse of render_schedule(..., "rows")."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    n = len(lines)
    if n < 4 or n % 2 != 0:
        raise ScheduleError(f"need an even team count >= 4, got {n} rows")
    L = 2 * n - 2
    opp_rows = []
    home_rows = []
    for t, tokens in enumerate(lines):
        if len(tokens) != L:
            raise ScheduleError(f"row {t} has {len(tokens)} tokens, want {L}")
        opp_row = []
        home_row = []
        for s, tok in enumerate(tokens):
            side = tok[-1].upper()
            if side not in ("H", "A") or not tok[:-1].isdigit():
                raise ScheduleError(f"bad cell {tok!r} at team {t} slot {s}")
            o = int(tok[:-1])
            if not 0 <= o < n:
                raise ScheduleError(f"opponent {o} out of range at team {t} slot {s}")
            opp_row.append(o)
            home_row.append(side == "H")
        opp_rows.append(tuple(opp_row))
        home_rows.append(tuple(home_row))
    return Schedule(n=n, opp=tuple(opp_rows), home=tuple(home_rows))


CHECKERS: dict[str, Callable[[Schedule], list[Violation]]] = {
    "drr": check_drr,
    "mirrored": check_mirrored,
    "no_repeater": check_no_repeater,
}
