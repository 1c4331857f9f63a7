"""Distance-matrix instances: parsing, validation, and random generation.

Instance files are plain text: whitespace-separated numbers, either exactly
n*n tokens (row-major square matrix) or a leading token n followed by n*n
tokens. Integral files parse to ints; anything else parses to exact
``Fraction``s, so downstream arithmetic never accumulates float error.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

Number = Union[int, Fraction]


class InstanceError(ValueError):
    """Malformed or inconsistent instance data."""


@dataclass(frozen=True)
class MetricViolation:
    """A triple where going i -> j -> k beats the direct i -> k distance."""

    i: int
    j: int
    k: int
    deficit: Number  # d[i][k] - (d[i][j] + d[j][k]), strictly positive


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative distances between n team venues.

    ``metric`` records whether the triangle inequality held at load time;
    solvers run on non-metric input but mark their ratio guarantees void.
    """

    n: int
    d: tuple[tuple[Number, ...], ...]
    metric: bool

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]]) -> "DistanceMatrix":
        d = tuple(tuple(row) for row in rows)
        n = len(d)
        if n < 1 or any(len(row) != n for row in d):
            raise InstanceError("distance matrix must be square")
        for i in range(n):
            if d[i][i] != 0:
                raise InstanceError(f"nonzero diagonal entry at ({i},{i}): {d[i][i]}")
            for j in range(n):
                if d[i][j] < 0:
                    raise InstanceError(f"negative distance at ({i},{j}): {d[i][j]}")
                if d[i][j] != d[j][i]:
                    raise InstanceError(
                        f"asymmetric entries ({i},{j})={d[i][j]} vs ({j},{i})={d[j][i]}"
                    )
        metric = not _metric_violations(d, n, cap=1)
        return cls(n=n, d=d, metric=metric)

    @property
    def integral(self) -> bool:
        return all(isinstance(x, int) for row in self.d for x in row)

    def row_sum(self, i: int) -> Number:
        return sum(self.d[i][j] for j in range(self.n) if j != i)

    def pair_sum(self) -> Number:
        """Sum of d[v][v'] over all ordered pairs v != v'."""
        return sum(self.row_sum(i) for i in range(self.n))


def _parse_token(tok: str) -> Number:
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"not a number: {tok!r}") from exc


def parse_distance_matrix(text: str) -> DistanceMatrix:
    """Parse matrix text, auto-detecting the optional leading-n form.

    k tokens parse as an n*n matrix when k is a perfect square; otherwise
    k-1 must be a perfect square and the first token must equal n.
    """
    tokens = text.split()
    if not tokens:
        raise InstanceError("empty instance")
    k = len(tokens)
    side = math.isqrt(k)
    if side * side == k:
        values = [_parse_token(t) for t in tokens]
        n = side
    else:
        side = math.isqrt(k - 1)
        if side * side != k - 1:
            raise InstanceError(f"token count {k} is neither n*n nor 1+n*n")
        lead = _parse_token(tokens[0])
        if lead != side:
            raise InstanceError(
                f"leading token {tokens[0]} does not match matrix size {side}"
            )
        values = [_parse_token(t) for t in tokens[1:]]
        n = side
    rows = [values[i * n : (i + 1) * n] for i in range(n)]
    return DistanceMatrix.from_rows(rows)


def load_instance(path: str | Path) -> DistanceMatrix:
    return parse_distance_matrix(Path(path).read_text())


def render_distance_matrix(D: DistanceMatrix, leading_n: bool = False) -> str:
    lines = [" ".join(str(x) for x in row) for row in D.d]
    if leading_n:
        lines.insert(0, str(D.n))
    return "\n".join(lines) + "\n"


def _metric_violations(
    d: tuple[tuple[Number, ...], ...], n: int, cap: int
) -> list[MetricViolation]:
    out: list[MetricViolation] = []
    for i in range(n):
        for k in range(i + 1, n):
            direct = d[i][k]
            for j in range(n):
                if j == i or j == k:
                    continue
                via = d[i][j] + d[j][k]
                if via < direct:
                    out.append(MetricViolation(i, j, k, direct - via))
                    if len(out) >= cap:
                        return out
    return out


def validate_metric(D: DistanceMatrix, max_violations: int = 20) -> list[MetricViolation]:
    """List triples violating d[i][j] + d[j][k] >= d[i][k], capped."""
    return _metric_violations(D.d, D.n, cap=max_violations)


def random_euclidean_instance(n: int, seed: int, box: float = 1000.0) -> DistanceMatrix:
    """n uniform points in [0, box]^2 with integer ceiling-rounded distances.

    Ceiling keeps the triangle inequality intact after rounding
    (ceil(x+y) <= ceil(x) + ceil(y)), so every generated instance is metric.
    Deterministic for a fixed seed.
    """
    if n < 3:
        raise InstanceError(f"need n >= 3, got {n}")
    rng = random.Random(seed)
    pts = [(rng.uniform(0.0, box), rng.uniform(0.0, box)) for _ in range(n)]
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dist = math.ceil(math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]))
            d[i][j] = d[j][i] = dist
    return DistanceMatrix.from_rows(d)
