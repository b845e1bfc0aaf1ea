"""Exact ball and sphere enumeration under selectable word metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import SplitterMixerData
from .errors import DataError
from .words import ReducedWord, equal, identity_word, multiply, portrait

DEFAULT_ELEMENT_CAP = 10_000_000


@dataclass(frozen=True)
class MetricSpec:
    """Word metric: "standard" charges 1 per nontrivial mixer or splitter
    generator; "blength" charges 1 per splitter syllable a b a' (so pure
    mixer elements cost 1)."""

    kind: str = "standard"

    def generators(self, data: SplitterMixerData, level: int = 1) -> list[ReducedWord]:
        if self.kind == "standard":
            gens = [ReducedWord(level, (a,), ()) for a in range(1, data.A.order)]
            gens += [ReducedWord(level, (0, 0), (b,)) for b in range(1, data.B.order)]
        elif self.kind == "blength":
            seen = {}
            for b in range(1, data.B.order):
                for a in range(data.A.order):
                    for a2 in range(data.A.order):
                        w = ReducedWord(level, (a, a2), (b,))
                        seen[w.key()] = w
            for a in range(1, data.A.order):
                w = ReducedWord(level, (a,), ())
                seen[w.key()] = w
            gens = [seen[k] for k in sorted(seen)]
        else:
            raise DataError(f"unknown metric kind {self.kind!r}")
        if not gens:
            raise DataError("metric has an empty generating set")
        return gens


@dataclass(frozen=True)
class GrowthTable:
    metric: MetricSpec
    rows: tuple[tuple[int, int, int], ...]  # (n, sphere, ball)
    group_exhausted: bool
    capped: bool

    def sphere(self, n: int) -> int:
        return self.rows[n][1]

    def ball(self, n: int) -> int:
        return self.rows[n][2]

    @property
    def exhaust_radius(self) -> int | None:
        if not self.group_exhausted:
            return None
        for n, sphere, _ in self.rows:
            if n > 0 and sphere == 0:
                return n - 1
        return self.rows[-1][0]


class _Dedup:
    """Visited set keyed by permutation portraits with exact-equality backstop.

    The portrait depth starts small and doubles whenever two genuinely
    distinct elements collide, re-keying everything already stored.
    """

    def __init__(self, data: SplitterMixerData, depth: int = 4):
        self.data = data
        self.depth = depth
        self.words: list[ReducedWord] = []
        self.buckets: dict[tuple, list[int]] = {}

    def _rebuild(self) -> None:
        self.buckets = {}
        for wid, w in enumerate(self.words):
            self.buckets.setdefault(portrait(self.data, w, self.depth), []).append(wid)

    def add(self, word: ReducedWord) -> bool:
        """True when the element is new; stores its word as representative."""
        while True:
            key = portrait(self.data, word, self.depth)
            bucket = self.buckets.get(key)
            if not bucket:
                break
            for wid in bucket:
                other = self.words[wid]
                if other == word or equal(self.data, other, word):
                    return False
            # same portrait, different element: sharpen the key
            self.depth *= 2
            self._rebuild()
        self.buckets.setdefault(key, []).append(len(self.words))
        self.words.append(word)
        return True


def ball_elements(
    data: SplitterMixerData,
    metric: MetricSpec,
    radius: int,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    level: int = 1,
) -> tuple[GrowthTable, list[list[ReducedWord]]]:
    """Breadth-first enumeration from the identity by generator right-multiplication.

    Returns the growth table together with one representative word per
    element, grouped by word norm.  Counts are independent of generator
    order; representatives may differ.
    """
    if radius < 0:
        raise DataError("radius must be nonnegative")
    gens = metric.generators(data, level)
    dedup = _Dedup(data)
    ident = identity_word(level)
    dedup.add(ident)
    spheres: list[list[ReducedWord]] = [[ident]]
    rows = [(0, 1, 1)]
    ball = 1
    capped = False
    exhausted = False
    for n in range(1, radius + 1):
        layer: list[ReducedWord] = []
        for w in spheres[n - 1]:
            for g in gens:
                candidate = multiply(data, w, g)
                if dedup.add(candidate):
                    layer.append(candidate)
                    if len(dedup.words) > element_cap:
                        capped = True
                        break
            if capped:
                break
        spheres.append(layer)
        ball += len(layer)
        rows.append((n, len(layer), ball))
        if capped:
            break
        if not layer:
            exhausted = True
            # the group is finite; later spheres stay empty
            for m in range(n + 1, radius + 1):
                spheres.append([])
                rows.append((m, 0, ball))
            break
    table = GrowthTable(metric, tuple(rows), exhausted, capped)
    return table, spheres


def ball_enumerate(
    data: SplitterMixerData,
    metric: MetricSpec,
    radius: int,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> GrowthTable:
    table, _ = ball_elements(data, metric, radius, element_cap)
    return table


def sphere_series(table: GrowthTable) -> list[int]:
    """Sphere sizes sigma(0..N); the growth series is (1 - z) times the ball series."""
    return [sphere for _, sphere, _ in table.rows]


@dataclass(frozen=True)
class RateDiagnostics:
    sphere_roots: tuple[float, ...]
    ball_roots: tuple[float, ...]
    submultiplicativity_violations: tuple[tuple[int, int], ...]
    ball_bound_ok: bool  # gamma(n) <= (#S + 1)^n on the computed range
    loglog_slope: float | None
    loglog_intercept: float | None


def rate_diagnostics(table: GrowthTable, generator_count: int | None = None) -> RateDiagnostics:
    """Root statistics, submultiplicativity audit and a log-log ball fit.

    Diagnostic only: nothing here certifies an asymptotic growth type.
    """
    spheres = [r[1] for r in table.rows]
    balls = [r[2] for r in table.rows]
    n_max = len(balls) - 1
    sphere_roots = tuple(
        spheres[n] ** (1.0 / n) for n in range(1, n_max + 1) if spheres[n] > 0
    )
    ball_roots = tuple(balls[n] ** (1.0 / n) for n in range(1, n_max + 1))
    violations = tuple(
        (n, m)
        for n in range(1, n_max + 1)
        for m in range(1, n_max + 1 - n)
        if balls[n + m] > balls[n] * balls[m]
    )
    bound_ok = True
    if generator_count is not None:
        bound_ok = all(balls[n] <= (generator_count + 1) ** n for n in range(1, n_max + 1))
    xs = [math.log(n) for n in range(2, n_max + 1) if balls[n] >= 3]
    ys = [math.log(math.log(balls[n])) for n in range(2, n_max + 1) if balls[n] >= 3]
    slope = intercept = None
    if len(xs) >= 2:
        mean_x = sum(xs) / len(xs)
        mean_y = sum(ys) / len(ys)
        den = sum((x - mean_x) ** 2 for x in xs)
        if den > 0:
            slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / den
            intercept = mean_y - slope * mean_x
    return RateDiagnostics(sphere_roots, ball_roots, violations, bound_ok, slope, intercept)
