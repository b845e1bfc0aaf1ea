"""Contraction statistics of uniform random words under decomposition.

A uniform word of length n is a0 b1 a1 ... bn an with mixer letters drawn
uniformly from A minus the identity and splitter letters uniformly from all
of B (trivial splitter letters are kept; they only disappear during
measurement).  Decomposing and measuring the total child length yields the
contraction mean mu, the scaled variance sigma = Var(total)/n and the
correlation factor eta = mu*(1-mu)/sigma; eta = 1 is the uncorrelated
binomial reference, whose cancellation count is binomial over the inner
mixer syllables with success probability 1/#A.

Two measurement modes:

  syllable-count   every sampled splitter letter occupies one syllable slot
                   in some child; a cancellation is a trivial mixer syllable
                   between consecutive slots of one child, and the total is
                   n minus the cancellation count.  Trivial splitter letters
                   persist as separators, which keeps children of uniform
                   words uniform; this is the default.
  full-reduce      children are reduced to free-product normal form and the
                   total is the sum of their splitter lengths; always at
                   most the syllable count, since dropping trivial splitter
                   letters enables further merges.

Sampling is a pure function of (seed, sample index) through per-index
counter-based generators, so results do not depend on how work is split
across threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from .algebra import SplitterMixerData
from .errors import DataError
from .words import ReducedWord, decompose_raw, reduce_letters

MODES = ("full-reduce", "syllable-count")
_CHUNK = 4096
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SamplerSpec:
    """Word length, level, seed and measurement mode of one experiment."""

    n: int
    level: int = 1
    seed: int = 0
    mode: str = "syllable-count"

    def __post_init__(self):
        if self.n < 1:
            raise DataError("word length must be at least 1")
        if self.mode not in MODES:
            raise DataError(f"mode must be one of {MODES}")


@dataclass(frozen=True)
class UniformWord:
    """Sampled alternating word; splitter letters may be trivial."""

    level: int
    aletters: tuple[int, ...]
    bletters: tuple[int, ...]


@dataclass(frozen=True)
class ContractionMeasurement:
    child_lengths: tuple[int, ...]
    total: int
    cancellations: int


@dataclass(frozen=True)
class DistributionStats:
    samples: int
    n: int
    mode: str
    mu: float
    mu_se: float
    sigma: float
    sigma_se: float
    eta: float
    eta_se: float
    parabola: float  # mu * (1 - mu)
    histogram: dict[int, int] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# sampling


def _sample_rows(data: SplitterMixerData, spec: SamplerSpec, index: int):
    if data.A.order < 2:
        raise DataError("sampling needs a nontrivial mixer group")
    key = ((spec.seed & _MASK64) << 64) | (index & _MASK64)
    rng = np.random.Generator(np.random.Philox(key=key))
    aletters = rng.integers(1, data.A.order, size=spec.n + 1)
    bletters = rng.integers(0, data.B.order, size=spec.n)
    return aletters, bletters


def sample_uniform_word(data: SplitterMixerData, spec: SamplerSpec, index: int) -> UniformWord:
    """The index-th uniform word of the stream; reproducible and order-free."""
    aletters, bletters = _sample_rows(data, spec, index)
    return UniformWord(spec.level, tuple(int(a) for a in aletters), tuple(int(b) for b in bletters))


# ---------------------------------------------------------------------------
# single-word measurement (reference implementation)


def measure_contraction(
    data: SplitterMixerData, word: UniformWord | ReducedWord, mode: str = "syllable-count"
) -> ContractionMeasurement:
    """Decompose one word and measure its children in the given mode."""
    if mode not in MODES:
        raise DataError(f"mode must be one of {MODES}")
    _, children, cancellations = decompose_raw(data, word.level, word.aletters, word.bletters)
    lengths = []
    if mode == "full-reduce":
        for letters in children:
            lengths.append(reduce_letters(data, word.level + 1, letters).b_length)
    else:
        amul = data.A.mul
        for letters in children:
            slots = 0
            merges = 0
            seen = False
            acc = 0
            for kind, idx in letters:
                if kind == "a":
                    acc = amul(acc, idx)
                else:
                    slots += 1
                    if seen and acc == 0:
                        merges += 1
                    seen = True
                    acc = 0
            lengths.append(slots - merges)
    return ContractionMeasurement(tuple(lengths), sum(lengths), cancellations)


# ---------------------------------------------------------------------------
# vectorized bulk engine


def _np_tables(data: SplitterMixerData):
    cache = data.cache("np_tables")
    if "t" not in cache:
        na = data.A.order
        nb = data.B.order
        cache["t"] = (
            np.array([[data.A.mul(i, j) for j in range(na)] for i in range(na)], dtype=np.int16),
            np.array([data.A.inv(i) for i in range(na)], dtype=np.int16),
            np.array(data.A.perms, dtype=np.int16),
            np.array([[data.B.mul(i, j) for j in range(nb)] for i in range(nb)], dtype=np.int16),
        )
    return cache["t"]


def _phi_table(data: SplitterMixerData, level: int) -> np.ndarray:
    cache = data.cache("np_phi")
    key = data.phi.level_key(level)
    if key not in cache:
        tab = np.zeros((data.d, data.B.order), dtype=np.int16)
        for i0 in range(data.d - 1):
            tab[i0] = data.phi.at(i0, level).images
        cache[key] = tab
    return cache[key]


def _measure_chunk(data: SplitterMixerData, spec: SamplerSpec, start: int, count: int) -> np.ndarray:
    amul, _, aact, bmul = _np_tables(data)
    phi = _phi_table(data, spec.level)
    d = data.d
    n = spec.n
    a_rows = np.empty((count, n + 1), dtype=np.int16)
    b_rows = np.empty((count, n), dtype=np.int16)
    for r in range(count):
        a, b = _sample_rows(data, spec, start + r)
        a_rows[r] = a
        b_rows[r] = b
    # prefix products of mixer letters (inclusive scan by doubling)
    pref = a_rows.copy()
    shift = 1
    while shift <= n:
        pref[:, shift:] = amul[pref[:, :-shift], pref[:, shift:]]
        shift *= 2
    slotpref = pref[:, :n]
    rows = np.arange(count)
    if spec.mode == "syllable-count":
        merges = np.zeros(count, dtype=np.int64)
        for child in range(d):
            seen = np.zeros(count, dtype=bool)
            acc = np.zeros(count, dtype=np.int16)
            for j in range(n):
                target = aact[slotpref[:, j], child]
                is_slot = target == d - 1
                img = np.where(is_slot, 0, phi[target, b_rows[:, j]])
                acc = amul[acc, img]
                merges += is_slot & seen & (acc == 0)
                seen |= is_slot
                acc[is_slot] = 0
        return (n - merges).astype(np.int64)
    totals = np.zeros(count, dtype=np.int64)
    for child in range(d):
        sp = np.zeros(count, dtype=np.int32)
        acc = np.zeros(count, dtype=np.int16)
        st_a = np.zeros((count, n + 1), dtype=np.int16)
        st_b = np.zeros((count, n + 1), dtype=np.int16)
        for j in range(n):
            target = aact[slotpref[:, j], child]
            is_slot = target == d - 1
            img = np.where(is_slot, 0, phi[target, b_rows[:, j]])
            acc = amul[acc, img]
            bval = b_rows[:, j]
            eff = is_slot & (bval != 0)
            if not eff.any():
                continue
            top_idx = np.maximum(sp - 1, 0)
            top = st_b[rows, top_idx]
            merged = bmul[top, bval]
            do_merge = eff & (sp > 0) & (acc == 0)
            st_b[rows, top_idx] = np.where(do_merge, merged, top)
            do_pop = do_merge & (merged == 0)
            acc = np.where(do_pop, st_a[rows, top_idx], acc)
            sp -= do_pop
            do_push = eff & ~do_merge
            st_a[rows, sp] = np.where(do_push, acc, st_a[rows, sp])
            st_b[rows, sp] = np.where(do_push, bval, st_b[rows, sp])
            sp += do_push
            acc = np.where(do_push, 0, acc)
        totals += sp
    return totals


def estimate_distribution(
    data: SplitterMixerData, spec: SamplerSpec, samples: int, threads: int = 1
) -> DistributionStats:
    """Monte-Carlo estimate of the contraction distribution.

    Work is split into fixed-size chunks of sample indices; all aggregation
    is exact integer arithmetic, so the result is identical for any thread
    count.
    """
    if samples < 1:
        raise DataError("need at least one sample")
    chunks = [(start, min(_CHUNK, samples - start)) for start in range(0, samples, _CHUNK)]

    def run(chunk):
        start, count = chunk
        totals = _measure_chunk(data, spec, start, count)
        hist = np.bincount(totals, minlength=spec.n + 2)
        powers = (
            int(totals.sum()),
            int((totals**2).sum()),
            int((totals**3).sum()),
            int((totals**4).sum()),
        )
        return hist, powers

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]

    hist_total = np.zeros(spec.n + 2, dtype=np.int64)
    s1 = s2 = s3 = s4 = 0
    for hist, (p1, p2, p3, p4) in results:
        if len(hist) > len(hist_total):
            hist_total = np.pad(hist_total, (0, len(hist) - len(hist_total)))
        hist_total[: len(hist)] += hist
        s1 += p1
        s2 += p2
        s3 += p3
        s4 += p4
    return _stats_from_sums(spec, samples, (s1, s2, s3, s4), hist_total)


def _stats_from_sums(
    spec: SamplerSpec, samples: int, sums: tuple[int, int, int, int], hist: np.ndarray
) -> DistributionStats:
    s = samples
    s1, s2, s3, s4 = sums
    n = spec.n
    mean = Fraction(s1, s)
    m2 = Fraction(s2, s) - mean**2
    m4 = (
        Fraction(s4, s)
        - 4 * mean * Fraction(s3, s)
        + 6 * mean**2 * Fraction(s2, s)
        - 3 * mean**4
    )
    var = Fraction(s2) - Fraction(s1**2, s)
    var = var / (s - 1) if s > 1 else Fraction(0)
    mu = float(mean) / n
    sigma = float(var) / n
    mu_se = sqrt(max(float(m2), 0.0) / s) / n
    sigma_se = sqrt(max(float(m4 - m2**2), 0.0) / s) / n
    parabola = mu * (1.0 - mu)
    if sigma > 0:
        eta = parabola / sigma
        # delta method, treating the mean and variance estimates as independent
        d_mu = (1.0 - 2.0 * mu) / sigma
        d_sigma = -parabola / sigma**2
        eta_se = sqrt((d_mu * mu_se) ** 2 + (d_sigma * sigma_se) ** 2)
    else:
        eta = float("inf")
        eta_se = float("inf")
    histogram = {int(v): int(c) for v, c in enumerate(hist) if c}
    return DistributionStats(
        samples=s,
        n=n,
        mode=spec.mode,
        mu=mu,
        mu_se=mu_se,
        sigma=sigma,
        sigma_se=sigma_se,
        eta=eta,
        eta_se=eta_se,
        parabola=parabola,
        histogram=histogram,
    )


# ---------------------------------------------------------------------------
# figure export

FIGURE_COLUMNS = "group,n,samples,mode,mu,mu_se,sigma,sigma_se,eta,parabola"


def figure_row(label: str, spec: SamplerSpec, stats: DistributionStats) -> str:
    fields = [
        label,
        str(spec.n),
        str(stats.samples),
        stats.mode,
        format(stats.mu, ".10g"),
        format(stats.mu_se, ".10g"),
        format(stats.sigma, ".10g"),
        format(stats.sigma_se, ".10g"),
        format(stats.eta, ".10g"),
        format(stats.parabola, ".10g"),
    ]
    return ",".join(fields)


def export_figure_data(rows: Sequence[tuple[str, SamplerSpec, DistributionStats]]) -> str:
    """Scatter data: mean on x, scaled variance on y, with the reference
    parabola sigma = mu*(1-mu) recorded per row."""
    lines = [FIGURE_COLUMNS]
    lines += [figure_row(label, spec, stats) for label, spec, stats in rows]
    return "\n".join(lines) + "\n"
