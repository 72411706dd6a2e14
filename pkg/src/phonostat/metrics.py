"""Rank-frequency distributions and their summary metrics.

smoothness  = |mean(D)| / SD(D), where D(n) = F(n+1) - F(n)
H           = -sum F(n) log2 F(n)                (bits per symbol)
redundancy  = 1 - H / log2 N
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import EmptyCorpusError, ParameterError, UndefinedMetricError

SAMPLE = "sample"
POPULATION = "population"
SD_MODES = (SAMPLE, POPULATION)


@dataclass(frozen=True)
class RankEntry:
    symbol: str
    count: int
    fraction: float


@dataclass(frozen=True)
class RankDistribution:
    entries: tuple[RankEntry, ...]
    total_count: int

    @property
    def N(self) -> int:
        return len(self.entries)

    @property
    def fractions(self) -> list[float]:
        return [e.fraction for e in self.entries]

    @property
    def counts(self) -> list[int]:
        return [e.count for e in self.entries]

    @property
    def symbols(self) -> list[str]:
        return [e.symbol for e in self.entries]

    def rank_of(self, symbol: str) -> int:
        """1-based rank of ``symbol``."""
        return self.symbols.index(symbol) + 1


@dataclass(frozen=True)
class MetricsReport:
    N: int
    diffs: tuple[float, ...]
    smoothness: float
    entropy_bits: float
    redundancy: float
    sd_mode: str = SAMPLE


def rank_distribution(counts: Mapping[str, int]) -> RankDistribution:
    """Sort symbols by descending count, ties by code point."""
    items = [(s, int(c)) for s, c in counts.items() if c]
    if not items:
        raise EmptyCorpusError("no symbols to rank")
    if any(c < 0 for _, c in items):
        raise ParameterError("counts must be non-negative")
    items.sort(key=lambda sc: (-sc[1], sc[0]))
    total = sum(c for _, c in items)
    return RankDistribution(tuple(RankEntry(s, c, c / total) for s, c in items), total)


def differences(dist: RankDistribution) -> list[float]:
    f = dist.fractions
    return [b - a for a, b in zip(f, f[1:])]


def smoothness(dist: RankDistribution, sd: str = SAMPLE) -> float:
    """|mean(D)| / SD(D); ``math.inf`` when the steps are all equal.

    Computed exactly on integer count steps: the ratio does not depend
    on the common 1/total scale.
    """
    if sd not in SD_MODES:
        raise ParameterError(f"sd must be one of {SD_MODES}")
    if dist.N < 3:
        raise UndefinedMetricError(f"smoothness needs at least 3 symbols, got {dist.N}")
    c = dist.counts
    steps = [Fraction(b - a) for a, b in zip(c, c[1:])]
    m = len(steps)
    mean = sum(steps) / m
    var = sum((d - mean) ** 2 for d in steps) / (m - 1 if sd == SAMPLE else m)
    if var == 0:
        return math.inf
    return math.sqrt(mean * mean / var)


def shannon_information(dist: RankDistribution) -> float:
    return -math.fsum(f * math.log2(f) for f in dist.fractions)


def redundancy(dist: RankDistribution) -> float:
    if dist.N < 2:
        raise UndefinedMetricError("redundancy is undefined for a single symbol")
    r = 1.0 - shannon_information(dist) / math.log2(dist.N)
    return min(1.0, max(0.0, r))


def compute_metrics(dist: RankDistribution, sd: str = SAMPLE) -> MetricsReport:
    return MetricsReport(
        N=dist.N,
        diffs=tuple(differences(dist)),
        smoothness=smoothness(dist, sd),
        entropy_bits=shannon_information(dist),
        redundancy=redundancy(dist),
        sd_mode=sd,
    )


def zipf_baseline(n: int) -> RankDistribution:
    """Zipfian distribution over ``n`` symbols, F(k) = 1 / (k * H_n).

    Counts are lcm(1..n)/k so the fractions are exact up to rounding.
    """
    if n < 2:
        raise ParameterError("a Zipf baseline needs at least 2 symbols")
    lcm = math.lcm(*range(1, n + 1))
    width = len(str(n))
    return rank_distribution({f"z{k:0{width}d}": lcm // k for k in range(1, n + 1)})
