"""Decide phoneme-inventory questions from rank-frequency distributions."""

__version__ = "0.1.0"

from .corpus import CorpusDocument, DiacriticMode, NormalizedText, aggregate, normalize
from .errors import (
    EmptyCorpusError,
    ModeMismatchError,
    ParameterError,
    PhonostatError,
    RuleParseError,
    UndefinedMetricError,
)
from .hypothesis import Hypothesis, Kind, evaluate, group_diphthongs, merge_symbols, split_j, split_w
from .metrics import (
    MetricsReport,
    RankDistribution,
    compute_metrics,
    rank_distribution,
    redundancy,
    shannon_information,
    smoothness,
    zipf_baseline,
)
from .report import AnalysisRun, ComparisonTable, build_run, compare, detect_gaps, render
from .transducer import PhonemeString, RewriteRule, RuleSet, apply_rules, builtin_rules, count_symbols, parse_rule_file
