"""Phoneme-inventory hypotheses.

Each hypothesis turns a document into symbol counts under a different
assumption about which sounds are separate phonemes: glides split from
their vowels, diphthongs fused into single units, letters taken at face
value, or (as a deliberately wrong benchmark) two phonemes merged.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import CorpusDocument, DiacriticMode, normalize
from .errors import ModeMismatchError, ParameterError
from .transducer import PhonemeString, RuleSet, apply_rules, builtin_rules, count_symbols, fold_acute

VOWELS = frozenset("aeiou")
W_NEIGHBOURS = frozenset("aeioí")
J_NEIGHBOURS = frozenset("aeouw")


class Kind(str, enum.Enum):
    IDENTITY = "identity"
    RAW_LETTERS = "raw-letters"
    W_SPLIT = "w-split"
    WJ_SPLIT = "wj-split"
    WJ_SPLIT_DIACRITIC = "wj-split-diacritic"
    DIPHTHONGS_ALL = "diphthongs-all"
    DIPHTHONGS_IU = "diphthongs-iu"
    MERGE = "merge"


FIGURE_LABELS = {
    Kind.IDENTITY: "Fig. 1",
    Kind.RAW_LETTERS: "Fig. 2",
    Kind.W_SPLIT: "Fig. 3",
    Kind.WJ_SPLIT: "Fig. 4",
    Kind.WJ_SPLIT_DIACRITIC: "Fig. 5",
    Kind.DIPHTHONGS_ALL: "Fig. 6",
    Kind.DIPHTHONGS_IU: "Fig. 7",
    Kind.MERGE: "benchmark",
}

DESCRIPTIONS = {
    Kind.IDENTITY: "Reference phonemization",
    Kind.RAW_LETTERS: "Raw letters, no phonemization",
    Kind.W_SPLIT: "/w/ separate from /u/",
    Kind.WJ_SPLIT: "/w/ and /j/ separate from /u/ and /i/",
    Kind.WJ_SPLIT_DIACRITIC: "As wj-split, accent on i marks hiatus",
    Kind.DIPHTHONGS_ALL: "Every vowel pair as one phoneme",
    Kind.DIPHTHONGS_IU: "Vowel pairs with i or u as one phoneme",
    Kind.MERGE: "Artificial merger (non-smoothness benchmark)",
}

# the seven scenarios of the comparison table, in figure order
TABLE_KINDS = (
    Kind.IDENTITY,
    Kind.RAW_LETTERS,
    Kind.W_SPLIT,
    Kind.WJ_SPLIT,
    Kind.WJ_SPLIT_DIACRITIC,
    Kind.DIPHTHONGS_ALL,
    Kind.DIPHTHONGS_IU,
)


@dataclass(frozen=True)
class Hypothesis:
    name: str
    kind: Kind
    params: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is Kind.MERGE and len(set(self.params)) < 2:
            raise ParameterError("a merge hypothesis needs at least two distinct symbols")

    @property
    def figure(self) -> str:
        return FIGURE_LABELS[self.kind]

    @classmethod
    def from_kind(cls, kind: Kind | str) -> "Hypothesis":
        kind = Kind(kind)
        return cls(kind.value, kind)

    @classmethod
    def merge(cls, symbols: Sequence[str]) -> "Hypothesis":
        symbols = tuple(dict.fromkeys(symbols))
        return cls("merge:" + "+".join(symbols), Kind.MERGE, symbols)


def parse_hypothesis(name: str) -> Hypothesis:
    """Look up a hypothesis by name; ``merge:t+d`` builds a merge."""
    name = name.strip()
    if name.startswith("merge:"):
        return Hypothesis.merge([s for s in name[len("merge:"):].split("+") if s])
    try:
        kind = Kind(name)
    except ValueError:
        raise ParameterError(f"unknown hypothesis {name!r}; choose from {[k.value for k in Kind]}") from None
    if kind is Kind.MERGE:
        raise ParameterError("merge needs symbols, e.g. merge:t+d or --merge t,d")
    return Hypothesis.from_kind(kind)


def table_hypotheses() -> list[Hypothesis]:
    return [Hypothesis.from_kind(k) for k in TABLE_KINDS]


def _replace_adjacent(text: str, target: str, repl: str, neighbours: frozenset[str]) -> str:
    # neighbours are judged on the original string, not on earlier replacements
    out = list(text)
    last = len(text) - 1
    for k, c in enumerate(text):
        if c != target:
            continue
        if (k > 0 and text[k - 1] in neighbours) or (k < last and text[k + 1] in neighbours):
            out[k] = repl
    return "".join(out)


def split_w(p: PhonemeString) -> PhonemeString:
    """Mark every u next to another vowel as the glide w."""
    return PhonemeString(_replace_adjacent(p.text, "u", "w", W_NEIGHBOURS), p.mode)


def split_j(p: PhonemeString, diacritic_aware: bool = False) -> PhonemeString:
    """Mark every i next to a vowel (or w) as the glide j.

    With ``diacritic_aware`` the text must carry accented í; those are
    left alone as syllabic vowels and then folded to plain i.
    """
    if diacritic_aware and p.mode is not DiacriticMode.PRESERVE_I_ACUTE:
        raise ModeMismatchError("diacritic-aware /j/ split needs text phonemized with the accent on i preserved")
    out = PhonemeString(_replace_adjacent(p.text, "i", "j", J_NEIGHBOURS), p.mode)
    return fold_acute(out) if diacritic_aware else out


def group_diphthongs(p: PhonemeString, scope: str = "all") -> PhonemeString:
    """Fuse adjacent vowel pairs into bracketed compound symbols.

    Pairing is greedy from the left, so ``aei`` gives ``[ae]i``.  With
    ``scope="iu-only"`` a pair fuses only if one member is i or u.
    """
    if scope not in ("all", "iu-only"):
        raise ParameterError(f"unknown diphthong scope {scope!r}")
    s = p.text
    out = []
    k = 0
    while k < len(s):
        a = s[k]
        b = s[k + 1] if k + 1 < len(s) else ""
        if a in VOWELS and b in VOWELS and (scope == "all" or "i" in (a, b) or "u" in (a, b)):
            out.append(f"[{a}{b}]")
            k += 2
        else:
            out.append(a)
            k += 1
    return PhonemeString("".join(out), p.mode)


def merge_symbols(counts: Mapping[str, int], group: Iterable[str]) -> Counter:
    """Sum the counts of ``group`` under one label like ``t+d``."""
    group = list(dict.fromkeys(group))
    if len(group) < 2:
        raise ParameterError("merge group needs at least two distinct symbols")
    merged = Counter({s: c for s, c in counts.items() if s not in group})
    total = sum(counts.get(s, 0) for s in group)
    if total:
        merged["+".join(group)] = total
    return merged


def transform(p: PhonemeString, hypothesis: Hypothesis) -> PhonemeString:
    """Apply the string-level part of ``hypothesis`` to phonemized text."""
    kind = hypothesis.kind
    if kind in (Kind.IDENTITY, Kind.MERGE):
        return p
    if kind is Kind.W_SPLIT:
        return split_w(p)
    if kind is Kind.WJ_SPLIT:
        return split_j(split_w(p))
    if kind is Kind.WJ_SPLIT_DIACRITIC:
        return split_j(split_w(p), diacritic_aware=True)
    if kind is Kind.DIPHTHONGS_ALL:
        return group_diphthongs(p, "all")
    if kind is Kind.DIPHTHONGS_IU:
        return group_diphthongs(p, "iu-only")
    raise ParameterError(f"{kind.value} has no string-level transform")


def evaluate(
    doc: CorpusDocument,
    hypothesis: Hypothesis,
    rules: RuleSet | None = None,
    diacritic_rules: RuleSet | None = None,
    diacritics: bool = False,
) -> Counter:
    """Symbol counts of ``doc`` under ``hypothesis``.

    ``rules`` and ``diacritic_rules`` default to the builtin reference
    sets.  The accent-preserving set is used for the diacritic /j/ split,
    and for every other transducer-based hypothesis when ``diacritics``
    is on.
    """
    if hypothesis.kind is Kind.RAW_LETTERS:
        return count_symbols(normalize(doc, DiacriticMode.STRIP))
    if diacritics or hypothesis.kind is Kind.WJ_SPLIT_DIACRITIC:
        rs = diacritic_rules or builtin_rules("reference-diacritic")
    else:
        rs = rules or builtin_rules("reference")
    p = transform(apply_rules(normalize(doc, rs.mode), rs), hypothesis)
    if p.mode is DiacriticMode.PRESERVE_I_ACUTE:
        p = fold_acute(p)
    counts = count_symbols(p)
    if hypothesis.kind is Kind.MERGE:
        counts = merge_symbols(counts, hypothesis.params)
    return counts
