"""Ordered, boundary-aware string rewriting.

A rule set is a list of ``lhs -> rhs`` rewrites.  Rules run strictly in
order and each one replaces every non-overlapping occurrence (scanning
left to right) before the next rule sees the text.  ``_`` stands for
the single space that normalization puts at every word edge.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import DiacriticMode, NormalizedText, alphabet
from .errors import EmptyCorpusError, ModeMismatchError, RuleParseError

BOUNDARY = "_"
BUILTIN_RULESETS = {
    "reference": "reference.rules",
    "reference-diacritic": "reference_diacritic.rules",
}

# a bracketed compound ("[ie]") counts as one symbol
_TOKEN = re.compile(r"\[[^\]\s]+\]|\S")


class UnknownSymbolWarning(UserWarning):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: str
    rhs: str
    index: int = 0

    def __post_init__(self):
        if not self.lhs:
            raise RuleParseError("empty left-hand side")

    @property
    def pattern(self) -> str:
        return self.lhs.replace(BOUNDARY, " ")

    @property
    def replacement(self) -> str:
        return self.rhs.replace(BOUNDARY, " ")

    def apply(self, text: str) -> str:
        return text.replace(self.pattern, self.replacement)

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}".rstrip()


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: tuple[RewriteRule, ...]
    mode: DiacriticMode = DiacriticMode.STRIP

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def output_symbols(self) -> frozenset[str]:
        """Symbols that may appear after this rule set has run."""
        produced = {c for r in self.rules for c in r.replacement if c != " "}
        return alphabet(self.mode) | produced


@dataclass(frozen=True)
class PhonemeString:
    text: str
    mode: DiacriticMode = DiacriticMode.STRIP

    def __str__(self):
        return self.text

    def symbols(self) -> list[str]:
        return [t.strip("[]") if len(t) > 1 else t for t in _TOKEN.findall(self.text)]


def parse_rule_file(src: str, name: str = "custom", mode: DiacriticMode | None = None) -> RuleSet:
    """Parse rule-file text.

    Format: one ``lhs -> rhs`` per line; ``#`` starts a comment line,
    blank lines are skipped, an empty rhs means deletion.  A line
    ``@mode preserve-i-acute`` sets the diacritic mode the rules expect.
    """
    rules = []
    file_mode = None
    for lineno, raw in enumerate(src.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, value = line[1:].partition(" ")
            if key != "mode":
                raise RuleParseError(f"unknown directive @{key}", lineno)
            try:
                file_mode = DiacriticMode(value.strip())
            except ValueError:
                raise RuleParseError(f"unknown mode {value.strip()!r}", lineno) from None
            continue
        if line.count("->") != 1:
            raise RuleParseError(f"expected 'lhs -> rhs', got {raw!r}", lineno)
        lhs, rhs = (part.strip() for part in line.split("->"))
        if not lhs:
            raise RuleParseError("empty left-hand side", lineno)
        if any(c.isspace() for c in lhs + rhs):
            raise RuleParseError("whitespace inside a rule side; use '_' for a boundary", lineno)
        rules.append(RewriteRule(lhs, rhs, index=len(rules) + 1))
    return RuleSet(name, tuple(rules), mode or file_mode or DiacriticMode.STRIP)


def load_rules(path: str | Path) -> RuleSet:
    path = Path(path)
    return parse_rule_file(path.read_text(encoding="utf-8"), name=path.stem)


def builtin_rules(name: str = "reference") -> RuleSet:
    try:
        filename = BUILTIN_RULESETS[name]
    except KeyError:
        raise KeyError(f"no builtin rule set {name!r}; choose from {sorted(BUILTIN_RULESETS)}") from None
    src = resources.files("phonostat.rules").joinpath(filename).read_text(encoding="utf-8")
    return parse_rule_file(src, name=name)


def apply_rules(text: NormalizedText, rules: RuleSet) -> PhonemeString:
    if text.mode != rules.mode:
        raise ModeMismatchError(f"text is {text.mode.value} but rule set {rules.name!r} expects {rules.mode.value}")
    unknown = set(text.text) - alphabet(text.mode) - {" "}
    if unknown:
        warnings.warn(f"passing through unknown symbols: {''.join(sorted(unknown))}", UnknownSymbolWarning, stacklevel=2)
    s = text.text
    for rule in rules:
        s = rule.apply(s)
    return PhonemeString(s, text.mode)


def fold_acute(p: PhonemeString) -> PhonemeString:
    """Rewrite í to i; the last step of the diacritic-aware pipeline."""
    return PhonemeString(p.text.replace("í", "i"), DiacriticMode.STRIP)


def count_symbols(p: PhonemeString | NormalizedText | str) -> Counter:
    text = p if isinstance(p, str) else p.text
    counts = Counter(PhonemeString(text).symbols())
    if not counts:
        raise EmptyCorpusError("no symbols to count")
    return counts


def lint_rules(rules: RuleSet) -> list[str]:
    """Report rules that cannot fire on normalized input or look shadowed."""
    reachable = alphabet(rules.mode) | {" "}
    problems = []
    seen: dict[str, int] = {}
    for rule in rules:
        where = f"rule {rule.index} ({rule})"
        if rule.lhs in seen:
            problems.append(f"{where}: duplicate of rule {seen[rule.lhs]}")
        seen.setdefault(rule.lhs, rule.index)
        foreign = set(rule.pattern) - reachable
        if foreign:
            problems.append(f"{where}: never matches, normalization removes {''.join(sorted(foreign))!r}")
        for earlier in rules.rules[: rule.index - 1]:
            if earlier.lhs != rule.lhs and earlier.pattern in rule.pattern and earlier.pattern not in earlier.replacement:
                problems.append(f"{where}: contains {earlier.lhs!r}, already rewritten by rule {earlier.index}")
                break
    return problems
