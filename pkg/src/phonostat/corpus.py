"""Loading, normalizing and aggregating Spanish text corpora.

Normalization produces a uniform symbol stream: lower-case letters,
``ñ`` and ``ü`` (plus ``í`` when acute accents on *i* are preserved),
with every run of anything else collapsed into one space.  The stream
always starts and ends with a space so boundary rules see every word
edge the same way.
"""

from __future__ import annotations

import enum
import re
import string
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyCorpusError

BASE_LETTERS = frozenset(string.ascii_lowercase)

_TILDE = "\u0303"
_DIAERESIS = "\u0308"
_ACUTE = "\u0301"
_SPACES = re.compile(" +")


class DiacriticMode(str, enum.Enum):
    STRIP = "strip-all-diacritics"
    PRESERVE_I_ACUTE = "preserve-i-acute"

    @classmethod
    def from_flag(cls, on: bool) -> "DiacriticMode":
        return cls.PRESERVE_I_ACUTE if on else cls.STRIP


def alphabet(mode: DiacriticMode) -> frozenset[str]:
    """Letters that may appear in normalized text for ``mode`` (space excluded)."""
    letters = BASE_LETTERS | {"ñ", "ü"}
    if mode is DiacriticMode.PRESERVE_I_ACUTE:
        letters = letters | {"í"}
    return letters


@dataclass(frozen=True)
class CorpusDocument:
    id: str
    raw_text: str
    char_count: int = field(init=False, compare=False)

    def __post_init__(self):
        try:
            n = sum(1 for c in normalize_text(self.raw_text) if c != " ")
        except EmptyCorpusError:
            n = 0
        object.__setattr__(self, "char_count", n)


@dataclass(frozen=True)
class NormalizedText:
    text: str
    mode: DiacriticMode = DiacriticMode.STRIP

    def __str__(self):
        return self.text


def _clusters(decomposed: str):
    """Yield (base, marks) pairs from an NFD string."""
    base, marks = None, []
    for ch in decomposed:
        if unicodedata.combining(ch):
            marks.append(ch)
            continue
        if base is not None or marks:
            yield base, marks
        base, marks = ch, []
    if base is not None or marks:
        yield base, marks


def _fold(base: str | None, marks: list[str], mode: DiacriticMode) -> str:
    if base is None or base not in BASE_LETTERS:
        return " "
    if base == "n" and _TILDE in marks:
        return "ñ"
    if base == "u" and _DIAERESIS in marks:
        return "ü"
    if base == "i" and _ACUTE in marks and mode is DiacriticMode.PRESERVE_I_ACUTE:
        return "í"
    return base


def normalize_text(raw: str, mode: DiacriticMode = DiacriticMode.STRIP) -> str:
    """Return the normalized form of ``raw`` as a plain string."""
    decomposed = unicodedata.normalize("NFD", unicodedata.normalize("NFC", raw).lower())
    folded = "".join(_fold(b, m, mode) for b, m in _clusters(decomposed))
    body = _SPACES.sub(" ", folded).strip()
    if not body:
        raise EmptyCorpusError("corpus contains no alphabetic characters")
    return f" {body} "


def normalize(doc: CorpusDocument | str, mode: DiacriticMode = DiacriticMode.STRIP) -> NormalizedText:
    raw = doc.raw_text if isinstance(doc, CorpusDocument) else doc
    return NormalizedText(normalize_text(raw, mode), DiacriticMode(mode))


def aggregate(docs: Sequence[CorpusDocument]) -> CorpusDocument:
    """Concatenate documents with a single separating space.

    Symbol counts of the result equal the sum of per-document counts,
    since the separator is a word boundary.
    """
    docs = list(docs)
    if not docs:
        raise EmptyCorpusError("cannot aggregate an empty document list")
    if len(docs) == 1:
        return docs[0]
    return CorpusDocument(
        id="+".join(d.id for d in docs),
        raw_text=" ".join(d.raw_text for d in docs),
    )


def read_document(path: str | Path, doc_id: str | None = None) -> CorpusDocument:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return CorpusDocument(id=doc_id or path.name, raw_text=unicodedata.normalize("NFC", text))


def read_manifest(path: str | Path) -> list[Path]:
    """Parse a manifest: one path per line, ``#`` comments and blank lines skipped.

    Relative paths are resolved against the manifest's directory.
    """
    path = Path(path)
    root = path.parent
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        p = Path(line)
        entries.append(p if p.is_absolute() else root / p)
    return entries


def load_corpus(paths: Iterable[str | Path]) -> list[CorpusDocument]:
    docs = []
    seen: dict[str, int] = {}
    for p in paths:
        doc = read_document(p)
        # ids must be unique within a collection
        n = seen.get(doc.id, 0)
        seen[doc.id] = n + 1
        if n:
            doc = CorpusDocument(id=f"{doc.id}#{n + 1}", raw_text=doc.raw_text)
        docs.append(doc)
    return docs
