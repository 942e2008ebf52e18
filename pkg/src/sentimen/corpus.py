"""Corpus ingestion: CSV loading, text normalization, label mapping, seeded splits.

The normalization pipeline applies, in order:

1. Unicode case-fold.
2. Delete URL spans (``http://``, ``https://`` or ``www.`` up to the next
   whitespace).
3. Replace every character that is not a Unicode letter or an ASCII digit
   with a single space.  Replacement (rather than deletion) keeps
   ``"bagus!murah"`` as two words.  Digits glued to letters ("2x", "100rb")
   survive this step and stay in the text.
4. Collapse whitespace runs to one space.
5. Trim leading/trailing space.

The stratified split is pinned to an explicit generator (splitmix64 driving a
Fisher-Yates shuffle) so that a given ``(corpus, fraction, seed)`` produces a
bit-identical partition in any implementation.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from enum import IntEnum

from .errors import (
    EmptyCorpusError,
    MalformedRowError,
    MissingColumnError,
    UnknownLabelError,
)


class SentimentLabel(IntEnum):
    """The three sentiment classes with stable ordinal codes."""

    NEGATIF = 0
    NETRAL = 1
    POSITIF = 2

    @property
    def canonical_name(self) -> str:
        return CLASS_NAMES[self.value]


#: Display names indexed by class ordinal.
CLASS_NAMES = ("Negatif", "Netral", "Positif")
N_CLASSES = 3

#: Default label map: Indonesian and English spellings, case-insensitive.
DEFAULT_LABEL_MAP = {
    "positif": SentimentLabel.POSITIF,
    "positive": SentimentLabel.POSITIF,
    "pos": SentimentLabel.POSITIF,
    "netral": SentimentLabel.NETRAL,
    "neutral": SentimentLabel.NETRAL,
    "neu": SentimentLabel.NETRAL,
    "negatif": SentimentLabel.NEGATIF,
    "negative": SentimentLabel.NEGATIF,
    "neg": SentimentLabel.NEGATIF,
}


@dataclass
class RawRecord:
    """One CSV data row before any cleaning."""

    text: str
    label_raw: str


@dataclass
class Review:
    """One normalized review with its canonical label."""

    text: str
    label: SentimentLabel


TEXT_COLUMN = "review_text"
LABEL_COLUMN = "label"


def load_csv(path) -> list[RawRecord]:
    """Read raw records from an RFC-4180 CSV file.

    The header must contain ``review_text`` and ``label`` columns (any order,
    extra columns ignored).  Raises :class:`MissingColumnError` when a required
    column is absent and :class:`MalformedRowError` (with the 0-based data-row
    index) when a row cannot be parsed.
    """
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh, strict=True)
        try:
            header = next(reader, None)
        except csv.Error as exc:
            raise MalformedRowError(0, str(exc)) from exc
        if header is None:
            raise MissingColumnError(TEXT_COLUMN)
        names = [h.strip() for h in header]
        for required in (TEXT_COLUMN, LABEL_COLUMN):
            if required not in names:
                raise MissingColumnError(required)
        text_at = names.index(TEXT_COLUMN)
        label_at = names.index(LABEL_COLUMN)
        needed = max(text_at, label_at)

        records = []
        while True:
            try:
                row = next(reader, None)
            except csv.Error as exc:
                raise MalformedRowError(len(records), str(exc)) from exc
            if row is None:
                break
            if len(row) <= needed:
                raise MalformedRowError(len(records), f"expected at least {needed + 1} cells, got {len(row)}")
            records.append(RawRecord(text=row[text_at], label_raw=row[label_at]))
        return records


_URL_RE = re.compile(r"(?:https?://|www\.)\S*")
_ASCII_DIGITS = frozenset("0123456789")


def preprocess_text(raw: str) -> str:
    """Normalize one text through the five-step pipeline.

    Total function: any UTF-8 string in, possibly-empty normalized string out.
    Idempotent on its own output.
    """
    text = raw.casefold()
    text = _URL_RE.sub("", text)
    kept = [ch if (ch.isalpha() or ch in _ASCII_DIGITS) else " " for ch in text]
    return " ".join("".join(kept).split())


def map_label(raw: str, label_map=None) -> SentimentLabel:
    """Resolve a source label token case-insensitively, stripping edge spaces."""
    if label_map is None:
        label_map = DEFAULT_LABEL_MAP
    token = raw.strip().casefold()
    try:
        return label_map[token]
    except KeyError:
        raise UnknownLabelError(raw) from None


def clean_corpus(records, label_map=None) -> tuple[list[Review], int]:
    """Normalize and label every record, dropping rows that clean to nothing.

    Labels are validated on every row, including rows whose text ends up
    empty; silently skipping a bad label would skew the class counts that feed
    the balanced weights.  Returns ``(reviews, dropped_count)`` with survivor
    order preserved.
    """
    reviews = []
    dropped = 0
    for i, rec in enumerate(records):
        try:
            label = map_label(rec.label_raw, label_map)
        except UnknownLabelError as exc:
            raise UnknownLabelError(exc.token, row_index=i) from None
        text = preprocess_text(rec.text)
        if not text:
            dropped += 1
            continue
        reviews.append(Review(text=text, label=label))
    return reviews, dropped


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Public-domain splitmix64 generator, pinned for reproducible shuffles."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def fisher_yates(items: list, rng: SplitMix64) -> list:
    """Shuffle a copy of ``items`` with the classic descending swap pass.

    Index j is drawn as ``next_uint64() % (i + 1)``; the modulo bias is
    negligible for corpus-sized inputs and keeps the algorithm portable.
    """
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.next_uint64() % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


@dataclass
class DatasetSplit:
    """A stratified train/test partition of a review list."""

    train: list[Review]
    test: list[Review]
    seed: int
    test_fraction: float
    train_indices: list[int] = field(default_factory=list)
    test_indices: list[int] = field(default_factory=list)


def stratified_split(reviews, test_fraction: float, seed: int) -> DatasetSplit:
    """Partition reviews per class with a seeded, reproducible shuffle.

    For each class the member indices (in corpus order) are shuffled by a
    splitmix64-driven Fisher-Yates pass seeded with ``seed XOR ordinal``; the
    first ``round_half_up(n_c * test_fraction)`` go to the test side.  Output
    lists are ordered by original corpus index.
    """
    if not reviews:
        raise EmptyCorpusError("cannot split an empty corpus")
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")

    test_idx: list[int] = []
    for ordinal in range(N_CLASSES):
        members = [i for i, r in enumerate(reviews) if int(r.label) == ordinal]
        if not members:
            continue
        rng = SplitMix64(seed ^ ordinal)
        shuffled = fisher_yates(members, rng)
        n_test = int(math.floor(len(members) * test_fraction + 0.5))
        test_idx.extend(shuffled[:n_test])

    test_set = set(test_idx)
    train_indices = [i for i in range(len(reviews)) if i not in test_set]
    test_indices = sorted(test_set)
    return DatasetSplit(
        train=[reviews[i] for i in train_indices],
        test=[reviews[i] for i in test_indices],
        seed=seed,
        test_fraction=test_fraction,
        train_indices=train_indices,
        test_indices=test_indices,
    )


def split_manifest_lines(split: DatasetSplit) -> list[str]:
    """Render the split as ``index<TAB>train|test`` lines in index order."""
    side = {}
    for i in split.train_indices:
        side[i] = "train"
    for i in split.test_indices:
        side[i] = "test"
    return [f"{i}\t{side[i]}" for i in sorted(side)]


def class_counts(reviews) -> list[int]:
    """Count reviews per class ordinal."""
    counts = [0] * N_CLASSES
    for r in reviews:
        counts[int(r.label)] += 1
    return counts
