"""Walk through ingestion: raw rows -> normalized reviews -> stratified split.

Run from the repository root:  python demos/01_clean_and_split.py
"""

from sentimen.corpus import (
    RawRecord,
    class_counts,
    clean_corpus,
    preprocess_text,
    split_manifest_lines,
    stratified_split,
)

# The five normalization steps in action: case-folding, URL removal,
# punctuation/emoji stripping, whitespace collapsing, trimming.
samples = [
    "Barang BAGUS!!! cek https://toko.id/x \U0001F44D\U0001F44D",
    "pengiriman LAMBAT... kecewa berat :(",
    "www.tokosebelah.id lebih murah 2x",
    "!!!",  # cleans to nothing -> dropped from the corpus
]
print("-- preprocessing --")
for raw in samples:
    print(f"{raw!r:58} -> {preprocess_text(raw)!r}")

# clean_corpus validates labels (case-insensitively) and drops empty rows.
records = [
    RawRecord("Barang BAGUS!!!", "positif"),
    RawRecord("lambat & kecewa", "Negative"),
    RawRecord("standar saja", "NEU"),
    RawRecord("!!!", "netral"),
]
reviews, dropped = clean_corpus(records)
print(f"\n-- clean_corpus -- kept {len(reviews)}, dropped {dropped}")
for r in reviews:
    print(f"  {r.label.canonical_name}: {r.text}")

# The split is seeded and class-stratified; per-class test counts follow
# round-half-up of n_c * fraction, so reruns with one seed are identical.
reviews = reviews * 10  # 30 reviews, 10 per class
split = stratified_split(reviews, test_fraction=0.2, seed=42)
print("\n-- stratified split (fraction 0.2, seed 42) --")
print("train per class:", dict(zip(("Negatif", "Netral", "Positif"), class_counts(split.train))))
print("test per class: ", dict(zip(("Negatif", "Netral", "Positif"), class_counts(split.test))))
print("first manifest lines:", split_manifest_lines(split)[:5])

again = stratified_split(reviews, test_fraction=0.2, seed=42)
print("same seed reproduces the split:", split.test_indices == again.test_indices)
