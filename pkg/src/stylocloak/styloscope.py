"""Lexical stylometry: feature extraction and Burrows' Delta attribution.

The feature battery covers character n-gram TF-IDF, special-character
TF-IDF, function-word frequencies per 1000 tokens, token-length statistics,
and a hapax/dis legomena vocabulary-richness ratio.  Burrows' Delta ranks
candidate authorship by the mean absolute difference of function-word
frequency z-scores; low values suggest the same author.

Zero-width payloads are deliberately visible to this module by default:
the tokenizer treats invisible code points as token boundaries, and raw
character n-grams pick them up directly.  Passing ``strip=True`` removes
them before any measurement, which models an analysis pipeline that
sanitizes its input first.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
import string
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .zwcodec import strip_zero_width

_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")

#: Symbols counted by special-character TF-IDF: ASCII punctuation plus a few
#: mathematical symbols occasionally used as stylistic flourishes.
DEFAULT_SPECIAL_CHARS = frozenset(string.punctuation) | frozenset("∃Δ∞∀∅")


class InvalidRange(ValueError):
    """An n-gram range with n_min < 1 or n_max < n_min."""


class InsufficientCorpus(ValueError):
    """The reference corpus cannot support a Delta computation."""


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; apostrophes internal to words are retained."""
    return _TOKEN.findall(text.lower())


def default_function_words() -> list[str]:
    """The bundled 175-word English function-word list, in file order."""
    data = resources.files("stylocloak").joinpath("data/function_words.txt")
    return [w for w in data.read_text(encoding="utf-8").splitlines() if w]


@dataclass
class Document:
    """A text unit with an optional author label and cached tokenizations."""

    id: str
    text: str
    author: str | None = None
    _token_cache: dict[bool, list[str]] = field(
        default_factory=dict, repr=False, compare=False
    )

    def tokens(self, strip: bool = False) -> list[str]:
        cached = self._token_cache.get(strip)
        if cached is None:
            text = strip_zero_width(self.text)[0] if strip else self.text
            cached = self._token_cache[strip] = tokenize(text)
        return cached

    def view_text(self, strip: bool = False) -> str:
        return strip_zero_width(self.text)[0] if strip else self.text


@dataclass
class Corpus:
    """A collection of documents, grouped by author label on demand."""

    documents: list[Document]

    @property
    def authors(self) -> list[str]:
        return sorted({d.author for d in self.documents if d.author is not None})

    def by_author(self) -> dict[str, list[Document]]:
        grouped: dict[str, list[Document]] = {}
        for doc in self.documents:
            if doc.author is not None:
                grouped.setdefault(doc.author, []).append(doc)
        return grouped

    def content_hash(self) -> str:
        digest = hashlib.sha256()
        for doc in sorted(self.documents, key=lambda d: d.id):
            digest.update(doc.id.encode("utf-8"))
            digest.update(b"\x00")
            digest.update(doc.text.encode("utf-8"))
            digest.update(b"\x00")
        return digest.hexdigest()


def load_corpus(root) -> Corpus:
    """Load ``<root>/<author>/<doc>.txt`` into a labeled corpus."""
    root = Path(root)
    documents = []
    for author_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for doc_path in sorted(author_dir.glob("*.txt")):
            documents.append(
                Document(
                    id=f"{author_dir.name}/{doc_path.name}",
                    text=doc_path.read_text(encoding="utf-8"),
                    author=author_dir.name,
                )
            )
    if not documents:
        raise InsufficientCorpus(f"no author/*.txt documents under {root}")
    return Corpus(documents)


def _tfidf(per_doc_counts: dict[str, Counter], n_docs: int) -> dict[str, dict[str, float]]:
    """count(term, doc) * ln(N / df(term)); zero weights are omitted."""
    df: Counter = Counter()
    for counts in per_doc_counts.values():
        df.update(counts.keys())
    vectors = {}
    for doc_id, counts in per_doc_counts.items():
        vec = {}
        for term, count in counts.items():
            idf = math.log(n_docs / df[term])
            if idf > 0.0:
                vec[term] = count * idf
        vectors[doc_id] = vec
    return vectors


def char_ngram_tfidf(
    corpus: Corpus,
    n_min: int = 2,
    n_max: int = 4,
    strip: bool = False,
) -> dict[str, dict[str, float]]:
    """TF-IDF weighted character n-grams over raw lowercased text.

    N-grams are drawn from the unsegmented text, spaces included, so they
    capture spelling quirks and inter-word transitions alike.
    """
    if n_min < 1 or n_max < n_min:
        raise InvalidRange(f"invalid n-gram range [{n_min}, {n_max}]")
    if not corpus.documents:
        raise InsufficientCorpus("empty corpus")
    per_doc = {}
    for doc in corpus.documents:
        text = doc.view_text(strip).lower()
        counts: Counter = Counter()
        for n in range(n_min, n_max + 1):
            for i in range(len(text) - n + 1):
                counts[text[i : i + n]] += 1
        per_doc[doc.id] = counts
    return _tfidf(per_doc, len(corpus.documents))


def special_char_tfidf(
    corpus: Corpus,
    symbols: frozenset[str] = DEFAULT_SPECIAL_CHARS,
    strip: bool = False,
) -> dict[str, dict[str, float]]:
    """TF-IDF over single special characters from a predetermined set."""
    if not symbols:
        raise ValueError("symbol set must be non-empty")
    per_doc = {}
    for doc in corpus.documents:
        text = doc.view_text(strip)
        per_doc[doc.id] = Counter(c for c in text if c in symbols)
    return _tfidf(per_doc, len(corpus.documents))


def function_word_frequencies(
    doc: Document,
    function_words: list[str] | None = None,
    strip: bool = False,
) -> dict[str, float]:
    """Occurrences per 1000 tokens for every word on the function-word list."""
    words = function_words if function_words is not None else default_function_words()
    if not words:
        raise ValueError("function-word list must be non-empty")
    tokens = doc.tokens(strip)
    if not tokens:
        return {w: 0.0 for w in words}
    counts = Counter(tokens)
    scale = 1000.0 / len(tokens)
    return {w: counts.get(w, 0) * scale for w in words}


def token_length_stats(
    doc: Document, strip: bool = False
) -> tuple[float, dict[int, float]]:
    """Mean code points per token, and the token-length distribution."""
    tokens = doc.tokens(strip)
    if not tokens:
        return 0.0, {}
    lengths = Counter(len(t) for t in tokens)
    total = len(tokens)
    histogram = {n: c / total for n, c in sorted(lengths.items())}
    avg = sum(len(t) for t in tokens) / total
    return avg, histogram


def vocabulary_richness(doc: Document, strip: bool = False) -> float:
    """(hapax legomena / dis legomena) / token count; empty text scores 0.

    With no dis legomena the denominator is taken as 1, keeping the ratio
    finite for texts that never repeat a word exactly twice.
    """
    tokens = doc.tokens(strip)
    if not tokens:
        return 0.0
    counts = Counter(tokens)
    hapax = sum(1 for c in counts.values() if c == 1)
    dis = sum(1 for c in counts.values() if c == 2)
    return (hapax / (dis or 1)) / len(tokens)


@dataclass(frozen=True)
class FeatureVector:
    """The per-document lexical feature bundle."""

    char_ngram_tfidf: dict[str, float]
    special_char_tfidf: dict[str, float]
    function_word_freq: dict[str, float]
    avg_chars_per_token: float
    token_length_histogram: dict[int, float]
    vocab_richness: float


def extract_feature_vectors(
    corpus: Corpus,
    n_min: int = 2,
    n_max: int = 4,
    symbols: frozenset[str] = DEFAULT_SPECIAL_CHARS,
    function_words: list[str] | None = None,
    strip: bool = False,
) -> dict[str, FeatureVector]:
    """Compute the full feature battery for every document in the corpus."""
    ngrams = char_ngram_tfidf(corpus, n_min, n_max, strip)
    specials = special_char_tfidf(corpus, symbols, strip)
    vectors = {}
    for doc in corpus.documents:
        avg, histogram = token_length_stats(doc, strip)
        vectors[doc.id] = FeatureVector(
            char_ngram_tfidf=ngrams[doc.id],
            special_char_tfidf=specials[doc.id],
            function_word_freq=function_word_frequencies(doc, function_words, strip),
            avg_chars_per_token=avg,
            token_length_histogram=histogram,
            vocab_richness=vocabulary_richness(doc, strip),
        )
    return vectors


@dataclass(frozen=True)
class DeltaReport:
    """Burrows' Delta per author, with the derived probability ranking."""

    deltas: dict[str, float]
    probabilities: dict[str, float]
    function_words_used: list[str]
    z_scores: dict[str, dict[str, float]]

    def best_author(self) -> str:
        return min(self.deltas, key=lambda a: (self.deltas[a], a))

    def to_json(self) -> str:
        return json.dumps(
            {
                "deltas": self.deltas,
                "probabilities": self.probabilities,
                "function_words_used": self.function_words_used,
            },
            sort_keys=True,
        )


def _per_1000(counts: Counter, total: int, word: str) -> float:
    if total == 0:
        return 0.0
    return counts.get(word, 0) * 1000.0 / total


def burrows_delta(
    reference: Corpus,
    candidate: Document,
    k: int = 50,
    function_words: list[str] | None = None,
    strip: bool = False,
) -> DeltaReport:
    """Burrows' Delta of the candidate against each reference author.

    The k most frequent function words across the whole reference corpus
    form the word axis.  Each word's per-1000 frequency is measured in every
    reference document to obtain a corpus-wide mean and population standard
    deviation; author profiles (concatenated subcorpora) and the candidate
    are then z-scored against those statistics.  Delta(author) is the mean
    absolute z-score difference over the axis, skipping words with zero
    variance.
    """
    words = function_words if function_words is not None else default_function_words()
    if k < 1:
        raise ValueError("k must be >= 1")
    grouped = reference.by_author()
    if not grouped:
        raise InsufficientCorpus("reference corpus has no labeled authors")
    if len(reference.documents) < 2:
        raise InsufficientCorpus("reference corpus needs at least 2 documents")
    if any(doc.author is None for doc in reference.documents):
        raise InsufficientCorpus("every reference document needs an author label")

    doc_tokens = [doc.tokens(strip) for doc in reference.documents]
    doc_counts = [Counter(tokens) for tokens in doc_tokens]
    total_counts: Counter = Counter()
    for counts in doc_counts:
        total_counts.update(counts)

    ranked = sorted(words, key=lambda w: (-total_counts.get(w, 0), w))
    axis = ranked[:k]

    freq_matrix = np.array(
        [
            [_per_1000(counts, len(tokens), w) for w in axis]
            for counts, tokens in zip(doc_counts, doc_tokens)
        ]
    )
    means = freq_matrix.mean(axis=0)
    stds = freq_matrix.std(axis=0)  # population std: duplicating docs is a no-op
    usable = stds > 0.0
    if not usable.any():
        raise InsufficientCorpus("no function-word variation across documents")

    kept = [w for w, u in zip(axis, usable) if u]
    means = means[usable]
    stds = stds[usable]

    def profile_z(tokens: list[str]) -> np.ndarray:
        counts = Counter(tokens)
        freqs = np.array([_per_1000(counts, len(tokens), w) for w in kept])
        return (freqs - means) / stds

    cand_z = profile_z(candidate.tokens(strip))
    deltas = {}
    z_scores = {"candidate": dict(zip(kept, cand_z.tolist()))}
    for author, docs in sorted(grouped.items()):
        author_tokens = [t for doc in docs for t in doc.tokens(strip)]
        author_z = profile_z(author_tokens)
        deltas[author] = float(np.mean(np.abs(author_z - cand_z)))
        z_scores[author] = dict(zip(kept, author_z.tolist()))

    return DeltaReport(
        deltas=deltas,
        probabilities=author_probabilities(deltas),
        function_words_used=kept,
        z_scores=z_scores,
    )


def author_probabilities(deltas: dict[str, float]) -> dict[str, float]:
    """Softmax over negative deltas: lower Delta, higher probability."""
    if not deltas:
        raise ValueError("deltas must be non-empty")
    if any(not math.isfinite(d) for d in deltas.values()):
        raise ValueError("deltas must be finite")
    top = max(-d for d in deltas.values())
    weights = {a: math.exp(-d - top) for a, d in deltas.items()}
    norm = sum(weights.values())
    return {a: w / norm for a, w in weights.items()}
