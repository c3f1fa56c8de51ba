"""Corpus ingestion and the count statistics consumed by the weighting metrics.

A corpus is a list of labeled, tokenized documents together with the class
set and a vocabulary of 1-based term indices assigned in first-occurrence
order.  :func:`compute_counts` derives every document- and token-level count
the supervised metrics need; :func:`probabilities` exposes the plain
maximum-likelihood ratios (no smoothing happens at this layer).
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .tokenizer import TokenizerConfig, tokenize


class CorpusError(ValueError):
    """Malformed input records or an unusable (empty) corpus."""


@dataclass(frozen=True)
class LabeledDocument:
    label: str
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    """Retained documents plus the class set and vocabulary they induce.

    ``classes`` and ``vocabulary`` follow first-occurrence order over the
    ingestion stream, so identical input yields identical indices.
    ``n_dropped_empty`` tallies records whose text tokenized to nothing.
    """

    documents: tuple[LabeledDocument, ...]
    classes: tuple[str, ...]
    vocabulary: dict[str, int]  # term -> 1-based index
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    n_dropped_empty: int = 0

    @property
    def n_docs(self) -> int:
        return len(self.documents)

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(self.vocabulary)


def ingest_corpus(
    records: Iterable[tuple[str, str]],
    config: TokenizerConfig = TokenizerConfig(),
) -> Corpus:
    """Tokenize ``(label, text)`` records into a :class:`Corpus`.

    Documents whose token list comes out empty are dropped and counted in
    ``n_dropped_empty``.  Raises :class:`CorpusError` for a record with an
    empty or whitespace-containing label, or when nothing is retained.
    """
    documents: list[LabeledDocument] = []
    classes: dict[str, None] = {}
    vocabulary: dict[str, int] = {}
    dropped = 0
    for i, (label, text) in enumerate(records, 1):
        label = (label or "").strip()
        if not label:
            raise CorpusError(f"record {i}: missing label")
        if any(ch.isspace() for ch in label):
            raise CorpusError(f"record {i}: label {label!r} contains whitespace")
        tokens = tokenize(text, config)
        if not tokens:
            dropped += 1
            continue
        documents.append(LabeledDocument(label, text, tuple(tokens)))
        classes.setdefault(label)
        for term in tokens:
            if term not in vocabulary:
                vocabulary[term] = len(vocabulary) + 1
    if not documents:
        raise CorpusError("no documents retained: every record was empty or dropped")
    return Corpus(tuple(documents), tuple(classes), vocabulary, config, dropped)


def read_tsv_records(path: str) -> Iterator[tuple[str, str]]:
    """Yield ``(label, text)`` from a ``label<TAB>text`` file.

    Lines starting with ``#`` and blank lines are skipped.  Raises
    :class:`CorpusError` naming the offending line number otherwise.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            if "\t" not in line:
                raise CorpusError(f"{path}:{lineno}: expected label<TAB>text")
            label, text = line.split("\t", 1)
            if not label.strip():
                raise CorpusError(f"{path}:{lineno}: missing label")
            yield label, text


def read_jsonl_records(path: str) -> Iterator[tuple[str, str]]:
    """Yield ``(label, text)`` from JSON-lines objects with those fields."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}:{lineno}: expected a JSON object")
            label, text = obj.get("label"), obj.get("text")
            if not isinstance(label, str) or not label.strip():
                raise CorpusError(f"{path}:{lineno}: missing label")
            if not isinstance(text, str):
                raise CorpusError(f"{path}:{lineno}: missing text")
            yield label, text


def load_corpus(
    path: str,
    config: TokenizerConfig = TokenizerConfig(),
    fmt: str = "auto",
) -> Corpus:
    """Read a corpus file (``tsv`` or ``jsonl``; ``auto`` by extension)."""
    if fmt == "auto":
        fmt = "jsonl" if str(path).endswith((".jsonl", ".json")) else "tsv"
    if fmt == "tsv":
        records = read_tsv_records(path)
    elif fmt == "jsonl":
        records = read_jsonl_records(path)
    else:
        raise CorpusError(f"unknown corpus format {fmt!r}")
    return ingest_corpus(records, config)


@dataclass(frozen=True)
class CorpusCounts:
    """Document and token totals, overall and per class."""

    n_docs: int
    classes: tuple[str, ...]
    docs_per_class: dict[str, int]
    total_tokens: int
    tokens_per_class: dict[str, int]

    def docs_outside(self, cls: str) -> int:
        return self.n_docs - self.docs_per_class[cls]


@dataclass(frozen=True)
class TermStats:
    """Per-term document and occurrence counts, overall and per class."""

    term: str
    df: int
    tf: int
    df_by_class: dict[str, int]
    tf_by_class: dict[str, int]

    def df_in(self, cls: str) -> int:
        return self.df_by_class.get(cls, 0)

    def df_outside(self, cls: str) -> int:
        return self.df - self.df_in(cls)

    def tf_in(self, cls: str) -> int:
        return self.tf_by_class.get(cls, 0)


def compute_counts(corpus: Corpus) -> tuple[CorpusCounts, dict[str, TermStats]]:
    """Single-pass count of every corpus- and term-level statistic.

    The returned ``dict`` preserves vocabulary order.  The counts satisfy
    the usual partition identities (per-class values sum to the totals)
    and are recomputable by a naive per-document scan.
    """
    if not corpus.documents:
        raise CorpusError("cannot compute counts of an empty corpus")
    docs_per_class = {c: 0 for c in corpus.classes}
    tokens_per_class = {c: 0 for c in corpus.classes}
    df: Counter[str] = Counter()
    tf: Counter[str] = Counter()
    df_by_class: dict[str, Counter[str]] = {c: Counter() for c in corpus.classes}
    tf_by_class: dict[str, Counter[str]] = {c: Counter() for c in corpus.classes}
    total_tokens = 0
    for doc in corpus.documents:
        docs_per_class[doc.label] += 1
        tokens_per_class[doc.label] += len(doc.tokens)
        total_tokens += len(doc.tokens)
        occurrences = Counter(doc.tokens)
        for term, count in occurrences.items():
            df[term] += 1
            tf[term] += count
            df_by_class[doc.label][term] += 1
            tf_by_class[doc.label][term] += count
    counts = CorpusCounts(
        n_docs=corpus.n_docs,
        classes=corpus.classes,
        docs_per_class=docs_per_class,
        total_tokens=total_tokens,
        tokens_per_class=tokens_per_class,
    )
    term_stats = {
        term: TermStats(
            term=term,
            df=df[term],
            tf=tf[term],
            df_by_class={c: df_by_class[c][term] for c in corpus.classes if df_by_class[c][term]},
            tf_by_class={c: tf_by_class[c][term] for c in corpus.classes if tf_by_class[c][term]},
        )
        for term in corpus.vocabulary
    }
    return counts, term_stats


@dataclass(frozen=True)
class ProbabilityView:
    """Maximum-likelihood probability estimates for one (term, class) pair.

    Plain count ratios with no smoothing.  The two estimates conditioned on
    an empty event (``p_c_given_fbar`` when no document lacks the term,
    ``p_f_given_cbar`` when every document belongs to the class) are
    reported as 0.0; callers needing smoothing handle those cases.
    """

    p_c: float
    p_f: float
    p_c_given_f: float
    p_cbar_given_f: float
    p_c_given_fbar: float
    p_c_and_f: float
    p_f_given_c: float
    p_f_given_cbar: float
    p_c_and_fbar: float


def probabilities(
    counts: CorpusCounts, term_counts: TermStats, cls: str
) -> ProbabilityView:
    """MLE probabilities for ``term_counts``'s term and class ``cls``."""
    if cls not in counts.docs_per_class:
        raise CorpusError(f"unknown class {cls!r}")
    n = counts.n_docs
    n_c = counts.docs_per_class[cls]
    n_out = n - n_c
    df = term_counts.df
    df_c = term_counts.df_in(cls)
    df_out = df - df_c
    dbar_f = n - df
    dbar_f_c = n_c - df_c
    return ProbabilityView(
        p_c=n_c / n,
        p_f=df / n,
        p_c_given_f=df_c / df,
        p_cbar_given_f=df_out / df,
        p_c_given_fbar=dbar_f_c / dbar_f if dbar_f else 0.0,
        p_c_and_f=df_c / n,
        p_f_given_c=df_c / n_c,
        p_f_given_cbar=df_out / n_out if n_out else 0.0,
        p_c_and_fbar=dbar_f_c / n,
    )
