"""Fitting a weighting model and transforming documents into sparse vectors.

The document weight of a term is the product of its local (within-document)
weight and the term's min-max-normalized aggregated global score; an
optional cosine step then rescales each document vector to unit L2 norm.

Fitted models are immutable and can be written to / read from a versioned
plain-text file whose body is the score table, so they are diffable.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, CorpusCounts, LabeledDocument, TermStats, compute_counts
from .local import LOCAL_SCHEMES, local_weight
from .metrics import AGGREGATIONS, GLOBAL_METRIC_IDS, score_vocabulary
from .tokenizer import TokenizerConfig

MODEL_FILE_VERSION = "# termweight-model v1"
VECTOR_FILE_HEADER = "# termweight-vectors v1"


class ModelFormatError(ValueError):
    """A model file that cannot be parsed."""


def minmax_normalize(scores: Sequence[float] | np.ndarray) -> np.ndarray:
    """Map scores onto [0, 1] via (s - min) / (max - min).

    When every score is identical (a constant metric) the map is undefined;
    all scores become 1.0 so the constant baseline keeps its full weight.
    """
    scores = np.asarray(scores, dtype=float)
    if scores.size == 0:
        raise ValueError("cannot normalize an empty score list")
    lo, hi = float(scores.min()), float(scores.max())
    if hi == lo:
        return np.ones_like(scores)
    return (scores - lo) / (hi - lo)


@dataclass(frozen=True)
class SparseVector:
    """Entries ``(1-based term index, weight)`` in strictly ascending index order."""

    entries: tuple[tuple[int, float], ...]
    label: str | None = None

    def l2_norm(self) -> float:
        return math.sqrt(sum(w * w for _, w in self.entries))


@dataclass(frozen=True)
class WeightingModel:
    """A fitted vocabulary with normalized global scores and configuration.

    Immutable after fit; safe to share across threads and transform calls.
    """

    terms: tuple[str, ...]
    term_index: dict[str, int]  # term -> 1-based index
    classes: tuple[str, ...]
    metric: str
    aggregation: str
    local_scheme: str
    atf_k: float
    cosine: bool
    tokenizer: TokenizerConfig
    df: np.ndarray
    raw: np.ndarray
    aggregated: np.ndarray
    normalized: np.ndarray
    score_min: float
    score_max: float

    @property
    def vocab_size(self) -> int:
        return len(self.terms)

    def normalized_score(self, term: str) -> float:
        return float(self.normalized[self.term_index[term] - 1])


def _validate_config(metric: str, local_scheme: str, aggregation: str) -> None:
    if metric not in GLOBAL_METRIC_IDS:
        raise ValueError(f"unknown global metric {metric!r}; expected one of {GLOBAL_METRIC_IDS}")
    if local_scheme not in LOCAL_SCHEMES:
        raise ValueError(f"unknown local scheme {local_scheme!r}; expected one of {LOCAL_SCHEMES}")
    if aggregation not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {aggregation!r}; expected one of {AGGREGATIONS}")


def fit(
    corpus: Corpus,
    metric: str,
    local_scheme: str = "tp",
    aggregation: str = "max",
    cosine: bool = True,
    atf_k: float = 0.5,
    *,
    precomputed: tuple[CorpusCounts, dict[str, TermStats]] | None = None,
) -> WeightingModel:
    """Fit a :class:`WeightingModel` on a corpus.

    ``precomputed`` lets callers that fit several metrics on one corpus
    (e.g. the evaluation grid) reuse the counts.
    """
    _validate_config(metric, local_scheme, aggregation)
    counts, term_stats = precomputed if precomputed is not None else compute_counts(corpus)
    table = score_vocabulary(metric, counts, term_stats, aggregation)
    aggregated = np.asarray(table.aggregated, dtype=float)
    score_min = float(aggregated.min())
    score_max = float(aggregated.max())
    normalized = minmax_normalize(aggregated)
    df = np.array([term_stats[t].df for t in table.terms], dtype=np.int64)
    for arr in (df, normalized):
        arr.setflags(write=False)
    return WeightingModel(
        terms=table.terms,
        term_index={t: i + 1 for i, t in enumerate(table.terms)},
        classes=counts.classes,
        metric=metric,
        aggregation=aggregation,
        local_scheme=local_scheme,
        atf_k=atf_k,
        cosine=cosine,
        tokenizer=corpus.tokenizer,
        df=df,
        raw=table.raw,
        aggregated=aggregated,
        normalized=normalized,
        score_min=score_min,
        score_max=score_max,
    )


def transform(model: WeightingModel, document: LabeledDocument) -> SparseVector:
    """Weight one tokenized document into a sparse vector.

    Out-of-vocabulary terms are dropped, as are zero-weight entries; with
    the cosine flag set, a nonzero vector is rescaled to unit L2 norm.
    ``max_tf`` is taken over all tokens of the document, in or out of
    vocabulary.  Pure function of (model, document).
    """
    occurrences = Counter(document.tokens)
    if not occurrences:
        return SparseVector((), document.label)
    max_tf = max(occurrences.values())
    weighted = []
    for term, tf in occurrences.items():
        idx = model.term_index.get(term)
        if idx is None:
            continue
        w = local_weight(model.local_scheme, tf, max_tf, model.atf_k)
        w *= float(model.normalized[idx - 1])
        if w != 0.0:
            weighted.append((idx, w))
    weighted.sort()
    if model.cosine and weighted:
        norm = math.sqrt(sum(w * w for _, w in weighted))
        if norm > 0.0:
            weighted = [(i, w / norm) for i, w in weighted]
    return SparseVector(tuple(weighted), document.label)


@dataclass
class TransformDiagnostics:
    """Tally of dropped material seen while transforming a corpus."""

    oov_tokens: int = 0
    empty_vectors: int = 0


def transform_corpus(
    model: WeightingModel, corpus: Corpus
) -> tuple[list[SparseVector], TransformDiagnostics]:
    """Transform every document, preserving order."""
    diagnostics = TransformDiagnostics()
    vectors = []
    for doc in corpus.documents:
        diagnostics.oov_tokens += sum(1 for t in doc.tokens if t not in model.term_index)
        vec = transform(model, doc)
        if not vec.entries:
            diagnostics.empty_vectors += 1
        vectors.append(vec)
    return vectors, diagnostics


def write_vectors(vectors: Iterable[SparseVector], path: str) -> None:
    """Write ``label idx:weight ...`` lines, weights with 6 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(VECTOR_FILE_HEADER + "\n")
        for vec in vectors:
            parts = [vec.label if vec.label is not None else "?"]
            parts.extend(f"{idx}:{weight:.6g}" for idx, weight in vec.entries)
            fh.write(" ".join(parts) + "\n")


def read_vectors(path: str) -> list[SparseVector]:
    """Read a sparse vector file written by :func:`write_vectors`."""
    vectors = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            entries = []
            last_idx = 0
            for part in parts[1:]:
                try:
                    idx_s, w_s = part.split(":", 1)
                    idx, weight = int(idx_s), float(w_s)
                except ValueError:
                    raise ModelFormatError(f"{path}:{lineno}: bad entry {part!r}") from None
                if idx <= last_idx:
                    raise ModelFormatError(f"{path}:{lineno}: indices not strictly ascending")
                last_idx = idx
                entries.append((idx, weight))
            vectors.append(SparseVector(tuple(entries), parts[0]))
    return vectors


def save_model(model: WeightingModel, path: str) -> None:
    """Write the versioned model file: config lines, then the score table.

    Scores use ``repr`` so they reload bit-for-bit.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(MODEL_FILE_VERSION + "\n")
        fh.write(f"metric={model.metric}\n")
        fh.write(f"aggregation={model.aggregation}\n")
        fh.write(f"local={model.local_scheme}\n")
        fh.write(f"atf_k={model.atf_k!r}\n")
        fh.write(f"cosine={str(model.cosine).lower()}\n")
        fh.write(f"lowercase={str(model.tokenizer.lowercase).lower()}\n")
        fh.write(f"strip_punct={str(model.tokenizer.strip_punct).lower()}\n")
        fh.write(f"classes={','.join(model.classes)}\n")
        fh.write(f"score_min={model.score_min!r}\n")
        fh.write(f"score_max={model.score_max!r}\n")
        fh.write(f"# columns: term index df raw({' '.join(model.classes)}) aggregated\n")
        for i, term in enumerate(model.terms):
            raw_cols = "\t".join(repr(float(x)) for x in model.raw[i])
            fh.write(
                f"{term}\t{i + 1}\t{int(model.df[i])}\t{raw_cols}\t"
                f"{float(model.aggregated[i])!r}\n"
            )


def _parse_bool(value: str, key: str, path: str) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ModelFormatError(f"{path}: config {key} must be true/false, got {value!r}")


def load_model(path: str) -> WeightingModel:
    """Read a model file back into an immutable :class:`WeightingModel`."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != MODEL_FILE_VERSION:
        raise ModelFormatError(f"{path}: not a termweight model file (missing version line)")
    config: dict[str, str] = {}
    rows: list[list[str]] = []
    for line in lines[1:]:
        if "\t" in line:  # data rows always carry tabs; config and comments never do
            rows.append(line.split("\t"))
        elif line.startswith("#") or not line.strip():
            continue
        elif "=" in line:
            key, value = line.split("=", 1)
            config[key] = value
        else:
            raise ModelFormatError(f"{path}: unparseable line {line!r}")
    required = ("metric", "aggregation", "local", "atf_k", "cosine",
                "lowercase", "strip_punct", "classes", "score_min", "score_max")
    missing = [k for k in required if k not in config]
    if missing:
        raise ModelFormatError(f"{path}: missing config keys {missing}")
    classes = tuple(config["classes"].split(","))
    n_cols = 4 + len(classes)
    terms, df, raw, aggregated = [], [], [], []
    for row in rows:
        if len(row) != n_cols:
            raise ModelFormatError(f"{path}: expected {n_cols} columns, got {len(row)}")
        terms.append(row[0])
        df.append(int(row[2]))
        raw.append([float(x) for x in row[3:-1]])
        aggregated.append(float(row[-1]))
    if not terms:
        raise ModelFormatError(f"{path}: model has no vocabulary rows")
    indices = [int(row[1]) for row in rows]
    if indices != list(range(1, len(rows) + 1)):
        raise ModelFormatError(f"{path}: term indices must be contiguous from 1")
    aggregated_arr = np.array(aggregated, dtype=float)
    score_min = float(config["score_min"])
    score_max = float(config["score_max"])
    if score_max > score_min:
        normalized = (aggregated_arr - score_min) / (score_max - score_min)
    else:
        normalized = np.ones_like(aggregated_arr)
    df_arr = np.array(df, dtype=np.int64)
    raw_arr = np.array(raw, dtype=float)
    for arr in (df_arr, raw_arr, aggregated_arr, normalized):
        arr.setflags(write=False)
    return WeightingModel(
        terms=tuple(terms),
        term_index={t: i + 1 for i, t in enumerate(terms)},
        classes=classes,
        metric=config["metric"],
        aggregation=config["aggregation"],
        local_scheme=config["local"],
        atf_k=float(config["atf_k"]),
        cosine=_parse_bool(config["cosine"], "cosine", path),
        tokenizer=TokenizerConfig(
            lowercase=_parse_bool(config["lowercase"], "lowercase", path),
            strip_punct=_parse_bool(config["strip_punct"], "strip_punct", path),
        ),
        df=df_arr,
        raw=raw_arr,
        aggregated=aggregated_arr,
        normalized=normalized,
        score_min=score_min,
        score_max=score_max,
    )
