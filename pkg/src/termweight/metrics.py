"""Supervised global term-weighting metrics.

Each metric scores a (term, class) pair from the corpus counts; the
aggregation step then collapses the per-class scores of a term into one
value (``max`` by default, ``sum`` and ``min`` as alternatives).

Metric identifiers, in the fixed report row order:

bl      constant 1.0 baseline (binary bag-of-words)
zd      multinomial z-score of the term's in-class token count
ig      information gain of the term presence split (class-independent)
pmi     pointwise mutual information between term and class
ne      one minus the binary class entropy conditioned on the term
chi     chi-square association between term presence and class
kl      Kullback-Leibler divergence of p(c|term) from p(c)
wllr    weighted log-likelihood ratio p(f|c) * log(p(f|c)/p(f|c̄))
orr     log odds ratio of the term between class and complement
dsidf   delta smoothed inverse document frequency
dbidf   delta BM25-style inverse document frequency
rf      relevance frequency log(2 + df_c / max(1, df_c̄))
cdm     class discrimination measure |log(p(f|c)/p(f|c̄))|
ngl     NGL coefficient (signed square root of chi)
cpd     categorical proportional difference (df_c - df_c̄) / df

Conventions, applied uniformly:

* natural logarithm everywhere (downstream min-max normalization is
  invariant under the choice of base);
* summands of the form x*log(x/y) are 0 when x is 0;
* for pmi, cdm, wllr, orr and zd, a document count that would drive a log
  argument or a denominator to zero (or a probability to exactly 1 inside
  a ``1 - p`` denominator) is pulled half a document inward before the
  ratio is formed, mirroring the +0.5 smoothing built into dsidf/dbidf;
* chi and ngl return 0 when their denominator vanishes (the numerator is
  provably 0 in that case).

Every score is finite for any term with df >= 1.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .corpus import CorpusCounts, TermStats

GLOBAL_METRIC_IDS = (
    "bl", "zd", "ig", "pmi", "ne", "chi", "kl", "wllr",
    "orr", "dsidf", "dbidf", "rf", "cdm", "ngl", "cpd",
)
AGGREGATIONS = ("max", "sum", "min")

LogFn = Callable[[float], float]


def _xlogx(x: float, log: LogFn) -> float:
    return x * log(x) if x > 0.0 else 0.0


def _smoothed_ratio(
    count: int, total: int, *, clamp_zero: bool = False, clamp_one: bool = False
) -> float:
    """Count ratio with the half-document clamp applied only where asked.

    A ``total`` of zero (no documents in the conditioning event) yields the
    neutral 0.5 when zero-clamping is on.
    """
    total_eff = max(total, 1)
    c = float(count)
    if clamp_zero and c <= 0.0:
        c = 0.5
    if clamp_one and c >= total_eff:
        c = total_eff - 0.5
    return c / total_eff


def _bl(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    return 1.0


def _dsidf(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    n_c = cc.docs_per_class[cls]
    n_out = cc.docs_outside(cls)
    df_c = t.df_in(cls)
    df_out = t.df_outside(cls)
    # difference of logs keeps the two-class case exactly antisymmetric
    return log(n_c * df_out + 0.5) - log(n_out * df_c + 0.5)


def _dbidf(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    n_c = cc.docs_per_class[cls]
    n_out = cc.docs_outside(cls)
    df_c = t.df_in(cls)
    df_out = t.df_outside(cls)
    return log((n_c - df_c + 0.5) * df_out + 0.5) - log((n_out - df_out + 0.5) * df_c + 0.5)


def _rf(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    return log(2.0 + t.df_in(cls) / max(1, t.df_outside(cls)))


def _ig(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    n = cc.n_docs
    df = t.df
    dbar_f = n - df
    entropy = -sum(_xlogx(cc.docs_per_class[c] / n, log) for c in cc.classes)
    present = (df / n) * sum(_xlogx(t.df_in(c) / df, log) for c in cc.classes)
    if dbar_f:
        absent = (dbar_f / n) * sum(
            _xlogx((cc.docs_per_class[c] - t.df_in(c)) / dbar_f, log) for c in cc.classes
        )
    else:
        absent = 0.0
    return entropy + present + absent


def _pmi(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    n = cc.n_docs
    p_c = cc.docs_per_class[cls] / n
    p_f = t.df / n
    p_cf = _smoothed_ratio(t.df_in(cls), n, clamp_zero=True)
    return log(p_cf / (p_c * p_f))


def _ne(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    p_in = t.df_in(cls) / t.df
    p_out = t.df_outside(cls) / t.df
    return 1.0 + _xlogx(p_in, log) + _xlogx(p_out, log)


def _chi_parts(t: TermStats, cc: CorpusCounts, cls: str) -> tuple[int, int]:
    """Cross-product difference and denominator of the 2x2 presence table."""
    n_c = cc.docs_per_class[cls]
    n_out = cc.docs_outside(cls)
    df_c = t.df_in(cls)
    df_out = t.df_outside(cls)
    dbar_f_c = n_c - df_c
    dbar_f_out = n_out - df_out
    cross = df_c * dbar_f_out - df_out * dbar_f_c
    denom = t.df * (cc.n_docs - t.df) * n_c * n_out
    return cross, denom


def _chi(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    cross, denom = _chi_parts(t, cc, cls)
    if denom == 0:
        return 0.0
    return cc.n_docs * cross * cross / denom


def _ngl(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    cross, denom = _chi_parts(t, cc, cls)
    if denom == 0:
        return 0.0
    return math.sqrt(cc.n_docs) * cross / math.sqrt(denom)


def _cdm(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    p_fc = _smoothed_ratio(t.df_in(cls), cc.docs_per_class[cls], clamp_zero=True)
    p_fcbar = _smoothed_ratio(t.df_outside(cls), cc.docs_outside(cls), clamp_zero=True)
    return abs(log(p_fc / p_fcbar))


def _cpd(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    return (t.df_in(cls) - t.df_outside(cls)) / t.df


def _zd(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    n = cc.n_docs
    n_c = cc.docs_per_class[cls]
    df = n - 0.5 if t.df >= n else t.df  # p(f)=1 would zero the variance
    p_f = df / n
    return (t.tf_in(cls) - p_f * n_c) / math.sqrt(n_c * p_f * (1.0 - p_f))


def _kl(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    p = t.df_in(cls) / t.df
    if p == 0.0:
        return 0.0
    return p * log(p / (cc.docs_per_class[cls] / cc.n_docs))


def _wllr(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    p_fc = t.df_in(cls) / cc.docs_per_class[cls]
    if p_fc == 0.0:
        return 0.0
    p_fcbar = _smoothed_ratio(t.df_outside(cls), cc.docs_outside(cls), clamp_zero=True)
    return p_fc * log(p_fc / p_fcbar)


def _orr(t: TermStats, cc: CorpusCounts, cls: str, log: LogFn) -> float:
    p_fc = _smoothed_ratio(
        t.df_in(cls), cc.docs_per_class[cls], clamp_zero=True, clamp_one=True
    )
    p_fcbar = _smoothed_ratio(
        t.df_outside(cls), cc.docs_outside(cls), clamp_zero=True, clamp_one=True
    )
    return log(p_fc * (1.0 - p_fcbar)) - log(p_fcbar * (1.0 - p_fc))


_METRIC_FNS: dict[str, Callable[[TermStats, CorpusCounts, str, LogFn], float]] = {
    "bl": _bl, "zd": _zd, "ig": _ig, "pmi": _pmi, "ne": _ne,
    "chi": _chi, "kl": _kl, "wllr": _wllr, "orr": _orr, "dsidf": _dsidf,
    "dbidf": _dbidf, "rf": _rf, "cdm": _cdm, "ngl": _ngl, "cpd": _cpd,
}


def global_score(
    metric: str,
    term_counts: TermStats,
    corpus_counts: CorpusCounts,
    cls: str,
    *,
    log: LogFn = math.log,
) -> float:
    """Score one (term, class) pair under ``metric``.

    ``log`` exists so tests can check that changing the base only rescales
    scores; leave it at the natural-log default otherwise.
    """
    try:
        fn = _METRIC_FNS[metric]
    except KeyError:
        raise ValueError(
            f"unknown global metric {metric!r}; expected one of {GLOBAL_METRIC_IDS}"
        ) from None
    if cls not in corpus_counts.docs_per_class:
        raise ValueError(f"unknown class {cls!r}")
    return fn(term_counts, corpus_counts, cls, log)


def aggregate(scores: Sequence[float], rule: str = "max") -> float:
    """Collapse per-class scores of one term into a single score."""
    if rule not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {rule!r}; expected one of {AGGREGATIONS}")
    if len(scores) == 0:
        raise ValueError("cannot aggregate an empty score list")
    if rule == "max":
        return max(scores)
    if rule == "sum":
        return float(sum(scores))
    return min(scores)


@dataclass(frozen=True)
class TermScoreTable:
    """Raw per-class scores and their aggregation for a whole vocabulary.

    ``raw`` has shape (n_terms, n_classes) in vocabulary/class order;
    ``aggregated`` has one entry per term.
    """

    metric: str
    aggregation: str
    classes: tuple[str, ...]
    terms: tuple[str, ...]
    raw: np.ndarray
    aggregated: np.ndarray

    def raw_score(self, term: str, cls: str) -> float:
        return float(self.raw[self.terms.index(term), self.classes.index(cls)])

    def aggregated_score(self, term: str) -> float:
        return float(self.aggregated[self.terms.index(term)])


def score_vocabulary(
    metric: str,
    corpus_counts: CorpusCounts,
    term_stats: Mapping[str, TermStats],
    rule: str = "max",
    *,
    log: LogFn = math.log,
) -> TermScoreTable:
    """Score every vocabulary term against every class and aggregate."""
    if rule not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {rule!r}; expected one of {AGGREGATIONS}")
    classes = corpus_counts.classes
    terms = tuple(term_stats)
    raw = np.empty((len(terms), len(classes)))
    for i, term in enumerate(terms):
        stats = term_stats[term]
        for j, cls in enumerate(classes):
            raw[i, j] = global_score(metric, stats, corpus_counts, cls, log=log)
    if rule == "max":
        aggregated = raw.max(axis=1)
    elif rule == "sum":
        aggregated = raw.sum(axis=1)
    else:
        aggregated = raw.min(axis=1)
    raw.setflags(write=False)
    aggregated.setflags(write=False)
    return TermScoreTable(metric, rule, classes, terms, raw, aggregated)
