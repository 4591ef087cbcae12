"""Sentence-level BLEU with clipping, brevity penalty and epsilon smoothing.

Conventions worth knowing before comparing numbers with other toolkits:

* an n-gram order the candidate is too short to produce is dropped from the
  geometric mean and the remaining weights are renormalized;
* with ``smoothing="epsilon_floor"`` a zero-match order contributes
  ``epsilon / total`` instead of zero;
* a zero-length candidate scores 0;
* the effective reference length defaults to the shortest reference
  (``ref_length="closest"`` picks the closest, ties toward the shorter).
  Both rules agree for single-reference scoring.
"""

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

SMOOTHING = ("none", "epsilon_floor")
REF_LENGTH = ("shortest", "closest")
TOKENIZE = ("whitespace", "whitespace_punct")


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    weights: tuple = None  # uniform when None
    smoothing: str = "none"
    epsilon: float = 0.1
    ref_length: str = "shortest"

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.weights is None:
            object.__setattr__(self, "weights", tuple([1.0 / self.max_n] * self.max_n))
        else:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) != self.max_n:
            raise ValueError(f"expected {self.max_n} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {math.fsum(self.weights)!r}")
        if self.smoothing not in SMOOTHING:
            raise ValueError(f"unknown smoothing {self.smoothing!r}")
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must be in (0, 1]")
        if self.ref_length not in REF_LENGTH:
            raise ValueError(f"unknown ref_length rule {self.ref_length!r}")

    def echo(self):
        weights = ",".join(f"{w:g}" for w in self.weights)
        return (f"max_n={self.max_n} weights={weights} smoothing={self.smoothing} "
                f"epsilon={self.epsilon:g} ref_length={self.ref_length}")


@dataclass(frozen=True)
class BleuScore:
    score: float
    precisions: tuple = field(default=())  # ((clipped, total), ...) per order
    bp: float = 1.0
    candidate_length: int = 0
    effective_reference_length: int = 0


def _is_punct(ch):
    return unicodedata.category(ch).startswith("P")


def tokenize(text, mode="whitespace"):
    if mode not in TOKENIZE:
        raise ValueError(f"unknown tokenization mode {mode!r}")
    words = text.split()
    if mode == "whitespace":
        return words
    out = []
    for w in words:
        start, end = 0, len(w)
        while start < end and _is_punct(w[start]):
            start += 1
        while end > start and _is_punct(w[end - 1]):
            end -= 1
        out.extend(w[:start])
        if start < end:
            out.append(w[start:end])
        out.extend(w[end:])
    return out


def ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def modified_precision(candidate, references, n):
    """``(clipped matches, total candidate n-grams)`` for order ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = ngrams(candidate, n)
    total = max(0, len(candidate) - n + 1)
    if not counts:
        return 0, total
    max_ref = Counter()
    for ref in references:
        for gram, c in ngrams(ref, n).items():
            if gram in counts and c > max_ref[gram]:
                max_ref[gram] = c
    clipped = sum(min(c, max_ref[gram]) for gram, c in counts.items())
    return clipped, total


def effective_reference_length(candidate_length, references, rule="shortest"):
    lengths = [len(r) for r in references]
    if not lengths:
        raise ValueError("at least one reference is required")
    if rule == "shortest":
        return min(lengths)
    return min(lengths, key=lambda r: (abs(r - candidate_length), r))


def brevity_penalty(candidate_length, references, rule="shortest"):
    """``(bp, effective reference length)``; a zero-length candidate gets bp 0."""
    r = effective_reference_length(candidate_length, references, rule)
    c = candidate_length
    if c == 0:
        return 0.0, r
    if c >= r:
        return 1.0, r
    return math.exp(1.0 - r / c), r


def sentence_bleu(candidate, references, cfg=BleuConfig()) -> BleuScore:
    if not references:
        raise ValueError("sentence_bleu needs at least one reference")
    if any(len(r) == 0 for r in references):
        raise ValueError("references must be nonempty")
    bp, r = brevity_penalty(len(candidate), references, cfg.ref_length)
    precisions = tuple(modified_precision(candidate, references, n) for n in range(1, cfg.max_n + 1))
    result = dict(precisions=precisions, bp=bp, candidate_length=len(candidate),
                  effective_reference_length=r)
    if not candidate:
        return BleuScore(0.0, **result)

    logs, weights = [], []
    for (m, t), w in zip(precisions, cfg.weights):
        if t == 0:
            continue
        if m == 0:
            if cfg.smoothing == "none":
                return BleuScore(0.0, **result)
            p = cfg.epsilon / t
        else:
            p = m / t
        logs.append(math.log(p))
        weights.append(w)
    wsum = math.fsum(weights)
    if wsum == 0:
        return BleuScore(bp, **result)
    score = bp * math.exp(math.fsum(w * lp for w, lp in zip(weights, logs)) / wsum)
    return BleuScore(min(score, bp), **result)


def mean_sentence_bleu(scores):
    if not scores:
        raise ValueError("cannot average an empty list of scores")
    values = [s.score if isinstance(s, BleuScore) else float(s) for s in scores]
    return math.fsum(values) / len(values)


def read_segments(text, keyed=None):
    """Sentence texts from a file body, as ``(ids or None, texts)``.

    Keyed files hold ``sent_id<TAB>text`` lines. ``keyed=None`` detects the
    format: keyed when every nonblank line contains a tab.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if keyed is None:
        nonblank = [l for l in lines if l.strip()]
        keyed = bool(nonblank) and all("\t" in l for l in nonblank)
    if not keyed:
        return None, [l.rstrip("\r") for l in lines]
    ids, texts = [], []
    for l in lines:
        if not l.strip():
            continue
        sid, _, body = l.rstrip("\r").partition("\t")
        ids.append(sid.strip())
        texts.append(body)
    return ids, texts
