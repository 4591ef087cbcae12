"""Per-phenomenon BLEU means compared with a whole-corpus baseline."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from .bleu import BleuConfig, mean_sentence_bleu, sentence_bleu, tokenize
from .errors import MissingSegmentError, ParseError

CHALLENGING = "challenging"
NOT_CHALLENGING = "not_challenging"
UNDETERMINED = "undetermined"

MEAN_DIGITS = 9
BASELINE_ROW = "baseline"
ABSENT = "NA"


@dataclass(frozen=True)
class PhenomenonScore:
    rule_name: str
    mean_bleu: Optional[float]
    sentence_count: int
    verdict: Optional[str] = None


@dataclass(frozen=True)
class EvaluationReport:
    baseline_mean: float
    baseline_count: int
    rows: tuple
    config_echo: dict = field(default_factory=dict)


class SentenceScorer:
    """Scores each sentence once and serves the cached value afterwards.

    ``candidates`` maps sentence id to text; ``references`` maps sentence id
    to a text or a list of texts.
    """

    def __init__(self, candidates, references, cfg=BleuConfig(), tokenization="whitespace", workers=1):
        self.candidates = candidates
        self.references = references
        self.cfg = cfg
        self.tokenization = tokenization
        self.workers = workers
        self._cache = {}

    def _check(self, sid, set_name=None):
        where = f" (set {set_name})" if set_name else ""
        if sid not in self.candidates:
            raise MissingSegmentError(f"no candidate translation for sentence {sid}{where}", sid, set_name)
        if sid not in self.references:
            raise MissingSegmentError(f"no reference translation for sentence {sid}{where}", sid, set_name)

    def _compute(self, sid):
        refs = self.references[sid]
        if isinstance(refs, str):
            refs = [refs]
        return sentence_bleu(
            tokenize(self.candidates[sid], self.tokenization),
            [tokenize(r, self.tokenization) for r in refs],
            self.cfg,
        )

    def score_all(self, ids, set_name=None):
        for sid in ids:
            self._check(sid, set_name)
        todo = [sid for sid in dict.fromkeys(ids) if sid not in self._cache]
        if self.workers > 1 and len(todo) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(self._compute, todo))
        else:
            results = [self._compute(sid) for sid in todo]
        self._cache.update(zip(todo, results))
        return [self._cache[sid] for sid in ids]

    def score(self, sid):
        return self.score_all([sid])[0]


def score_challenge_sets(sets, candidates=None, references=None, cfg=BleuConfig(),
                         tokenization="whitespace", scorer=None):
    """Mean sentence BLEU and size of each challenge set, verdicts unset."""
    scorer = scorer or SentenceScorer(candidates, references, cfg, tokenization)
    rows = []
    for cs in sets:
        ids = cs.sentence_ids()
        if not ids:
            rows.append(PhenomenonScore(cs.rule.name, None, 0, None))
            continue
        scores = scorer.score_all(ids, set_name=cs.rule.name)
        rows.append(PhenomenonScore(cs.rule.name, mean_sentence_bleu(scores), len(ids), None))
    return rows


def compute_baseline(corpus, candidates=None, references=None, cfg=BleuConfig(),
                     tokenization="whitespace", scorer=None):
    scorer = scorer or SentenceScorer(candidates, references, cfg, tokenization)
    ids = corpus.ids()
    return mean_sentence_bleu(scorer.score_all(ids)), len(ids)


def apply_verdicts(rows, baseline_mean, margin=0.02):
    """``challenging`` iff mean <= baseline - margin, compared unrounded."""
    if margin < 0:
        raise ValueError("margin must be >= 0")
    threshold = baseline_mean - margin
    out = []
    for row in rows:
        if row.mean_bleu is None or row.sentence_count == 0:
            verdict = UNDETERMINED
        elif row.mean_bleu <= threshold:
            verdict = CHALLENGING
        else:
            verdict = NOT_CHALLENGING
        out.append(replace(row, verdict=verdict))
    return out


def _fmt_mean(value):
    return ABSENT if value is None else f"{value:.{MEAN_DIGITS}f}"


def _cells(report):
    rows = [(r.rule_name, _fmt_mean(r.mean_bleu), str(r.sentence_count), r.verdict or UNDETERMINED)
            for r in report.rows]
    baseline = (BASELINE_ROW, _fmt_mean(report.baseline_mean), str(report.baseline_count), "-")
    return rows, baseline


HEADER = ("rule", "mean", "count", "verdict")


def render_report(report: EvaluationReport, fmt="tsv") -> str:
    rows, baseline = _cells(report)
    if fmt == "tsv":
        return "".join("\t".join(r) + "\n" for r in [HEADER, *rows, baseline])
    if fmt == "markdown":
        lines = ["| " + " | ".join(HEADER) + " |", "|---|---:|---:|---|"]
        lines.extend("| " + " | ".join(r) + " |" for r in [*rows, baseline])
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text) -> EvaluationReport:
    """Inverse of :func:`render_report` for either format, to printed precision."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("|"):
            cells = [c.strip() for c in line.strip("|").split("|")]
            if set(cells[0]) <= set("-:"):
                continue
        else:
            cells = line.split("\t")
        if len(cells) != 4:
            raise ParseError(f"expected 4 report columns, found {len(cells)}", lineno)
        if tuple(cells) == HEADER:
            continue
        records.append((lineno, cells))
    if not records or records[-1][1][0] != BASELINE_ROW:
        raise ParseError("report has no trailing baseline line")

    def number(value, lineno, kind):
        try:
            return kind(value)
        except ValueError:
            raise ParseError(f"bad numeric field {value!r}", lineno) from None

    rows = []
    for lineno, (name, mean, count, verdict) in records[:-1]:
        rows.append(PhenomenonScore(
            name, None if mean == ABSENT else number(mean, lineno, float),
            number(count, lineno, int), verdict))
    lineno, (_, mean, count, _) = records[-1]
    return EvaluationReport(number(mean, lineno, float), number(count, lineno, int), tuple(rows))


def evaluate(corpus, sets, candidates, references, cfg=BleuConfig(), margin=0.02,
             tokenization="whitespace", workers=1):
    """Baseline, per-set means and verdicts, sharing one per-sentence score cache."""
    scorer = SentenceScorer(candidates, references, cfg, tokenization, workers)
    baseline_mean, baseline_count = compute_baseline(corpus, scorer=scorer)
    rows = score_challenge_sets(sets, scorer=scorer)
    rows = apply_verdicts(rows, baseline_mean, margin)
    echo = {"bleu": cfg.echo(), "margin": margin, "tokenization": tokenization}
    return EvaluationReport(baseline_mean, baseline_count, tuple(rows), echo)
