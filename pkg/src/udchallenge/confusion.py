"""Cross-lingual confusion matrices over aligned token labels."""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .alignment import NONE, Dimension, labeled_pairs, validate_alignments
from .errors import ParseError, ValidationError
from .treebank import DEFAULT_CONTENT_UPOS, UPOS_TAGS

_UPOS_RANK = {tag: i for i, tag in enumerate(UPOS_TAGS)}


@dataclass(frozen=True)
class MatrixSpec:
    dimension: Dimension = Dimension.UPOS
    strip_subtypes: bool = False  # DEPREL only
    content_only: bool = False
    include_partial: bool = False
    transpose: bool = False
    content_upos: frozenset = DEFAULT_CONTENT_UPOS

    def __post_init__(self):
        object.__setattr__(self, "dimension", Dimension.parse(self.dimension))
        object.__setattr__(self, "content_upos", frozenset(self.content_upos))

    @property
    def strip(self):
        return self.strip_subtypes and self.dimension is Dimension.DEPREL


@dataclass(frozen=True)
class ConfusionMatrix:
    spec: MatrixSpec
    source_labels: tuple
    target_labels: tuple
    counts: dict = field(default_factory=dict)  # (source, target) -> int, nonzero cells only

    def count(self, source, target):
        return self.counts.get((source, target), 0)

    def row_total(self, source):
        return sum(self.count(source, t) for t in self.target_labels)

    def column_total(self, target):
        return sum(self.count(s, target) for s in self.source_labels)

    @property
    def total(self):
        return sum(self.counts.values())

    def transposed(self):
        return ConfusionMatrix(
            spec=replace(self.spec, transpose=not self.spec.transpose),
            source_labels=self.target_labels,
            target_labels=self.source_labels,
            counts={(t, s): c for (s, t), c in self.counts.items()},
        )

    def scaled(self, k):
        return replace(self, counts={cell: c * k for cell, c in self.counts.items()})


@dataclass(frozen=True)
class Hotspot:
    source_label: str
    target_label: str
    count: int
    row_percent: float


def _upos_order(labels, totals):
    return sorted(labels, key=lambda x: (x == NONE, _UPOS_RANK.get(x, len(_UPOS_RANK)), x))


def _frequency_order(labels, totals):
    return sorted(labels, key=lambda x: (x == NONE, -totals[x], x))


def matrix_from_counts(counts, spec):
    """Wrap a ``(source, target) -> count`` mapping with the canonical axis order.

    UPOS axes follow the fixed UD tag order; DEPREL axes are sorted by
    descending marginal frequency, then lexicographically. NONE is always last.
    """
    counts = {cell: int(c) for cell, c in counts.items() if c}
    rows, cols = Counter(), Counter()
    for (s, t), c in counts.items():
        rows[s] += c
        cols[t] += c
    order = _upos_order if spec.dimension is Dimension.UPOS else _frequency_order
    return ConfusionMatrix(
        spec=spec,
        source_labels=tuple(order(rows, rows)),
        target_labels=tuple(order(cols, cols)),
        counts=counts,
    )


def _admitted_pairs(corpus, alignments, spec):
    for pair in corpus.pairs:
        sa = alignments.get(pair[0].id)
        if sa is not None and sa.partial and not spec.include_partial:
            continue
        yield pair, sa


def _count_chunk(chunk, spec):
    counter = Counter()
    for pair, sa in chunk:
        records = labeled_pairs(pair, sa, spec.dimension, strip=spec.strip,
                                content_only=spec.content_only, content_upos=spec.content_upos)
        if spec.transpose:
            records = [(t, s) for s, t in records]
        counter.update(records)
    return counter


def build_confusion(corpus, alignments, spec=MatrixSpec(), workers=1) -> ConfusionMatrix:
    """Count labeled-pair records over every admitted sentence pair.

    Sentences flagged partial are skipped unless ``spec.include_partial``.
    Sentences with no alignment entry contribute only NONE records.
    """
    report = validate_alignments(alignments, corpus)
    if not report.passed:
        raise ValidationError("alignments do not validate against the corpus", report)
    work = list(_admitted_pairs(corpus, alignments, spec))
    if workers <= 1 or len(work) < 2:
        total = _count_chunk(work, spec)
    else:
        size = -(-len(work) // workers)
        chunks = [work[i:i + size] for i in range(0, len(work), size)]
        total = Counter()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_chunk, chunks, [spec] * len(chunks)):
                total.update(part)
    return matrix_from_counts(total, spec)


def row_percentages(m: ConfusionMatrix):
    """``(source, target) -> 100 * count / row total`` for every axis cell."""
    out = {}
    for s in m.source_labels:
        total = m.row_total(s)
        for t in m.target_labels:
            out[(s, t)] = 100.0 * m.count(s, t) / total if total else 0.0
    return out


def hotspots(m: ConfusionMatrix, min_percent=8.0, min_count=50, exclude_diagonal=True):
    pct = row_percentages(m)
    found = [
        Hotspot(s, t, c, pct[(s, t)])
        for (s, t), c in m.counts.items()
        if not (exclude_diagonal and s == t) and c >= min_count and pct[(s, t)] >= min_percent
    ]
    found.sort(key=lambda h: (-h.count, h.source_label, h.target_label))
    return found


def export_matrix_tsv(m: ConfusionMatrix, mode="counts") -> str:
    if mode not in ("counts", "percent", "percentages"):
        raise ValueError(f"unknown matrix mode {mode!r}")
    pct = row_percentages(m) if mode != "counts" else None
    lines = ["\t" + "\t".join(m.target_labels)]
    for s in m.source_labels:
        if pct is None:
            cells = [str(m.count(s, t)) for t in m.target_labels]
        else:
            cells = [f"{pct[(s, t)]:.1f}" for t in m.target_labels]
        lines.append(s + "\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"


def import_matrix_tsv(text, spec=MatrixSpec()) -> ConfusionMatrix:
    """Read a counts TSV written by :func:`export_matrix_tsv`; axis order is kept."""
    rows = [line.rstrip("\r") for line in text.splitlines()
            if line.strip() and not line.startswith("#")]
    if not rows:
        raise ParseError("empty matrix")
    header = rows[0].split("\t")
    if header[0] != "":
        raise ParseError("header must start with an empty corner cell", 1)
    targets = tuple(header[1:])
    sources = []
    counts = {}
    for lineno, line in enumerate(rows[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(targets) + 1:
            raise ParseError(f"expected {len(targets) + 1} cells, found {len(cells)}", lineno)
        sources.append(cells[0])
        for t, value in zip(targets, cells[1:]):
            try:
                c = int(value)
            except ValueError:
                raise ParseError(f"non-integer count {value!r}", lineno) from None
            if c:
                counts[(cells[0], t)] = c
    return ConfusionMatrix(spec=spec, source_labels=tuple(sources), target_labels=targets, counts=counts)


def hotspots_tsv(found) -> str:
    lines = ["source\ttarget\tcount\trow_percent"]
    lines.extend(f"{h.source_label}\t{h.target_label}\t{h.count}\t{h.row_percent:.1f}" for h in found)
    return "\n".join(lines) + "\n"
