"""Word alignments between paired sentences.

File format, one sentence per line::

    sent_id<TAB>i-j i-j ... [!partial]

Indices are **1-based** and refer to CoNLL-U token ids (multiword ranges and
empty nodes excluded). This differs from Pharaoh files, which are 0-based.
``#`` starts a comment line and blank lines are ignored. Repeated lines for
the same sentence merge; ``!partial`` on any of them marks the sentence as
incompletely aligned.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import ParseError, ValidationError
from .treebank import DEFAULT_CONTENT_UPOS, strip_subtype

NONE = "NONE"
PARTIAL_MARKER = "!partial"


class Dimension(str, Enum):
    UPOS = "UPOS"
    DEPREL = "DEPREL"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown dimension {value!r} (expected UPOS or DEPREL)") from None


class Coverage(str, Enum):
    FULL = "full"
    PARTIAL = "partial"


class AlignmentLink(NamedTuple):
    src_index: int
    tgt_index: int

    def __str__(self):
        return f"{self.src_index}-{self.tgt_index}"


@dataclass(frozen=True)
class SentenceAlignment:
    sentence_id: str
    links: tuple = ()  # AlignmentLink, file order, no duplicates
    coverage: Coverage = Coverage.FULL

    def __post_init__(self):
        if len(set(self.links)) != len(self.links):
            raise ValidationError(f"sentence {self.sentence_id}: duplicate alignment link")
        for link in self.links:
            if link.src_index < 1 or link.tgt_index < 1:
                raise ValidationError(f"sentence {self.sentence_id}: link {link} has an index below 1")

    @property
    def partial(self):
        return self.coverage is Coverage.PARTIAL

    def aligned_source(self):
        return {link.src_index for link in self.links}

    def aligned_target(self):
        return {link.tgt_index for link in self.links}


@dataclass(frozen=True)
class AlignmentSet:
    by_sentence: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.by_sentence)

    def __contains__(self, sentence_id):
        return sentence_id in self.by_sentence

    def get(self, sentence_id):
        return self.by_sentence.get(sentence_id)

    def coverage(self, sentence_id):
        return self.by_sentence[sentence_id].coverage

    def __eq__(self, other):
        if not isinstance(other, AlignmentSet):
            return NotImplemented
        return self.by_sentence == other.by_sentence


def _parse_link(item, lineno):
    left, sep, right = item.partition("-")
    if not sep or not left.isdigit() or not right.isdigit():
        raise ParseError(f"malformed alignment pair {item!r} (expected int-int)", lineno)
    return AlignmentLink(int(left), int(right))


def parse_alignments(text: str) -> AlignmentSet:
    links = {}
    partial = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        sent_id, _, rest = line.partition("\t")
        sent_id = sent_id.strip()
        if not sent_id:
            raise ParseError("missing sentence id", lineno)
        bucket = links.setdefault(sent_id, [])
        partial.setdefault(sent_id, False)
        for item in rest.split():
            if item == PARTIAL_MARKER:
                partial[sent_id] = True
                continue
            link = _parse_link(item, lineno)
            if link in bucket:
                raise ValidationError(f"line {lineno}: sentence {sent_id}: duplicate link {link}")
            bucket.append(link)
    return AlignmentSet({
        sid: SentenceAlignment(sid, tuple(ls), Coverage.PARTIAL if partial[sid] else Coverage.FULL)
        for sid, ls in links.items()
    })


def read_alignments(path):
    with open(path, encoding="utf-8") as f:
        return parse_alignments(f.read())


def serialize_alignments(a: AlignmentSet) -> str:
    lines = []
    for sid, sa in a.by_sentence.items():
        items = [str(link) for link in sa.links]
        if sa.partial:
            items.append(PARTIAL_MARKER)
        lines.append(f"{sid}\t{' '.join(items)}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class ValidationItem:
    severity: str  # "error" | "warning"
    kind: str
    sentence_id: str
    message: str

    def __str__(self):
        return f"{self.severity}\t{self.kind}\t{self.sentence_id}\t{self.message}"


@dataclass(frozen=True)
class ValidationReport:
    items: tuple = ()

    @property
    def passed(self):
        return not self.errors

    @property
    def errors(self):
        return [i for i in self.items if i.severity == "error"]

    @property
    def warnings(self):
        return [i for i in self.items if i.severity == "warning"]

    def render(self):
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head}: {len(self.errors)} error(s), {len(self.warnings)} warning(s)"]
        lines.extend(str(i) for i in self.items)
        return "\n".join(lines) + "\n"


def validate_alignments(a: AlignmentSet, corpus) -> ValidationReport:
    """Check alignments against a parallel corpus.

    Unknown sentence ids and out-of-range links are errors; corpus sentences
    without any alignment entry are warnings.
    """
    items = []
    pairs = {src.id: (src, tgt) for src, tgt in corpus.pairs}
    for sid, sa in a.by_sentence.items():
        if sid not in pairs:
            items.append(ValidationItem("error", "unknown-sentence", sid, "sentence id not in corpus"))
            continue
        src, tgt = pairs[sid]
        for link in sa.links:
            if link.src_index > len(src) or link.tgt_index > len(tgt):
                items.append(ValidationItem(
                    "error", "link-out-of-range", sid,
                    f"link {link} exceeds sentence lengths (source {len(src)}, target {len(tgt)})"))
    for sid in pairs:
        if sid not in a.by_sentence:
            items.append(ValidationItem("warning", "unaligned-sentence", sid, "no alignment entry"))
    return ValidationReport(tuple(items))


def token_label(token, dimension, strip=False):
    if dimension is Dimension.UPOS:
        return token.upos
    return strip_subtype(token.deprel) if strip else token.deprel


def labeled_pairs(pair, sa, dimension, strip=False, content_only=False,
                  content_upos=DEFAULT_CONTENT_UPOS):
    """(source label, target label) records for one aligned sentence pair.

    One record per link, then ``(label, NONE)`` for each unaligned source
    token and ``(NONE, label)`` for each unaligned target token. With
    ``content_only`` the unaligned tokens are restricted to ``content_upos``;
    link records are never filtered.
    """
    dimension = Dimension.parse(dimension)
    src, tgt = pair
    links = sa.links if sa is not None else ()
    out = [
        (token_label(src.token(link.src_index), dimension, strip),
         token_label(tgt.token(link.tgt_index), dimension, strip))
        for link in links
    ]
    content_upos = frozenset(content_upos)
    keep = (lambda t: t.upos in content_upos) if content_only else (lambda t: True)
    aligned_src = {link.src_index for link in links}
    aligned_tgt = {link.tgt_index for link in links}
    out.extend((token_label(t, dimension, strip), NONE)
               for t in src.tokens if t.index not in aligned_src and keep(t))
    out.extend((NONE, token_label(t, dimension, strip))
               for t in tgt.tokens if t.index not in aligned_tgt and keep(t))
    return out
