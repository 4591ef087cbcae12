"""CoNLL-U reading, writing and pairing of parallel treebanks."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import PairingError, ParseError, ValidationError

log = logging.getLogger(__name__)

UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)
UPOS_SET = frozenset(UPOS_TAGS)

DEFAULT_CONTENT_UPOS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM", "PRON"})


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str
    upos: str
    feats: tuple = ()  # ((key, value), ...) in file order
    head: int = 0
    deprel: str = "_"
    xpos: str = "_"
    deps: str = "_"
    misc: str = "_"

    def __post_init__(self):
        if self.index < 1:
            raise ValidationError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValidationError(f"token {self.index}: head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValidationError(f"token {self.index} is its own head")
        if self.upos not in UPOS_SET:
            raise ValidationError(f"token {self.index}: unknown UPOS {self.upos!r}")
        keys = [k for k, _ in self.feats]
        if len(keys) != len(set(keys)):
            raise ValidationError(f"token {self.index}: repeated feature key in {self.feats_string()}")

    def feat(self, key, default=None):
        for k, v in self.feats:
            if k == key:
                return v
        return default

    def has_feat(self, key, value):
        return (key, value) in self.feats

    def feats_string(self):
        if not self.feats:
            return "_"
        return "|".join(f"{k}={v}" for k, v in self.feats)


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: tuple
    text: Optional[str] = None
    comments: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.tokens)

    def token(self, index) -> Token:
        """Token by 1-based index."""
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"sentence {self.id} has no token {index}")
        return self.tokens[index - 1]

    def roots(self):
        return [t for t in self.tokens if t.head == 0]


@dataclass(frozen=True)
class Treebank:
    sentences: tuple
    language: str = ""

    def __post_init__(self):
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise ValidationError(f"duplicate sent_id {s.id!r}")
            seen.add(s.id)

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def ids(self):
        return [s.id for s in self.sentences]

    def by_id(self):
        return {s.id: s for s in self.sentences}


@dataclass(frozen=True)
class ParallelCorpus:
    pairs: tuple  # ((source Sentence, target Sentence), ...)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def ids(self):
        return [src.id for src, _ in self.pairs]


def parse_feats(text, line=None):
    if text == "_" or text == "":
        return ()
    out = []
    for item in text.split("|"):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseError(f"malformed feature {item!r}", line)
        out.append((key, value))
    return tuple(out)


def _parse_int(value, what, line):
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"non-integer {what} {value!r}", line) from None


def _build_sentence(block, position, first_line, strict):
    sent_id = None
    text = None
    comments = []
    tokens = []
    for lineno, line in block:
        if line.startswith("#"):
            comments.append(line)
            body = line[1:].strip()
            key, sep, value = body.partition("=")
            if sep and key.strip() == "sent_id":
                sent_id = value.strip()
            elif sep and key.strip() == "text":
                text = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, found {len(cols)}", lineno)
        tid = cols[0]
        if "-" in tid or "." in tid:
            # multiword range or empty node: not part of the analysis sequence
            continue
        index = _parse_int(tid, "token id", lineno)
        head = _parse_int(cols[6], "head", lineno)
        try:
            tokens.append(Token(
                index=index, form=cols[1], lemma=cols[2], upos=cols[3],
                xpos=cols[4], feats=parse_feats(cols[5], lineno), head=head,
                deprel=cols[7], deps=cols[8], misc=cols[9],
            ))
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    if sent_id is None:
        sent_id = str(position)
    for expected, tok in enumerate(tokens, start=1):
        if tok.index != expected:
            raise ValidationError(
                f"line {first_line}: sentence {sent_id}: token ids are not 1..N (found {tok.index} at position {expected})")
    for tok in tokens:
        if tok.head > len(tokens):
            raise ValidationError(
                f"line {first_line}: sentence {sent_id}: token {tok.index} has head {tok.head} beyond sentence length")
    n_roots = sum(1 for t in tokens if t.head == 0)
    if tokens and n_roots != 1:
        message = f"sentence {sent_id}: expected exactly one root, found {n_roots}"
        if strict:
            raise ValidationError(f"line {first_line}: {message}")
        log.warning(message)
    return Sentence(id=sent_id, tokens=tuple(tokens), text=text, comments=tuple(comments))


def parse_conllu(text: str, language: str = "", strict: bool = False) -> Treebank:
    """Parse a CoNLL-U document.

    Multiword-token ranges (``1-2``) and empty nodes (``5.1``) are dropped, so
    token indices always run 1..N. Sentences without ``# sent_id`` get their
    1-based ordinal position as id. With ``strict`` a sentence that does not
    have exactly one root raises instead of logging a warning.
    """
    sentences = []
    block = []
    first_line = None

    def flush():
        nonlocal block
        if block:
            sentences.append(_build_sentence(block, len(sentences) + 1, first_line, strict))
        block = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if not block:
            first_line = lineno
        block.append((lineno, line))
    flush()
    return Treebank(sentences=tuple(sentences), language=language)


def read_conllu(path, language="", strict=False):
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read(), language=language, strict=strict)


def serialize_conllu(treebank: Treebank) -> str:
    lines = []
    for s in treebank.sentences:
        comments = list(s.comments)
        if not any(c[1:].strip().startswith("sent_id") for c in comments):
            comments.insert(0, f"# sent_id = {s.id}")
        if s.text is not None and not any(c[1:].strip().startswith("text") for c in comments):
            comments.append(f"# text = {s.text}")
        lines.extend(comments)
        for t in s.tokens:
            lines.append("\t".join([
                str(t.index), t.form or "_", t.lemma or "_", t.upos, t.xpos or "_",
                t.feats_string(), str(t.head), t.deprel or "_", t.deps or "_", t.misc or "_",
            ]))
        lines.append("")
    return "\n".join(lines) + ("\n" if lines else "")


def pair_corpora(src: Treebank, tgt: Treebank, mode: str = "by-id") -> ParallelCorpus:
    if mode == "by-id":
        targets = tgt.by_id()
        missing = [s.id for s in src.sentences if s.id not in targets]
        src_ids = set(src.ids())
        extra = [t.id for t in tgt.sentences if t.id not in src_ids]
        if missing or extra:
            offenders = [f"source-only:{i}" for i in missing] + [f"target-only:{i}" for i in extra]
            raise PairingError(
                f"{len(missing)} source and {len(extra)} target sentence ids have no counterpart: "
                + ", ".join(offenders[:20]) + (" ..." if len(offenders) > 20 else ""),
                offenders)
        return ParallelCorpus(tuple((s, targets[s.id]) for s in src.sentences))
    if mode == "by-position":
        if len(src) != len(tgt):
            raise PairingError(
                f"sentence count mismatch: {len(src)} source vs {len(tgt)} target",
                [f"source:{len(src)}", f"target:{len(tgt)}"])
        # by-position pairs carry the source id on both sides of the key
        return ParallelCorpus(tuple(zip(src.sentences, tgt.sentences)))
    raise ValueError(f"unknown pairing mode {mode!r}")


def strip_subtype(deprel: str) -> str:
    return deprel.split(":", 1)[0]


def content_tokens(s: Sentence, content_upos: Iterable[str] = DEFAULT_CONTENT_UPOS):
    content_upos = frozenset(content_upos)
    if not content_upos:
        raise ValueError("content_upos must not be empty")
    return [t for t in s.tokens if t.upos in content_upos]
