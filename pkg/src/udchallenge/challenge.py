"""Divergence rules and challenge-set extraction."""

from dataclasses import dataclass

from .alignment import AlignmentLink, Dimension, token_label
from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class DivergenceRule:
    name: str
    dimension: Dimension
    source_label: str
    target_label: str

    def __post_init__(self):
        object.__setattr__(self, "dimension", Dimension.parse(self.dimension))
        if not self.name or not self.source_label or not self.target_label:
            raise ValueError("rule name and labels must be nonempty")

    def __str__(self):
        return f"{self.name}\t{self.dimension.value}\t{self.source_label}\t{self.target_label}"


@dataclass(frozen=True)
class RuleMatch:
    sentence_id: str
    pairs: tuple  # matching AlignmentLinks, alignment order


@dataclass(frozen=True)
class ChallengeSet:
    rule: DivergenceRule
    matches: tuple

    def __len__(self):
        return len(self.matches)

    def sentence_ids(self):
        return [m.sentence_id for m in self.matches]


def preset_rules():
    """The six English->Arabic divergences mined from the PUD alignment statistics."""
    D, U = Dimension.DEPREL, Dimension.UPOS
    return [
        DivergenceRule("obl2nmod", D, "obl", "nmod"),
        DivergenceRule("amod2nmod", D, "amod", "nmod"),
        DivergenceRule("aux2verb", U, "AUX", "VERB"),
        DivergenceRule("obj2nmod", D, "obj", "nmod"),
        DivergenceRule("verb2noun", U, "VERB", "NOUN"),
        DivergenceRule("xcomp2obl", D, "xcomp", "obl"),
    ]


def sentence_matches(pair, sa, rule: DivergenceRule, strip=True):
    """RuleMatch with every link whose two labels equal the rule's, or None.

    DEPREL labels are compared after subtype stripping when ``strip``;
    comparison is otherwise exact and case-sensitive.
    """
    if sa is None or not sa.links:
        return None
    src, tgt = pair
    strip = strip and rule.dimension is Dimension.DEPREL
    hits = tuple(
        link for link in sa.links
        if token_label(src.token(link.src_index), rule.dimension, strip) == rule.source_label
        and token_label(tgt.token(link.tgt_index), rule.dimension, strip) == rule.target_label
    )
    return RuleMatch(src.id, hits) if hits else None


def extract(corpus, alignments, rules, strip=True, include_partial=False, min_matches=1):
    """One ChallengeSet per rule, members in corpus order.

    A sentence qualifies when at least ``min_matches`` of its links match.
    Sentences may belong to several sets.
    """
    if min_matches < 1:
        raise ValueError("min_matches must be >= 1")
    admitted = []
    for pair in corpus.pairs:
        sa = alignments.get(pair[0].id)
        if sa is None or (sa.partial and not include_partial):
            continue
        admitted.append((pair, sa))
    out = []
    for rule in rules:
        matches = []
        for pair, sa in admitted:
            m = sentence_matches(pair, sa, rule, strip=strip)
            if m is not None and len(m.pairs) >= min_matches:
                matches.append(m)
        out.append(ChallengeSet(rule, tuple(matches)))
    return out


def parse_rules_file(text):
    rules = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ParseError(f"expected 4 tab-separated fields, found {len(cols)}", lineno)
        name, dim, source, target = (c.strip() for c in cols)
        try:
            dimension = Dimension.parse(dim)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if name in names:
            raise ValidationError(f"line {lineno}: duplicate rule name {name!r}")
        names.add(name)
        try:
            rules.append(DivergenceRule(name, dimension, source, target))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return rules


def read_rules(path):
    with open(path, encoding="utf-8") as f:
        return parse_rules_file(f.read())


def serialize_rules(rules):
    return "".join(f"{r}\n" for r in rules)


def challenge_sets_tsv(sets):
    lines = ["rule\tsent_id\tmatching_links"]
    for cs in sets:
        for m in cs.matches:
            lines.append(f"{cs.rule.name}\t{m.sentence_id}\t{' '.join(str(p) for p in m.pairs)}")
    return "\n".join(lines) + "\n"


def parse_challenge_sets_tsv(text):
    """``rule name -> [(sent_id, (AlignmentLink, ...)), ...]`` from challenge TSV."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#") or raw.startswith("rule\t"):
            continue
        cols = raw.rstrip("\r").split("\t")
        if len(cols) != 3:
            raise ParseError(f"expected 3 tab-separated fields, found {len(cols)}", lineno)
        links = []
        for item in cols[2].split():
            left, _, right = item.partition("-")
            if not (left.isdigit() and right.isdigit()):
                raise ParseError(f"malformed link {item!r}", lineno)
            links.append(AlignmentLink(int(left), int(right)))
        out.setdefault(cols[0], []).append((cols[1], tuple(links)))
    return out
