"""Heuristic detectors for Arabic constructions without a fixed English parallel.

All detectors work on a single target-side sentence and return
:class:`PhenomenonHit` records with 1-based token indices.
"""

import unicodedata
from dataclasses import dataclass

from .treebank import strip_subtype

DUAL = "dual"
PASSIVE = "passive"
COGNATE_ACCUSATIVE = "cognate_accusative"
VERB_ADP_DISTANCE = "verb_adp_distance"
GENERIC = "feature"

# The classic mnemonic of Arabic affix letters plus orthographic variants of
# alef and the feminine endings. Removing them leaves a rough consonantal
# skeleton; weak radicals are lost with them.
DEFAULT_AFFIXES = frozenset("سألتمونيها" + "إآةى")
TATWEEL = "ـ"


@dataclass(frozen=True)
class PhenomenonHit:
    sentence_id: str
    phenomenon: str
    token_indices: tuple
    detail: str = ""

    def tsv(self):
        return f"{self.phenomenon}\t{self.sentence_id}\t{','.join(map(str, self.token_indices))}\t{self.detail}"


def detect_feature(s, key, value):
    if (key, value) == ("Number", "Dual"):
        phenomenon = DUAL
    elif (key, value) == ("Voice", "Pass"):
        phenomenon = PASSIVE
    else:
        phenomenon = GENERIC
    return [
        PhenomenonHit(s.id, phenomenon, (t.index,), t.upos if phenomenon != GENERIC else f"{key}={value}")
        for t in s.tokens if t.has_feat(key, value)
    ]


def detect_dual(s):
    return detect_feature(s, "Number", "Dual")


def detect_passive(s):
    # passive verbs and passive participles share Voice=Pass; UPOS goes in detail
    return detect_feature(s, "Voice", "Pass")


def verb_adposition_distance(s, min_distance=4, metric="linear"):
    """Adpositions attached to a verb (directly or through one intermediate head)
    that sit at least ``min_distance`` tokens away from it.

    ``metric="tree"`` reports the number of head steps (1 or 2) instead of the
    linear token distance.
    """
    if min_distance < 1:
        raise ValueError("min_distance must be >= 1")
    if metric not in ("linear", "tree"):
        raise ValueError(f"unknown distance metric {metric!r}")
    hits = []
    for a in s.tokens:
        if a.upos != "ADP" or a.head == 0:
            continue
        chain = [a.head]
        parent = s.token(a.head)
        if parent.head:
            chain.append(parent.head)
        for steps, v_index in enumerate(chain, start=1):
            v = s.token(v_index)
            if v.upos != "VERB":
                continue
            distance = abs(a.index - v.index) if metric == "linear" else steps
            if distance >= min_distance:
                hits.append(PhenomenonHit(s.id, VERB_ADP_DISTANCE, (v.index, a.index), str(distance)))
    hits.sort(key=lambda h: h.token_indices)
    return hits


def skeleton(word, affixes=DEFAULT_AFFIXES):
    decomposed = unicodedata.normalize("NFD", word)
    # NFD splits hamza seats into bare letter + combining mark
    return "".join(
        ch for ch in decomposed
        if unicodedata.category(ch) != "Mn" and ch != TATWEEL
        and ch not in affixes and not ch.isspace()
    )


def longest_common_subsequence(a, b):
    rows = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a, start=1):
        for j, y in enumerate(b, start=1):
            rows[i][j] = rows[i - 1][j - 1] + 1 if x == y else max(rows[i - 1][j], rows[i][j - 1])
    out = []
    i, j = len(a), len(b)
    while i and j:
        if a[i - 1] == b[j - 1]:
            out.append(a[i - 1])
            i -= 1
            j -= 1
        elif rows[i - 1][j] >= rows[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return "".join(reversed(out))


def shared_skeleton(lemma_a, lemma_b, affixes=DEFAULT_AFFIXES, min_length=3, min_coverage=0.75):
    """The common consonant subsequence if it passes both thresholds, else ``None``."""
    sa, sb = skeleton(lemma_a, affixes), skeleton(lemma_b, affixes)
    if not sa or not sb:
        return None
    common = longest_common_subsequence(sa, sb)
    if len(common) >= min_length and len(common) >= min_coverage * min(len(sa), len(sb)):
        return common
    return None


def detect_cognate_accusative(s, affixes=DEFAULT_AFFIXES, min_length=3, min_coverage=0.75):
    """Verb + obj/obl NOUN dependent whose lemmas share a consonant skeleton.

    This is a skeleton overlap heuristic, not a root extractor, and has low
    precision on purpose-built lemmas with many weak letters.
    """
    hits = []
    for d in s.tokens:
        if d.upos != "NOUN" or d.head == 0 or strip_subtype(d.deprel) not in ("obj", "obl"):
            continue
        v = s.token(d.head)
        if v.upos != "VERB":
            continue
        common = shared_skeleton(v.lemma, d.lemma, affixes, min_length, min_coverage)
        if common is not None:
            hits.append(PhenomenonHit(s.id, COGNATE_ACCUSATIVE, (v.index, d.index), common))
    return hits


DETECTORS = {
    DUAL: detect_dual,
    PASSIVE: detect_passive,
    COGNATE_ACCUSATIVE: detect_cognate_accusative,
    VERB_ADP_DISTANCE: verb_adposition_distance,
}


def detect_all(treebank, phenomena=tuple(DETECTORS), min_distance=4, features=()):
    """Run the selected detectors over every sentence, sentence order first."""
    hits = []
    for s in treebank.sentences:
        for name in phenomena:
            if name == VERB_ADP_DISTANCE:
                hits.extend(verb_adposition_distance(s, min_distance))
            else:
                hits.extend(DETECTORS[name](s))
        for key, value in features:
            hits.extend(detect_feature(s, key, value))
    return hits


def hits_tsv(hits):
    lines = ["phenomenon\tsent_id\tindices\tdetail"]
    lines.extend(h.tsv() for h in hits)
    return "\n".join(lines) + "\n"
