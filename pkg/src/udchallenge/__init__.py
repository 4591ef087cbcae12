"""Syntactic-divergence challenge sets from parallel UD treebanks.

Typical pipeline: parse two CoNLL-U treebanks, pair them, load 1-based word
alignments, build confusion matrices to find divergent label pairs, extract
the sentences showing each divergence, and compare their mean sentence BLEU
with the whole-corpus mean.
"""

__version__ = "0.1.0"

from .alignment import (NONE, AlignmentLink, AlignmentSet, Coverage, Dimension,
                        SentenceAlignment, labeled_pairs, parse_alignments,
                        serialize_alignments, validate_alignments)
from .bleu import (BleuConfig, BleuScore, brevity_penalty, mean_sentence_bleu,
                   modified_precision, sentence_bleu, tokenize)
from .challenge import (ChallengeSet, DivergenceRule, RuleMatch, extract,
                        parse_rules_file, preset_rules, sentence_matches)
from .confusion import (ConfusionMatrix, Hotspot, MatrixSpec, build_confusion,
                        export_matrix_tsv, hotspots, import_matrix_tsv, row_percentages)
from .errors import (DataError, MissingSegmentError, PairingError, ParseError,
                     ValidationError)
from .evaluation import (EvaluationReport, PhenomenonScore, apply_verdicts,
                         compute_baseline, evaluate, render_report, score_challenge_sets)
from .phenomena import (PhenomenonHit, detect_cognate_accusative, detect_feature,
                        verb_adposition_distance)
from .treebank import (ParallelCorpus, Sentence, Token, Treebank, content_tokens,
                       pair_corpora, parse_conllu, serialize_conllu, strip_subtype)

__all__ = ["__version__", "NONE", "AlignmentLink", "AlignmentSet", "Coverage", "Dimension",
    "SentenceAlignment", "labeled_pairs", "parse_alignments", "serialize_alignments",
    "validate_alignments", "BleuConfig", "BleuScore", "brevity_penalty", "mean_sentence_bleu",
    "modified_precision", "sentence_bleu", "tokenize", "ChallengeSet", "DivergenceRule",
    "RuleMatch", "extract", "parse_rules_file", "preset_rules", "sentence_matches",
    "ConfusionMatrix", "Hotspot", "MatrixSpec", "build_confusion", "export_matrix_tsv", "hotspots",
    "import_matrix_tsv", "row_percentages", "DataError", "MissingSegmentError", "PairingError",
    "ParseError", "ValidationError", "EvaluationReport", "PhenomenonScore", "apply_verdicts",
    "compute_baseline", "evaluate", "render_report", "score_challenge_sets", "PhenomenonHit",
    "detect_cognate_accusative", "detect_feature", "verb_adposition_distance", "ParallelCorpus",
    "Sentence", "Token", "Treebank", "content_tokens", "pair_corpora", "parse_conllu",
    "serialize_conllu", "strip_subtype"]
