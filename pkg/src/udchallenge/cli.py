"""Command-line front end.

Exit status: 0 success, 1 usage/IO/parse error, 2 validation or data error.
Every output starts with a ``#`` line echoing the effective options.
"""

import argparse
import logging
import sys

from . import __version__
from .alignment import read_alignments, validate_alignments
from .bleu import (REF_LENGTH, SMOOTHING, TOKENIZE, BleuConfig, mean_sentence_bleu,
                   read_segments, sentence_bleu, tokenize)
from .challenge import challenge_sets_tsv, extract, preset_rules, read_rules
from .confusion import MatrixSpec, build_confusion, export_matrix_tsv, hotspots, hotspots_tsv
from .errors import DataError, ParseError, ValidationError
from .evaluation import evaluate, render_report
from .phenomena import DETECTORS, detect_all, hits_tsv
from .treebank import DEFAULT_CONTENT_UPOS, pair_corpora, read_conllu

log = logging.getLogger("udchallenge")

# options that never change the content of an output
_NOT_ECHOED = {"command", "func", "jobs", "out", "figure", "verbose"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _echo(args):
    parts = []
    for key, value in sorted(vars(args).items()):
        if key in _NOT_ECHOED or value is None or value is False:
            continue
        if isinstance(value, (list, tuple)):
            value = ",".join(map(str, value))
        parts.append(f"{key}={value}")
    return f"# udchallenge {args.command} " + " ".join(parts) + "\n"


def _write(args, body):
    text = _echo(args) + body
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _read_text(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_corpus(args):
    src = read_conllu(args.source, language="source", strict=args.strict)
    tgt = read_conllu(args.target, language="target", strict=args.strict)
    return pair_corpora(src, tgt, mode=args.pairing)


def _load_validated(args):
    corpus = _load_corpus(args)
    alignments = read_alignments(args.alignments)
    report = validate_alignments(alignments, corpus)
    if not report.passed:
        raise ValidationError("alignments do not validate:\n" + report.render(), report)
    return corpus, alignments


def _bleu_config(args):
    weights = None
    if args.weights:
        try:
            weights = [float(w) for w in args.weights.split(",")]
        except ValueError:
            raise UsageError(f"--weights must be comma-separated numbers, got {args.weights!r}") from None
    try:
        return BleuConfig(max_n=args.max_n, weights=weights, smoothing=args.smoothing,
                          epsilon=args.epsilon, ref_length=args.ref_length)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rules(args):
    if args.rules:
        return read_rules(args.rules)
    if args.presets:
        return preset_rules()
    raise UsageError("no rules given: pass --rules FILE or --presets")


def cmd_validate(args):
    corpus = _load_corpus(args)
    alignments = read_alignments(args.alignments)
    report = validate_alignments(alignments, corpus)
    sys.stderr.write(report.render())
    return 0 if report.passed else 2


def cmd_confusion(args):
    corpus, alignments = _load_validated(args)
    spec = MatrixSpec(
        dimension=args.dimension, strip_subtypes=args.strip_subtypes,
        content_only=args.content_only, include_partial=args.include_partial,
        transpose=args.transpose,
    )
    m = build_confusion(corpus, alignments, spec, workers=args.jobs)
    found = hotspots(m, args.min_percent, args.min_count, exclude_diagonal=not args.keep_diagonal)
    if args.hotspots:
        _write(args, hotspots_tsv(found))
    else:
        _write(args, export_matrix_tsv(m, args.mode))
    if args.figure:
        from .plotting import plot_confusion
        plot_confusion(m, args.figure, mode=args.mode,
                       hotspot_cells=[(h.source_label, h.target_label) for h in found])
    return 0


def cmd_extract(args):
    rules = _rules(args)
    corpus, alignments = _load_validated(args)
    sets = extract(corpus, alignments, rules, strip=not args.keep_subtypes,
                   include_partial=args.include_partial, min_matches=args.min_matches)
    _write(args, challenge_sets_tsv(sets))
    return 0


def _keyed(path, default_ids=None):
    ids, texts = read_segments(_read_text(path))
    if ids is None:
        if default_ids is None:
            ids = [str(i) for i in range(1, len(texts) + 1)]
        elif len(texts) > len(default_ids):
            raise DataError(f"{path}: {len(texts)} lines but only {len(default_ids)} sentences")
        else:
            # a short file leaves the trailing ids missing; scoring names the first one
            ids = default_ids[:len(texts)]
    if len(set(ids)) != len(ids):
        raise DataError(f"{path}: repeated sentence id")
    return dict(zip(ids, texts)), ids


def cmd_bleu(args):
    cfg = _bleu_config(args)
    candidates, ids = _keyed(args.candidates)
    references = {}
    for path in args.references:
        refs, _ = _keyed(path, default_ids=ids)
        for sid, text in refs.items():
            references.setdefault(sid, []).append(text)
    lines = ["sent_id\tscore"]
    scores = []
    for sid in ids:
        if sid not in references:
            raise DataError(f"no reference for sentence {sid}")
        s = sentence_bleu(tokenize(candidates[sid], args.tokenize),
                          [tokenize(r, args.tokenize) for r in references[sid]], cfg)
        scores.append(s)
        lines.append(f"{sid}\t{s.score:.9f}")
    if scores:
        lines.append(f"mean\t{mean_sentence_bleu(scores):.9f}")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_detect(args):
    tb = read_conllu(args.treebank, strict=args.strict)
    features = []
    for item in args.feature or ():
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"--feature expects KEY=VALUE, got {item!r}")
        features.append((key, value))
    phenomena = args.phenomena or list(DETECTORS)
    hits = detect_all(tb, phenomena, min_distance=args.min_distance, features=features)
    _write(args, hits_tsv(hits))
    return 0


def cmd_report(args):
    cfg = _bleu_config(args)
    rules = _rules(args)
    corpus, alignments = _load_validated(args)
    ids = corpus.ids()
    candidates, _ = _keyed(args.candidates, default_ids=ids)
    if args.references:
        references = {}
        for path in args.references:
            refs, _ = _keyed(path, default_ids=ids)
            for sid, text in refs.items():
                references.setdefault(sid, []).append(text)
    else:
        references = {
            src.id: tgt.text if tgt.text is not None else " ".join(t.form for t in tgt.tokens)
            for src, tgt in corpus.pairs
        }
    sets = extract(corpus, alignments, rules, strip=not args.keep_subtypes,
                   include_partial=args.include_partial, min_matches=args.min_matches)
    report = evaluate(corpus, sets, candidates, references, cfg, margin=args.margin,
                      tokenization=args.tokenize, workers=args.jobs)
    _write(args, render_report(report, args.format))
    if args.figure:
        from .plotting import plot_report
        plot_report(report, args.figure)
    return 0


def _add_corpus_args(p):
    p.add_argument("--source", required=True, help="source-language CoNLL-U treebank")
    p.add_argument("--target", required=True, help="target-language CoNLL-U treebank")
    p.add_argument("--alignments", required=True,
                   help="alignment file: sent_id<TAB>i-j ... [!partial], 1-based indices")
    p.add_argument("--pairing", choices=("by-id", "by-position"), default="by-id",
                   help="pair sentences by sent_id (default) or by position")
    p.add_argument("--strict", action="store_true", help="treat sentences without exactly one root as errors")


def _add_output_args(p):
    p.add_argument("--out", help="write output here instead of standard output")


def _add_rule_args(p):
    p.add_argument("--rules", help="rules file: name<TAB>UPOS|DEPREL<TAB>source<TAB>target")
    p.add_argument("--presets", action="store_true", help="use the six built-in divergence rules")
    p.add_argument("--keep-subtypes", action="store_true",
                   help="compare DEPREL labels with their subtypes (default strips them)")
    p.add_argument("--include-partial", action="store_true", help="also match sentences flagged !partial")
    p.add_argument("--min-matches", type=int, default=1, help="matching links a sentence needs (default 1)")


def _add_bleu_args(p):
    p.add_argument("--max-n", type=int, default=4, help="highest n-gram order (default 4)")
    p.add_argument("--weights", help="comma-separated order weights summing to 1 (default uniform)")
    p.add_argument("--smoothing", choices=SMOOTHING, default="none")
    p.add_argument("--epsilon", type=float, default=0.1, help="numerator for zero-match orders under epsilon_floor")
    p.add_argument("--ref-length", choices=REF_LENGTH, default="shortest",
                   help="effective reference length rule (default shortest)")
    p.add_argument("--tokenize", choices=TOKENIZE, default="whitespace")


def _add_jobs(p):
    p.add_argument("--jobs", type=int, default=1, help="worker threads; output does not depend on it")


def build_parser():
    parser = _Parser(prog="udchallenge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check treebank pairing and alignments (report on stderr)")
    _add_corpus_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("confusion", help="cross-lingual confusion matrix or hotspot list as TSV")
    _add_corpus_args(p)
    _add_output_args(p)
    _add_jobs(p)
    p.add_argument("--dimension", type=str.upper, choices=("UPOS", "DEPREL"), default="UPOS")
    p.add_argument("--strip-subtypes", action="store_true", help="drop ':subtype' from relations")
    p.add_argument("--content-only", action="store_true",
                   help="count unaligned tokens only if their UPOS is in "
                        + ",".join(sorted(DEFAULT_CONTENT_UPOS)))
    p.add_argument("--include-partial", action="store_true", help="include sentences flagged !partial")
    p.add_argument("--transpose", action="store_true", help="target labels as rows")
    p.add_argument("--mode", choices=("counts", "percent"), default="counts")
    p.add_argument("--hotspots", action="store_true", help="emit hotspot cells instead of the matrix")
    p.add_argument("--min-percent", type=float, default=8.0)
    p.add_argument("--min-count", type=int, default=50)
    p.add_argument("--keep-diagonal", action="store_true", help="allow diagonal cells as hotspots")
    p.add_argument("--figure", help="also render a heatmap to this image file")
    p.set_defaults(func=cmd_confusion)

    p = sub.add_parser("extract", help="challenge sets as rule<TAB>sent_id<TAB>links")
    _add_corpus_args(p)
    _add_output_args(p)
    _add_rule_args(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("bleu", help="sentence BLEU per line plus the mean")
    p.add_argument("--candidates", required=True, help="one sentence per line, or sent_id<TAB>text")
    p.add_argument("--references", required=True, nargs="+", help="one or more reference files")
    _add_bleu_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("detect", help="Arabic construction detectors over one treebank")
    p.add_argument("--treebank", required=True, help="CoNLL-U treebank (usually the target side)")
    p.add_argument("--phenomena", nargs="+", choices=list(DETECTORS),
                   help="detectors to run (default all)")
    p.add_argument("--feature", action="append", metavar="KEY=VALUE",
                   help="extra morphological feature to report; repeatable")
    p.add_argument("--min-distance", type=int, default=4, help="verb-adposition distance threshold")
    p.add_argument("--strict", action="store_true")
    _add_output_args(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("report", help="per-phenomenon BLEU means against the corpus baseline")
    _add_corpus_args(p)
    _add_rule_args(p)
    p.add_argument("--candidates", required=True,
                   help="MT output, line-aligned with the corpus or keyed sent_id<TAB>text")
    p.add_argument("--references", nargs="+",
                   help="reference files (default: '# text' of the target treebank)")
    _add_bleu_args(p)
    p.add_argument("--margin", type=float, default=0.02,
                   help="a set is challenging when its mean <= baseline - margin")
    p.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    p.add_argument("--figure", help="also render a bar chart to this image file")
    _add_output_args(p)
    _add_jobs(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "margin", 0) < 0:
        parser.error("--margin must be >= 0")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"udchallenge: error: {exc}\n")
        return 1
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        sys.stderr.write(f"udchallenge: {exc}\n")
        return 1
    except (DataError, ValueError) as exc:
        sys.stderr.write(f"udchallenge: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
