"""Command-line interface.

Every command reads all inputs and computes its results before writing
anything, and reports contain no timestamps, so identical inputs and flags
give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .backends import (
    BackendModel,
    DEFAULT_MAX_SUFFIX,
    Prediction,
    combine_predictions,
    dumps_model,
    load_model,
    train_ensemble,
    train_identity,
    train_lexicon,
    train_pattern,
)
from .conllu import extract_instances, parse_conllu, write_conllu
from .errors import LemmapatError
from .evaluation import (
    REPORT_SCHEMA_VERSION,
    TYPE_KEYS,
    evaluate,
    oracle_evaluate,
    overlap_from_predictions,
)
from .predictions import (
    CandidateRow,
    PredictionRow,
    format_candidates,
    format_predictions,
    lemmatize_corpus,
    parse_candidates,
    parse_predictions,
)
from .preprocess import DEFAULT_SYMBOLS, PreprocessConfig, normalize_corpus
from .rules import ruleset_stats, strip_casing

DATA_DIR_ENV = "LEMMAPAT_DATA_DIR"


class _Inputs:
    """Reads input files once and remembers their digests."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def text(self, path: str) -> str:
        resolved = _resolve(path)
        data = resolved.read_bytes()
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def corpus(self, path: str):
        return parse_conllu(self.text(path), source_name=Path(path).name)

    def model(self, path: str) -> BackendModel:
        from .backends import loads_model
        return loads_model(self.text(path))


def _resolve(path: str) -> Path:
    p = Path(path)
    if not p.exists() and not p.is_absolute() and os.environ.get(DATA_DIR_ENV):
        alt = Path(os.environ[DATA_DIR_ENV]) / p
        if alt.exists():
            return alt
    if not p.exists():
        raise LemmapatError(f"input file not found: {path}")
    return p


def _config(args) -> dict:
    skip = {"func", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _preprocess_config(args) -> PreprocessConfig:
    symbols = args.strip_symbols
    lowercase = args.lowercase
    if args.no_sym:
        lowercase = True
        symbols = symbols or "".join(sorted(DEFAULT_SYMBOLS))
    return PreprocessConfig(
        lowercase=lowercase,
        strip_symbols=frozenset(symbols or ""),
        apply_to=args.apply_to,
        keep_degenerate=args.keep_degenerate,
    )


def _report(args, inputs: _Inputs, body: dict) -> str:
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": args.command,
        "config": _config(args),
        "inputs": dict(sorted(inputs.digests.items())),
        **body,
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _write(outputs: list[tuple[str | None, str]]) -> None:
    for path, text in outputs:
        if path is None:
            continue
        if path == "-":
            sys.stdout.write(text)
        else:
            Path(path).write_text(text, encoding="utf-8")


# -- commands -------------------------------------------------------------------

def cmd_preprocess(args) -> int:
    inputs = _Inputs()
    corpus = normalize_corpus(inputs.corpus(args.input), _preprocess_config(args))
    _write([(args.output, write_conllu(corpus))])
    return 0


def cmd_stats(args) -> int:
    inputs = _Inputs()
    corpus = inputs.corpus(args.input)
    cfg = _preprocess_config(args)
    top_k = args.top_k or None

    def stats_for(c):
        instances = extract_instances(c, "token" if args.weighting == "token" else "type")
        return ruleset_stats(instances, allow_copy=args.allow_copy, weighting=args.weighting)

    stats = stats_for(normalize_corpus(corpus, cfg))
    body = {"regime": cfg.to_dict(), "stats": stats.to_json_dict(top_k)}
    if args.both_regimes:
        original = stats_for(corpus)
        no_sym = stats_for(normalize_corpus(corpus, PreprocessConfig.no_sym()))
        body["regimes"] = {
            "original": original.to_json_dict(top_k),
            "no_sym": no_sym.to_json_dict(top_k),
            "distinct_ratio_no_sym_to_original": round(no_sym.distinct / original.distinct, 9),
            "distinct_bodies_original": len({strip_casing(r) for r in original.counts}),
        }
    outputs = [(args.out_tsv, stats.to_tsv(top_k)), (args.out_json, _report(args, inputs, body))]
    _write(outputs)
    if not args.quiet:
        for rule, count, share in stats.top(args.top_k or 5):
            print(f"{100 * share:5.1f}\t{rule}\t{count}")
    return 0


def _train_model(args, inputs: _Inputs) -> BackendModel:
    if args.backend == "identity":
        return train_identity(args.name)
    if args.backend == "ensemble":
        if len(args.member) < 2:
            raise LemmapatError("an ensemble needs at least two --member models")
        members = [inputs.model(p) for p in args.member]
        return train_ensemble(members, _split(args.priority), args.name)
    if not args.input:
        raise LemmapatError(f"training a {args.backend} model needs an input corpus")
    corpus = normalize_corpus(inputs.corpus(args.input), _preprocess_config(args))
    instances = extract_instances(corpus, args.dedupe)
    if not instances:
        raise LemmapatError("the training corpus has no lemmatized tokens")
    if args.backend == "pattern":
        return train_pattern(instances, args.allow_copy, args.max_suffix, args.name)
    backoff = None
    if args.backoff is not None:
        chain = _split(args.backoff) or []
        backoff = []
        for kind in chain:
            if kind == "pattern":
                backoff.append(train_pattern(instances, args.allow_copy, args.max_suffix))
            elif kind == "identity":
                backoff.append(train_identity())
            elif kind != "none":
                raise LemmapatError(f"unknown backoff backend {kind!r}")
    return train_lexicon(instances, args.key, backoff, args.name, args.allow_copy, args.max_suffix)


def _split(value):
    if value is None:
        return None
    return [v for v in value.split(",") if v]


def cmd_train(args) -> int:
    inputs = _Inputs()
    model = _train_model(args, inputs)
    _write([(args.output, dumps_model(model))])
    return 0


def cmd_lemmatize(args) -> int:
    inputs = _Inputs()
    model = inputs.model(args.model)
    corpus = normalize_corpus(inputs.corpus(args.input), _preprocess_config(args))
    preds, cands = lemmatize_corpus(model, corpus)
    _write([(args.output, format_predictions(preds)),
            (args.candidates, format_candidates(cands))])
    return 0


def cmd_eval(args) -> int:
    inputs = _Inputs()
    gold = inputs.corpus(args.gold)
    cfg = _preprocess_config(args)
    if (args.pred is None) == (args.model is None):
        raise LemmapatError("give exactly one of --pred or --model")
    provenance = {}
    if args.model:
        model = inputs.model(args.model)
        preds, _ = lemmatize_corpus(model, normalize_corpus(gold, cfg))
        provenance = {"model": model.name, "model_kind": model.kind}
    else:
        preds = parse_predictions(inputs.text(args.pred), args.pred)
    report = evaluate(preds, gold, args.mode, cfg, args.type_key, source=args.pred or args.model)
    report.provenance.update(provenance)
    if args.train_source:
        report.provenance.update({"train_source": args.train_source, "eval_source": gold.source_name})
    _write([(args.output, _report(args, inputs, {"report": report.to_dict()}))])
    if not args.quiet:
        sys.stdout.write(report.table())
    return 0


def cmd_oracle_eval(args) -> int:
    inputs = _Inputs()
    gold = inputs.corpus(args.gold)
    cfg = _preprocess_config(args)
    cands = parse_candidates(inputs.text(args.candidates), args.candidates)
    oracle = oracle_evaluate(cands, gold, cfg, args.mode, args.type_key, source=args.candidates)
    one_best_rows = [PredictionRow(r.sent_id, r.token_id, r.form, r.candidates[0]) for r in cands if r.candidates]
    if args.pred:
        one_best_rows = parse_predictions(inputs.text(args.pred), args.pred)
    one_best = evaluate(one_best_rows, gold, args.mode, cfg, args.type_key, source=args.pred or args.candidates)
    body = {"oracle": oracle.to_dict(), "one_best": one_best.to_dict(),
            "oracle_gain": round(oracle.accuracy - one_best.accuracy, 9)}
    if oracle.correct < one_best.correct:
        raise LemmapatError(
            f"oracle accuracy {oracle.accuracy:.4f} is below 1-best accuracy {one_best.accuracy:.4f}; "
            "the candidate lists do not contain the 1-best predictions"
        )
    _write([(args.output, _report(args, inputs, body))])
    if not args.quiet:
        sys.stdout.write(one_best.table())
        sys.stdout.write(oracle.table())
    return 0


def cmd_overlap(args) -> int:
    inputs = _Inputs()
    if len(args.pred) != 3:
        raise LemmapatError("overlap needs exactly three --pred files")
    gold = inputs.corpus(args.gold)
    names = _split(args.names) or [Path(p).stem for p in args.pred]
    preds = [parse_predictions(inputs.text(p), p) for p in args.pred]
    report = overlap_from_predictions(preds, gold, names, _preprocess_config(args))
    _write([(args.output, _report(args, inputs, {"overlap": report.to_dict()})),
            (args.tsv, report.to_tsv())])
    if not args.quiet:
        print(f"errors shared by all three systems: {report.summary()}")
    return 0


def cmd_ensemble(args) -> int:
    inputs = _Inputs()
    corpus = normalize_corpus(inputs.corpus(args.input), _preprocess_config(args))
    members: list[tuple[str, object]] = []
    for path in args.model or []:
        model = inputs.model(path)
        members.append((model.name, model))
    for path in args.pred or []:
        rows = parse_predictions(inputs.text(path), path)
        members.append((Path(path).stem, {(r.sent_id, r.token_id): r.lemma for r in rows}))
    names = [n for n, _ in members]
    if len(members) < 2:
        raise LemmapatError("an ensemble needs at least two members (--model or --pred)")
    if len(set(names)) != len(names):
        raise LemmapatError(f"ensemble member names must be unique: {names}")
    priority = _split(args.priority) or names
    if sorted(priority) != sorted(names):
        raise LemmapatError(f"--priority must list each member once: {names}")
    order = [dict(members)[n] for n in priority]
    preds, cands = [], []
    for sent, tok in corpus.tokens():
        votes = []
        for member in order:
            if isinstance(member, BackendModel):
                votes.append(member.predict(tok.form, tok.upos, tok.canonical_feats))
            else:
                lemma = member.get((sent.sent_id, tok.id))
                if lemma is None:
                    raise LemmapatError(f"prediction file lacks token {sent.sent_id}/{tok.id}")
                votes.append(Prediction(lemma, ((lemma, 1.0),)))
        p = combine_predictions(votes)
        preds.append(PredictionRow(sent.sent_id, tok.id, tok.form, p.lemma))
        cands.append(CandidateRow(sent.sent_id, tok.id, tok.form, p.candidate_lemmas))
    _write([(args.output, format_predictions(preds)), (args.candidates, format_candidates(cands))])
    return 0


# -- parser ---------------------------------------------------------------------

def _add_preprocess_flags(p):
    g = p.add_argument_group("preprocessing")
    g.add_argument("--lowercase", action="store_true", help="lowercase forms and lemmas")
    g.add_argument("--strip-symbols", nargs="?", const="=_", default="", metavar="CHARS",
                   help="remove these characters from lemmas (default when given without value: '=_')")
    g.add_argument("--no-sym", action="store_true", help="shorthand for --lowercase --strip-symbols")
    g.add_argument("--apply-to", choices=("form-and-lemma", "lemma-only"), default="form-and-lemma",
                   help="columns that --lowercase touches")
    g.add_argument("--keep-degenerate", action="store_true",
                   help="leave lemmas made only of stripped symbols unchanged instead of failing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lemmapat", description="Induce, apply and evaluate lemma transformation rules on CoNLL-U data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="normalize a CoNLL-U file")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("stats", help="frequency table of induced lemma rules")
    p.add_argument("input")
    p.add_argument("--out-tsv")
    p.add_argument("--out-json")
    p.add_argument("--allow-copy", action="store_true")
    p.add_argument("--weighting", choices=("token", "type"), default="token")
    p.add_argument("--top-k", type=int, default=5, help="rows to report; 0 for all")
    p.add_argument("--both-regimes", action="store_true",
                   help="also report original and No Sym tables with their distinct-rule ratio")
    p.add_argument("-q", "--quiet", action="store_true")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", help="train a lemmatizer backend")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--backend", choices=("identity", "lexicon", "pattern", "ensemble"), required=True)
    p.add_argument("--name")
    p.add_argument("--key", choices=("form", "form+upos"), default="form")
    p.add_argument("--allow-copy", action="store_true")
    p.add_argument("--max-suffix", type=int, default=DEFAULT_MAX_SUFFIX)
    p.add_argument("--dedupe", choices=("token", "type"), default="token")
    p.add_argument("--backoff", help="comma-separated lexicon backoff chain (default pattern,identity; 'none' to disable)")
    p.add_argument("--member", action="append", default=[], help="ensemble member model (repeatable)")
    p.add_argument("--priority", help="comma-separated member names, highest priority first")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("lemmatize", help="predict lemmas for a CoNLL-U file")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--candidates", help="also write candidate lists")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_lemmatize)

    for name, func in (("eval", cmd_eval), ("oracle-eval", cmd_oracle_eval)):
        p = sub.add_parser(name, help="score predictions against gold lemmas" if name == "eval"
                           else "score candidate lists in oracle mode")
        p.add_argument("--gold", required=True)
        if name == "eval":
            p.add_argument("--pred")
            p.add_argument("--model")
            p.add_argument("--train-source", help="name of the training corpus, recorded for cross-domain runs")
        else:
            p.add_argument("--candidates", required=True)
            p.add_argument("--pred", help="1-best predictions (default: first candidate)")
        p.add_argument("--mode", choices=("token", "type"), default="token")
        p.add_argument("--type-key", choices=TYPE_KEYS, default=TYPE_KEYS[0])
        p.add_argument("-o", "--output")
        p.add_argument("-q", "--quiet", action="store_true")
        _add_preprocess_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("overlap", help="three-system error overlap")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", action="append", default=[], help="prediction file (give three)")
    p.add_argument("--names", help="comma-separated system names")
    p.add_argument("-o", "--output")
    p.add_argument("--tsv", help="write the 7 region counts as TSV")
    p.add_argument("-q", "--quiet", action="store_true")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("ensemble", help="majority-vote ensemble over models or prediction files")
    p.add_argument("input")
    p.add_argument("--model", action="append", help="member model (repeatable)")
    p.add_argument("--pred", action="append", help="member prediction file (repeatable)")
    p.add_argument("--priority", help="comma-separated member names, highest priority first")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--candidates")
    _add_preprocess_flags(p)
    p.set_defaults(func=cmd_ensemble)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LemmapatError as exc:
        print(f"lemmapat {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        print(f"lemmapat {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
