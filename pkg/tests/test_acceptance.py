"""Acceptance checks. Run with ``pytest tests/test_acceptance.py -v -s`` to
see one PASS/FAIL line per criterion."""

import itertools
import os
import random
import time
from pathlib import Path

import pytest

from lemmapat import (
    KERNEL_BACKEND,
    NO_SYM,
    PreprocessConfig,
    apply_rule,
    extract_instances,
    format_rule,
    induce_rule,
    min_edit_script,
    normalize_corpus,
    parse_conllu,
    read_conllu,
    ruleset_stats,
)
from lemmapat.backends import train_lexicon
from lemmapat.evaluation import evaluate, oracle_evaluate, overlap, overlap_from_predictions, regions
from lemmapat.predictions import CandidateRow, PredictionRow, gold_predictions, lemmatize_corpus, read_predictions

from conftest import ACCEPTANCE_LINES, DATA, edt_path
from oracles import bfs_min_ops, venn_counts
from pipeline import run_pipeline


def verdict(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail}) [kernels: {KERNEL_BACKEND}]"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert ok, detail


def skip_notice(number, why):
    line = f"criterion {number}: SKIP ({why})"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    pytest.skip(why)


def fixture_pairs():
    pairs = set()
    for name in ("fixture.conllu", "fixture-dev.conllu"):
        for inst in extract_instances(read_conllu(DATA / name), dedupe="type"):
            pairs.add((inst.form, inst.lemma))
    return sorted(pairs)


def round_trip_failures(pairs):
    bad = []
    for allow_copy in (False, True):
        for form, lemma in pairs:
            if apply_rule(induce_rule(form, lemma, allow_copy), form) != lemma:
                bad.append((form, lemma, allow_copy))
    return bad


def user_corpora():
    root = os.environ.get("LEMMAPAT_DATA_DIR")
    if not root:
        return []
    return sorted(Path(root).rglob("*.conllu"))


# -- 1 ---------------------------------------------------------------------------

def test_criterion_1_round_trip():
    pairs = fixture_pairs()
    coverage = {
        "capitalized": any(l[:1].isupper() for _, l in pairs),
        "compound": any("_" in l for _, l in pairs),
        "derivation": any("=" in l for _, l in pairs),
        "single character": any(len(f) == 1 for f, _ in pairs),
        "suppletion": any(format_rule(induce_rule(f, l)).split(";")[1].startswith("a") for f, l in pairs),
    }
    start = time.perf_counter()
    bad = round_trip_failures(pairs)
    elapsed = time.perf_counter() - start
    for path in user_corpora():
        user = {(i.form, i.lemma) for i in extract_instances(read_conllu(path), dedupe="type")}
        bad += round_trip_failures(sorted(user))
    missing = [k for k, v in coverage.items() if not v]
    ok = len(pairs) >= 500 and not missing and not bad and elapsed < 1.0
    verdict(1, ok, f"{len(pairs)} fixture pairs x 2 settings in {elapsed:.3f}s, "
                   f"{len(user_corpora())} user corpora, {len(bad)} failures, missing coverage {missing}")


# -- 2 ---------------------------------------------------------------------------

def test_criterion_2_minimality():
    strings = ["".join(p) for n in range(6) for p in itertools.product("abc", repeat=n)]
    start = time.perf_counter()
    mismatches, checked = [], 0
    for source in strings:
        for target in strings:
            for allow_copy in (False, True):
                if len(min_edit_script(source, target, allow_copy)) != bfs_min_ops(source, target, allow_copy):
                    mismatches.append((source, target, allow_copy))
                checked += 1
    elapsed = time.perf_counter() - start
    verdict(2, not mismatches and elapsed < 60,
            f"{checked} script checks over {len(strings) ** 2} pairs in {elapsed:.1f}s, {len(mismatches)} mismatches")


# -- 3 ---------------------------------------------------------------------------

def test_criterion_3_rule_pair():
    plain = induce_rule("vabandavad", "vabandama", allow_copy=False)
    copy = induce_rule("vabandavad", "vabandama", allow_copy=True)
    ok = (
        str(plain.suffix) == "---+m+a"
        and str(copy.suffix) == "-+m→-"
        and apply_rule(plain, "vabandavad") == apply_rule(copy, "vabandavad") == "vabandama"
    )
    verdict(3, ok, f"{format_rule(plain)} and {format_rule(copy)}")


# -- 4 ---------------------------------------------------------------------------

def casing_fixture():
    # One-letter lemmas are left out: capitalized they need only "↑0" while longer
    # lemmas need "↑0¦↓1", so a single do-nothing rule would split in two.
    base = [(f, l) for f, l in fixture_pairs()
            if f == f.lower() and l == l.lower() and f[:1].isalpha() and len(l) > 1]
    lines, n = [], 0
    for form, lemma in base:
        for f, l in ((form, lemma), (form[0].upper() + form[1:], lemma[0].upper() + lemma[1:])):
            n += 1
            lines.append(f"# sent_id = c{n}\n1\t{f}\t{l}\tX\t_\t_\t0\troot\t_\t_\n")
    return parse_conllu("\n".join(lines) + "\n")


def test_criterion_4a_casing_halves_rules():
    corpus = casing_fixture()
    original = ruleset_stats(extract_instances(corpus)).distinct
    lowered = ruleset_stats(extract_instances(normalize_corpus(corpus, PreprocessConfig(lowercase=True)))).distinct
    verdict("4a", 2 * lowered == original, f"{original} distinct rules, {lowered} after lowercasing")


def test_criterion_4b_no_sym_on_edt():
    path = edt_path("train")
    if path is None:
        skip_notice("4b", "EDT v2.10 train not found under LEMMAPAT_DATA_DIR")
    corpus = read_conllu(path)
    original = ruleset_stats(extract_instances(corpus)).distinct
    no_sym = ruleset_stats(extract_instances(normalize_corpus(corpus, NO_SYM))).distinct
    verdict("4b", no_sym <= 0.6 * original, f"No Sym {no_sym} vs Original {original} ({no_sym / original:.1%})")


# -- 5 ---------------------------------------------------------------------------

NEXT_FOUR = ("↓0;d¦-", "↓0;d¦--", "↓0;d¦---", "↓0;d¦-+m+a")


def test_criterion_5_edt_top_rules():
    path = edt_path("train")
    if path is None:
        skip_notice(5, "EDT v2.10 train not found under LEMMAPAT_DATA_DIR")
    stats = ruleset_stats(extract_instances(read_conllu(path)))
    top6 = [rule for rule, _ in stats.top(6)]
    share = stats.share("↓0;d¦")
    ok = abs(share - 0.541) <= 0.02 and top6[0] == "↓0;d¦" and all(r in top6 for r in NEXT_FOUR)
    verdict(5, ok, f"do-nothing share {share:.1%}, top 6 {top6}")


# -- 6 ---------------------------------------------------------------------------

AMBIGUOUS_TRAIN = [
    ("sõidab", "sõitma", 3), ("sõidab", "sõidab", 1),
    ("tee", "tee", 2), ("tee", "tegema", 1),
    ("kas", "kas", 1),
]


def test_criterion_6_gold_and_lexicon():
    dev = read_conllu(DATA / "fixture-dev.conllu")
    gold_report = evaluate(gold_predictions(dev), dev)

    train_lines, n = [], 0
    for form, lemma, count in AMBIGUOUS_TRAIN:
        for _ in range(count):
            n += 1
            train_lines.append(f"# sent_id = t{n}\n1\t{form}\t{lemma}\tX\t_\t_\t0\troot\t_\t_\n")
    model = train_lexicon(extract_instances(parse_conllu("\n".join(train_lines) + "\n")), backoff=["identity"])
    # Gold: sõidab x3 (sõitma,sõitma,sõidab), tee x4 (tee,tee,tegema,tee), kas x2 (kas,kas).
    # The lexicon picks the majority lemma, so the sõidab/sõidab and tee/tegema tokens miss: 7/9.
    test_rows = [("sõidab", "sõitma"), ("sõidab", "sõitma"), ("sõidab", "sõidab"),
                 ("tee", "tee"), ("tee", "tee"), ("tee", "tegema"), ("tee", "tee"),
                 ("kas", "kas"), ("kas", "kas")]
    test = parse_conllu("".join(f"# sent_id = e{i}\n1\t{f}\t{l}\tX\t_\t_\t0\troot\t_\t_\n\n"
                                for i, (f, l) in enumerate(test_rows)))
    preds, _ = lemmatize_corpus(model, test)
    lex_report = evaluate(preds, test)
    ok = gold_report.accuracy == 1.0 and (lex_report.correct, lex_report.total) == (7, 9)
    verdict(6, ok, f"gold-derived {gold_report.accuracy:.3f} on {gold_report.total} tokens, "
                   f"lexicon {lex_report.correct}/{lex_report.total}")


# -- 7 ---------------------------------------------------------------------------

def random_oracle_fixture(rng, singleton):
    lemmas = ["maja", "koer", "olema", "tee", "tegema", "kass", "ja"]
    lines, cands, gold_lemmas = [], [], []
    for s in range(rng.randint(1, 6)):
        lines.append(f"# sent_id = r{s}")
        for t in range(1, rng.randint(2, 8)):
            lemma = rng.choice(lemmas)
            form = lemma + rng.choice(["", "d", "s", "ga"])
            lines.append(f"{t}\t{form}\t{lemma}\tX\t_\t_\t0\troot\t_\t_")
            size = 1 if singleton else rng.randint(1, 4)
            options = rng.sample(lemmas, size)
            cands.append(CandidateRow(f"r{s}", t, form, tuple(options)))
            gold_lemmas.append(lemma)
        lines.append("")
    return parse_conllu("\n".join(lines) + "\n"), cands, gold_lemmas


def test_criterion_7_oracle_dominance():
    rng = random.Random(7)
    violations = []
    strict = 0
    for i in range(100):
        gold, cands, gold_lemmas = random_oracle_fixture(rng, singleton=i % 2 == 0)
        one_best = [PredictionRow(c.sent_id, c.token_id, c.form, c.candidates[0]) for c in cands]
        o = oracle_evaluate(cands, gold)
        b = evaluate(one_best, gold)
        recoverable = any(c.candidates[0] != g and g in c.candidates for c, g in zip(cands, gold_lemmas))
        all_singleton = all(len(c.candidates) == 1 for c in cands)
        if o.correct < b.correct:
            violations.append((i, "oracle below 1-best"))
        if all_singleton and o.correct != b.correct:
            violations.append((i, "singleton lists but unequal"))
        if (o.correct > b.correct) != recoverable:
            violations.append((i, "gain does not match recoverable tokens"))
        strict += o.correct > b.correct
    verdict(7, not violations, f"100 seeded fixtures, {strict} with oracle gain, {len(violations)} violations")


# -- 8 ---------------------------------------------------------------------------

EXPECTED_REGIONS = {("a",): 2, ("b",): 1, ("c",): 3, ("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 2, ("a", "b", "c"): 1}


def test_criterion_8_overlap():
    d = DATA / "overlap"
    gold = read_conllu(d / "gold.conllu")
    preds = {n: read_predictions(d / f"{n}.tsv") for n in "abc"}
    report = overlap_from_predictions([preds[n] for n in "abc"], gold, names=("a", "b", "c"))
    problems = []
    if report.region_counts != EXPECTED_REGIONS:
        problems.append("region counts")
    if sum(report.region_counts.values()) != report.union_errors:
        problems.append("regions do not sum to union")
    for perm in itertools.permutations("abc"):
        relabeled = overlap_from_predictions([preds[n] for n in perm], gold, names=perm)
        if [relabeled.region_counts[r] for r in regions(perm)] != \
                [EXPECTED_REGIONS[tuple(sorted(r))] for r in regions(perm)]:
            problems.append(f"relabeling {''.join(perm)}")
    flags = ([False] * 2302 + [True] * 2892, [False] * 302 + [True] * 4892,
             [False] * 302 + [True] * 2000 + [False] * 2892)
    fmt = overlap(*flags).summary()
    if fmt != "302 out of 5194, 5.8%":
        problems.append(f"format {fmt!r}")
    enumerated = venn_counts(*flags)
    if enumerated.get("ABC") != 302:
        problems.append("format fixture")
    verdict(8, not problems, f"union {report.union_errors}, triple {report.all_three}, "
                             f"format {fmt!r}, problems {problems}")


# -- 9 ---------------------------------------------------------------------------

def test_criterion_9_determinism(tmp_path):
    runs = []
    for name in ("one", "two"):
        (tmp_path / name).mkdir()
        runs.append(run_pipeline(tmp_path / name))
    first, second = runs
    differing = sorted(n for n in first.keys() | second.keys() if first.get(n) != second.get(n))
    verdict(9, not differing, f"{len(first)} output files, differing {differing}")
