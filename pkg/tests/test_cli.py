import json
import os
import shutil

import pytest

from lemmapat import parse_conllu, read_conllu, write_conllu
from lemmapat.cli import main
from pipeline import DATA, GOLDEN, GOLDEN_FILES, chdir, run_pipeline


@pytest.fixture(scope="module")
def pipeline_run(tmp_path_factory):
    return run_pipeline(tmp_path_factory.mktemp("run1"))


def test_golden_outputs(pipeline_run):
    if os.environ.get("LEMMAPAT_UPDATE_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        for name in GOLDEN_FILES:
            (GOLDEN / name).write_bytes(pipeline_run[name])
    for name in GOLDEN_FILES:
        assert pipeline_run[name] == (GOLDEN / name).read_bytes(), name


def test_two_runs_identical(pipeline_run, tmp_path):
    second = run_pipeline(tmp_path)
    assert sorted(second) == sorted(pipeline_run)
    for name, data in pipeline_run.items():
        assert second[name] == data, name


def test_models_are_plain_json(pipeline_run):
    model = json.loads(pipeline_run["pattern.json"])
    assert model["format"] == "lemmapat-model"
    assert model["version"] == 1


def test_preprocess_identity_round_trip(tmp_path, capsys):
    out = tmp_path / "out.conllu"
    assert main(["preprocess", str(DATA / "small.conllu"), "-o", str(out)]) == 0
    assert out.read_bytes() == (DATA / "small.conllu").read_bytes()


def test_preprocess_no_sym(tmp_path):
    src = tmp_path / "in.conllu"
    src.write_text(
        "# sent_id = a\n"
        "1\tÕpetajad\tõpeta=ja\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "2\tkoolimaja\tkool_maja\tNOUN\t_\t_\t1\tnmod\t_\t_\n\n",
        encoding="utf-8",
    )
    expected = (
        "# sent_id = a\n"
        "1\tõpetajad\tõpetaja\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "2\tkoolimaja\tkoolmaja\tNOUN\t_\t_\t1\tnmod\t_\t_\n\n"
    )
    out = tmp_path / "out.conllu"
    assert main(["preprocess", str(src), "--no-sym", "-o", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == expected


def test_degenerate_lemma_fails(tmp_path, capsys):
    src = tmp_path / "in.conllu"
    src.write_text("1\t=\t=\tPUNCT\t_\t_\t0\troot\t_\t_\n\n", encoding="utf-8")
    out = tmp_path / "out.conllu"
    assert main(["preprocess", str(src), "--no-sym", "-o", str(out)]) == 1
    assert not out.exists()
    assert "error" in capsys.readouterr().err
    assert main(["preprocess", str(src), "--no-sym", "--keep-degenerate", "-o", str(out)]) == 0


def test_stats_single_pair(tmp_path):
    src = tmp_path / "one.conllu"
    src.write_text("1\tvabandavad\tvabandama\tVERB\t_\t_\t0\troot\t_\t_\n\n", encoding="utf-8")
    tsv = tmp_path / "rules.tsv"
    assert main(["stats", str(src), "--out-tsv", str(tsv), "-q"]) == 0
    assert tsv.read_text(encoding="utf-8") == "rule\tcount\tshare\n↓0;d¦---+m+a\t1\t1.000000\n"


def test_stats_json_ranked(tmp_path):
    out = tmp_path / "rules.json"
    assert main(["stats", str(DATA / "fixture.conllu"), "--top-k", "0", "--out-json", str(out), "-q"]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["schema_version"] == 1
    assert doc["command"] == "stats"
    assert len(doc["inputs"]) == 1


def test_eval_gold_as_predictions(tmp_path):
    pred = tmp_path / "gold.tsv"
    out = tmp_path / "eval.json"
    corpus = read_conllu(DATA / "fixture-dev.conllu")
    from lemmapat.predictions import format_predictions, gold_predictions

    pred.write_text(format_predictions(gold_predictions(corpus)), encoding="utf-8")
    assert main(["eval", "--gold", str(DATA / "fixture-dev.conllu"), "--pred", str(pred), "-o", str(out), "-q"]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))["report"]
    assert report["accuracy"] == 1.0
    assert report["total"] == corpus.token_count - report["skipped"]


def test_overlap_bundled(tmp_path):
    d = DATA / "overlap"
    out = tmp_path / "ov.json"
    args = ["overlap", "--gold", str(d / "gold.conllu")]
    for s in "abc":
        args += ["--pred", str(d / f"{s}.tsv")]
    assert main(args + ["-o", str(out), "-q"]) == 0
    ov = json.loads(out.read_text(encoding="utf-8"))["overlap"]
    counts = {r["region"]: r["count"] for r in ov["regions"]}
    assert counts == {"a": 2, "b": 1, "c": 3, "a&b": 1, "a&c": 1, "b&c": 2, "a&b&c": 1}
    assert ov["union_errors"] == 11
    assert ov["summary"] == "1 out of 11, 9.1%"


def test_overlap_needs_three(tmp_path, capsys):
    d = DATA / "overlap"
    args = ["overlap", "--gold", str(d / "gold.conllu"), "--pred", str(d / "a.tsv"), "--pred", str(d / "b.tsv")]
    assert main(args) != 0


def test_misaligned_predictions_fail(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("sent_id\ttoken_id\tform\tpredicted_lemma\no1\t1\tkassid\tkass\n", encoding="utf-8")
    out = tmp_path / "eval.json"
    assert main(["eval", "--gold", str(DATA / "overlap" / "gold.conllu"), "--pred", str(bad), "-o", str(out)]) == 1
    assert not out.exists()
    assert "bad.tsv" in capsys.readouterr().err


def test_data_dir_resolution(tmp_path, monkeypatch):
    shutil.copy(DATA / "small.conllu", tmp_path / "small.conllu")
    monkeypatch.setenv("LEMMAPAT_DATA_DIR", str(tmp_path))
    out = tmp_path / "x.conllu"
    with chdir(DATA.parent):
        assert main(["preprocess", "small.conllu", "--lowercase", "-o", str(out)]) == 0
    corpus = parse_conllu(out.read_text(encoding="utf-8"))
    assert corpus.sentences[0].tokens[0].form == "koerad"
    assert write_conllu(corpus).count("\n") == (DATA / "small.conllu").read_text().count("\n")


def test_missing_input_is_error(tmp_path, capsys):
    assert main(["preprocess", str(tmp_path / "nope.conllu")]) == 1
