import json
import subprocess
import sys

import pytest

from widar.cli import main

DOC = "Storm hits coast. Power is out across the city. Schools closed on Friday."


def corpus(tmp_path, rows, name="c.jsonl"):
    p = tmp_path / name
    p.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return p


def payload(path):
    lines = path.read_text().splitlines()
    assert "_meta" in json.loads(lines[0])
    return [json.loads(x) for x in lines[1:]]


def test_score_identity_row(tmp_path):
    c = corpus(tmp_path, [{"id": "a", "document": DOC, "references": [DOC], "summary": DOC}])
    out = tmp_path / "s.jsonl"
    assert main(["score", str(c), "--out", str(out)]) == 0
    (row,) = payload(out)
    assert row["f"] == 1.0 and row["metric"] == "WIDAR_L"
    assert '"f": 1.000000' in out.read_text()


def test_score_strict_failure(tmp_path, caplog):
    rows = [
        {"id": "a", "document": DOC, "references": [DOC], "summary": DOC},
        {"id": "b", "document": DOC, "references": [DOC], "summary": "..."},
    ]
    c = corpus(tmp_path, rows)
    out = tmp_path / "s.jsonl"
    assert main(["score", str(c), "--out", str(out), "--strict"]) != 0
    assert [r["record_id"] for r in payload(out)] == ["a"]
    assert "record b failed" in caplog.text
    assert main(["score", str(c), "--out", str(out)]) == 0


def test_lambda_zero_equals_idss(tmp_path):
    rows = [
        {"id": f"r{i}", "document": DOC, "references": ["Storm hits the coast."],
         "summary": s}
        for i, s in enumerate(["Power is out.", "Schools closed Friday. Storm.", "Coast storm."])
    ]
    out = tmp_path / "s.jsonl"
    csv_out = tmp_path / "s.csv"
    main(["score", str(corpus(tmp_path, rows)), "--lambda", "0", "--out", str(out), "--csv", str(csv_out)])
    for row in payload(out):
        assert row["r"] == row["p"] == row["f"] == row["idss"]
    assert csv_out.read_text().startswith("record_id,metric,r,p,f")


def test_weights_dump(tmp_path):
    twin = "The mayor declared an emergency. The mayor declared an emergency. Rain fell."
    rows = [
        {"id": "one", "document": DOC, "references": ["Storm hits coast."], "summary": "x"},
        {"id": "twin", "document": DOC, "references": [twin], "summary": "x"},
    ]
    c = corpus(tmp_path, rows)
    out = tmp_path / "w.jsonl"
    assert main(["weights", str(c), "--out", str(out)]) == 0
    got = {r["record_id"]: r for r in map(json.loads, out.read_text().splitlines())}
    assert got["one"]["w"] == [1.0]
    assert got["twin"]["w_red"] == pytest.approx([2 / 3, 2 / 3, 1.0])
    main(["weights", str(c), "--theta1", "0", "--out", str(out)])
    for r in map(json.loads, out.read_text().splitlines()):
        assert all(v == 1.0 for v in r["w_cov"])


def _judged(tmp_path):
    rows = []
    for i in range(6):
        rows.append({
            "id": f"r{i}", "document": DOC, "references": ["Storm hits coast. Power is out."],
            "summary": " ".join(DOC.split()[: 3 + 2 * i]),
            "judgments": {"coherence": 1 + (i * 7) % 5, "consistency": 1 + (i * 3) % 5,
                          "fluency": 1 + (i * 2) % 5, "relevance": 1 + i * 0.5},
        })
    return corpus(tmp_path, rows, "judged.jsonl")


def test_correlate_ranks(tmp_path, capsys):
    judged = _judged(tmp_path)
    ext = tmp_path / "ext.jsonl"
    ext.write_text("".join(
        json.dumps({"id": f"r{i}", "oracle": 1 + i * 0.5, "noise": -i}) + "\n"
        for i in range(6)
    ))
    out = tmp_path / "rep.json"
    assert main(["correlate", str(ext), "--judgments", str(judged), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep[0]["metric"] == "oracle"
    assert rep[0]["relevance"] == 1.0 and rep[0]["ranks"]["relevance"] == 1
    assert rep[0]["ranks"]["average"] == 1
    assert "oracle" in capsys.readouterr().out


def test_correlate_missing_judgment(tmp_path, caplog):
    judged = _judged(tmp_path)
    ext = corpus(tmp_path, [{"id": "zz", "m": 1.0}, {"id": "r1", "m": 2.0}], "ext.jsonl")
    assert main(["correlate", str(ext), "--judgments", str(judged)]) == 2
    assert "zz" in caplog.text


def test_ablate_and_intercorr(tmp_path, capsys):
    judged = _judged(tmp_path)
    assert main(["intercorr", str(judged)]) == 0
    assert "coherence" in capsys.readouterr().out
    assert main(["ablate", str(judged)]) == 0
    assert "IDSS" in capsys.readouterr().out


def test_bench(tmp_path, capsys):
    assert main(["bench", "--records", "0"]) == 2
    out = tmp_path / "b.json"
    assert main(["bench", "--records", "5", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["records"] == 5 and "cpu_count" in rep["machine"]


def test_bad_flag_value(tmp_path):
    c = corpus(tmp_path, [{"id": "a", "document": DOC, "references": [DOC], "summary": DOC}])
    assert main(["score", str(c), "--lambda", "2"]) == 2


def test_console_entry_point(tmp_path):
    c = corpus(tmp_path, [{"id": "a", "document": DOC, "references": [DOC], "summary": DOC}])
    proc = subprocess.run([sys.executable, "-m", "widar.cli", "score", str(c)],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[1].startswith('{"record_id": "a"')
