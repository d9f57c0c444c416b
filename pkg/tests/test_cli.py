"""Command-line surface."""

import json

from khoco.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_params_hopf_reduced(capsys):
    code, out = run(capsys, "params", "hopf", "--reduced", "--degree", "0")
    doc = json.loads(out)
    assert code == 0
    assert doc["d_hat"] == 2 and doc["n"] == 2 and doc["k"] == 1


def test_params_unknot(capsys):
    code, out = run(capsys, "params", "unknot0", "--degree", "0")
    doc = json.loads(out)
    assert code == 0
    assert (doc["n"], doc["k"], doc["d"]) == (2, 2, 1)


def test_params_shifted_convention(capsys):
    code, out = run(capsys, "params", "braid_s1s2m1s1m1s2",
                    "--degree", "2", "--convention", "shifted")
    doc = json.loads(out)
    assert code == 0
    assert doc["d"] == 4


def test_distance_command(capsys):
    code, out = run(capsys, "distance", "hopf", "--reduced", "--degree", "0")
    assert code == 0
    assert json.loads(out)["d_hat"] == 2


def test_family_csv(capsys):
    code, out = run(capsys, "family", "iterated-hopf", "--l", "2", "--csv")
    assert code == 0
    assert out.splitlines()[1] == "iterated-hopf,2,304,6,4"


def test_family_cross_check(capsys):
    code, out = run(capsys, "family", "tree-unlink", "--l", "1",
                    "--cross-check")
    assert code == 0
    lines = out.strip().splitlines()
    assert json.loads(lines[-1])["ok"] is True


def test_sl3_tier2(capsys):
    code, out = run(capsys, "sl3", "unknot", "--l", "1", "--tier", "2")
    doc = json.loads(out)
    assert code == 0
    assert (doc["n"], doc["k"], doc["d"]) == (39, 3, 3)
    assert len(doc["witness"]["support"]) == 3


def test_annular_fixture(capsys):
    code, out = run(capsys, "annular", "annular_D3", "--adeg", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["d"] == 3


def test_annular_family_shortcut(capsys):
    code, out = run(capsys, "annular", "D2")
    doc = json.loads(out)
    assert code == 0
    assert doc["d"] == 2


def test_asymptotics(capsys):
    code, out = run(capsys, "asymptotics", "sl3-n", "--at", "200", "--csv")
    assert code == 0
    err = float(out.strip().splitlines()[-1].split(",")[-1])
    assert err <= 0.01


def test_bad_input_exit_code(capsys):
    code = main(["params", "no_such_fixture_anywhere.json",
                 "--degree", "0"])
    assert code == 2


def test_verify_paper_section_b(capsys):
    code, out = run(capsys, "verify-paper", "--section", "B")
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0
    assert [r["check_id"] for r in records] == ["appendix-asymptotics"]
    assert records[0]["status"] == "pass"


def test_verify_paper_pool_keeps_order(capsys):
    code, out = run(capsys, "verify-paper", "--section", "2", "--jobs", "4")
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0
    assert [r["check_id"] for r in records] == sorted(r["check_id"]
                                                      for r in records)


def test_every_check_id_is_documented():
    import os
    from khoco.cli import CHECKS
    readme = open(os.path.join(os.path.dirname(__file__), "..",
                               "README.md")).read()
    for cid in CHECKS:
        assert f"`{cid}`" in readme, f"check id {cid} missing from the index"


def test_reports_are_byte_stable(capsys):
    runs = []
    for _ in range(2):
        _, out = run(capsys, "params", "torus_2_4", "--reduced",
                     "--degree", "2")
        runs.append(out)
    assert runs[0] == runs[1]


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("KHOCO_BUDGET_MS", "1")
    code, out = run(capsys, "distance", "torus_2_5", "--degree", "3")
    doc = json.loads(out)
    if code == 3:
        assert doc["exact"] is False
    else:
        assert code == 0 and doc["exact"] is True


def test_debug_dump_round_trips_dims(capsys):
    from khoco import builders
    from khoco.khovanov import build_complex
    cx = build_complex(builders.hopf(pointed=True), reduced=True)
    doc = cx.to_debug_json()
    assert doc["dims"] == {"0": 2, "1": 2, "2": 2}
    assert doc["field"] == 2 and doc["epsilon"] == 1
