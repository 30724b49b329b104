import json
import subprocess
import sys

import pytest

from gyrotable import catalog
from gyrotable.cli import main
from gyrotable.tablefile import parse, parse_many, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_verify_catalog(capsys):
    code, data = run_json(capsys, "verify", "@K1")
    assert code == 0
    assert data["is_gyrogroup"] and not data["is_degenerate"]
    assert data["declared_gyr_matches"] is True
    assert data["name"] == "K1" and data["order"] == 8


def test_verify_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("gyrotable 1\norder 5\ncayley\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n")
    code, data = run_json(capsys, "verify", str(bad))
    assert code == 1 and data["is_gyrogroup"] is False


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", "@P9")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 2
    f = tmp_path / "short.txt"
    f.write_text("gyrotable 1\norder 2\ncayley\n0 1\n1\n")
    code, _, err = run(capsys, "verify", str(f))
    assert code == 2 and "line 5" in err
    assert run(capsys, "normal", "@K1", "--subset", "0,4,5")[0] == 2
    assert run(capsys, "normal", "@K1", "--subset", "a,b")[0] == 2


def test_double_to_file(capsys, tmp_path):
    out = tmp_path / "k16.txt"
    code, _, _ = run(capsys, "double", "@K1", "-o", str(out))
    assert code == 0
    g = parse(out.read_text())
    assert g.order == 16 and g.name == "K1-D1" and g.op(4, 12) == 8
    code, data = run_json(capsys, "double", "@K1", "-k", "2")
    assert data["order"] == 32 and data["name"] == "K1-D2"
    assert parse(data["table"]).order == 32


def test_double_cap(capsys, monkeypatch):
    monkeypatch.setenv("GYROTABLE_MAX_ORDER", "16")
    assert run(capsys, "double", "@K1", "-k", "2")[0] == 3


def test_subs(capsys, tmp_path):
    code, data = run_json(capsys, "subs", "@K1")
    assert code == 0 and data["count"] == 10
    assert data["subgyrogroups"][0] == {"members": [0], "size": 1}
    f = tmp_path / "d.txt"
    run(capsys, "double", "@K1", "-o", str(f))
    code, data = run_json(capsys, "subs", str(f), "--classify-against", "@K1")
    assert code == 0 and data["count"] == 35
    shapes = {tuple(e["members"]): e["shape"] for e in data["subgyrogroups"]}
    assert shapes[(0, 2)] == "INSIDE_H_PLUS"
    assert shapes[(0, 8)] == "MIRROR"
    assert shapes[(0, 1, 10, 11)] == "SPLIT_DISJOINT"
    assert run(capsys, "subs", str(f), "--classify-against", "@L1")[0] == 2


def test_normal(capsys):
    code, data = run_json(capsys, "normal", "@K1", "--subset", "0,2")
    assert code == 1
    assert data["normal"] is False and data["witness"] == [4, 6, 4, 4]
    assert data["sufficient_conditions"] == {"gyr_trivial_on_h": False, "gyr_invariant": True,
                                             "cosets_agree": True}
    code, data = run_json(capsys, "normal", "@K1", "--subset", "0")
    assert code == 0 and data["witness"] is None
    code, out, _ = run(capsys, "normal", "@K1", "--subset", "0,2")
    assert "witness a=4 a'=6" in out


def test_lsub(capsys):
    assert run_json(capsys, "lsub", "@K1", "--subset", "0,2") == (
        0, {"subset": [0, 2], "l_subgyrogroup": True, "witness": None})
    code, data = run_json(capsys, "lsub", "@K1", "--subset", "0,4")
    assert code == 1 and data["witness"] == [2, 4]


def test_derived(capsys):
    assert run_json(capsys, "derived", "@K1") == (0, {"commutators": [0, 1], "derived": [0, 1]})


def test_conj(capsys):
    code, data = run_json(capsys, "conj", "@K1", "--elem", "5", "--subset", "0,2")
    assert data == {"elem": 5, "subset": [0, 2], "conjugate": [0, 2]}
    code, data = run_json(capsys, "conj", "@K1", "--elem", "5")
    assert data["conjugate"] == list(range(8))
    assert run(capsys, "conj", "@K1", "--elem", "9")[0] == 2


def test_coadd(capsys):
    code, data = run_json(capsys, "coadd", "@V4")
    assert code == 0 and data["is_gyrogroup"] is True
    code, data = run_json(capsys, "coadd", "@K1")
    assert code == 1 and data["table"][4][6] == 3


def test_iso_and_aut(capsys, tmp_path):
    code, data = run_json(capsys, "iso", "@K1", "@L1")
    assert code == 1 and data == {"isomorphic": False, "map": None}
    code, data = run_json(capsys, "iso", "@K1", "@K1")
    assert code == 0 and data["map"] == list(range(8))
    code, data = run_json(capsys, "aut", "@K1")
    assert data["count"] == 4 and [0, 1, 2, 3, 5, 4, 7, 6] in data["automorphisms"]
    code, out, _ = run(capsys, "aut", "@K1")
    assert "(4,5)(6,7)" in out


def test_catalog(capsys, tmp_path):
    code, data = run_json(capsys, "catalog")
    names = [e["name"] for e in data["entries"]]
    assert names == list(catalog.names())
    m1 = next(e for e in data["entries"] if e["name"] == "M1")
    assert m1["special_perm"] == "(2,3)(4,5)"
    out = tmp_path / "k.txt"
    assert run(capsys, "catalog", "--export", "K1", "-o", str(out))[0] == 0
    assert out.read_text() == render(catalog.gyrogroup("K1"))


def test_search(capsys, tmp_path):
    out = tmp_path / "g6.txt"
    code, data = run_json(capsys, "search", "--order", "6", "--up-to-iso", "-o", str(out))
    assert code == 0
    assert data["complete"] and data["count"] == 2 and data["nondegenerate"] == 0
    assert [g["name"] for g in data["gyrogroups"]] == ["G6.0", "G6.1"]
    assert len(parse_many(out.read_text())) == 2
    code, data = run_json(capsys, "search", "--order", "4", "--nondegenerate")
    assert data["count"] == 0
    assert run(capsys, "search")[0] == 2
    assert run(capsys, "search", "--order", "9")[0] == 3


def test_search_budget_and_resume(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, err = run(capsys, "search", "--order", "6", "--up-to-iso", "--budget", "100")
    assert code == 3
    info = json.loads(err)
    assert info["complete"] is False and info["state_file"] == "search-state.json"
    state = "search-state.json"
    for _ in range(200):
        code, out, err = run(capsys, "search", "--resume", state, "--budget", "2000",
                             "--state-out", state, "--json")
        if code == 0:
            break
        assert code == 3
    data = json.loads(out)
    assert data["complete"] and data["count"] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gyrotable", "verify", "@Z4", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["is_degenerate"] is True


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(render(catalog.gyrogroup("V4"))))
    assert run_json(capsys, "verify", "-")[0] == 0


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["normal", "@K1"])
    assert info.value.code == 2
