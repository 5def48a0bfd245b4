from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from lensstruct import cli, structset


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = cli.parse_config(argv)
    except cli.UsageError as exc:
        return 1, "", str(exc)
    code = cli.run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


def test_structset_json():
    code, out, _ = run("structset", "--d", "2", "--k", "1", "--K", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert list(data)[:4] == ["params", "group", "summands", "verified"]
    assert data["params"] == {"d": 2, "k": 1, "K": 2, "m": 2}
    assert data["group"] == {"free_rank": 1, "torsion": [2, 4]}
    assert data["verified"] is True
    assert [s["label"] for s in data["summands"]] == ["rho_free", "bbr0", "bbr"]


def test_labels_cover_all_kinds():
    code, out, _ = run("structset", "--d", "5", "--k", "2", "--K", "3", "--format", "json")
    assert code == 0
    assert {s["label"] for s in json.loads(out)["summands"]} == {"rho_free", "bbr0", "bbr", "br"}


def test_invalid_input_exit_1():
    assert run("structset", "--d", "1", "--k", "1", "--K", "2")[0] == 1
    assert run("structset", "--d", "2", "--k", "0", "--K", "2")[0] == 1
    assert run("structset", "--d", "2", "--k", "1")[0] == 1
    assert run("structset", "--d", "65", "--k", "1", "--K", "2")[0] == 1
    assert run("structset", "--d", "2", "--k", "1", "--K", "17")[0] == 1
    assert run("sphere", "--d", "3", "--m", "2", "--K", "2")[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("lclass", "--d", "4", "--k", "2", "--s", "1")[0] == 1


def test_grid_verify():
    code, out, _ = run("grid-verify", "--dmax", "5", "--kmax", "3", "--Kmax", "3")
    assert code == 0
    assert "mismatch" in out
    code, out, _ = run("grid-verify", "--dmax", "4", "--kmax", "2", "--Kmax", "2", "--format", "json", "--jobs", "2")
    assert code == 0 and json.loads(out)["verified"] is True


def test_mismatch_exit_2(monkeypatch):
    real = structset.closed_form_theorem

    def broken(d, k, K, parity="even"):
        return real(d, k, K, parity) + structset.Z2

    monkeypatch.setattr(structset, "closed_form_theorem", broken)
    code, out, err = run("structset", "--d", "2", "--k", "1", "--K", "2")
    assert code == 2 and "disagrees" in err
    assert run("grid-verify", "--dmax", "2", "--kmax", "1", "--Kmax", "1")[0] == 2


def test_deterministic_output():
    argv = ("structset", "--d", "6", "--k", "3", "--K", "4", "--format", "json")
    assert run(*argv)[1] == run(*argv)[1]


def test_other_commands():
    code, out, _ = run("rho-matrix", "--d", "4", "--k", "2", "--K", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["hnf_diagonal"] == [8, 2]
    code, out, _ = run("indexsets", "--d", "5", "--k", "2", "--format", "json")
    assert code == 0 and json.loads(out)["sets"]["rJ4tN"] == [2, 3]
    code, out, _ = run("lclass", "--d", "5", "--k", "2", "--s", "1", "2", "--format", "json")
    assert code == 0 and json.loads(out)["verified"] is True
    code, out, _ = run("cp", "--d", "4", "--k", "2")
    assert code == 0 and "ℤ^2 ⊕ ℤ/2" in out
    code, out, _ = run("sphere", "--d", "3", "--m", "4", "--K", "3", "--format", "json")
    assert code == 0 and {"br'", "br''"} <= {s["label"] for s in json.loads(out)["summands"]}
    code, out, _ = run("structset", "--d", "4", "--k", "1", "--K", "2", "--odd")
    assert code == 0 and "ℤ/2" in out


def test_primary_decomposition_flag():
    code, out, _ = run("structset", "--d", "2", "--k", "1", "--K", "2", "--format", "json", "--primary-decomposition")
    assert json.loads(out)["group"]["primary"] == [2, 4]


def test_emit_json_trivial_group():
    r = structset.structure_set_cp(4, 2, odd=True)
    data = json.loads(cli.emit_json(r))
    assert data["group"] == {"free_rank": 0, "torsion": []}


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "lensstruct.cli", "structset", "--d", "1", "--k", "1", "--K", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 1 and "error" in p.stderr
