import json
import subprocess
import sys

import pytest

from sumprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def setfile(tmp_path):
    def make(name, lines):
        p = tmp_path / name
        p.write_text("\n".join(map(str, lines)) + "\n", encoding="utf-8")
        return str(p)
    return make


def test_setop_subsetsums(capsys, setfile):
    code, out, _ = run(capsys, "setop", "subsetsums", "--a", setfile("a.txt", [1, 2, 4]))
    assert code == 0 and out.split() == [str(i) for i in range(8)]


def test_setop_gproxy_inline(capsys):
    code, out, _ = run(capsys, "setop", "gproxy", "--a", "{1,2,3,4}")
    assert code == 0 and out == "Aplus=11 Atimes=8 g=19\n"


def test_setop_sumset_empty_b(capsys, setfile):
    code, out, _ = run(capsys, "setop", "sumset", "--a", "{1,2}", "--b", setfile("b.txt", []))
    assert code == 0 and out == ""


def test_setop_other_ops(capsys):
    assert run(capsys, "setop", "combo", "--a", "{0,1}", "--k", "2")[1].split() == ["0", "1", "2"]
    assert run(capsys, "setop", "diffcombo", "--a", "{0,1}", "--n", "1", "--m", "1")[1].split() == ["-1", "0", "1"]
    assert run(capsys, "setop", "subsetproducts", "--a", "{2,3,6}")[1].split() == "1 2 3 6 12 18 36".split()
    assert run(capsys, "setop", "distinct_h", "--a", "{1,2,4}", "--h", "2")[1].split() == ["3", "5", "6"]
    assert len(run(capsys, "setop", "bounded_h", "--a", "{1,10}", "--h", "2")[1].split()) == 9
    assert run(capsys, "setop", "productset", "--a", "{1/2,2}", "--b", "{2}")[1].split() == ["1", "4"]


def test_setop_out_file(capsys, tmp_path):
    out = tmp_path / "r.txt"
    code, stdout, _ = run(capsys, "setop", "sumset", "--a", "{1,2}", "--b", "{1,2}", "--out", str(out))
    assert code == 0 and stdout == "" and out.read_text().split() == ["2", "3", "4"]


def test_setop_errors(capsys, setfile):
    code, _, err = run(capsys, "setop", "sumset", "--a", setfile("bad.txt", ["1", "x"]))
    assert code == 2 and "error" in err
    assert run(capsys, "setop", "nosuchop", "--a", "{1}")[0] == 2
    code, _, err = run(capsys, "setop", "subsetsums", "--a", "{" + ",".join(f"1/{p}" for p in range(2, 30)) + "}")
    assert code == 3 and "budget" in err.lower()
    assert run(capsys, "setop", "combo", "--a", "{1,2}", "--k", "3", "--max-work", "2")[0] == 3
    assert run(capsys, "setop", "subsetsums", "--a", "{1}", "--max-card", "0")[0] == 2


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "--a", "{2,4,8}")
    assert code == 0 and "mult_dim: 1" in out and "torsion: false" in out
    block = json.loads(out.strip().splitlines()[-1])
    assert block["mult_dim"] == 1 and [c["vector"] for c in block["coords"]] == [[1], [2], [3]]
    code, out, _ = run(capsys, "dim", "--a", "{-2,2}")
    assert "mult_dim: 2" in out and "torsion: true" in out
    assert "mult_dim: 0" in run(capsys, "dim", "--a", "{1}")[1]
    code, out, err = run(capsys, "dim", "--a", "{0}")
    assert code == 4 and out == ""


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "cs_iterated", "--h", "2", "--a", "{1,2,3}")
    v = json.loads(out)
    assert code == 0 and v["holds"] and v["lhs_exact"] == "5" and v["rhs_exact"] == "81/19"
    code, out, _ = run(capsys, "verify", "--claim", "multdim_ratio", "--a", "{2,3}")
    assert code == 0 and json.loads(out)["holds"] is False
    code, out, err = run(capsys, "verify", "unknown_claim")
    assert code == 6 and out == ""
    assert run(capsys, "verify", "cs_iterated", "--a", "{1,2}")[0] == 2
    code, out, _ = run(capsys, "verify", "ruzsa_rn", "--x", "0,0;1,0;0,1", "--y", "0,0;1,0;0,1")
    assert code == 0 and json.loads(out)["slack_log"] == 0
    code, out, _ = run(capsys, "verify", "thm_sumproddiff", "--a", "{1,2,4}", "--k", "1", "--l", "1")
    assert code == 0 and json.loads(out)["params"]["B"] == ["1", "2", "4"]
    code, out, _ = run(capsys, "verify", "gK_lower", "--a", "{1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16}",
                       "--epsilon", "1/1000")
    assert code == 0 and json.loads(out)["params"]["epsilon"] == "1/1000"


def test_verify_premise_violation_is_reported(capsys):
    code, out, _ = run(capsys, "verify", "identity_15", "--a", "{0,1,2}")
    v = json.loads(out)
    assert code == 0 and v["error"].startswith("PremiseViolated") and v["mode"] == "report"


def _manifest(tmp_path, data):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(data), encoding="utf-8")
    return str(p)


def test_sweep(capsys, tmp_path):
    m = _manifest(tmp_path, {
        "families": [{"kind": "range", "N": [4, 5, 6, 7, 8]}],
        "claims": [{"id": "identity_15"}, {"id": "cs_iterated", "params": {"h": 2}}],
    })
    code, out, err = run(capsys, "sweep", m)
    vs = json.loads(out)
    assert code == 0 and len(vs) == 10 and all(v["holds"] and v["mode"] == "assert" for v in vs)
    assert "assert: 10 hold, 0 fail" in err
    code, out, _ = run(capsys, "sweep", m, "--format", "csv")
    assert out.splitlines()[0] == "claim,params,lhs,rhs,holds,slack_log,mode,elapsed_ms" and len(out.splitlines()) == 11


def test_sweep_empty_and_missing_file(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", _manifest(tmp_path, {}))
    assert code == 0 and json.loads(out) == []
    m = _manifest(tmp_path, {"families": [{"kind": "file", "path": str(tmp_path / "nope.txt")}],
                             "claims": [{"id": "identity_15"}]})
    code, out, err = run(capsys, "sweep", m)
    assert code == 0 and json.loads(out)[0]["error"] and "errors=1" in err
    bad = tmp_path / "bad.json"
    bad.write_text("[1,", encoding="utf-8")
    assert run(capsys, "sweep", str(bad))[0] == 2
    assert run(capsys, "sweep", str(tmp_path / "absent.json"))[0] == 2


def test_sweep_threads_byte_identical(capsys, tmp_path):
    m = _manifest(tmp_path, {
        "families": [{"kind": "random_subset", "pool": 200, "N": 10}, {"kind": "smooth", "y": 5, "N": [6, 9]}],
        "claims": [{"id": "cs_iterated", "params": {"h": 2}}, {"id": "identity_15"}, {"id": "sigma_bounds",
                   "params": {"k": 1, "l": 1}}],
    })
    outs = [run(capsys, "sweep", m, "--seed", "42", "--threads", t)[1] for t in ("1", "4", "1")]
    assert outs[0] == outs[1] == outs[2]
    assert run(capsys, "sweep", m, "--seed", "43")[1] != outs[0]


def test_sweep_assert_failure_exit_code(capsys, tmp_path, monkeypatch):
    from sumprod import inequalities
    from sumprod.inequalities import _Outcome

    entry = inequalities.REGISTRY["identity_15"]
    monkeypatch.setitem(inequalities.REGISTRY, "identity_15",
                        type(entry)(lambda inst, b: _Outcome(1, 2, "=="), "assert", entry.required))
    m = _manifest(tmp_path, {"families": [{"kind": "range", "N": 3}], "claims": [{"id": "identity_15"}]})
    code, _, err = run(capsys, "sweep", m)
    assert code == 5 and "1 fail" in err
    assert run(capsys, "verify", "identity_15", "--a", "{1,2}")[0] == 5


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sumprod", "setop", "gproxy", "--a", "{1,2,4}"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout == "Aplus=8 Atimes=4 g=12\n"
