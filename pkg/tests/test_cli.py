import json
from pathlib import Path

import jsonschema
import pytest

from klift.cli import DSLError, dumps, main, parse, render_text, run
from klift.homalg import FPModule
from klift.ring_core import QuotientRing

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "schemas" / "result-v1.json").read_text())

SCRIPT = """\
ring A = poly(F2; x:1, y:1)
module k = coker(A; shifts=[0]; rels=[[x],[y]])
regseq(A; x, y)
resolve(k; length=3)
ext(k, k; imax=2)
lift(A=poly(F3; u:1); x=u; M=coker(A; shifts=[0]; rels=[[u]]); N=5; D=8)
"""


def test_ring_and_module_declarations():
    s = parse("ring A = poly(F5; x:1, y:1) / ideal(x*y)\nmodule M = coker(A; shifts=[0]; rels=[[x],[y]])\n")
    A, M = s.env["A"], s.env["M"]
    assert isinstance(A, QuotientRing) and A.hilbert(3) == 2
    assert isinstance(M, FPModule) and M.dims(0, 2) == [1, 0, 0]
    assert s.commands == []


@pytest.mark.parametrize("text, where, msg", [
    ("ring A = poly(F5; x:0)", "1:", "degrees must be ≥ 1"),
    ("ring A = poly(F2; x:1)\nmodule M = coker(B; shifts=[0]; rels=[[x]])", "2:", "B"),
    ("ring A = poly(F2; x:1, y:1)\nmodule M = coker(A; shifts=[0]; rels=[[x + y^2]])", "2:", "homogeneous"),
    ("ring A = poly(F2; x:1)\nfrobnicate(A)", "2:", "unknown command"),
    ("ring A = poly(F2; x:1\nregseq(A; x)", "1:", ""),
])
def test_parse_errors_carry_positions(text, where, msg):
    with pytest.raises(DSLError) as exc:
        parse(text)
    assert str(exc.value).startswith(where)
    assert msg in str(exc.value)


def test_run_examples():
    doc = run(parse(SCRIPT))
    assert doc["ok"]
    reg, res, ext, lift = doc["results"]
    assert reg["payload"]["regular"] is True
    assert [r["index"] for r in doc["results"]] == [0, 1, 2, 3]
    assert lift["options"] == {"D": 8, "N": 5}
    p = lift["payload"]
    assert p["success"] and len(p["chain"]) == 5
    assert [c["dims"] for c in p["chain_dims"]] == [[1] * n for n in range(1, 6)]
    assert p["chain"][2] == {"shifts": [0], "relations": [["u^3"]]}
    assert p["limit"]["dims"] == [1] * 9 and p["limit"]["presentation"]["shifts"] == [0]


def test_paper_examples_command():
    doc = run(parse("paper-examples"))
    assert doc["ok"]
    p = doc["results"][0]["payload"]
    assert p["all_pass"]


def test_output_matches_schema_and_round_trips():
    text = dumps(run(parse(SCRIPT)))
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert dumps(json.loads(text)) == text


def test_parallel_output_is_identical():
    s = parse(SCRIPT)
    assert dumps(run(s)) == dumps(run(s, parallel=True, threads=4))


def test_failed_command_reports_index():
    doc = run(parse("ring A = poly(F2; x:1, y:1)\nregseq(A; x)\nliftmulti(A; x; M=coker(A; shifts=[0]; rels=[]))"))
    assert not doc["ok"]
    bad = doc["results"][1]
    assert not bad["ok"] and bad["error"].startswith("command 1:")
    assert "FAILED" in render_text(doc)


def test_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.kl"
    good.write_text("ring A = poly(F2; x:1, y:1)\nregseq(A; x, y)\n")
    assert main([str(good), "--json", "--seed", "7"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["seed"] == 7 and out["results"][0]["payload"]["regular"] is True
    bad = tmp_path / "bad.kl"
    bad.write_text("ring A = poly(F2; x:1)\nliftmulti(A; x; M=coker(A; shifts=[0]; rels=[]))\n")
    assert main([str(bad)]) == 1
    assert "some commands failed" in capsys.readouterr().out
    broken = tmp_path / "broken.kl"
    broken.write_text("ring A = poly(F2; x:0)\n")
    assert main([str(broken)]) == 2
    assert "degrees must be ≥ 1" in capsys.readouterr().err
