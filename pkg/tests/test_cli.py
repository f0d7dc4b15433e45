import io
import json

from qinterp import cli

from conftest import JUMP, TWO_SLOPE

FIELDS = {"schema", "command", "query", "verdict", "witness", "lemma"}


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, [json.loads(line) for line in buf.getvalue().splitlines()]


def one(*argv):
    code, recs = run(*argv)
    assert code == 0 and len(recs) == 1
    rec = recs[0]
    assert set(rec) == FIELDS and rec["schema"] == cli.SCHEMA and rec["lemma"]
    return rec


def test_analyze_doubling():
    rec = one("analyze", "pl{ (-inf,inf): 2x }")
    assert rec["verdict"] == "Automorphism"
    assert rec["witness"]["pattern"] == "M F(+,+) P"
    assert [o["parity"] for o in rec["witness"]["orbitals"]] == [-1, 0, 1]


def test_analyze_embedding_reports_gaps():
    rec = one("analyze", JUMP)
    assert rec["verdict"] == "Embedding"
    assert rec["witness"]["gaps"] == ["(0,1)"]


def test_act_group():
    rec = one("act", "--mode", "group", "--map", "pl{ (-inf,inf): x+1 }", "--point", "0")
    assert rec["verdict"] == "1" and rec["lemma"] == "T2.13"


def test_act_modes():
    assert one("act", "--mode", "monoid", "--map", JUMP, "--point", "0")["verdict"] == "1"
    assert one("act", "--mode", "endo", "--map", "pl{ (-inf,inf): 2x }", "--point", "1/3")["verdict"] == "2/3"


def test_conj_table():
    rec = one("conj", "pl{ (-inf,inf): x+1 }", "pl{ (-inf,inf): x+2 }", "--samples", "5")
    assert rec["verdict"] is True
    assert rec["witness"]["conjugator_table"][2] == ["0", "0"]
    assert one("conj", "pl{ (-inf,inf): x+1 }", "pl{ (-inf,inf): x-1 }")["verdict"] is False


def test_encode_decode_between():
    assert one("encode", "-5/2")["verdict"] == "-5/2"
    assert one("decode", "pl{ (-inf,3): x; [3,inf): 2x-3 }")["verdict"] == "3"
    rec = one("between", "0", "1", "2")
    assert rec["verdict"] is True and rec["witness"]["map"] == "pl{ (-inf,inf): x+1 }"
    assert one("between", "0", "2", "1")["verdict"] is False


def test_act_witness_and_gap():
    rec = one("act-witness", "--mode", "act2", "--map", JUMP, "--point", "0", "--side", "left")
    assert rec["verdict"] is True
    rec = one("act-witness", "--mode", "act4", "--map", "pl{ (-inf,0): 0; [0,1): x; [1,inf): 1 }", "--point", "0")
    assert rec["verdict"] == "NotRepresentable"
    assert one("gap", JUMP)["witness"]["gaps"] == ["(0,1)"]


def test_rho_and_gauge():
    rec = one("rho", TWO_SLOPE)
    assert rec["verdict"] == "rational" and rec["witness"]["witness"] == "1/2"
    assert one("rho", "pl{ (-inf,inf): x+3/2 }")["witness"]["rho"] == "3/2"
    rec = one("gauge", "pl{ (-inf,inf): x+2 }")
    assert rec["verdict"] == "NotGaugePair"
    assert rec["witness"]["h1_h2"] != rec["witness"]["h2_h1"]


def test_fmt_round_trip():
    rec = one("fmt", "pl{(-inf,0):x;[0,inf):x+1}")
    assert rec["verdict"] == JUMP and rec["witness"]["round_trip"]


def test_verify_is_deterministic(monkeypatch):
    argv = ("verify", "--lemma", "L3.1", "--trials", "25", "--seed", "7")
    a, b = io.StringIO(), io.StringIO()
    assert cli.main(list(argv), out=a) == 0 and cli.main(list(argv), out=b) == 0
    assert a.getvalue() == b.getvalue()
    monkeypatch.setenv("QINTERP_SEED", "7")
    c = io.StringIO()
    cli.main(["verify", "--lemma", "L3.1", "--trials", "25"], out=c)
    assert c.getvalue() == a.getvalue()
    rec = json.loads(a.getvalue())
    assert rec["verdict"] == "pass" and rec["lemma"] == "L3.1" and rec["witness"]["passed"] == 25


def test_usage_errors_exit_one(capsys):
    assert cli.main(["nonsense"]) == 1
    assert cli.main(["act", "--mode", "group", "--map", "pl{ (-inf,inf): x }"]) == 1
    assert cli.main(["analyze", "pl{ (-inf,0): x; [1,inf): x }"]) == 1
    assert cli.main(["analyze", "pl{ (-inf,inf): 2y }"]) == 1
    assert "error" in capsys.readouterr().err


def test_contract_violation_reports_and_exits_one():
    code, recs = run("act", "--mode", "group", "--map", JUMP, "--point", "0")
    assert code == 1
    assert recs[0]["verdict"] == "Error" and recs[0]["witness"]["error"] == "NotAutomorphism"


def test_internal_error_exits_two(monkeypatch):
    def boom(_):
        raise RuntimeError("broken")

    monkeypatch.setattr(cli, "cmd_fmt", boom)
    assert cli.main(["fmt", "pl{ (-inf,inf): x }"]) == 2


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
    assert "verify" in capsys.readouterr().out
