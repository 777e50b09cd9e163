import json
import subprocess
import sys

import pytest

from redproof import dimacs
from redproof.cli import EXIT_IO, EXIT_OK, EXIT_REJECTED, EXIT_USAGE, main
from redproof.generators import ExtensionSeq, dumps_er, gen_bphp, read_er
from redproof.proofs import dumps_proof, read_ger, read_proof

from instances import er_proof

NT = ["--no-timestamp"]


@pytest.fixture
def contradiction(tmp_path):
    path = tmp_path / "c.cnf"
    path.write_text("p cnf 1 2\n1 0\n-1 0\n")
    return path


@pytest.fixture
def with_er(tmp_path):
    g = dimacs.parse("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n").formula
    cnf = tmp_path / "f.cnf"
    dimacs.write(cnf, g)
    er = tmp_path / "f.er"
    er.write_text(dumps_er(er_proof(g, ExtensionSeq([(3, 1, 2)]))))
    return cnf, er


def test_gen_bphp(tmp_path, capsys):
    out = tmp_path / "b.cnf"
    assert main(["gen", "bphp", "-k", "1", "-o", str(out), *NT]) == EXIT_OK
    cnf = dimacs.read(out)
    assert cnf.formula == gen_bphp(1)[0]
    assert "k=1" in (tmp_path / "b.cnf.meta").read_text()
    assert "6 clauses" in capsys.readouterr().out


def test_gen_bphp_stdout_and_n(capsys):
    assert main(["gen", "bphp", "-n", "5", *NT]) == EXIT_OK
    assert dimacs.parse(capsys.readouterr().out).formula == gen_bphp(2)[0]


def test_gen_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
    main(["gen", "bphp", "-k", "2", "-o", str(a), *NT])
    main(["gen", "bphp", "-k", "2", "-o", str(b), *NT])
    assert a.read_bytes() == b.read_bytes()


def test_gen_timestamp_only_in_comments(tmp_path):
    out = tmp_path / "a.cnf"
    main(["gen", "bphp", "-k", "1", "-o", str(out)])
    lines = out.read_text().splitlines()
    assert any(l.startswith("c timestamp") for l in lines)


def test_gen_g_and_i(with_er, tmp_path):
    cnf, er = with_er
    gout, iout = tmp_path / "g.cnf", tmp_path / "i.cnf"
    assert main(["gen", "g", "--cnf", str(cnf), "--er", str(er), "-o", str(gout), *NT]) == EXIT_OK
    assert "c layout x 1 var 3" in gout.read_text()
    assert dimacs.read(gout).formula.num_entries == 4 * 3
    assert main(["gen", "i", "--cnf", str(cnf), "--er", str(er), "-m", "3", "-o", str(iout), *NT]) == EXIT_OK
    # 4 + V (2 * 3) + W (3 * (1 + 8))
    assert dimacs.read(iout).formula.num_entries == 4 + 6 + 27
    assert main(["gen", "g", "--cnf", str(cnf), "-t", "2", "-o", str(gout), *NT]) == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [["gen", "bphp"], ["gen", "bphp", "-k", "0"], ["gen", "i", "--cnf", "x", "-t", "1"], ["gen", "nope"], []],
)
def test_gen_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "x").write_text("p cnf 1 1\n1 0\n")
    assert main(argv) == EXIT_USAGE


def test_check_accepts(contradiction, tmp_path, capsys):
    pf = tmp_path / "p.wer"
    pf.write_text("r 1 2 1 0\n")
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(pf)]) == EXIT_OK
    assert "size 2" in capsys.readouterr().out


def test_check_new_variable_rejected(contradiction, tmp_path, capsys):
    pf = tmp_path / "p.wer"
    pf.write_text("s 1 2 0\nr 1 2 1 0\n")
    assert main(["check", "sbc", "--cnf", str(contradiction), "--proof", str(pf)]) == EXIT_REJECTED
    assert "new variable" in capsys.readouterr().out


def test_check_json_lines(contradiction, tmp_path, capsys):
    pf = tmp_path / "p.wer"
    pf.write_text("r 1 2 1 0\n")
    main(["check", "bc", "--cnf", str(contradiction), "--proof", str(pf), "--json-lines"])
    rec = json.loads(capsys.readouterr().out)
    assert rec["verdict"] == "accepted" and rec["size"] == 2 and rec["system"] == "bc"


def test_check_permissive(contradiction, tmp_path):
    pf = tmp_path / "p.wer"
    pf.write_text("r 0 0 0 0\n")
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(pf)]) == EXIT_REJECTED
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(pf), "--permissive"]) == EXIT_OK


def test_check_parse_and_io_errors(contradiction, tmp_path):
    bad = tmp_path / "bad.wer"
    bad.write_text("r 1 2\n")
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(bad)]) == EXIT_USAGE
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(tmp_path / "missing")]) == EXIT_IO


def test_prove_g_rat(with_er, tmp_path, capsys):
    cnf, er = with_er
    out, gcnf = tmp_path / "g.wer", tmp_path / "g.cnf"
    assert main(["prove", "g-rat", "--cnf", str(cnf), "--er", str(er), "-o", str(out), "--cnf-out", str(gcnf), *NT]) == EXIT_OK
    line = capsys.readouterr().out.strip()
    s, e = int(line.split()[1]), int(line.split()[-1])
    assert line.startswith("size") and "<= size_ER" in line and s <= e
    assert read_proof(out).size == s
    assert main(["check", "rat", "--cnf", str(gcnf), "--proof", str(out)]) == EXIT_OK


def test_prove_i_ger(with_er, tmp_path, capsys):
    cnf, er = with_er
    out, icnf = tmp_path / "i.ger", tmp_path / "i.cnf"
    assert main(["prove", "i-ger", "--cnf", str(cnf), "--er", str(er), "-m", "1", "-o", str(out), "--cnf-out", str(icnf), *NT]) == EXIT_OK
    assert "<= size_ER" in capsys.readouterr().out
    assert read_ger(out).kept
    assert main(["check", "ger", "--cnf", str(icnf), "--proof", str(out)]) == EXIT_OK
    assert main(["check", "er", "--cnf", str(cnf), "--proof", str(er)]) == EXIT_OK


def test_prove_rejects_bad_er(with_er, tmp_path, capsys):
    cnf, _ = with_er
    bad = tmp_path / "bad.er"
    bad.write_text("e 3 1 2 0\n")
    assert main(["prove", "g-rat", "--cnf", str(cnf), "--er", str(bad)]) == EXIT_USAGE
    assert "step 0" in capsys.readouterr().out


def test_oracle_sat_and_dp(tmp_path, capsys):
    b = tmp_path / "b.cnf"
    main(["gen", "bphp", "-k", "1", "-o", str(b), *NT])
    capsys.readouterr()
    assert main(["oracle", "sat", "--cnf", str(b)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "UNSAT"
    pf = tmp_path / "p.wer"
    assert main(["oracle", "dp", "--cnf", str(b), "-o", str(pf), *NT]) == EXIT_OK
    assert capsys.readouterr().out.startswith("UNSAT size")
    assert main(["check", "res", "--cnf", str(b), "--proof", str(pf)]) == EXIT_OK
    capsys.readouterr()
    sat = tmp_path / "s.cnf"
    sat.write_text("p cnf 2 1\n1 2 0\n")
    main(["oracle", "sat", "--cnf", str(sat)])
    assert capsys.readouterr().out.splitlines() == ["SAT", "v 1 -2 0"]


def test_oracle_too_large(tmp_path):
    big = tmp_path / "big.cnf"
    main(["gen", "bphp", "-k", "2", "-o", str(big), *NT])
    assert main(["oracle", "sat", "--cnf", str(big), "--oracle-var-limit", "5"]) == EXIT_USAGE
    assert main(["oracle", "enum-sbc", "--cnf", str(big)]) == EXIT_USAGE


def test_oracle_enum_sbc_table(tmp_path, capsys):
    b = tmp_path / "b.cnf"
    main(["gen", "bphp", "-k", "1", "-o", str(b), *NT])
    capsys.readouterr()
    assert main(["oracle", "enum-sbc", "--cnf", str(b)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "clause\twitness\tpigeon_width"
    assert "min_pigeon_width 3 max_pigeon_width 3" in lines[-1]
    assert all(row.split("\t")[2] == "3" for row in lines[1:-1])


def test_oracle_width(tmp_path, capsys):
    b, pf = tmp_path / "b.cnf", tmp_path / "p.wer"
    main(["gen", "bphp", "-k", "1", "-o", str(b), *NT])
    main(["oracle", "dp", "--cnf", str(b), "-o", str(pf), *NT])
    capsys.readouterr()
    assert main(["oracle", "width", "--cnf", str(b), "--proof", str(pf)]) == EXIT_OK
    last = capsys.readouterr().out.splitlines()[-1]
    assert last.startswith("max\t")


def test_oracle_restrict_match(tmp_path, capsys):
    b, pf, rp = tmp_path / "b.cnf", tmp_path / "p.wer", tmp_path / "r.wer"
    main(["gen", "bphp", "-k", "1", "-o", str(b), *NT])
    main(["oracle", "dp", "--cnf", str(b), "-o", str(pf), *NT])
    rc = tmp_path / "r.cnf"
    argv = ["oracle", "restrict", "--cnf", str(b), "--proof", str(pf), "--match", "1", "--seed", "7", "-o", str(rp), "--cnf-out", str(rc), *NT]
    assert main(argv) == EXIT_OK
    first = rp.read_bytes()
    assert main(argv) == EXIT_OK
    assert rp.read_bytes() == first
    assert main(["check", "res", "--cnf", str(rc), "--proof", str(rp)]) == EXIT_OK


def test_config_file(tmp_path, contradiction, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("json-lines = true\nseed=3\n")
    pf = tmp_path / "p.wer"
    pf.write_text("r 1 2 1 0\n")
    main(["check", "res", "--cnf", str(contradiction), "--proof", str(pf), "--config", str(cfg)])
    assert json.loads(capsys.readouterr().out)["verdict"] == "accepted"
    cfg.write_text("colour=blue\n")
    assert main(["check", "res", "--cnf", str(contradiction), "--proof", str(pf), "--config", str(cfg)]) == EXIT_USAGE


def test_module_entry_point(contradiction, tmp_path):
    pf = tmp_path / "p.wer"
    pf.write_text("r 1 2 1 0\n")
    done = subprocess.run([sys.executable, "-m", "redproof", "check", "res", "--cnf", str(contradiction), "--proof", str(pf)],
                          capture_output=True, text=True)
    assert done.returncode == 0 and "accepted size 2" in done.stdout
