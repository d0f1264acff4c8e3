import json

from syncword import Dfa, parse_dfa
from syncword.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# reset-word

def test_reset_word_kari(capsys):
    code, out, _ = run(capsys, "reset-word", "kari")
    assert code == 0
    assert "length 25" in out
    assert "baaba babaa bbaba abaab abaab" in out
    assert "target state: 1" in out


def test_reset_word_json(capsys):
    code, out, _ = run(capsys, "reset-word", "cerny:4", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["synchronizing"] is True
    assert data["length"] == 9
    assert data["word"] == "baaabaaab"
    assert data["target"] == 1


def test_reset_word_show_matrix_and_checks(capsys):
    code, out, _ = run(capsys, "reset-word", "cerny:4",
                       "--show-matrix", "--check-lemmas")
    assert code == 0
    assert "0 1 0 0" in out
    assert "[PASS] irreducible" in out
    assert "[PASS] near-sync-suffixes" in out


def test_reset_word_profile_chain(capsys):
    code, out, _ = run(capsys, "reset-word", "roman", "--profile")
    assert code == 0
    assert "suffix_length,value" in out
    assert "16,4" in out


def test_reset_word_not_synchronizing(tmp_path, capsys):
    path = tmp_path / "swap.dfa"
    path.write_text("2 1\n1 0\n")
    code, out, err = run(capsys, "reset-word", str(path))
    assert code == 2
    assert "synchronizing: no" in out
    assert "not synchronizing" in err


def test_reset_word_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.dfa"
    path.write_text("2 1\n5 0\n")
    code, _, err = run(capsys, "reset-word", str(path))
    assert code == 1
    assert "line 2" in err


def test_reset_word_missing_input(capsys):
    code, _, err = run(capsys, "reset-word", "no-such-file.dfa")
    assert code == 1
    assert "neither a built-in" in err


def test_reset_word_env_capacity(monkeypatch, capsys):
    monkeypatch.setenv("SYNCWORD_SUBSET_LIMIT", "3")
    code, _, err = run(capsys, "reset-word", "cerny:4")
    assert code == 3
    assert "capacity" in err


def test_reset_word_reads_json_file(tmp_path, capsys):
    d = Dfa(2, 2, ((1, 1), (0, 1)))
    path = tmp_path / "auto.json"
    path.write_text('{"n": 2, "k": 2, "delta": [[1, 1], [0, 1]]}')
    code, out, _ = run(capsys, "reset-word", str(path))
    assert code == 0
    assert "length 1" in out


# ---------------------------------------------------------------------------
# profile

def test_profile_default_word(capsys):
    code, out, _ = run(capsys, "profile", "kari")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "suffix_length,value"
    assert "25,5" in lines
    assert "bound,count" in lines
    assert "4,6" in lines


def test_profile_csv_only(capsys):
    code, out, _ = run(capsys, "profile", "kari", "--csv")
    assert code == 0
    assert "bound,count" not in out
    assert len(out.splitlines()) == 27  # header + 26 suffix rows


def test_profile_explicit_word_and_q(capsys):
    code, out, _ = run(capsys, "profile", "cerny:4", "--word", "baaab", "--q", "1")
    assert code == 0
    assert out.splitlines()[1] == "0,0"


def test_profile_json(capsys):
    code, out, _ = run(capsys, "profile", "roman", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == 4
    assert data["threshold_counts"]["1"] == 16
    assert len(data["profile"]) == 17


def test_profile_needs_q_for_non_reset_word(capsys):
    code, _, err = run(capsys, "profile", "cerny:4", "--word", "ab")
    assert code == 1
    assert "--q" in err


# ---------------------------------------------------------------------------
# verify

def test_verify_cerny5_json(capsys):
    code, out, _ = run(capsys, "verify", "cerny:5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert all(check["passed"] for check in data["checks"])
    assert any(check["name"] == "reset-length" for check in data["checks"])


def test_verify_text_summary(capsys):
    code, out, _ = run(capsys, "verify", "cerny:3")
    assert code == 0
    assert "[PASS]" in out
    assert "summary:" in out
    assert "FAIL" not in out


# ---------------------------------------------------------------------------
# scan

def test_scan_text_summary(capsys):
    code, out, _ = run(capsys, "scan", "--n", "2", "--k", "2")
    assert code == 0
    assert "scanned: 16 tables" in out
    assert "max shortest reset length: 1" in out


def test_scan_json_stable_across_workers(capsys):
    code, out1, _ = run(capsys, "scan", "--n", "3", "--k", "2", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "scan", "--n", "3", "--k", "2", "--json",
                        "--workers", "2")
    assert code == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["total"] == 729
    assert data["histogram"]["4"] == 24


def test_scan_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "scan", "--n", "2", "--k", "1",
                       "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["total"] == 4


def test_scan_guard(capsys):
    code, _, err = run(capsys, "scan", "--n", "7", "--k", "3")
    assert code == 3
    assert "capacity" in err


# ---------------------------------------------------------------------------
# examples

def test_examples_dump_reparses(capsys):
    code, out, _ = run(capsys, "examples", "kari")
    assert code == 0
    from syncword import kari_automaton
    assert parse_dfa(out) == kari_automaton()


def test_examples_all(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    for name in ("# cerny:4", "# kari", "# roman"):
        assert name in out


def test_examples_out_file(tmp_path, capsys):
    path = tmp_path / "roman.dfa"
    code, _, _ = run(capsys, "examples", "roman", "--out", str(path))
    assert code == 0
    from syncword import roman_automaton
    assert parse_dfa(path.read_text()) == roman_automaton()


# ---------------------------------------------------------------------------
# usage errors

def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "scan", "--n", "3")
    assert code == 1
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
