import subprocess
import sys

import pytest

from nanophrase.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant_v4(capsys):
    assert run(capsys, "invariant", "--preset", "gauss", "--name", "v4", "ABACDCBD:aaaa")[:2] == \
        (0, "v4 = 1 (mod 2)\n")
    assert run(capsys, "invariant", "--preset", "gauss", "--name", "v4", "0:")[:2] == \
        (0, "v4 = 0 (mod 2)\n")


def test_invariant_linking_from_file(capsys, tmp_path):
    cfg = tmp_path / "d.cfg"
    cfg.write_text("alpha: a b\ntau:\nS:\n")
    code, out, _ = run(capsys, "invariant", "--data", str(cfg), "--name", "linking", "AB|A|B:ab")
    assert code == 0
    assert out.splitlines() == ["0\t1·a\t1·b", "1·a\t0\t0", "1·b\t0\t0"]


def test_invariant_u_and_l(capsys, tmp_path):
    cfg = tmp_path / "d.cfg"
    cfg.write_text("alpha: a b x y\ntau: (a x) (b y)\nS: diagonal\n")
    code, out, _ = run(capsys, "invariant", "--data", str(cfg), "--name", "u",
                       "-i", "1", "-j", "2", "-a", "a", "-b", "b", "ABAC|BC|0:aby")
    assert (code, out) == (0, "u_{1,2,a,b} = 1\n")
    code, out, _ = run(capsys, "invariant", "--data", str(cfg), "--name", "l", "AB|AB:ab")
    assert out.splitlines() == ["l_{1,2,a} = 1", "l_{1,2,b} = 1"]
    code, out, _ = run(capsys, "invariant", "--data", str(cfg), "--name", "t", "ABAB|0:ab")
    assert code == 0 and "T^1_{a,b} = 1" in out


@pytest.mark.parametrize("n,expected", [(4, "Z (+) Z/2"), (3, "Z"), (0, "Z")])
def test_group(capsys, n, expected):
    assert run(capsys, "group", "--preset", "gauss", "-r", "1", "-n", str(n))[:2] == (0, expected + "\n")


def test_group_nontrivial_and_dump(capsys):
    code, out, _ = run(capsys, "group", "--preset", "gauss", "-n", "2", "--nontrivial",
                       "--dump-presentation")
    lines = out.splitlines()
    assert lines[:3] == ["Z", "H = 0", "# generators"]
    assert "# relations" in lines


def test_equiv(capsys):
    assert run(capsys, "equiv", "--preset", "gauss", "AA:a", "0:")[:2] == (0, "EQUIVALENT (1 move)\n")
    code, out, _ = run(capsys, "equiv", "--preset", "gauss", "ABACDCBD:aaaa", "0:",
                       "--max-states", "500")
    assert code == 1 and out.startswith("UNKNOWN")


def test_bracket_and_gamma(capsys):
    code, out, _ = run(capsys, "bracket", "--preset", "gauss", "ABAB:aa", "ABACBC:aaa")
    assert code == 0 and int(out) == 2
    code, out, _ = run(capsys, "gamma", "--preset", "gauss", "--format", "tsv", "1", "ABAB:aa")
    assert out.splitlines() == ["1\t0:", "2\tAA:a"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "gauss", "--name", "v4", "--degree", "4",
                       "--max-rank", "5")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "--preset", "gauss", "--name", "v4", "--degree", "3",
                       "--max-rank", "4")
    assert code == 1 and out.startswith("FAIL")


def test_invariance_is_seeded(capsys):
    args = ("invariance", "--preset", "vknot", "--name", "linking", "-r", "2", "--seed", "7",
            "--trials", "200", "--closed")
    first = run(capsys, *args)
    assert first[0] == 0 and first[1].startswith("PASS")
    assert run(capsys, *args) == first
    assert run(capsys, "random", "--preset", "vknot", "--seed", "1", "-r", "2") == \
        run(capsys, "random", "--preset", "vknot", "--seed", "1", "-r", "2")


def test_exit_codes(capsys, vknot):
    assert run(capsys, "invariant", "--preset", "gauss", "--name", "v4", "AB:a")[0] == 2
    assert run(capsys, "invariant", "--preset", "nope", "--name", "v4", "0:")[0] == 2
    assert run(capsys, "invariant", "--preset", "vknot", "--name", "t", "AA:a+")[0] == 3
    assert run(capsys, "invariant", "--preset", "gauss", "--name", "v4", "A|A:a")[0] == 3
    assert run(capsys, "invariance", "--preset", "gauss", "--name", "v4")[0] == 2
    assert run(capsys, "group", "--data", "/nonexistent", "-n", "1")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "nanophrase", "group", "--preset", "gauss", "-n", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "Z\n"
