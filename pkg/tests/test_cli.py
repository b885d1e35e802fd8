import subprocess
import sys

from disordr.cli import calc_main, fuzz_main

from session_data import DISORD_SCRIPT


def test_run_file(tmp_path, capsys):
    script = tmp_path / "session.R"
    script.write_text(DISORD_SCRIPT)
    assert calc_main(["run", str(script)]) == 0
    out, err = capsys.readouterr()
    assert "[1] 81 16 49  1  4 36  9 64 25" in out
    assert "do not match" in err


def test_run_with_shuffle(tmp_path, capsys):
    script = tmp_path / "s.R"
    script.write_text("d <- disord(1:10)\nsort(d^2)\nsum(d)\n")
    assert calc_main(["run", "--storage-order", "shuffle:9", str(script)]) == 0
    out, _ = capsys.readouterr()
    assert out == " [1]   1   4   9  16  25  36  49  64  81 100\n[1] 55\n"


def test_run_statuses(tmp_path, capsys):
    bad = tmp_path / "bad.R"
    bad.write_text("x <- (\n")
    assert calc_main(["run", str(bad)]) == 2
    failing = tmp_path / "fail.R"
    failing.write_text("disord(1,2)[1]\n")
    assert calc_main(["run", str(failing)]) == 1
    assert calc_main(["run", str(tmp_path / "missing.R")]) == 2
    capsys.readouterr()


def test_fuzz_cli(capsys):
    assert fuzz_main(["--programs", "20", "--trials", "3", "--seed", "100"]) == 0
    assert capsys.readouterr().out == "PASS 20\n"


def test_console_scripts():
    proc = subprocess.run(
        [sys.executable, "-c", "import sys; from disordr.cli import calc_main; sys.exit(calc_main())", "run", "-"],
        input="1+1\nq <- 3\nq\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "[1] 2\n[1] 3\n"
