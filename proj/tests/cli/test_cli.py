import os
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

CLI = os.environ.get("INFCONV_CLI", "infconv")
CONFIGS = Path(os.environ.get("INFCONV_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def run(*args, check=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check is not None:
        assert proc.returncode == check, proc.stdout + proc.stderr
    return proc


def cfg(name):
    return CONFIGS / name


def read_pgm(path):
    data = Path(path).read_bytes()
    fields = data.split(maxsplit=4)
    assert fields[0] in (b"P2", b"P5")
    width, height, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if fields[0] == b"P2":
        pixels = [int(v) for v in fields[4].split()]
    else:
        raw = fields[4]
        pixels = [raw[2 * i] << 8 | raw[2 * i + 1] for i in range(width * height)]
    assert len(pixels) == width * height
    return width, height, maxval, pixels


def test_certify_exit_codes():
    out = run("certify", cfg("example1.json"), "--strategy", "cube", check=0).stdout
    assert "verdict: PASS" in out
    run("certify", cfg("example2.json"), "--strategy", "dd", check=0)
    run("certify", cfg("jp.json"), "--strategy", "equipos", check=2)
    run("certify", cfg("cantor3.json"), "--strategy", "dd", check=1)


def test_check_pair():
    run("check-pair", cfg("jp.json"), "--pair", "jp", "--exact", check=0)
    out = run("check-pair", cfg("cantor3.json"), "--pair", "c", "--exact", check=1).stdout
    assert out.strip()


def test_usage_errors():
    assert run("certify", cfg("jp.json"), "--strategy", "nope").returncode == 3
    assert run("check-pair", cfg("jp.json"), "--pair", "missing").returncode == 3
    assert run("frobnicate").returncode == 3
    assert run("--help").returncode == 0
    proc = run("build", cfg("example1.json"), "--depth", "40")
    assert proc.returncode == 3
    assert "error:" in proc.stderr


def test_find_spectra(tmp_path):
    out = tmp_path / "s.csv"
    run("find-spectra", cfg("jp.json"), "--pair", "jp", "--out", out, check=0)
    lines = out.read_text().splitlines()
    assert lines[0] == "spectrum,l1"
    assert lines[1:3] == ["0,0", "0,1"]


def test_render_zero_at_one(tmp_path):
    out = tmp_path / "jp.pgm"
    run("render", cfg("jp.json"), "--quantity", "muhat2", "--res", 1024, "--out", out, check=0)
    width, height, maxval, pixels = read_pgm(out)
    assert (width, height, maxval) == (1024, 1, 65535)
    # Pixel i sits at -2 + 4 i / 1024.
    assert pixels[768] == 0
    assert pixels[512] == 65535

    binary = tmp_path / "jp5.pgm"
    run("render", cfg("jp.json"), "--res", 1024, "--binary", "--out", binary, check=0)
    assert read_pgm(binary)[3] == pixels


def test_render_q_grows_with_level(tmp_path):
    images = []
    for level in (2, 4):
        out = tmp_path / f"q{level}.pgm"
        run("render", cfg("example1.json"), "--quantity", "Q", "--level", level, "--res", 32, "--box", "0,1,0,1",
            "--out", out, check=0)
        width, height, _, pixels = read_pgm(out)
        assert (width, height) == (32, 32)
        images.append(pixels)
    assert all(b >= a - 1 for a, b in zip(*images))
    assert min(images[1]) > min(images[0])


def test_build_round_trip(tmp_path):
    out = tmp_path / "mu.csv"
    run("build", cfg("example1.json"), "--depth", 2, "--out", out, check=0)
    lines = out.read_text().splitlines()
    assert lines[0] == "x1,x2,weight"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 12
    assert sum(Fraction(r[2]) for r in rows) == 1
    assert len({(r[0], r[1]) for r in rows}) == 12


def test_sample_determinism(tmp_path):
    a = run("--threads", 1, "sample", cfg("jp.json"), "--depth", 10, "--count", 5000, "--seed", 7, check=0).stdout
    b = run("--threads", 2, "sample", cfg("jp.json"), "--depth", 10, "--count", 5000, "--seed", 7, check=0).stdout
    c = run("sample", cfg("jp.json"), "--depth", 10, "--count", 5000, "--seed", 8, check=0).stdout
    assert a == b
    assert a != c
    xs = [float(line) for line in a.splitlines()[1:]]
    assert len(xs) == 5000
    assert all(0.0 <= x <= 2.0 / 3.0 for x in xs)


def test_zeroscan_and_gram(tmp_path):
    out = tmp_path / "z.csv"
    run("zeroscan", cfg("twopoint.json"), "--grid", 64, "--out", out, check=0)
    text = out.read_text()
    assert "# candidates=1" in text
    assert text.splitlines()[-1].startswith("0.5,")

    g = run("gram", cfg("jp.json"), "--depth", 3, check=0).stdout
    assert "# size=8" in g
    assert "# exact=true" in g
    offdiag = next(line for line in g.splitlines() if line.startswith("# max_offdiag="))
    assert float(offdiag.split("=")[1]) < 1e-12


@pytest.mark.parametrize("strategy", ["dd", "cube"])
def test_certify_csv(tmp_path, strategy):
    out = tmp_path / "r.csv"
    proc = run("certify", cfg("example2.json"), "--strategy", strategy, "--csv", out)
    assert proc.returncode in (0, 1)
    lines = out.read_text().splitlines()
    assert lines[0] == "section,name,value"
    assert lines[-1].startswith("verdict,")
