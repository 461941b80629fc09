import os
from fractions import Fraction
from pathlib import Path

import pytest

import infconv

CONFIGS = Path(os.environ.get("INFCONV_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def load(name):
    return infconv.load_config(str(CONFIGS / name))


def test_config():
    c = load("example1.json")
    assert c.dimension == 2
    assert c.pair_names == ["p1", "p2"]
    assert not c.finite
    assert load("example2.json").length == 6


def test_pairs_and_spectra():
    jp = load("jp.json")
    assert infconv.check_admissible(jp, "jp")
    assert infconv.check_admissible(jp, "jp", exact=False)
    assert not infconv.check_admissible(load("cantor3.json"), "c")
    assert infconv.find_spectra(jp, "jp", 2) == [[[0], [1]], [[0], [3]]]
    assert infconv.canonical_spectrum(jp, 2) == [[0], [1], [4], [5]]
    assert infconv.gram_identity(load("example1.json"), 2)


def test_measures():
    jp = load("jp.json")
    assert abs(infconv.mu_hat(jp, 20, [1.0])) < 1e-12
    assert abs(infconv.mu_hat(jp, 20, [0.0]) - 1) < 1e-15
    atoms = infconv.atoms(load("example1.json"), 2)
    assert len(atoms) == 12
    assert sum(Fraction(w) for _, w in atoms) == 1
    pts = infconv.sample(jp, 10, 100, seed=3)
    assert pts == infconv.sample(jp, 10, 100, seed=3)
    assert len(pts) == 100


def test_certify_and_hypotheses():
    r = infconv.certify(load("example2.json"), "dd")
    assert r.verdict == "PASS"
    assert r.exit_code == 0
    assert r.text().rstrip().endswith("verdict: PASS")
    assert r.csv().startswith("section,name,value")
    assert infconv.certify(load("cantor3.json"), "dd").verdict == "FAIL"
    rows = infconv.hypotheses(load("jp.json"))
    assert len(rows) == 5


def test_zero_scan_and_digits():
    assert infconv.zero_scan(load("jp.json"), resolution=128) == []
    pts = infconv.zero_scan(load("twopoint.json"), resolution=64)
    assert [p[0] for p in pts] == [0.5]
    assert infconv.find_isolating_digit([[3, 0], [0, 3]], [[0, 0], [0, 1], [1, 0]]) == [0, 0]
    assert infconv.find_isolating_digit([[2]], [[0]]) == [0]


def test_errors():
    with pytest.raises(infconv.InfconvError):
        infconv.parse_config("{")
    with pytest.raises(ValueError):
        infconv.certify(load("jp.json"), "nope")
    with pytest.raises(infconv.InfconvError):
        infconv.find_isolating_digit([[4, 0], [4, -4]], [[2, 0]])
