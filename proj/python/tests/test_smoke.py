import math
from pathlib import Path

import pytest

import shiftlab

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"
EXPECTED = shiftlab.load(FIXTURES / "expected.json")


def fixture(name):
    return shiftlab.load(FIXTURES / name)


def test_entropy_golden_mean():
    golden_ratio = (1 + math.sqrt(5)) / 2
    assert shiftlab.entropy(fixture("golden.json")) == pytest.approx(math.log(golden_ratio), abs=1e-10)


def test_entropy_full_shift():
    assert shiftlab.entropy(fixture("full-3.json")) == pytest.approx(math.log(3), abs=1e-10)


def test_fischer_cover_presents_the_same_shift():
    even = fixture("even.json")
    cover = shiftlab.fischer_cover(even)
    assert shiftlab.same_shift(even, {"kind": "sofic", "presentation": cover})


def test_magic_word_of_fischer_cover():
    cover = shiftlab.fischer_cover(fixture("even.json"))
    assert shiftlab.magic_word(cover) is not None


@pytest.mark.parametrize("name", sorted(n for n, e in EXPECTED.items() if "semi_open" in e))
def test_semi_open_matches_expected(name):
    d = shiftlab.check_semi_open(fixture(name))
    assert d["verdict"] == EXPECTED[name]["semi_open"]


@pytest.mark.parametrize("name", sorted(n for n, e in EXPECTED.items() if "open" in e))
def test_open_matches_expected(name):
    d = shiftlab.check_open(fixture(name), l_max=4, k_max=6)
    assert d["verdict"] == EXPECTED[name]["open"]


@pytest.mark.parametrize("name", sorted(n for n, e in EXPECTED.items() if e.get("degree") is not None))
def test_degree_matches_expected(name):
    assert shiftlab.degree(fixture(name))["degree"] == EXPECTED[name]["degree"]


def test_retract_refuted_for_even_cover():
    d = shiftlab.check_retract(fixture("even-cover.json"), 1)
    assert d["verdict"] == "Refuted"


def test_analyze_emits_consistent_certificates():
    report = shiftlab.analyze(fixture("golden-cover.json"))
    assert report["facts"]
    assert isinstance(report["certificates"], list)


def test_errors_carry_their_kind():
    with pytest.raises(shiftlab.ShiftlabError, match="^ReducibleShift"):
        shiftlab.degree(fixture("collapse-code.json"))
