import json

import pytest

import nonflat


@pytest.fixture(scope="module")
def sweedler():
    return nonflat.build_sweedler("Q")


def test_build_and_verify(sweedler):
    assert sweedler["dim"] == 4
    assert nonflat.verify(sweedler)["all_pass"]
    c2 = nonflat.build_cyclic(2, "F2")
    assert c2["dim"] == 2
    assert nonflat.verify(c2)["all_pass"]
    assert nonflat.verify(nonflat.dual(sweedler))["all_pass"]


def test_broken_axioms_are_reported(sweedler):
    broken = dict(sweedler)
    broken["counit"] = ["1", "1", "1", "0"]
    report = nonflat.verify(broken)
    assert not report["all_pass"]
    assert any(not c["pass"] for c in report["checks"])


def test_semisimplicity():
    assert nonflat.is_semisimple(nonflat.build_cyclic(2, "Q"))
    assert not nonflat.is_semisimple(nonflat.build_cyclic(2, "F2"))
    assert not nonflat.is_semisimple(nonflat.build_sweedler("Q"))


def test_coend_and_projectivity(sweedler):
    c = nonflat.coend(sweedler)
    assert c["module_coalgebra"]
    assert not nonflat.is_projective(sweedler, of_coend=True)["projective"]
    assert nonflat.is_projective(sweedler, module="regular")["projective"]
    assert not nonflat.is_projective(sweedler)["projective"]
    assert nonflat.is_projective(nonflat.build_cyclic(2, "Q"), of_coend=True)["projective"]
    free = nonflat.is_free(sweedler, of_coend=True)
    assert free["verdict"] == "no"
    assert free["evidence"]


def test_halfdual_is_an_involution():
    endo = {"u_dim": 2, "v_dim": 2,
            "matrix": [[str((i * 4 + j) % 5 - 2) for j in range(4)] for i in range(4)]}
    once = nonflat.halfdual(endo, "Q")
    assert once["matrix"] != endo["matrix"]
    assert nonflat.halfdual(once, "Q")["matrix"] == endo["matrix"]


def test_slice_algebra_of_lemma_operator(sweedler):
    op = nonflat.lemma_operator(sweedler)
    s = nonflat.slice_algebra(op, "Q")
    assert s["dim"] == 16
    assert s["saturated"]


def test_certify_and_recheck(sweedler):
    text, verdict, reason = nonflat.certify(sweedler, depth=2, truncation=4, seed=5)
    assert verdict == "yes"
    assert reason == ""
    assert nonflat.recheck(text, sweedler) == (0, "", "")
    edited = json.loads(text)
    edited["levels"][1]["diag_max"] += 1
    status, field, _ = nonflat.recheck(json.dumps(edited, indent=2) + "\n", sweedler)
    assert (status, field) == (1, ".levels[1].diag_max")
    assert nonflat.recheck(text[:40], sweedler)[0] == 2


def test_semisimple_refusal():
    text, verdict, reason = nonflat.certify(nonflat.build_cyclic(2, "Q"))
    assert verdict == "no"
    assert reason == "A semisimple: Coend V projective, no non-flatness evidence"


def test_errors_raise():
    with pytest.raises(nonflat.NonflatError, match="BadRoot"):
        nonflat.build_taft(3, "Q")
    with pytest.raises(nonflat.NonflatError, match="InvalidArgument"):
        nonflat.certify(nonflat.build_sweedler("Q"), depth=7, truncation=8)
    with pytest.raises(ValueError):
        nonflat.verify("{")
