"""Pole, residue, and vanishing filters for the two algebra levels."""

import random

import pytest

from torushecke.algebra import AlgebraElement
from torushecke.demazure import sigma_along_word
from torushecke.laurent import RatFunc
from torushecke.membership import check_membership, delta_criterion
from torushecke.rootdata import canonicalize_word, preset_datum
from torushecke.sampling import random_outlier, random_small_algebra_element
from torushecke.scalars import QScalar

ONE = QScalar.one()
Q = QScalar.q_power(1)


def test_generators_live_at_the_small_level():
    for name, word in (("A1", (1,)), ("A2", (1, 2, 1)), ("B2", (2, 1, 2, 1))):
        datum = preset_datum(name)
        x = sigma_along_word(datum, word)
        assert check_membership(x, "htilde").ok
        assert check_membership(x, "hq").ok


def test_bare_reflection_fails_only_the_vanishing_condition():
    datum = preset_datum("A1")
    s = canonicalize_word(datum, (1,))
    x = AlgebraElement.group_term(datum, s)
    assert check_membership(x, "htilde").ok
    rep = check_membership(x, "hq")
    assert not rep.ok
    assert [v.condition for v in rep.violations] == ["1.3.3"]
    assert rep.violations[0].detail == "coefficient does not vanish on t^gamma = q^-2"
    assert rep.violations[0].word == (1,)


def test_pole_location_violations():
    datum = preset_datum("A2")
    alpha = datum.simple_root_obj(1)
    bad_target = RatFunc.one(datum).with_den_factor(alpha, Q ** 2)
    rep = check_membership(AlgebraElement.from_function(datum, bad_target))
    assert [v.condition for v in rep.violations] == ["1.3.1"]
    assert "not a permitted divisor" in rep.violations[0].detail

    double = RatFunc.one(datum).with_den_factor(alpha, ONE, mult=2)
    rep2 = check_membership(AlgebraElement.from_function(datum, double))
    conditions = [v.condition for v in rep2.violations]
    assert conditions == ["1.3.1"]
    assert "order 2" in rep2.violations[0].detail
    # the residue pairing is skipped where the pole order already failed
    assert all(v.condition != "1.3.2" for v in rep2.violations)


def test_residue_pairing():
    datum = preset_datum("A1")
    s = canonicalize_word(datum, (1,))
    alpha = datum.simple_root_obj(1)
    f = RatFunc.one(datum).with_den_factor(alpha, ONE)
    paired = AlgebraElement(datum, {datum.identity: f, s: -f})
    assert check_membership(paired, "htilde").ok
    unpaired = AlgebraElement(datum, {datum.identity: f, s: f})
    rep = check_membership(unpaired, "htilde")
    assert [v.condition for v in rep.violations] == ["1.3.2"]
    assert rep.scanned_roots == [(1,)]


def test_report_dict_shape():
    datum = preset_datum("A1")
    s = canonicalize_word(datum, (1,))
    rep = check_membership(AlgebraElement.group_term(datum, s), "hq")
    d = rep.to_dict()
    assert sorted(d) == ["level", "ok", "scanned_roots", "violations"]
    assert d["level"] == "hq"
    assert d["ok"] is False
    assert d["violations"] == [
        {
            "condition": "1.3.3",
            "word": [1],
            "root": [1],
            "detail": "coefficient does not vanish on t^gamma = q^-2",
        }
    ]
    with pytest.raises(ValueError):
        check_membership(AlgebraElement.identity(datum), "h")


def test_delta_criterion_agrees_with_direct_check():
    for name in ("A1", "A2"):
        datum = preset_datum(name)
        rng = random.Random(301)
        for k in range(10):
            if k % 2:
                x = random_small_algebra_element(datum, rng)
            else:
                x = random_outlier(datum, rng)
            assert delta_criterion(x).ok == check_membership(x, "hq").ok


def test_delta_criterion_needs_finite_data():
    datum = preset_datum("A1aff")
    with pytest.raises(ValueError):
        delta_criterion(AlgebraElement.identity(datum))
