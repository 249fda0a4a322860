import pytest

from soergel_ext import koszul as K
from soergel_ext import relations
from soergel_ext.relations import CATALOG, Relation, applicable, suite_names, verify_relation, verify_suite
from soergel_ext.scalars import Realm


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_relation_holds_in_designated_realm(name):
    r = verify_relation(name)
    assert r.status == "pass", r.as_dict()
    assert r.passed is True
    if r.lhs_nonzero is not None:
        assert r.lhs_nonzero


TWO_COLOR = [n for n in sorted(CATALOG) if CATALOG[n].group == "two-color"]


@pytest.mark.parametrize("m", [3, 6])
@pytest.mark.parametrize("name", TWO_COLOR)
def test_two_color_relations_in_finite_type(name, m):
    assert verify_relation(name, Realm(m)).passed


@pytest.mark.parametrize("name", TWO_COLOR)
def test_two_color_relations_skipped_at_m2(name):
    r = verify_relation(name, Realm(2))
    assert r.status == "skipped" and r.passed is None


def _flipped(name):
    rel = CATALOG[name]

    def build(R):
        lhs, rhs, words = rel.build(R)
        return lhs, -rhs, words

    return Relation(name + "-flipped", rel.group, rel.m, build, rel.sign)


@pytest.mark.parametrize("name", ["barbell", "4ext-rotation", "newgen-rotation-tsts", "2m-absorption"])
def test_negated_right_side_is_reported_as_sign_flip(name, monkeypatch):
    flipped = _flipped(name)
    monkeypatch.setitem(CATALOG, flipped.name, flipped)
    r = verify_relation(flipped.name)
    assert r.status == "sign-flip pass"
    assert r.passed is False


def test_wrong_right_side_fails(monkeypatch):
    rel = CATALOG["one-color-cohomology"]

    def build(R):
        lhs, _, words = rel.build(R)
        return lhs, K.compose(K.LeftMul(K.kcomplex(R, "e"), R.alpha("t")), K.chain_lift(R, "counit", "s"),
                              K.phi(R, "s")), words

    monkeypatch.setitem(CATALOG, "broken", Relation("broken", "one-color", None, build))
    r = verify_relation("broken")
    assert r.status == "fail" and r.residual is not None


def test_fixed_realm_relations_reject_other_realms():
    with pytest.raises(ValueError):
        verify_relation("hochschild-slide", Realm(3))
    assert not applicable(CATALOG["hochschild-slide"], Realm(None))


def test_unknown_relation():
    with pytest.raises(KeyError):
        verify_relation("no-such-relation")
    with pytest.raises(KeyError):
        suite_names("bogus")


def test_suites_partition_catalog():
    parts = suite_names("onecolor") + suite_names("twocolor") + suite_names("m2")
    assert sorted(parts) == sorted(suite_names("all"))


def test_parallel_suite_matches_serial():
    names = suite_names("onecolor")
    serial = [r.as_dict() for r in verify_suite(names, m=5)]
    parallel = [r.as_dict() for r in verify_suite(names, m=5, jobs=2)]
    assert serial == parallel


def test_report_serializes():
    d = verify_relation("barbell").as_dict()
    assert set(d) == {"name", "group", "realm", "words", "bidegree", "pass", "status", "residual", "lhs_nonzero"}
    assert d["realm"] == relations.realm_label(Realm(None))
