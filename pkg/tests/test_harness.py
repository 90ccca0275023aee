from pbeauville.harness import verify_group

from conftest import abelian, pq


def test_maximal_class_row():
    row = verify_group("pq54", "x", pq(5, 4))
    assert row.ok and row.agreement == "agree"
    assert row.oracle["decision"] == row.fast["decision"] == "beauville-tame"
    assert row.quotient == {"order": 5**4, "method": "oracle", "decision": "beauville-tame", "ok": True}
    assert row.good_power["oracle_agrees"] is True
    assert "seconds" not in row.record()


def test_abelian_row():
    row = verify_group("c25", "x", abelian(25, 25))
    assert row.ok and not row.maximal_class and row.catanese is True
    assert row.profile is None and row.agreement == "n/a"


def test_oracle_cap_respected():
    row = verify_group("pq55", "x", pq(5, 5), oracle_cap=5**5)
    assert row.oracle is None and row.agreement == "n/a"
    assert row.fast["decision"] == "beauville-tame" and row.ok
