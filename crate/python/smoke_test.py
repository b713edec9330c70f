"""Smoke test for the leonard_py extension module."""

import leonard_py as lp

E2 = dict(
    field="p=13",
    theta=["7", "11", "2", "6"],
    thetastar=["10", "12", "1", "3"],
    phi1=["3", "4", "3"],
    phi2=["1", "10", "1"],
)


def main():
    p = lp.ParameterArray(**E2)
    assert p.validate() == []
    assert p.fundamental_type() == ("2", "II")
    assert p.tdd().a == ["12", "4", "9", "1"]

    c = p.classify()
    assert c.near_bipartite and c.reasons == ["Krawtchouk"]
    assert c.contraction.tdd().x == ["3", "4", "3"]

    pair = p.realize()
    assert pair.is_leonard()
    assert pair.contract().a == c.contraction_tdd.realize().a

    pd = p.primary_data()
    assert pd.tag == "II" and pd.values == ["0", "4", "0", "0", "2", "0", "5"]
    b = lp.PrimaryData.type_ii("p=13", ["0", "2", "0", "0", "2", "0", "0"])
    assert lp.expand_krawtchouk(b, 3, "0", "4")[0] == p

    e3b = lp.PrimaryData.type_i("Q", "2", ["0", "1", "-1", "0", "0", "1", "0"])
    assert "reinforced" in e3b.special_flags(3)
    e3 = lp.expand_dual_q_krawtchouk(e3b, 3, "0", "2")
    assert e3.tdd().a == ["3/16", "3/4", "3", "12"]

    assert lp.q_from_beta("Q", "17/4") == ["2", "-2", "1/2", "-1/2"]
    assert lp.from_json(p.to_json()) == p

    first = lp.sample("dualq", 3, "Q", 3, 5, q="2")
    again = lp.sample("dualq", 3, "Q", 3, 5, q="2")
    assert first == again and all(a.validate() == [] for a in first)

    assert lp.census("p=5", 1) == (5 * 5 * 4 * 5 * 4, 0)
    print("smoke test passed")


if __name__ == "__main__":
    main()
