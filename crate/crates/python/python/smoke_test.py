"""Smoke test for the rootno Python bindings.

Build first, e.g. `pip install --no-build-isolation -e crates/python`.
"""

from fractions import Fraction

import rootno_py as r


def main():
    w, factors = r.root_number_f(-972, 18)
    assert w == -1 and factors == {2: 1, 3: 1}, (w, factors)
    assert r.root_number_f(-972, 30)[0] == 1
    assert r.root_number_f(-28812, 14)[0] == -1

    assert r.root_number_l(Fraction(7), Fraction(-588), Fraction(1), Fraction(6)) == 1
    assert r.w_star(2, -3, 1) == -1 and r.w_star(2, -3, 5) == 1

    v = r.check_f(-7500, 6000, 60)
    assert v["verdict"] == "constant" and v["sign"] == 1, v
    assert r.check_f(-972, 12, 18)["verdict"] == "non_constant"

    assert r.falsify_constancy(-7500, 6000, 60, 200) is None
    assert r.falsify_constancy(-28812, 7, 7) is not None

    rep = r.rank_jump_report(-7500, 6000, 60)
    assert rep["predicted_min_rank"] == 2 and rep["rank_jump"] is True, rep

    kinds = {rec["kind"] for rec in r.paper_examples_ledger()["records"]}
    assert {"theorem-vs-table", "table-vs-paper-example"} <= kinds, kinds

    try:
        r.root_number_f(4, 2)
    except ValueError as e:
        assert "singular" in str(e)
    else:
        raise AssertionError("singular fibre accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
