"""Quick end-to-end check of the compiled extension."""

from fractions import Fraction

import involutions_py as inv


def main():
    assert [inv.involution_number(n) for n in range(11)] == [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496]
    assert inv.partial_sum(10) == 13232
    assert inv.involution_number(300) > 2**64
    assert inv.involution_poly(4) == [3, 0, 6, 0, 1]
    assert inv.b_k(1) == Fraction(inv.partial_sum(3), 4)
    assert inv.restricted_count(5, 4) == 96

    g = inv.CycleIndex(5, 4)
    assert g == inv.CycleIndex.from_determinant(5, 4)
    assert str(g) == "Y1^5 + 10 Y1^3 Y2 + 20 Y1^2 Y3 + 15 Y1 Y2^2 + 30 Y1 Y4 + 20 Y2 Y3"
    assert g.terms()[(0, 1, 1, 0)] == 20
    assert g.coefficient([1, 0, 0, 1]) == 30 and g.total() == 96 and len(g) == 6

    c = inv.Census(5, enumerate=True)
    assert c.count("3+2") == 20 and c.total() == 120
    assert c.cycle_index(4) == g

    assert inv.nu(inv.involution_number(100), 2) == inv.nu2_involution(100)
    assert inv.is_efficient(3) and not inv.is_efficient(5)
    assert len(inv.inefficient_primes(541)) == 62
    assert inv.periodicity_counterexample(3, 2, 200) is None
    assert inv.periodicity_counterexample(2, 1, 10) == 0

    assert abs(inv.saddle(1000, 3) - 9.64531052405465) < 1e-12
    assert 0.95 <= inv.ratio(1000, 2) <= 1.05
    assert inv.betas(2)[1] == 1
    b0, b2 = inv.fit_beta(2)
    assert abs(b2 - 0.5) < 1e-3 and abs(b0 + 0.25) < 1e-3

    assert "nu2-involution" in inv.suites()
    ok, checked, bad = inv.run_suite("nu2-involution", 500)
    assert ok and checked == 501 and bad is None

    try:
        inv.nu(0, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("nu(0) should raise")
    print("smoke test passed")


if __name__ == "__main__":
    main()
