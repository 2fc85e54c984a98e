import math

import pytest

from hyperper.algebra import (PeriodSet, divisor_closure, divisors,
                              interval_classifier, lcm_closure,
                              per_finite_formula, per_product_formula,
                              per_symmetric_formula, sharkovskii_forced,
                              sharkovskii_forces)
from hyperper.rng import SeedStream


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(49) == [1, 7, 49]
    with pytest.raises(ValueError):
        divisors(0)


def test_period_set_kinds():
    fin = PeriodSet.finite([4, 6])
    assert fin.sorted_values() == [4, 6]
    assert 6 in fin and 5 not in fin and 0 not in fin
    assert PeriodSet.all_naturals().truncate(4) == [1, 2, 3, 4]
    tail = PeriodSet.forcing_tail(6)
    assert 10 in tail and 3 not in tail
    with pytest.raises(ValueError):
        PeriodSet.finite([])
    with pytest.raises(ValueError):
        PeriodSet.finite([0])
    with pytest.raises(ValueError):
        PeriodSet("bogus")
    with pytest.raises(ValueError):
        PeriodSet("finite", values=frozenset({2}), head=3)


def test_period_set_json_round_trip():
    for ps in (PeriodSet.finite([1, 2, 6]), PeriodSet.all_naturals(),
               PeriodSet.forcing_tail(10)):
        assert PeriodSet.from_json(ps.to_json()) == ps
    assert PeriodSet.finite([3, 1]).to_json() == {"kind": "finite", "values": [1, 3]}
    with pytest.raises(ValueError):
        PeriodSet.from_json({"kind": "finite"})
    with pytest.raises(ValueError):
        PeriodSet.from_json({"values": [1]})


def test_closures():
    assert divisor_closure([12]).sorted_values() == [1, 2, 3, 4, 6, 12]
    assert lcm_closure([2, 3]).sorted_values() == [2, 3, 6]
    assert lcm_closure([1]).sorted_values() == [1]
    # accepts PeriodSet input too
    assert divisor_closure(PeriodSet.finite([4])).sorted_values() == [1, 2, 4]
    with pytest.raises(ValueError):
        lcm_closure(PeriodSet.all_naturals())


def test_per_finite_formula_examples():
    assert per_finite_formula([4, 6]).sorted_values() == [1, 2, 3, 4, 6, 12]
    assert per_finite_formula([4]).sorted_values() == [1, 2, 4]
    assert per_finite_formula([2, 3]).sorted_values() == [1, 2, 3, 6]
    assert per_finite_formula([1]).sorted_values() == [1]


def test_per_finite_formula_is_closed():
    stream = SeedStream(13)
    for _ in range(60):
        base = {1 + stream.below(30) for _ in range(1 + stream.below(4))}
        out = set(per_finite_formula(base).values)
        assert base <= out
        for v in out:
            assert set(divisors(v)) <= out
        for a in out:
            for b in out:
                assert math.lcm(a, b) in out


def test_per_symmetric_formula_small_cases():
    # one 6-cycle: a single subset can hold d points of the cycle iff d | 6
    # costing 6/d, so with n = 3 only d = 2 (cost 3), d = 3 (cost 2),
    # d = 6 (cost 1) fit individually; 6 = lcm(2, 3) would cost 3 + 2 > 3
    assert per_symmetric_formula([6], 1).sorted_values() == [6]
    assert per_symmetric_formula([6], 2).sorted_values() == [3, 6]
    assert per_symmetric_formula([6], 3).sorted_values() == [2, 3, 6]
    assert per_symmetric_formula([6], 5).sorted_values() == [2, 3, 6]
    assert per_symmetric_formula([6], 6).sorted_values() == [1, 2, 3, 6]
    # a fixed point costs 1, and the 6-cycle's half-period 3 costs 2
    assert per_symmetric_formula([1, 6], 2).sorted_values() == [1, 3, 6]
    with pytest.raises(ValueError):
        per_symmetric_formula([2], 0)


def test_per_symmetric_formula_combination():
    # cycles 2 and 3: two points (one per cycle) already realize lcm 6
    assert per_symmetric_formula([2, 3], 5).sorted_values() == [1, 2, 3, 6]


def test_per_product_formula_cases():
    assert per_product_formula([4, 6], 1).sorted_values() == [4, 6]
    assert per_product_formula([4, 6], 2).sorted_values() == [4, 6, 12]
    assert per_product_formula([2, 3], 2).sorted_values() == [2, 3, 6]
    # saturation: extra coordinates add nothing new
    assert per_product_formula([2, 3], 9) == per_product_formula([2, 3], 2)
    with pytest.raises(ValueError):
        per_product_formula([2], 0)


def test_sharkovskii_forces_basics():
    assert sharkovskii_forces(3, 5) and sharkovskii_forces(3, 2)
    assert not sharkovskii_forces(5, 3)
    assert sharkovskii_forces(5, 7) and sharkovskii_forces(7, 9)
    assert sharkovskii_forces(6, 10)  # 2*3 before 2*5
    assert sharkovskii_forces(10, 12)  # 2*5 before 4*3
    assert sharkovskii_forces(4, 2) and sharkovskii_forces(4, 1)
    assert not sharkovskii_forces(2, 4)
    assert not sharkovskii_forces(1, 2)
    assert sharkovskii_forces(9, 9)
    with pytest.raises(ValueError):
        sharkovskii_forces(0, 1)


def test_sharkovskii_is_total_order():
    sample = range(1, 41)
    for p in sample:
        for q in sample:
            f, b = sharkovskii_forces(p, q), sharkovskii_forces(q, p)
            assert f or b
            if p != q:
                assert not (f and b)
    # transitivity on the sample
    chain = [p for p in sample]
    chain.sort(key=lambda p: sum(sharkovskii_forces(p, q) for q in sample),
               reverse=True)
    for a, b in zip(chain, chain[1:]):
        assert sharkovskii_forces(a, b)


def test_sharkovskii_forced_sets():
    assert sharkovskii_forced(3) == PeriodSet.all_naturals()
    assert sharkovskii_forced(8).sorted_values() == [1, 2, 4, 8]
    assert sharkovskii_forced(1).sorted_values() == [1]
    six = sharkovskii_forced(6)
    assert six.kind == "sharkovskii_tail"
    assert six.truncate(20) == [1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20]
    with pytest.raises(ValueError):
        sharkovskii_forced(0)


def test_interval_classifier():
    assert interval_classifier(True, True).sorted_values() == [1]
    assert interval_classifier(False, True).sorted_values() == [1, 2]
    assert interval_classifier(False, False) == PeriodSet.all_naturals()
    with pytest.raises(ValueError):
        interval_classifier(True, False)
