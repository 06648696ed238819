import pytest

from pbwlength import GeneratorSet, SquareMatrix, build_filtration
from pbwlength.bounds import analyze, full_sum_identity, paz_condition, paz_general, prop31_condition
from pbwlength.pbw import check_pbw
from pbwlength.witnesses import is_lie_closed, quantum_plane, random_set, sl2_irrep

from conftest import F5, Q


def test_paz_condition_examples():
    assert not paz_condition(2, 2, [1, 3, 4, 4])
    assert not paz_condition(2, 1, [1, 3, 4, 4])
    for n in (2, 3, 5):
        assert paz_condition(n, 1, [1, 1])
    # beyond the measured length the step is 0
    assert paz_condition(3, 4, [1, 3, 4, 4])
    with pytest.raises(ValueError):
        paz_condition(3, 5, [1, 3, 4, 4])
    with pytest.raises(ValueError):
        prop31_condition(3, 4, [1, 3, 4, 4])


def test_paz_general():
    assert paz_general(3) == 4
    assert [paz_general(n) for n in range(2, 7)] == [2, 4, 6, 9, 13]


def test_full_sum_identity():
    for n in range(2, 65):
        assert full_sum_identity(n) == n * n


def test_quantum_plane_n4_p13():
    g = quantum_plane(4, 13)
    f = build_filtration(g)
    r = analyze(f, check_pbw(g, f).holds, is_lie_closed(g))
    assert (r.c_measured, r.r_star) == (6, 16)
    assert not r.thm32_applicable and r.consistent
    assert r.prop25_condition_met_at is None and r.audit == "ok"


def test_strictly_upper_pair():
    e12 = SquareMatrix.unit(3, 0, 1, Q)
    e23 = SquareMatrix.unit(3, 1, 2, Q)
    f = build_filtration(GeneratorSet(Q, (e12, e23)))
    r = analyze(f)
    assert r.thm32_applicable and r.r_star == 4 < 9
    assert r.c_measured == 2 <= 3
    # with letters swapped, E12 E23 is the ordered word and PBW holds
    g2 = GeneratorSet(Q, (e23, e12))
    f2 = build_filtration(g2)
    r2 = analyze(f2, check_pbw(g2, f2).holds)
    assert r2.pbw_holds and r2.bounds_in_force["proper_subalgebra_2n-3"] == 3 and r2.consistent


def test_truncated_rejected():
    from pbwlength import Truncated
    with pytest.raises(Truncated) as exc:
        build_filtration(quantum_plane(3), max_len=1)
    with pytest.raises(ValueError):
        analyze(exc.value.partial)


def test_sl2_lie_bound():
    for n in range(2, 7):
        g = sl2_irrep(n)
        f = build_filtration(g)
        r = analyze(f, True, is_lie_closed(g))
        assert r.lie_hypothesis
        assert r.c_measured <= 2 * n - 3
        assert r.consistent


def test_claim_cross_check(qp2):
    g, f = qp2
    r = analyze(f, claim_proper_subalgebra=True)
    assert "contradicts" in r.audit


def test_contrapositive_audit_on_corpus():
    seen = 0
    for n, t in [(2, 2), (3, 2), (3, 3)]:
        for seed in range(40):
            f = build_filtration(random_set(n, t, F5, seed))
            r = analyze(f)
            assert "VIOLATED" not in r.audit
            if r.prop25_condition_met_at is None:
                seen += 1
                assert r.r_star == n * n
            assert r.c_measured <= r.paz_general
    assert seen > 0


def test_report_json_nests_conditions(qp2):
    _, f = qp2
    d = analyze(f, pbw_holds=True).to_json()
    assert d["prop25"] == {"condition_met_at": None, "implied_bound": 2}
    assert d["prop31"]["implied_bound"] == 1
    assert d["bounds_in_force"]["pbw_2n-2"] == 2
    assert "prop25_condition_met_at" not in d
