import pytest

from pbwlength import GeneratorSet, SquareMatrix, build_filtration, check_pbw
from pbwlength.pbw import FAILS, HOLDS, TRUNCATED, ordered_expansion, replay_counterexample
from pbwlength.witnesses import quantum_plane, random_set

from conftest import F5, Q, mat


def test_single_generator_holds():
    g = random_set(3, 1, F5, 4)
    f = build_filtration(g)
    for up_to in (1, 3, 7):
        assert check_pbw(g, f, up_to).verdict == HOLDS


def test_quantum_plane_holds(qp2):
    g, f = qp2
    r = check_pbw(g, f, 3)
    assert r.holds and r.checked_up_to == 3
    # hand check: YX = q^-1 XY and value(1,2) = 5 < value(2,1) = 7
    y, x = g.mats
    assert x @ y == (y @ x).scale(4)
    assert ordered_expansion(g, f, (1, 2)) == [(4, (2, 1))]


def test_e12_e21():
    e12 = SquareMatrix.unit(2, 0, 1, Q)
    e21 = SquareMatrix.unit(2, 1, 0, Q)
    g = GeneratorSet(Q, (e12, e21))
    f = build_filtration(g)
    # E12 E21 = E11 = I - E22 = I - E21 E12, so (1,2) = -(2,1) mod L_1
    assert e12 @ e21 == SquareMatrix.identity(2, Q) - e21 @ e12
    assert ordered_expansion(g, f, (1, 2)) == [(-1, (2, 1))]
    assert check_pbw(g, f).holds


def test_fails_with_replayable_counterexample():
    g = random_set(3, 2, F5, 0)
    f = build_filtration(g)
    r = check_pbw(g, f)
    assert r.verdict == FAILS
    ce = r.counterexample
    assert ce.word == (1, 2) and ce.candidates == ((2, 2), (2, 1)) and ce.quotient_dim == 3
    assert replay_counterexample(g, f, ce)
    assert ordered_expansion(g, f, ce.word) is None


def test_replay_rejects_doctored_counterexample():
    g = random_set(3, 2, F5, 0)
    f = build_filtration(g)
    ce = check_pbw(g, f).counterexample
    from dataclasses import replace
    assert not replay_counterexample(g, f, replace(ce, candidates=ce.candidates[:1]))
    assert not replay_counterexample(g, f, replace(ce, word=(2, 1)))


def test_truncated_verdict():
    g = quantum_plane(4)
    f = build_filtration(g)
    r = check_pbw(g, f, 7, word_limit=20)
    assert r.verdict == TRUNCATED and r.checked_up_to < 7


def test_shallow_filtration_rejected():
    from pbwlength import Truncated
    g = quantum_plane(3)
    with pytest.raises(Truncated) as exc:
        build_filtration(g, max_len=2)
    with pytest.raises(ValueError):
        check_pbw(g, exc.value.partial, 5)


@pytest.mark.parametrize("n,t", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_holds_implies_length_bound(n, t):
    for seed in range(60):
        g = random_set(n, t, F5, seed)
        f = build_filtration(g)
        r = check_pbw(g, f)
        if r.holds:
            assert f.length <= 2 * n - 2
            if f.r_star < n * n:
                assert f.length <= 2 * n - 3
        elif r.verdict == FAILS:
            assert replay_counterexample(g, f, r.counterexample)


def test_ordered_expansion_is_congruent(qp3):
    g, f = qp3
    from pbwlength.words import all_words, is_ordered, numeric_value
    for w in all_words(3, 2):
        exp = ordered_expansion(g, f, w)
        assert exp is not None
        diff = g.product(w)
        for c, o in exp:
            assert is_ordered(o) and numeric_value(o, 2) >= numeric_value(w, 2)
            diff = diff - g.product(o).scale(c)
        assert f.in_level(diff, 2)
