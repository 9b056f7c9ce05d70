import random

import pytest

from mincomp.boundary import (
    LEFT, RIGHT, BelowThreshold, OneBlock, build_boundary_graph, cycle_base_words,
    decompose_lb, decompose_rb, decomposition_threshold, descendant, evolution_closed_form,
    lb_by_levels, left_boundary, lp_word, lq_word, maximal_bounded_factors, origins,
    period_cover_residual, period_word, rb_by_levels, right_boundary, rp_word, rq_word,
)
from mincomp.substitution import classify
from mincomp.words import as_word

from corpus import check_decompositions, check_evolution, check_isolation_per_cycle, random_substitution
from named import CHACON, FIBONACCI, RIGHT_WILD, RUNNING, sub

# LB / RB of sigma^k(3) in the running example, k = 1..5, by direct rule application
RUNNING_LB_OF_3 = ["54", "6554", "566554", "65566554", "5665566554"]
RUNNING_RB_OF_3 = ["5", "56", "565", "5656", "56565"]


@pytest.fixture(scope="module")
def running():
    x = sub(RUNNING)
    return x, classify(x)


def w(text):
    return as_word(text)


@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_running_boundary_graphs(running, side):
    x, cls = running
    g = build_boundary_graph(x, cls, side)
    assert dict(g.edge) == {"0": "1", "1": "0", "2": "2", "3": "3"}
    assert g.cycles == (("0", "1"), ("2",), ("3",))
    assert all(g.entry_steps[c] == 0 for c in "0123")


def test_chacon_left_graph():
    x = sub(CHACON)
    g = build_boundary_graph(x, classify(x), LEFT)
    assert dict(g.edge) == {"0": "0"} and g.cycles == (("0",),)


def test_running_cycle_data(running):
    x, cls = running
    left = build_boundary_graph(x, cls, LEFT)
    right = build_boundary_graph(x, cls, RIGHT)
    data = cycle_base_words(x, cls, left, ("3",))
    assert (data.base_words["3"], data.preperiod_exponent, data.period_exponent) == (w("54"), 1, 2)
    data = cycle_base_words(x, cls, right, ("3",))
    assert (data.base_words["3"], data.preperiod_exponent, data.period_exponent) == (w("5"), 0, 2)
    data = cycle_base_words(x, cls, left, ("0", "1"))
    assert data.base_words == {"0": (), "1": ()}


def test_running_period_words(running):
    x, cls = running
    assert lp_word(x, cls, "3") == w("5665")
    assert lq_word(x, cls, "3") == w("54")
    assert rp_word(x, cls, "3") == w("56")
    assert rq_word(x, cls, "3") == ()
    assert lp_word(x, cls, "0") == ()
    assert rp_word(x, cls, "2") == ()


def test_right_wild_period_words():
    x = sub(RIGHT_WILD)
    cls = classify(x)
    assert lp_word(x, cls, "0") == ()
    assert rp_word(x, cls, "0") == w("1")


def test_period_word_needs_a_periodic_letter():
    x = sub("0 -> 12 ; 1 -> 11 ; 2 -> 2")
    cls = classify(x)
    with pytest.raises(ValueError, match="not left-periodic"):
        period_word(x, cls, "0", LEFT)


def test_direct_boundaries_match_rule_application(running):
    x, cls = running
    for k, (left, right) in enumerate(zip(RUNNING_LB_OF_3, RUNNING_RB_OF_3), start=1):
        assert left_boundary(x, cls, "3", k) == (w(left), "3")
        assert right_boundary(x, cls, "3", k) == (w(right), "3")
        assert lb_by_levels(x, cls, "3", k) == w(left)
        assert rb_by_levels(x, cls, "3", k) == w(right)


def test_decompose_lb_running(running):
    x, cls = running
    parts = decompose_lb(x, cls, "3", 3)
    assert parts.exponent == 1
    assert parts.assemble(lp_word(x, cls, parts.base)) == w(RUNNING_LB_OF_3[2])
    exponents = []
    for m in range(11):
        k = 1 + 2 * m
        parts = decompose_lb(x, cls, "3", k)
        assert parts.assemble(lp_word(x, cls, parts.base)) == left_boundary(x, cls, "3", k)[0]
        exponents.append(parts.exponent)
    assert exponents == list(range(11))


def test_decompose_rb_running(running):
    x, cls = running
    parts = decompose_rb(x, cls, "3", 2)
    assert parts.assemble(rp_word(x, cls, parts.base)) == w(RUNNING_RB_OF_3[1])


def test_decompose_rb_right_wild():
    x = sub(RIGHT_WILD)
    cls = classify(x)
    parts = decompose_rb(x, cls, "0", 5)
    assert (parts.head, parts.exponent, parts.suffix) == ((), 5, ())
    assert parts.assemble(rp_word(x, cls, "0")) == w("11111")


def test_tame_cycle_has_empty_periods(running):
    x, cls = running
    for k in range(0, 12):
        parts = decompose_lb(x, cls, "2", k)
        assert lp_word(x, cls, parts.base) == ()
        assert len(parts.assemble(())) <= 1


def test_chacon_right_boundary_is_empty():
    x = sub(CHACON)
    cls = classify(x)
    for k in range(1, 8):
        assert decompose_rb(x, cls, "0", k).assemble(()) == ()


def test_below_threshold_is_refused(running):
    x, cls = running
    assert decomposition_threshold(x, cls, "3", LEFT) == 1
    with pytest.raises(BelowThreshold) as info:
        decompose_lb(x, cls, "3", 0)
    assert info.value.threshold == 1


def test_origins():
    x = sub(RUNNING)
    found = origins(x, classify(x))
    assert OneBlock("1", w("4"), "1") in found
    assert OneBlock("2", w("4"), "2") in found
    x = sub(CHACON)
    assert set(origins(x, classify(x))) == {OneBlock("0", (), "0"), OneBlock("0", w("1"), "0")}
    x = sub(FIBONACCI)
    assert origins(x, classify(x)) == [OneBlock("0", (), "1")]


def test_descendant(running):
    x, cls = running
    assert descendant(x, cls, OneBlock("2", w("4"), "2")) == OneBlock("2", w("5"), "2")
    assert descendant(x, cls, OneBlock("1", w("4"), "1")) == OneBlock("0", w("5"), "0")


def test_evolution_closed_form(running):
    x, cls = running
    block = OneBlock("1", w("4"), "1")
    assert evolution_closed_form(x, cls, block, 0) == block
    assert evolution_closed_form(x, cls, block, 2) == descendant(x, cls, descendant(x, cls, block))
    c = sub(CHACON)
    ccls = classify(c)
    block = OneBlock("0", w("1"), "0")
    expected = block
    for _ in range(3):
        expected = descendant(c, ccls, expected)
    assert evolution_closed_form(c, ccls, block, 3) == expected


def test_identities_on_random_substitutions():
    rng = random.Random(3)
    done = 0
    while done < 300:
        x = random_substitution(rng)
        cls = classify(x)
        if not cls.growing:
            continue
        done += 1
        assert check_decompositions(x, cls) == [], x
        assert check_evolution(x, cls) == [], x
        assert check_isolation_per_cycle(x, cls) == [], x
        for c in cls.growing:
            for k in range(13):
                assert lb_by_levels(x, cls, c, k) == left_boundary(x, cls, c, k)[0]
                assert rb_by_levels(x, cls, c, k) == right_boundary(x, cls, c, k)[0]


def test_maximal_bounded_factors_are_covered_by_periods(running):
    x, cls = running
    periods_right = [rp_word(x, cls, c) for c in cls.right_isolated]
    periods_left = [lp_word(x, cls, c) for c in cls.left_isolated]
    residuals = []
    for c in cls.growing:
        for k in range(1, 11):
            for factor in maximal_bounded_factors(x.power_image(c, k), cls.bounded):
                residuals.append(period_cover_residual(factor, periods_right, periods_left))
    # the running maximum stops growing although factor lengths grow linearly
    assert max(residuals) <= 8
    assert max(len(f) for f in maximal_bounded_factors(x.power_image("3", 10), cls.bounded)) > 8


def test_maximal_bounded_factors_split_on_growing_letters():
    assert maximal_bounded_factors(w("5045"), {"4", "5"}) == [w("5"), w("45")]
    assert maximal_bounded_factors(w("00"), {"4"}) == [(), (), ()]
