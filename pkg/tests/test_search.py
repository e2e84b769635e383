import random

import pytest

from flatstring import (InconclusiveError, WitnessStep, canonical_text,
                        equivalent_bounded, is_crossing_irreducible, parse,
                        reduce_monotone, replay_witness, scramble, serialize,
                        type3_orbit)
from flatstring.moves import R1_DECREASE, R2_DECREASE

LEFT = "a- b- c- d- a- e+ f+ g+ / b- g+ / d- h+ f+ c- h+ e+"
RIGHT = "a- c- d- b- a- g+ e+ f+ / b- g+ / d- h+ f+ c- h+ e+"


def test_orbit_of_rigid_code_is_singleton():
    orbit = type3_orbit(parse("a+ / a+"))
    assert orbit.members == ("1+ / 1+",)
    assert orbit.exhausted


def test_orbit_members_share_count_and_genus():
    orbit = type3_orbit(parse(LEFT))
    assert len(orbit.members) == 2 and orbit.exhausted
    for member in orbit.members:
        assert parse(member).n_crossings == 8


def test_orbit_cap_reports_partial():
    orbit = type3_orbit(parse(LEFT), cap=1)
    assert not orbit.exhausted
    assert len(orbit.members) == 1


def test_orbit_path_replays():
    orbit = type3_orbit(parse(LEFT))
    other = orbit.members[1]
    steps = orbit.path_to(other)
    assert replay_witness(orbit.start, other, steps)


def test_irreducibility_examples():
    res = is_crossing_irreducible(parse("a+ a+"))
    assert not res.irreducible
    assert res.witness[1].kind == R1_DECREASE
    assert is_crossing_irreducible(parse("a+ / a+")).irreducible
    assert is_crossing_irreducible(parse(LEFT)).irreducible
    assert is_crossing_irreducible(parse(RIGHT)).irreducible


def test_irreducibility_inconclusive_on_tiny_cap():
    with pytest.raises(InconclusiveError):
        is_crossing_irreducible(parse(LEFT), cap=1)


def test_reduce_kink_single_step():
    res = reduce_monotone(parse("a+ a+"))
    assert canonical_text(res.code) == "()"
    assert res.complete
    assert [s.move.kind for s in res.trace.steps] == [R1_DECREASE]


def test_reduce_counterexample_is_fixed_point():
    for text in (LEFT, RIGHT):
        res = reduce_monotone(parse(text))
        assert res.complete
        assert res.trace.steps == ()
        assert canonical_text(res.code) == canonical_text(parse(text))


def test_reduce_trace_is_monotone_and_replayable():
    rng = random.Random(7)
    base = parse("a+ / a+")
    for seed in range(8):
        sc = scramble(base, seed, 7, budget=9)
        res = reduce_monotone(sc.code)
        assert res.complete
        crossings = parse(res.trace.initial).n_crossings
        genus = None
        for step in res.trace.steps:
            assert step.crossings_after <= crossings
            if step.move.kind in (R1_DECREASE, R2_DECREASE):
                assert step.crossings_after < crossings
            crossings = step.crossings_after
            if genus is not None:
                assert step.genus_after <= genus
            genus = step.genus_after
        assert replay_witness(res.trace.initial, res.trace.final,
                              res.trace.steps)


def test_scramble_contract():
    base = parse("a+ / a+")
    assert scramble(base, 3, 0).code == base
    one = scramble(base, 11, 6, budget=9)
    two = scramble(base, 11, 6, budget=9)
    assert serialize(one.code) == serialize(two.code)
    stuck = scramble(base, 5, 4, budget=1)
    assert stuck.stalled and stuck.steps_applied == 0
    assert stuck.code == base


def test_equivalent_trivial_and_one_move():
    x = parse("a+ b+ / a+ b+")
    v = equivalent_bounded(x, x)
    assert v.status == "equivalent-with-witness" and v.witness == ()
    v = equivalent_bounded(parse("a+ a+"), parse("()"))
    assert v.status == "equivalent-with-witness"
    assert len(v.witness) == 1
    assert replay_witness("a+ a+", "()", v.witness)


def test_equivalent_distinct_certified():
    v = equivalent_bounded(parse("a+ / a+"), parse("a+ b+ / a+ b+"),
                           node_limit=200)
    assert v.status == "distinct-orbits-at-minimum"
    assert v.details["hypotheses_checked"]
    w = equivalent_bounded(parse("a+ b+ / a+ b+"), parse("a+ / a+"),
                           node_limit=200)
    assert w.status == v.status


def test_equivalent_counterexample_pair_tunnel_witness():
    a, b = parse(LEFT), parse(RIGHT)
    v = equivalent_bounded(a, b, budget=12, node_limit=500)
    assert v.status == "equivalent-with-witness"
    assert replay_witness(canonical_text(a), canonical_text(b), v.witness)
    peaks = [parse(s.state).n_crossings for s in v.witness]
    assert max(peaks) <= 12
    w = equivalent_bounded(b, a, budget=12, node_limit=500)
    assert w.status == "equivalent-with-witness"


def test_equivalent_inconclusive_is_honest():
    v = equivalent_bounded(parse(LEFT), parse(RIGHT), budget=8, node_limit=3)
    assert v.status == "inconclusive-budget-exhausted"


def test_replay_rejects_tampering():
    v = equivalent_bounded(parse("a+ a+"), parse("()"))
    step = v.witness[0]
    forged = WitnessStep(step.state, step.move, "1+ 1+", step.direction)
    assert not replay_witness("a+ a+", "()", [forged])


def test_budget_precondition():
    with pytest.raises(ValueError):
        equivalent_bounded(parse(LEFT), parse("()"), budget=2)


def test_orbit_is_worker_count_independent():
    one = type3_orbit(parse(LEFT), workers=1)
    two = type3_orbit(parse(LEFT), workers=3)
    assert one.members == two.members
    assert one.adjacency == two.adjacency


def test_reduction_lands_on_certified_irreducible():
    res = reduce_monotone(scramble(parse("a+ / a+"), 2, 6, budget=9).code)
    assert res.complete
    assert res.certificate is not None and res.certificate.irreducible
    assert is_crossing_irreducible(res.code).irreducible
