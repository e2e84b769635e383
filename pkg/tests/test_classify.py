import pytest

from flatstring import (InconclusiveError, classify, parallel_heuristic, parse,
                        scramble)


def test_intersecting_pair_is_connected_unflagged():
    rep = classify(parse("a+ / a+"))
    assert rep.connected_class
    assert rep.parallel_status == "none-detected"
    assert rep.reduced_code == "1+ / 1+"


def test_two_plain_loops_parallel_and_disconnected():
    rep = classify(parse("() / ()"))
    assert not rep.connected_class
    assert rep.parallel_status == "confirmed-parallel"
    assert [(p.first, p.second) for p in rep.parallel_pairs] == [(0, 1)]


def test_curl_next_to_loop_reduces_apart():
    rep = classify(parse("a+ a+ / ()"))
    assert not rep.connected_class
    assert rep.parallel_status == "confirmed-parallel"
    assert rep.reduced_code == "() / ()"


def test_counterexample_flags_doubled_band():
    rep = classify(parse("a- b- c- d- a- e+ f+ g+ / b- g+ / d- h+ f+ c- h+ e+"))
    assert rep.connected_class
    assert rep.parallel_status == "confirmed-parallel"
    assert [(p.first, p.second) for p in rep.parallel_pairs] == [(1, 2)]
    assert rep.caveats


def test_chain_outer_loops_confirmed_parallel():
    rep = classify(parse("a+ b+ / a+ / b+"))
    assert rep.connected_class
    assert rep.parallel_status == "confirmed-parallel"


def test_heuristic_equal_plain_pairs():
    flags = parallel_heuristic(parse("() / ()"))
    assert [(f.first, f.second, f.status) for f in flags] == \
        [(0, 1, "confirmed-parallel")]
    assert parallel_heuristic(parse("a+ / a+")) == ()


def test_heuristic_suspect_on_equal_multisets_across_pieces():
    flags = parallel_heuristic(parse("a+ a+ / b+ b+"))
    assert [(f.first, f.second, f.status) for f in flags] == [(0, 1, "suspect")]


def test_classify_is_scramble_invariant():
    for text in ("a+ / a+", "a+ b+ / a+ b+"):
        base = classify(parse(text))
        for seed in range(5):
            noisy = scramble(parse(text), seed, 6, budget=9).code
            rep = classify(noisy)
            assert rep.connected_class == base.connected_class
            assert rep.parallel_status == base.parallel_status
            assert rep.reduced_code == base.reduced_code


def test_classify_propagates_inconclusive():
    left = parse("a- b- c- d- a- e+ f+ g+ / b- g+ / d- h+ f+ c- h+ e+")
    with pytest.raises(InconclusiveError):
        classify(left, orbit_cap=1)


def test_confirmed_pairs_share_no_crossings():
    for text in ("() / ()",
                 "a- b- c- d- a- e+ f+ g+ / b- g+ / d- h+ f+ c- h+ e+",
                 "a+ b+ / a+ / b+"):
        rep = classify(parse(text))
        code = parse(rep.reduced_code)
        for flag in rep.parallel_pairs:
            if flag.status != "confirmed-parallel":
                continue
            li = {p.label for p in code.components[flag.first]}
            lj = {p.label for p in code.components[flag.second]}
            assert not (li & lj)


def test_power_pattern_recognized_within_one_piece():
    # plain loop and a 3-fold spiral, both hanging off a third loop so the
    # pair sits in one carrier piece without mutual crossings
    code = parse("u+ v+ / a- b- b- a- w+ z+ / u+ w+ v+ z+")
    flags = parallel_heuristic(code)
    assert any(f.first == 0 and f.second == 1
               and f.status == "confirmed-parallel" for f in flags)


def test_winding_fold_not_mistaken_for_power():
    # same layout but the self-crossings form a +-1 winding fold, which is
    # not a power of the companion loop
    code = parse("u+ v+ / a+ a+ b+ b+ w+ z+ / u+ w+ v+ z+")
    flags = parallel_heuristic(code)
    assert all(f.status != "confirmed-parallel" for f in flags)
