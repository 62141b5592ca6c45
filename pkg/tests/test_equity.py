import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import best_of_seven
from pokerlab.cards import deck_for, parse_card, parse_cards
from pokerlab.equity import (
    EmptyRangeError,
    InconsistentCardsError,
    equity_exact,
    equity_exact_fraction,
    equity_mc,
    hand_histogram,
)


def test_leduc_preflop_exact_values():
    assert equity_exact_fraction("leduc", ["HK"]) == Fraction(7, 10)
    assert equity_exact_fraction("leduc", ["HQ"]) == Fraction(1, 2)
    assert equity_exact_fraction("leduc", ["HJ"]) == Fraction(3, 10)
    r = equity_exact("leduc", ["HK"])
    assert r.win == pytest.approx(0.6) and r.tie == pytest.approx(0.2)
    assert r.samples == 0 and r.half_width is None


def test_kuhn_king_always_wins():
    assert equity_exact("kuhn", ["SK"]).equity == 1.0
    assert equity_exact_fraction("kuhn", ["SJ"]) == 0


def test_exact_complementarity():
    # a uniformly dealt seat holds exactly half the equity, as rationals
    for variant in ("kuhn", "leduc"):
        deck = deck_for(variant).cards
        total = sum(
            (equity_exact_fraction(variant, [c]) for c in deck), Fraction(0)
        )
        assert total == Fraction(len(deck), 2)
    # and per matchup, win/lose swap exactly when seats swap
    from pokerlab.cards import compare_showdown

    others = [c for c in deck_for("leduc").cards if c.code not in ("HK", "SQ")]
    for opp in others:
        a = compare_showdown("leduc", ["HK"], [opp], ["SQ"])
        b = compare_showdown("leduc", [opp], ["HK"], ["SQ"])
        assert {a, b} in ({"win", "lose"}, {"tie"})


def test_exact_input_validation():
    with pytest.raises(InconsistentCardsError):
        equity_exact("leduc", ["HK"], ["HK"])
    with pytest.raises(InconsistentCardsError):
        equity_exact("kuhn", ["HK"])  # hearts are not in the kuhn deck
    with pytest.raises(InconsistentCardsError):
        equity_exact("leduc", ["HK", "SK"])
    with pytest.raises(InconsistentCardsError):
        equity_exact("limit", ["SA", "SK"])


def test_histogram_examples():
    mine, opp = hand_histogram("leduc", ["HK"])
    assert opp.mass == {"J": 0.4, "Q": 0.4, "K": 0.2}
    assert mine.mass == {"J": 1 / 3, "Q": 1 / 3, "K": 1 / 3}
    _, opp = hand_histogram("kuhn", ["SQ"])
    assert opp.mass == {"J": 0.5, "K": 0.5}


def test_histograms_respect_visible_cards():
    mine, opp = hand_histogram("leduc", ["HK"], ["SK"])
    # one king is mine and one is on board: none left for the opponent
    assert "K" not in opp.mass
    assert abs(sum(opp.mass.values()) - 1.0) < 1e-9
    assert mine.mass["K"] == pytest.approx(0.2)  # table view: 1 king of 5 unseen


def test_equity_mc_is_deterministic_and_bounded():
    a = equity_mc(["SK", "CT"], samples=5000, seed=3)
    b = equity_mc(["SK", "CT"], samples=5000, seed=3)
    assert a == b
    assert abs(a.win + a.tie + a.lose - 1.0) < 1e-9
    assert 0.0 <= a.equity <= 1.0
    assert a.samples == 5000 and a.half_width > 0


def test_equity_mc_aa_dominates():
    assert equity_mc(["SA", "HA"], samples=20000, seed=3).equity > 0.8


def test_equity_mc_mirrored_hands_complement():
    hero = equity_mc(["SA", "HK"], samples=40000, seed=10)
    villain = equity_mc(["SQ", "C2"], samples=40000, seed=11)
    # not the same matchup, just a sanity band; the strict check is below
    assert hero.equity > villain.equity


def test_mirror_complementarity_via_fixed_opponent_range():
    hero_cards = ["SA", "HK"]
    villain_cards = ["SQ", "C2"]
    hero = equity_mc(
        hero_cards, opponent_range={tuple(villain_cards): 1.0}, samples=30000, seed=7
    )
    villain = equity_mc(
        villain_cards, opponent_range={tuple(hero_cards): 1.0}, samples=30000, seed=8
    )
    width = hero.half_width + villain.half_width
    assert hero.equity + villain.equity == pytest.approx(1.0, abs=2 * width)


def test_preflop_monotonicity():
    aa = equity_mc(["SA", "HA"], samples=100000, seed=1).equity
    kk = equity_mc(["SK", "HK"], samples=100000, seed=1).equity
    junk = equity_mc(["S2", "H7"], samples=100000, seed=1).equity
    assert aa >= kk >= junk


def test_range_weighted_equity_against_exact_enumeration():
    board = ["S2", "H7", "DK", "C9", "HJ"]  # complete board: no runout noise
    hero = ["SA", "SK"]
    villain = ["HA", "HQ"]
    got = equity_mc(hero, board, opponent_range={tuple(villain): 1.0},
                    samples=200, seed=0)
    from pokerlab.cards import compare_showdown

    expected = {"win": 1.0, "tie": 0.5, "lose": 0.0}[
        compare_showdown("limit", hero, villain, board)
    ]
    assert got.equity == expected


def test_empty_range_rejected():
    with pytest.raises(EmptyRangeError):
        equity_mc(["SA", "HA"], opponent_range={("SA", "HA"): 1.0}, samples=10, seed=0)
    with pytest.raises(ValueError):
        equity_mc(["SA", "HA"], samples=0, seed=0)


def test_leduc_mc_sampling_agrees_with_exact():
    # independent sampler written here, compared at 3 sigma
    rng = random.Random(5)
    deck = list(deck_for("leduc").cards)
    mine = parse_card("HK")
    wins = ties = 0
    n = 100000
    for _ in range(n):
        rest = [c for c in deck if c != mine]
        rng.shuffle(rest)
        opp, board = rest[0], rest[1]
        my_pair, opp_pair = mine.rank == board.rank, opp.rank == board.rank
        if my_pair or opp_pair:
            wins += 1 if my_pair else 0
        elif mine.rank_value != opp.rank_value:
            wins += 1 if mine.rank_value > opp.rank_value else 0
        else:
            ties += 1
    sampled = (wins + 0.5 * ties) / n
    exact = float(equity_exact_fraction("leduc", ["HK"]))
    sigma = (0.25 / n) ** 0.5
    assert abs(sampled - exact) < 3 * sigma


def test_limit_river_histogram_matches_enumeration_oracle():
    hole = parse_cards(["SA", "SK"])
    board = parse_cards(["SQ", "SJ", "H2", "D7", "C9"])
    mine, opp = hand_histogram("limit", hole, board)
    assert sum(mine.mass.values()) == pytest.approx(1.0)
    assert sum(opp.mass.values()) == pytest.approx(1.0)
    # oracle: enumerate all 990 opponent holdings with the naive ranker
    labels = ("high-card", "pair", "two-pair", "trips", "straight", "flush",
              "full-house", "quads", "straight-flush")
    unseen = [c for c in deck_for("limit").cards if c not in set(hole) | set(board)]
    counts = {}
    total = 0
    for pair in combinations(unseen, 2):
        cat, _ = best_of_seven(list(pair) + list(board))
        counts[labels[cat]] = counts.get(labels[cat], 0) + 1
        total += 1
    expected = {k: v / total for k, v in counts.items()}
    assert opp.mass == pytest.approx(expected)
    my_cat = labels[best_of_seven(list(hole) + list(board))[0]]
    assert mine.mass == {my_cat: 1.0}


def test_limit_histogram_preflop_masses_sum_to_one():
    mine, opp = hand_histogram("limit", ["SA", "HA"], samples=4000, seed=2)
    assert sum(mine.mass.values()) == pytest.approx(1.0)
    assert sum(opp.mass.values()) == pytest.approx(1.0)
    # a pocket pair never finishes below one pair; a random hand often does
    assert "high-card" not in mine.mass
    assert opp.mass["high-card"] > 0.1
