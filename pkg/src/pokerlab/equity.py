"""Win probabilities and hand histograms.

Kuhn and Leduc are enumerated exactly over every opponent holding and
remaining community deal (uniform chance), computed in integer counts and
converted to rationals. Limit Hold'em uses seeded Monte Carlo with a 95%
normal-approximation confidence half-width, except on a complete board
where opponent holdings are enumerated exactly.

Equity is win + tie/2 throughout, so hero and villain equities always sum
to one.

Histograms:
  kuhn/leduc - chance posteriors over a player's private rank; the
      opponent histogram conditions on my cards plus the community, the
      "mine" histogram conditions on the community alone (the table view
      of my range). Neither places mass on a visible card. Posteriors are
      chance-only: they do not condition on betting behavior.
  limit - distribution over showdown hand categories for each seat,
      Monte Carlo before the river, exact on a complete board.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cards import (
    Card,
    CardError,
    HandCategory,
    card_pair,
    compare_showdown,
    deck_for,
    parse_cards,
    rank7,
)
from .rng import SplitMix64

CATEGORY_LABELS = {
    HandCategory.HIGH_CARD: "high-card",
    HandCategory.PAIR: "pair",
    HandCategory.TWO_PAIR: "two-pair",
    HandCategory.TRIPS: "trips",
    HandCategory.STRAIGHT: "straight",
    HandCategory.FLUSH: "flush",
    HandCategory.FULL_HOUSE: "full-house",
    HandCategory.QUADS: "quads",
    HandCategory.STRAIGHT_FLUSH: "straight-flush",
}


class InconsistentCardsError(ValueError):
    pass


class EmptyRangeError(ValueError):
    pass


@dataclass(frozen=True)
class EquityResult:
    win: float
    tie: float
    lose: float
    equity: float  # win + tie/2
    samples: int  # 0 means exact enumeration
    half_width: float | None  # 95% CI half-width, Monte Carlo only

    def to_json(self) -> dict:
        return {
            "win": self.win,
            "tie": self.tie,
            "lose": self.lose,
            "equity": self.equity,
            "samples": self.samples,
            "half_width": self.half_width,
        }


@dataclass(frozen=True)
class HandHistogram:
    kind: str  # "cards" or "categories"
    mass: dict[str, float]

    def to_json(self) -> dict:
        return {"kind": self.kind, "mass": dict(sorted(self.mass.items()))}


def _checked(variant: str, my_cards, community) -> tuple[tuple[Card, ...], tuple[Card, ...]]:
    try:
        mine = parse_cards(my_cards)
        board = parse_cards(community)
    except CardError as exc:
        raise InconsistentCardsError(str(exc)) from exc
    deck = set(deck_for(variant).cards)
    seen = mine + board
    if len(set(seen)) != len(seen):
        raise InconsistentCardsError("card appears twice across hand and community")
    if any(c not in deck for c in seen):
        raise InconsistentCardsError(f"card outside the {variant} deck")
    return mine, board


def exact_showdown_counts(variant: str, my_cards, community) -> tuple[int, int, int]:
    """(win, tie, lose) counts over all opponent holdings x community deals."""
    mine, board = _checked(variant, my_cards, community)
    if variant == "kuhn":
        if len(mine) != 1 or board:
            raise InconsistentCardsError("kuhn takes one private card and no community")
        needed = 0
    elif variant == "leduc":
        if len(mine) != 1 or len(board) > 1:
            raise InconsistentCardsError("leduc takes one private card and at most one community card")
        needed = 1 - len(board)
    else:
        raise InconsistentCardsError("exact enumeration covers kuhn and leduc only")

    unseen = [c for c in deck_for(variant).cards if c not in set(mine) | set(board)]
    win = tie = lose = 0
    for opp in unseen:
        rest = [c for c in unseen if c != opp]
        boards = [board] if needed == 0 else [board + (b,) for b in rest]
        for full_board in boards:
            out = compare_showdown(variant, mine, (opp,), full_board)
            if out == "win":
                win += 1
            elif out == "tie":
                tie += 1
            else:
                lose += 1
    return win, tie, lose


def equity_exact_fraction(variant: str, my_cards, community=()) -> Fraction:
    win, tie, lose = exact_showdown_counts(variant, my_cards, community)
    total = win + tie + lose
    return Fraction(2 * win + tie, 2 * total)


def equity_exact(variant: str, my_cards, community=()) -> EquityResult:
    win, tie, lose = exact_showdown_counts(variant, my_cards, community)
    total = win + tie + lose
    return EquityResult(
        win=win / total,
        tie=tie / total,
        lose=lose / total,
        equity=float(Fraction(2 * win + tie, 2 * total)),
        samples=0,
        half_width=None,
    )


def _draw_distinct(rng: SplitMix64, pool: list, k: int) -> list:
    """Partial Fisher-Yates draw of k items; mutates a copy of pool."""
    items = list(pool)
    n = len(items)
    for i in range(k):
        j = i + rng.below(n - i)
        items[i], items[j] = items[j], items[i]
    return items[:k]


def _normalize_range(opponent_range, visible: set[Card]):
    combos, weights = [], []
    for combo, w in opponent_range.items():
        cards = parse_cards(combo if not isinstance(combo, str) else combo.split(","))
        if len(cards) != 2 or w <= 0:
            continue
        if set(cards) & visible:
            continue
        combos.append(tuple(cards))
        weights.append(float(w))
    if not combos:
        raise EmptyRangeError("opponent range puts no weight on any consistent holding")
    return combos, weights


def equity_mc(hole, community=(), opponent_range=None, samples: int = 10000,
              seed: int = 0) -> EquityResult:
    """Monte Carlo hero equity for Limit Hold'em hole cards.

    Opponent holdings are uniform over unseen cards, or weighted by
    ``opponent_range`` (a mapping of 2-card combos to weights). The board
    is completed uniformly. Deterministic for a given seed.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    mine, board = _checked("limit", hole, community)
    if len(mine) != 2 or len(board) not in (0, 3, 4, 5):
        raise InconsistentCardsError("limit equity takes 2 hole cards and 0/3/4/5 community cards")

    visible = set(mine) | set(board)
    unseen = [c for c in deck_for("limit").cards if c not in visible]
    need_board = 5 - len(board)
    rng = SplitMix64(seed)

    range_combos = None
    if opponent_range is not None:
        range_combos, range_weights = _normalize_range(opponent_range, visible)

    my_pairs = [card_pair(c) for c in mine]
    board_pairs = [card_pair(c) for c in board]
    win = tie = 0
    for _ in range(samples):
        if range_combos is None:
            drawn = _draw_distinct(rng, unseen, 2 + need_board)
            opp = drawn[:2]
            runout = drawn[2:]
        else:
            opp = range_combos[rng.choice_weighted(range_weights)]
            pool = [c for c in unseen if c not in opp]
            runout = _draw_distinct(rng, pool, need_board)
        run_pairs = board_pairs + [card_pair(c) for c in runout]
        mine_rank = rank7(my_pairs + run_pairs)
        opp_rank = rank7([card_pair(c) for c in opp] + run_pairs)
        if mine_rank > opp_rank:
            win += 1
        elif mine_rank == opp_rank:
            tie += 1
    lose = samples - win - tie

    eq = (win + 0.5 * tie) / samples
    # variance of the win/half-tie indicator
    second_moment = (win + 0.25 * tie) / samples
    var = max(second_moment - eq * eq, 0.0)
    half = 1.96 * math.sqrt(var / samples)
    return EquityResult(
        win=win / samples,
        tie=tie / samples,
        lose=lose / samples,
        equity=eq,
        samples=samples,
        half_width=half,
    )


def _rank_posterior(variant: str, excluded: set[Card]) -> HandHistogram:
    remaining = [c for c in deck_for(variant).cards if c not in excluded]
    mass: dict[str, float] = {}
    for c in remaining:
        mass[c.rank] = mass.get(c.rank, 0.0) + 1.0
    total = sum(mass.values())
    return HandHistogram("cards", {r: n / total for r, n in mass.items()})


def _category_histogram_exact(hole: tuple[Card, ...], board: tuple[Card, ...],
                              opponent: bool) -> HandHistogram:
    visible = set(hole) | set(board)
    unseen = [c for c in deck_for("limit").cards if c not in visible]
    board_pairs = [card_pair(c) for c in board]
    counts: dict[str, int] = {}
    if not opponent:
        cat, _ = rank7([card_pair(c) for c in hole] + board_pairs)
        return HandHistogram("categories", {CATEGORY_LABELS[cat]: 1.0})
    total = 0
    for i in range(len(unseen)):
        for j in range(i + 1, len(unseen)):
            cat, _ = rank7([card_pair(unseen[i]), card_pair(unseen[j])] + board_pairs)
            counts[CATEGORY_LABELS[cat]] = counts.get(CATEGORY_LABELS[cat], 0) + 1
            total += 1
    return HandHistogram("categories", {k: v / total for k, v in counts.items()})


def _category_histogram_mc(hole, board, unseen, opponent: bool, samples: int,
                           rng: SplitMix64) -> HandHistogram:
    need_board = 5 - len(board)
    board_pairs = [card_pair(c) for c in board]
    hole_pairs = [card_pair(c) for c in hole]
    counts: dict[str, int] = {}
    for _ in range(samples):
        k = need_board + (2 if opponent else 0)
        drawn = _draw_distinct(rng, unseen, k)
        runout = [card_pair(c) for c in drawn[:need_board]]
        if opponent:
            hand = [card_pair(drawn[need_board]), card_pair(drawn[need_board + 1])]
        else:
            hand = hole_pairs
        cat, _ = rank7(hand + board_pairs + runout)
        counts[CATEGORY_LABELS[cat]] = counts.get(CATEGORY_LABELS[cat], 0) + 1
    return HandHistogram("categories", {k: v / samples for k, v in counts.items()})


def hand_histogram(variant: str, my_cards, community=(), samples: int = 20000,
                   seed: int = 0) -> tuple[HandHistogram, HandHistogram]:
    """(mine, opponent) histograms; see the module docstring for conventions."""
    mine, board = _checked(variant, my_cards, community)
    if variant in ("kuhn", "leduc"):
        if len(mine) != 1:
            raise InconsistentCardsError(f"{variant} takes one private card")
        if variant == "kuhn" and board:
            raise InconsistentCardsError("kuhn has no community cards")
        if variant == "leduc" and len(board) > 1:
            raise InconsistentCardsError("leduc has at most one community card")
        my_hist = _rank_posterior(variant, set(board))
        opp_hist = _rank_posterior(variant, set(mine) | set(board))
        return my_hist, opp_hist

    if len(mine) != 2 or len(board) not in (0, 3, 4, 5):
        raise InconsistentCardsError("limit takes 2 hole cards and 0/3/4/5 community cards")
    if len(board) == 5:
        return (
            _category_histogram_exact(mine, board, opponent=False),
            _category_histogram_exact(mine, board, opponent=True),
        )
    visible = set(mine) | set(board)
    unseen = [c for c in deck_for("limit").cards if c not in visible]
    rng = SplitMix64(seed)
    my_hist = _category_histogram_mc(mine, board, unseen, False, samples, rng)
    opp_hist = _category_histogram_mc(mine, board, unseen, True, samples, rng)
    return my_hist, opp_hist
