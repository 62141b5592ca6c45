"""Cards, per-variant decks, and showdown ranking.

Card text codes are two characters, suit letter then rank character
("SQ" = queen of spades, "C7" = seven of clubs). Input parsing is
case-insensitive; canonical output is upper-case.

Deck composition:
  kuhn  - J, Q, K of a single suit (spades)
  leduc - J, Q, K in two suits (spades, hearts)
  limit - the standard 52-card deck

Showdown rules:
  kuhn  - higher rank wins, K > Q > J, never a tie
  leduc - a hand pairing the community card beats any high card;
          otherwise higher rank wins, equal ranks tie
  limit - best five of seven under standard Hold'em ranking
          (suits never break ties)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

SUITS = "SHDC"
RANKS = "23456789TJQKA"

SUIT_NAMES = {"S": "Spades", "H": "Hearts", "D": "Diamonds", "C": "Clubs"}
RANK_NAMES = {
    "2": "Two", "3": "Three", "4": "Four", "5": "Five", "6": "Six",
    "7": "Seven", "8": "Eight", "9": "Nine", "T": "Ten", "J": "Jack",
    "Q": "Queen", "K": "King", "A": "Ace",
}

# rank char -> numeric value 2..14 (ace high)
RANK_VALUE = {r: i for i, r in enumerate(RANKS, start=2)}

VARIANTS = ("kuhn", "leduc", "limit")


class CardError(ValueError):
    """Base for card-level input problems."""


class InvalidCardCodeError(CardError):
    pass


class DuplicateCardError(CardError):
    pass


class CardCountError(CardError):
    pass


@dataclass(frozen=True, order=True)
class Card:
    """Immutable suit/rank pair. Ordering is by rank, then suit index."""

    sort_index: int
    suit: str
    rank: str

    def __init__(self, suit: str, rank: str):
        if suit not in SUITS:
            raise InvalidCardCodeError(f"unknown suit {suit!r}")
        if rank not in RANK_VALUE:
            raise InvalidCardCodeError(f"unknown rank {rank!r}")
        object.__setattr__(self, "suit", suit)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(
            self, "sort_index", RANK_VALUE[rank] * 4 + SUITS.index(suit)
        )

    @property
    def rank_value(self) -> int:
        return RANK_VALUE[self.rank]

    @property
    def code(self) -> str:
        return self.suit + self.rank

    @property
    def display_name(self) -> str:
        return f"{RANK_NAMES[self.rank]} of {SUIT_NAMES[self.suit]}"

    def __repr__(self):
        return f"Card({self.code!r})"

    def __str__(self):
        return self.code


def parse_card(code: str) -> Card:
    """Decode a two-character suit+rank code, case-insensitively."""
    if not isinstance(code, str) or len(code) != 2:
        raise InvalidCardCodeError(f"card code must be 2 characters, got {code!r}")
    return Card(code[0].upper(), code[1].upper())


def parse_cards(codes) -> tuple[Card, ...]:
    cards = tuple(c if isinstance(c, Card) else parse_card(c) for c in codes)
    if len(set(cards)) != len(cards):
        raise DuplicateCardError(f"duplicate card in {of_codes(cards)}")
    return cards


def of_codes(cards) -> list[str]:
    return [c.code for c in cards]


@dataclass(frozen=True)
class DeckSpec:
    """Deck composition for one variant."""

    variant: str
    cards: tuple[Card, ...]


def deck_for(variant: str) -> DeckSpec:
    if variant == "kuhn":
        cards = tuple(Card("S", r) for r in "JQK")
    elif variant == "leduc":
        cards = tuple(Card(s, r) for r in "JQK" for s in "SH")
    elif variant == "limit":
        cards = tuple(Card(s, r) for r in RANKS for s in SUITS)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return DeckSpec(variant, cards)


class HandCategory(IntEnum):
    HIGH_CARD = 0
    PAIR = 1
    TWO_PAIR = 2
    TRIPS = 3
    STRAIGHT = 4
    FLUSH = 5
    FULL_HOUSE = 6
    QUADS = 7
    STRAIGHT_FLUSH = 8


@dataclass(frozen=True, order=True)
class HandRank:
    """Category plus tie-break ranks, most significant first.

    ``kickers`` carries the full comparison vector: defining ranks lead
    (pair rank before side cards, trips before pair in a full house, ...),
    so comparison is lexicographic after the category.
    """

    category: HandCategory
    kickers: tuple[int, ...]

    def __str__(self):
        names = "/".join(RANKS[k - 2] for k in self.kickers)
        return f"{self.category.name.lower()}[{names}]"


def _straight_high(values: set[int]) -> int | None:
    """Highest straight top-rank among the given rank values, wheel allowed."""
    vals = values | ({1} if 14 in values else set())
    best = None
    for high in range(14, 5 - 1, -1):
        if all(v in vals for v in range(high - 4, high + 1)):
            best = high
            break
    return best


def rank7(pairs) -> tuple[int, tuple[int, ...]]:
    """Best 5-of-7 rank over (rank value, suit index) pairs.

    Returns (category value, tie-break ranks) comparable as a tuple.
    Hot path for Monte Carlo equity: no validation, no objects.
    """
    values = sorted((v for v, _ in pairs), reverse=True)
    suit_vals = ([], [], [], [])
    for v, s in pairs:
        suit_vals[s].append(v)

    flush_vals = None
    for sv in suit_vals:
        if len(sv) >= 5:
            flush_vals = sorted(sv, reverse=True)
            break  # only one suit can hold 5+ of 7 cards

    if flush_vals is not None:
        sf_high = _straight_high(set(flush_vals))
        if sf_high is not None:
            return (HandCategory.STRAIGHT_FLUSH, (sf_high,))

    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    quads, trips, pairs2 = [], [], []
    for v in values:  # values descending, so groups come out high-first
        n = counts[v]
        if n == 4 and v not in quads:
            quads.append(v)
        elif n == 3 and v not in trips:
            trips.append(v)
        elif n == 2 and v not in pairs2:
            pairs2.append(v)

    if quads:
        quad = quads[0]
        kicker = next(v for v in values if v != quad)
        return (HandCategory.QUADS, (quad, kicker))

    if trips and (pairs2 or len(trips) > 1):
        trip = trips[0]
        pair = max(pairs2 + trips[1:])
        return (HandCategory.FULL_HOUSE, (trip, pair))

    if flush_vals is not None:
        return (HandCategory.FLUSH, tuple(flush_vals[:5]))

    st_high = _straight_high(set(values))
    if st_high is not None:
        return (HandCategory.STRAIGHT, (st_high,))

    if trips:
        trip = trips[0]
        side = tuple(v for v in values if v != trip)[:2]
        return (HandCategory.TRIPS, (trip, *side))

    if len(pairs2) >= 2:
        hi, lo = pairs2[0], pairs2[1]
        kicker = next(v for v in values if v != hi and v != lo)
        return (HandCategory.TWO_PAIR, (hi, lo, kicker))

    if len(pairs2) == 1:
        p = pairs2[0]
        side = tuple(v for v in values if v != p)[:3]
        return (HandCategory.PAIR, (p, *side))

    return (HandCategory.HIGH_CARD, tuple(values[:5]))


def card_pair(card: Card) -> tuple[int, int]:
    """(rank value, suit index) pair for the rank7 hot path."""
    return (card.rank_value, SUITS.index(card.suit))


def rank_hand_limit(cards) -> HandRank:
    """Best 5-of-7 Hold'em rank for exactly seven distinct cards."""
    cards = parse_cards(cards)
    if len(cards) != 7:
        raise CardCountError(f"need 7 cards, got {len(cards)}")
    category, kickers = rank7([card_pair(c) for c in cards])
    return HandRank(HandCategory(category), kickers)


def compare_showdown(variant, my_cards, opp_cards, community) -> str:
    """Resolve a showdown from my perspective: 'win', 'tie', or 'lose'."""
    my_cards = parse_cards(my_cards)
    opp_cards = parse_cards(opp_cards)
    community = parse_cards(community)
    everything = my_cards + opp_cards + community
    if len(set(everything)) != len(everything):
        raise DuplicateCardError(f"duplicate card across hands {of_codes(everything)}")

    if variant == "kuhn":
        _require(len(my_cards) == 1 and len(opp_cards) == 1 and not community,
                 "kuhn showdown takes one card per player and no community")
        a, b = my_cards[0].rank_value, opp_cards[0].rank_value
        return "win" if a > b else "lose"  # one copy per rank: no ties

    if variant == "leduc":
        _require(len(my_cards) == 1 and len(opp_cards) == 1 and len(community) == 1,
                 "leduc showdown takes one card per player and one community card")
        board = community[0].rank
        mine, theirs = my_cards[0], opp_cards[0]
        my_pair, opp_pair = mine.rank == board, theirs.rank == board
        if my_pair or opp_pair:  # only one player can pair the board
            return "win" if my_pair else "lose"
        if mine.rank_value == theirs.rank_value:
            return "tie"
        return "win" if mine.rank_value > theirs.rank_value else "lose"

    if variant == "limit":
        _require(len(my_cards) == 2 and len(opp_cards) == 2 and len(community) == 5,
                 "limit showdown takes two hole cards per player and five community cards")
        mine = rank_hand_limit(my_cards + community)
        theirs = rank_hand_limit(opp_cards + community)
        if mine == theirs:
            return "tie"
        return "win" if mine > theirs else "lose"

    raise ValueError(f"unknown variant {variant!r}")


def _require(cond: bool, msg: str):
    if not cond:
        raise CardCountError(msg)
