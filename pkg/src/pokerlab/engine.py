"""Heads-up extensive-form engines for Kuhn, Leduc, and Limit Hold'em.

Player 0 posts the small blind and player 1 the big blind (Kuhn antes are
equal, but the seats keep the SB/BB labels). Betting structures:

  kuhn  - 1-chip ante each, one round, bet size 1, at most one bet
  leduc - blinds 1/2, two rounds, raise sizes 2 then 4, at most two
          raises per round on top of the blind (per-player cap 14)
  limit - blinds 1/2, four rounds, bet sizes 2/2/4/4, at most four
          bets per round where the big blind counts as the first
          pre-flop bet (per-player cap 8+8+16+16 = 48)

First to act is player 0 every round, except Limit post-flop rounds where
the big blind leads. Facing no outstanding bet the legal actions are
check/bet (Kuhn) or fold/check/raise (Leduc, Limit); facing a bet they are
fold/call plus raise while the round's bet budget lasts.

Dealing uses splitmix64 + Fisher-Yates (see rng.py) over the variant deck:
private cards for player 0, then player 1, then the community run-out.

Information-set keys follow the grammar

    <private-cards>|<position>|<public-cards>[/<round1>;<round2>...]

with single-letter action codes f/x/c/b/r, private cards sorted and
rendered as 2-char codes (rank letter only for Kuhn), public cards in
reveal order, and the "/..." suffix present once any action has been
taken. Examples: "K|0|", "Q|1|/b", "HQ|0|SK/cx", "HK|1|SQ/rc;xr".
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace

from .cards import (
    Card,
    CardCountError,
    DuplicateCardError,
    compare_showdown,
    deck_for,
    of_codes,
    parse_cards,
)
from .rng import SplitMix64

ACTIONS = ("fold", "check", "call", "bet", "raise")
ACTION_CODE = {"fold": "f", "check": "x", "call": "c", "bet": "b", "raise": "r"}
CODE_ACTION = {v: k for k, v in ACTION_CODE.items()}

POSITIONS = ("SB", "BB")
VARIANTS_CHOICES = ("kuhn", "leduc", "limit")


class EngineError(Exception):
    pass


class IllegalActionError(EngineError):
    pass


class TerminalStateError(EngineError):
    pass


class NonTerminalError(EngineError):
    pass


@dataclass(frozen=True)
class BettingStructure:
    variant: str
    blinds: tuple[int, int]  # (small, big); equal antes for Kuhn
    num_rounds: int
    bet_sizes: tuple[int, ...]
    round_bet_caps: tuple[int, ...]  # aggressive actions allowed per round
    first_actor: tuple[int, ...]
    preflop_blind_counts: bool  # big blind consumes one unit of the round-1 cap
    hole_cards: int
    reveal_counts: tuple[int, ...]  # community cards visible entering each round
    aggressive_action: str  # "bet" (Kuhn) or "raise" (Leduc, Limit)
    fold_when_unfaced: bool

    @property
    def total_community(self) -> int:
        return self.reveal_counts[-1]

    @property
    def max_contribution(self) -> int:
        total, level = 0, 0
        for r in range(self.num_rounds):
            bets = self.round_bet_caps[r]
            if r == 0:
                level = max(self.blinds)
                if self.preflop_blind_counts:
                    bets -= 1
                total = level + bets * self.bet_sizes[r]
            else:
                total += bets * self.bet_sizes[r]
        return total


STRUCTURES: dict[str, BettingStructure] = {
    "kuhn": BettingStructure(
        variant="kuhn",
        blinds=(1, 1),
        num_rounds=1,
        bet_sizes=(1,),
        round_bet_caps=(1,),
        first_actor=(0,),
        preflop_blind_counts=False,
        hole_cards=1,
        reveal_counts=(0,),
        aggressive_action="bet",
        fold_when_unfaced=False,
    ),
    "leduc": BettingStructure(
        variant="leduc",
        blinds=(1, 2),
        num_rounds=2,
        bet_sizes=(2, 4),
        round_bet_caps=(2, 2),
        first_actor=(0, 0),
        preflop_blind_counts=False,
        hole_cards=1,
        reveal_counts=(0, 1),
        aggressive_action="raise",
        fold_when_unfaced=True,
    ),
    "limit": BettingStructure(
        variant="limit",
        blinds=(1, 2),
        num_rounds=4,
        bet_sizes=(2, 2, 4, 4),
        round_bet_caps=(4, 4, 4, 4),
        first_actor=(0, 1, 1, 1),
        preflop_blind_counts=True,
        hole_cards=2,
        reveal_counts=(0, 3, 4, 5),
        aggressive_action="raise",
        fold_when_unfaced=True,
    ),
}

STARTING_STACK = 100


def structure_for(variant: str) -> BettingStructure:
    try:
        return STRUCTURES[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None


@dataclass(frozen=True)
class GameState:
    """Immutable full game state; apply_action returns a new snapshot."""

    variant: str
    hands: tuple[tuple[Card, ...], tuple[Card, ...]]
    board: tuple[Card, ...]  # full community run-out in reveal order
    undealt: tuple[Card, ...]
    round: int
    contributions: tuple[int, int]
    raise_counts: tuple[tuple[int, int], ...]  # per round, per player
    round_bets: int  # aggressive actions consumed this round (incl. counted blind)
    acted: tuple[bool, bool]  # voluntary action taken this round
    history: tuple[str, ...]  # per-round action code strings
    to_act: int
    terminal: bool
    folded_by: int | None

    @property
    def structure(self) -> BettingStructure:
        return structure_for(self.variant)

    @property
    def pot(self) -> int:
        return sum(self.contributions)

    @property
    def revealed(self) -> tuple[Card, ...]:
        if self.terminal and self.folded_by is None:
            return self.board  # showdown: everything is out
        return self.board[: self.structure.reveal_counts[self.round]]

    def cumulative_raises(self, player: int) -> int:
        return sum(r[player] for r in self.raise_counts)

    def history_text(self) -> str:
        rounds = list(self.history)
        while rounds and rounds[-1] == "" and len(rounds) > 1:
            rounds.pop()
        if len(rounds) == 1 and rounds[0] == "":
            return ""
        return ";".join(rounds)


def new_game(variant: str, seed: int) -> GameState:
    """Post blinds and deal via the documented seeded shuffle."""
    st = structure_for(variant)
    deck = list(deck_for(variant).cards)
    SplitMix64(seed).shuffle(deck)
    n = st.hole_cards
    hand0 = tuple(deck[0:n])
    hand1 = tuple(deck[n : 2 * n])
    board = tuple(deck[2 * n : 2 * n + st.total_community])
    undealt = tuple(deck[2 * n + st.total_community :])
    return _start(st, hand0, hand1, board, undealt)


def from_deal(variant: str, hand0, hand1, board=()) -> GameState:
    """Start a game from an explicit deal (enumeration, replay, tests)."""
    st = structure_for(variant)
    hand0, hand1, board = parse_cards(hand0), parse_cards(hand1), parse_cards(board)
    deck = set(deck_for(variant).cards)
    dealt = hand0 + hand1 + board
    if len(set(dealt)) != len(dealt):
        raise DuplicateCardError(f"duplicate card in deal {of_codes(dealt)}")
    if any(c not in deck for c in dealt):
        raise CardCountError(f"card outside {variant} deck in {of_codes(dealt)}")
    if len(hand0) != st.hole_cards or len(hand1) != st.hole_cards:
        raise CardCountError(f"{variant} deals {st.hole_cards} hole card(s) per player")
    if len(board) != st.total_community:
        raise CardCountError(
            f"{variant} needs {st.total_community} community card(s), got {len(board)}"
        )
    undealt = tuple(c for c in deck_for(variant).cards if c not in set(dealt))
    return _start(st, hand0, hand1, board, undealt)


def _start(st, hand0, hand1, board, undealt) -> GameState:
    return GameState(
        variant=st.variant,
        hands=(tuple(hand0), tuple(hand1)),
        board=tuple(board),
        undealt=tuple(sorted(undealt)),  # never dealt from; order is not state
        round=0,
        contributions=st.blinds,
        raise_counts=((0, 0),),
        round_bets=1 if st.preflop_blind_counts else 0,
        acted=(False, False),
        history=("",),
        to_act=st.first_actor[0],
        terminal=False,
        folded_by=None,
    )


def legal_actions(state: GameState) -> tuple[str, ...]:
    """Ordered legal action names; never empty for a live state."""
    if state.terminal:
        raise TerminalStateError("no actions at a terminal state")
    st = state.structure
    me = state.to_act
    mine, theirs = state.contributions[me], state.contributions[1 - me]
    can_raise = state.round_bets < st.round_bet_caps[state.round]
    agg = st.aggressive_action
    if mine == theirs:  # not facing a bet
        acts = []
        if st.fold_when_unfaced:
            acts.append("fold")
        acts.append("check")
        if can_raise:
            acts.append(agg)
        return tuple(acts)
    acts = ["fold", "call"]
    if can_raise:
        acts.append(agg)
    return tuple(acts)


def apply_action(state: GameState, action: str) -> GameState:
    if state.terminal:
        raise TerminalStateError("game is over")
    if action not in legal_actions(state):
        raise IllegalActionError(
            f"{action!r} not legal; expected one of {legal_actions(state)}"
        )
    st = state.structure
    me = state.to_act
    contribs = list(state.contributions)
    raise_counts = [list(r) for r in state.raise_counts]
    round_bets = state.round_bets
    acted = list(state.acted)
    history = list(state.history)

    history[state.round] += ACTION_CODE[action]
    acted[me] = True

    if action == "fold":
        return replace(
            state,
            raise_counts=tuple(tuple(r) for r in raise_counts),
            acted=tuple(acted),
            history=tuple(history),
            terminal=True,
            folded_by=me,
        )

    if action == "call":
        contribs[me] = contribs[1 - me]
    elif action in ("bet", "raise"):
        contribs[me] = contribs[1 - me] + st.bet_sizes[state.round]
        raise_counts[state.round][me] += 1
        round_bets += 1
    # check leaves contributions alone

    round_over = contribs[0] == contribs[1] and acted[0] and acted[1]
    if not round_over:
        return replace(
            state,
            contributions=tuple(contribs),
            raise_counts=tuple(tuple(r) for r in raise_counts),
            round_bets=round_bets,
            acted=tuple(acted),
            history=tuple(history),
            to_act=1 - me,
        )

    if state.round + 1 == st.num_rounds:  # showdown
        return replace(
            state,
            contributions=tuple(contribs),
            raise_counts=tuple(tuple(r) for r in raise_counts),
            round_bets=round_bets,
            acted=tuple(acted),
            history=tuple(history),
            terminal=True,
            folded_by=None,
        )

    nxt = state.round + 1
    raise_counts.append([0, 0])
    history.append("")
    return replace(
        state,
        contributions=tuple(contribs),
        raise_counts=tuple(tuple(r) for r in raise_counts),
        round=nxt,
        round_bets=0,
        acted=(False, False),
        history=tuple(history),
        to_act=st.first_actor[nxt],
    )


def payoffs(state: GameState) -> tuple[int, int]:
    """Net chips per player at a terminal state; always sums to zero."""
    if not state.terminal:
        raise NonTerminalError("payoffs only exist at terminal states")
    if state.folded_by is not None:
        loser = state.folded_by
        stake = state.contributions[loser]
        out = [0, 0]
        out[loser] = -stake
        out[1 - loser] = stake
        return tuple(out)
    me, opp = state.hands
    result = compare_showdown(state.variant, me, opp, state.revealed)
    if result == "tie":
        return (0, 0)
    stake = state.contributions[0]  # equal at showdown by construction
    return (stake, -stake) if result == "win" else (-stake, stake)


@dataclass(frozen=True)
class Observation:
    """One player's view of the game; never contains opponent cards."""

    variant: str
    position: str  # "SB" or "BB"
    my_cards: tuple[Card, ...]
    community: tuple[Card, ...]
    round: int
    pot: int
    my_contribution: int
    opponent_contribution: int
    my_raise_num: int
    opponent_raise_num: int
    legal_actions: tuple[str, ...]
    history: tuple[str, ...]

    @property
    def player(self) -> int:
        return POSITIONS.index(self.position)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "position": self.position,
            "my_cards": of_codes(self.my_cards),
            "community": of_codes(self.community),
            "round": self.round,
            "pot": self.pot,
            "my_contribution": self.my_contribution,
            "opponent_contribution": self.opponent_contribution,
            "my_raise_num": self.my_raise_num,
            "opponent_raise_num": self.opponent_raise_num,
            "legal_actions": list(self.legal_actions),
            "history": list(self.history),
        }

    @staticmethod
    def from_json(obj: dict) -> "Observation":
        return Observation(
            variant=obj["variant"],
            position=obj["position"],
            my_cards=parse_cards(obj["my_cards"]),
            community=parse_cards(obj["community"]),
            round=obj["round"],
            pot=obj["pot"],
            my_contribution=obj["my_contribution"],
            opponent_contribution=obj["opponent_contribution"],
            my_raise_num=obj["my_raise_num"],
            opponent_raise_num=obj["opponent_raise_num"],
            legal_actions=tuple(obj["legal_actions"]),
            history=tuple(obj["history"]),
        )


def observe(state: GameState, player: int | None = None) -> Observation:
    """Mask the state down to one player's view (default: player to act)."""
    p = state.to_act if player is None else player
    return Observation(
        variant=state.variant,
        position=POSITIONS[p],
        my_cards=state.hands[p],
        community=state.revealed,
        round=state.round,
        pot=state.pot,
        my_contribution=state.contributions[p],
        opponent_contribution=state.contributions[1 - p],
        my_raise_num=state.cumulative_raises(p),
        opponent_raise_num=state.cumulative_raises(1 - p),
        legal_actions=legal_actions(state) if not state.terminal else (),
        history=state.history,
    )


def _private_text(variant: str, cards) -> str:
    ordered = sorted(cards)
    if variant == "kuhn":
        return "".join(c.rank for c in ordered)
    return "".join(c.code for c in ordered)


def infoset_key(obs: Observation) -> str:
    """Stable text key; injective over (private cards, public cards, history, position)."""
    priv = _private_text(obs.variant, obs.my_cards)
    pub = "".join(c.code for c in obs.community)
    rounds = list(obs.history)
    while rounds and rounds[-1] == "":
        rounds.pop()
    tail = "/" + ";".join(obs.history[: len(rounds)]) if rounds else ""
    return f"{priv}|{obs.player}|{pub}{tail}"


def replay(variant: str, hand0, hand1, board, history_text: str) -> GameState:
    """Rebuild a state by applying recorded action codes to a fresh deal."""
    state = from_deal(variant, hand0, hand1, board)
    for rnd, codes in enumerate(history_text.split(";") if history_text else []):
        for ch in codes:
            if state.round != rnd:
                raise IllegalActionError(
                    f"history desync: expected round {rnd}, engine at {state.round}"
                )
            state = apply_action(state, CODE_ACTION[ch])
    return state


def state_to_json(state: GameState) -> dict:
    return {
        "variant": state.variant,
        "hands": [of_codes(h) for h in state.hands],
        "board": of_codes(state.board),
        "history": state.history_text(),
    }


def state_from_json(obj: dict) -> GameState:
    return replay(
        obj["variant"], obj["hands"][0], obj["hands"][1], obj["board"], obj["history"]
    )


def state_dumps(state: GameState) -> str:
    return json.dumps(state_to_json(state), sort_keys=True, separators=(",", ":"))


def state_loads(text: str) -> GameState:
    return state_from_json(json.loads(text))


def enumerate_deals(variant: str):
    """All distinct deals with uniform chance weight (kuhn/leduc only)."""
    st = structure_for(variant)
    deck = deck_for(variant).cards
    if variant == "limit":
        raise ValueError("limit deals are not enumerable at desk scale")
    deals = []
    for combo in itertools.permutations(deck, 2 * st.hole_cards + st.total_community):
        hand0 = combo[: st.hole_cards]
        hand1 = combo[st.hole_cards : 2 * st.hole_cards]
        board = combo[2 * st.hole_cards :]
        deals.append((hand0, hand1, board))
    weight = 1.0 / len(deals)
    return [(h0, h1, b, weight) for h0, h1, b in deals]
