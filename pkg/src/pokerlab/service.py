"""The unified one-call solver interface, and its HTTP wrapper.

A single query carries the acting player's cards, contributions, raise
counts, position, and admissible actions; the response bundles the GTO
action and mixed strategy, both equities, both hand histograms, and the
standardized regret rewards, plus profile metadata. One endpoint returns
everything; there are no per-quantity endpoints.

Wire format: ``POST /solve`` with one JSON object using the query field
names below verbatim; responses are one JSON object rendered canonically
(sorted keys, no whitespace), so identical queries against the same
frozen profile produce byte-identical bodies. ``GET /health`` reports the
loaded profiles. Errors carry a machine-readable ``error`` code:
``malformed_body``, ``invalid_query``, ``unknown_infoset`` (HTTP 400),
``no_profile`` (404), ``body_too_large`` (413).

Infoset reconstruction: the query does not carry the action history, so
the service enumerates the variant's betting sequences once (betting is
card-independent) and maps the aggregate
(round, to-act, contributions, per-player raise counts) back to the
history. Aggregates no history can reach return ``unknown_infoset``.
A few aggregates are reached by more than one history (e.g. the Leduc
pre-flop raise/raise/call and call/raise/raise/call lines); the service
then serves the lexicographically smallest history and notes this
tie-break here, since distinct histories can carry distinct strategies.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from . import engine as eng
from .cards import Card, CardError, deck_for, of_codes, parse_cards
from .cfr import IncompleteProfileError, ProfileStore, UnknownInfosetError
from .equity import HandHistogram, equity_exact, equity_mc, hand_histogram
from .rewards import regret_reward
from .rng import hash_text, mix64

MAX_BODY_BYTES = 1 << 20  # 1 MiB request cap
LIMIT_EQUITY_SAMPLES = 20000
LIMIT_HISTOGRAM_SAMPLES = 10000


class ServiceError(Exception):
    code = "service_error"
    status = 500


class InvalidQueryError(ServiceError):
    code = "invalid_query"
    status = 400


class UnknownInfosetQueryError(ServiceError):
    code = "unknown_infoset"
    status = 400


class NoProfileError(ServiceError):
    code = "no_profile"
    status = 404


@dataclass(frozen=True)
class SolverQuery:
    variant: str
    player_card: tuple[Card, ...]
    public_card: tuple[Card, ...]
    my_pot: int
    opponent_pot: int
    my_raise_num: int
    opponent_raise_num: int
    legal_actions: tuple[str, ...]
    position: str  # "SB" or "BB"

    @staticmethod
    def from_json(obj: dict) -> "SolverQuery":
        if not isinstance(obj, dict):
            raise InvalidQueryError("query must be a JSON object")
        required = (
            "variant", "player_card", "public_card", "my_pot", "opponent_pot",
            "my_raise_num", "opponent_raise_num", "legal_actions", "position",
        )
        missing = [k for k in required if k not in obj]
        if missing:
            raise InvalidQueryError(f"missing fields: {', '.join(missing)}")
        try:
            query = SolverQuery(
                variant=obj["variant"],
                player_card=parse_cards(obj["player_card"]),
                public_card=parse_cards(obj["public_card"]),
                my_pot=int(obj["my_pot"]),
                opponent_pot=int(obj["opponent_pot"]),
                my_raise_num=int(obj["my_raise_num"]),
                opponent_raise_num=int(obj["opponent_raise_num"]),
                legal_actions=tuple(obj["legal_actions"]),
                position=obj["position"],
            )
        except CardError as exc:
            raise InvalidQueryError(str(exc)) from exc
        except (TypeError, ValueError) as exc:
            raise InvalidQueryError(f"bad field value: {exc}") from exc
        query.validate()
        return query

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "player_card": of_codes(self.player_card),
            "public_card": of_codes(self.public_card),
            "my_pot": self.my_pot,
            "opponent_pot": self.opponent_pot,
            "my_raise_num": self.my_raise_num,
            "opponent_raise_num": self.opponent_raise_num,
            "legal_actions": list(self.legal_actions),
            "position": self.position,
        }

    def validate(self):
        if self.variant not in eng.STRUCTURES:
            raise InvalidQueryError(f"unknown variant {self.variant!r}")
        st = eng.structure_for(self.variant)
        if self.position not in eng.POSITIONS:
            raise InvalidQueryError("position must be SB or BB")
        cards = self.player_card + self.public_card
        if len(set(cards)) != len(cards):
            raise InvalidQueryError("duplicate card across hand and board")
        deck = set(deck_for(self.variant).cards)
        if any(c not in deck for c in cards):
            raise InvalidQueryError(f"card outside the {self.variant} deck")
        if len(self.player_card) != st.hole_cards:
            raise InvalidQueryError(
                f"{self.variant} deals {st.hole_cards} private card(s)"
            )
        if len(self.public_card) not in st.reveal_counts:
            raise InvalidQueryError(
                f"{len(self.public_card)} public cards is not a {self.variant} stage"
            )
        if self.my_pot < 0 or self.opponent_pot < 0:
            raise InvalidQueryError("pots must be nonnegative")
        if self.my_raise_num < 0 or self.opponent_raise_num < 0:
            raise InvalidQueryError("raise counts must be nonnegative")
        vocab = {"fold", "check", "call", st.aggressive_action}
        if not self.legal_actions:
            raise InvalidQueryError("legal_actions must be nonempty")
        if not set(self.legal_actions) <= vocab:
            raise InvalidQueryError(
                f"legal_actions outside the {self.variant} vocabulary"
            )


@dataclass(frozen=True)
class SolverResponse:
    action: str
    action_dist: dict[str, float]
    my_equity: float
    opponent_equity: float
    my_hand_histogram: HandHistogram
    opponent_hand_histogram: HandHistogram
    regret_rewards: dict[str, float]
    infoset_key: str
    profile: dict

    def to_json(self) -> dict:
        return {
            "action": self.action,
            "action_dist": self.action_dist,
            "my_equity": self.my_equity,
            "opponent_equity": self.opponent_equity,
            "my_hand_histogram": self.my_hand_histogram.to_json(),
            "opponent_hand_histogram": self.opponent_hand_histogram.to_json(),
            "regret_rewards": self.regret_rewards,
            "infoset_key": self.infoset_key,
            "profile": self.profile,
        }


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# aggregate -> betting history reconstruction

_AGGREGATE_MAPS: dict[str, dict[tuple, list[str]]] = {}
_AGGREGATE_LOCK = threading.Lock()


def _aggregate(state: eng.GameState) -> tuple:
    p = state.to_act
    return (
        state.round,
        p,
        state.contributions[p],
        state.contributions[1 - p],
        state.cumulative_raises(p),
        state.cumulative_raises(1 - p),
    )


def aggregate_map(variant: str) -> dict[tuple, list[str]]:
    """Betting-only map from decision-state aggregates to history texts."""
    with _AGGREGATE_LOCK:
        cached = _AGGREGATE_MAPS.get(variant)
        if cached is not None:
            return cached
        st = eng.structure_for(variant)
        deck = deck_for(variant).cards
        n = st.hole_cards
        probe = eng.from_deal(
            variant,
            deck[0:n],
            deck[n : 2 * n],
            deck[2 * n : 2 * n + st.total_community],
        )
        table: dict[tuple, list[str]] = {}

        def walk(state):
            if state.terminal:
                return
            table.setdefault(_aggregate(state), []).append(state.history_text())
            for action in eng.legal_actions(state):
                walk(eng.apply_action(state, action))

        walk(probe)
        for histories in table.values():
            histories.sort()
        _AGGREGATE_MAPS[variant] = table
        return table


def reconstruct_state(query: SolverQuery) -> eng.GameState:
    """Rebuild the engine state the query describes, canonically."""
    st = eng.structure_for(query.variant)
    me = eng.POSITIONS.index(query.position)
    round_idx = st.reveal_counts.index(len(query.public_card))
    agg = (
        round_idx,
        me,
        query.my_pot,
        query.opponent_pot,
        query.my_raise_num,
        query.opponent_raise_num,
    )
    histories = aggregate_map(query.variant).get(agg)
    if not histories:
        raise UnknownInfosetQueryError(
            "no betting line reaches these pots and raise counts"
        )
    history = histories[0]  # documented tie-break: smallest history text

    # pad a full deal: the opponent's cards and unrevealed board are masked
    visible = set(query.player_card) | set(query.public_card)
    rest = [c for c in deck_for(query.variant).cards if c not in visible]
    opp = tuple(rest[: st.hole_cards])
    filler = rest[st.hole_cards :]
    board = tuple(query.public_card) + tuple(
        filler[: st.total_community - len(query.public_card)]
    )
    hands = (query.player_card, opp) if me == 0 else (opp, query.player_card)
    state = eng.replay(query.variant, hands[0], hands[1], board, history)
    if state.terminal or state.to_act != me:
        raise UnknownInfosetQueryError("reconstructed line does not act here")
    engine_legal = eng.legal_actions(state)
    if set(engine_legal) != set(query.legal_actions):
        raise InvalidQueryError(
            f"legal_actions {sorted(query.legal_actions)} disagree with the rules "
            f"{sorted(engine_legal)} at this state"
        )
    return state


def query_from_observation(obs: eng.Observation) -> SolverQuery:
    """The query a player at this observation would send."""
    return SolverQuery(
        variant=obs.variant,
        player_card=obs.my_cards,
        public_card=obs.community,
        my_pot=obs.my_contribution,
        opponent_pot=obs.opponent_contribution,
        my_raise_num=obs.my_raise_num,
        opponent_raise_num=obs.opponent_raise_num,
        legal_actions=obs.legal_actions,
        position=obs.position,
    )


def _derived_seed(query: SolverQuery) -> int:
    return mix64(hash_text(canonical_dumps(query.to_json())))


def solve_query(query: SolverQuery, store: ProfileStore) -> SolverResponse:
    """Answer one query from a frozen profile plus the equity module."""
    try:
        profile = store.get(query.variant)
    except IncompleteProfileError as exc:
        raise NoProfileError(str(exc)) from exc

    state = reconstruct_state(query)
    me = eng.POSITIONS.index(query.position)
    obs = eng.observe(state, me)
    key = profile.key_for(obs)

    engine_order = eng.legal_actions(state)
    try:
        sigma = profile.average_strategy(key)
        regrets = profile.cumulative_regrets(key)
        actions = profile.actions_at(key)
    except UnknownInfosetError:
        if profile.algorithm == "mccfr-ext":
            # sampled training may not have visited this bucket; stay uniform
            actions = engine_order
            sigma = np.full(len(actions), 1.0 / len(actions))
            regrets = np.zeros(len(actions))
        else:
            raise UnknownInfosetQueryError(f"profile has no infoset {key}") from None
    by_action = dict(zip(actions, sigma))
    reward_by_action = dict(zip(actions, regret_reward(regrets)))

    dist = {a: float(by_action[a]) for a in query.legal_actions}
    rewards = {a: float(reward_by_action[a]) for a in query.legal_actions}
    best = max(query.legal_actions, key=lambda a: dist[a])  # first max wins ties

    if query.variant == "limit":
        seed = _derived_seed(query)
        eq = equity_mc(
            query.player_card, query.public_card,
            samples=LIMIT_EQUITY_SAMPLES, seed=seed,
        )
        mine_hist, opp_hist = hand_histogram(
            "limit", query.player_card, query.public_card,
            samples=LIMIT_HISTOGRAM_SAMPLES, seed=seed,
        )
    else:
        eq = equity_exact(query.variant, query.player_card, query.public_card)
        mine_hist, opp_hist = hand_histogram(
            query.variant, query.player_card, query.public_card
        )

    return SolverResponse(
        action=best,
        action_dist=dist,
        my_equity=eq.equity,
        opponent_equity=1.0 - eq.equity,
        my_hand_histogram=mine_hist,
        opponent_hand_histogram=opp_hist,
        regret_rewards=rewards,
        infoset_key=key,
        profile={
            "variant": profile.variant,
            "algorithm": profile.algorithm,
            "iterations": profile.iterations,
        },
    )


# ---------------------------------------------------------------------------
# HTTP layer


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict):
        body = canonical_dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path != "/health":
            self._send(404, {"error": "not_found", "detail": self.path})
            return
        profiles = {
            v: {
                "algorithm": self.server.store.get(v).algorithm,
                "iterations": self.server.store.get(v).iterations,
            }
            for v in self.server.store.variants()
        }
        self._send(200, {"status": "ok", "profiles": profiles})

    def do_POST(self):
        if self.path != "/solve":
            self._send(404, {"error": "not_found", "detail": self.path})
            return
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            # drain so the peer can finish writing and read the error
            remaining = length
            while remaining > 0:
                chunk = self.rfile.read(min(remaining, 1 << 16))
                if not chunk:
                    break
                remaining -= len(chunk)
            self._send(413, {"error": "body_too_large", "detail": f"cap {MAX_BODY_BYTES}"})
            return
        raw = self.rfile.read(length)
        try:
            obj = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            self._send(400, {"error": "malformed_body", "detail": str(exc)})
            return
        try:
            query = SolverQuery.from_json(obj)
            response = solve_query(query, self.server.store)
        except ServiceError as exc:
            self._send(exc.status, {"error": exc.code, "detail": str(exc)})
            return
        self._send(200, response.to_json())


class SolverServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, bind: tuple[str, int], store: ProfileStore):
        super().__init__(bind, _Handler)
        self.store = store


def parse_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    return (host or "127.0.0.1", int(port))


def make_server(bind: str, store: ProfileStore) -> SolverServer:
    """Bind the service; the caller drives serve_forever()."""
    return SolverServer(parse_bind(bind), store)


def serve(bind: str, store: ProfileStore) -> None:
    """Run the service until interrupted."""
    server = make_server(bind, store)
    try:
        server.serve_forever()
    finally:
        server.server_close()
