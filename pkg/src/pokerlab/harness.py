"""Paired fixed-seed match protocol, agents, and observation rendering.

Every seed is played twice: agent A takes the small blind in pass one and
the deal is replayed with seats swapped in pass two, so deal luck cancels
in aggregate chips. Stacks reset to 100 each hand; nets are per hand.

Built-in agents draw their per-decision randomness from a generator
seeded by (agent seed, game seed, observation key), never from shared
mutable state. That makes reports bit-reproducible and makes a self-match
of any built-in agent cancel to exactly zero over any seed set.

External agents speak a newline-delimited JSON bridge: the harness writes
one observation object per line to the bridge's stdin (or POSTs it to an
HTTP endpoint) and reads back one ``{"action": "..."}`` line. A timeout,
crash, or illegal action is charged as a fold (check when folding is not
legal) and counted against the agent.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading
import urllib.request
from dataclasses import dataclass, field

import numpy as np

from . import engine as eng
from .cards import RANK_NAMES, SUIT_NAMES
from .cfr import StrategyProfile, UnknownInfosetError, load_profile
from .rng import SplitMix64, hash_text, mix64

DEFAULT_BRIDGE_TIMEOUT = 5.0

GAME_NAMES = {"kuhn": "Kuhn", "leduc": "Leduc Hold'em", "limit": "limit-holdem"}
ROUND_NAMES = {
    "kuhn": ("pre-flop",),
    "leduc": ("pre-flop", "flop"),
    "limit": ("pre-flop", "flop", "turn", "river"),
}
POSITION_NAMES = {"SB": "Small Blind", "BB": "Big Blind"}


class BridgeError(Exception):
    pass


class BridgeTimeoutError(BridgeError):
    pass


def decision_rng(agent_seed: int, game_seed: int, obs: eng.Observation) -> SplitMix64:
    return SplitMix64(mix64(agent_seed, game_seed, hash_text(eng.infoset_key(obs))))


class Agent:
    """Maps an observation to an action name."""

    name = "agent"
    deterministic = True

    def act(self, obs: eng.Observation, game_seed: int) -> str:
        raise NotImplementedError

    def close(self):
        pass


class RandomAgent(Agent):
    def __init__(self, seed: int = 0):
        self.seed = seed
        self.name = f"random:{seed}"

    def act(self, obs, game_seed):
        rng = decision_rng(self.seed, game_seed, obs)
        return obs.legal_actions[rng.below(len(obs.legal_actions))]


class AlwaysCallAgent(Agent):
    name = "always_call"

    def act(self, obs, game_seed):
        for preferred in ("call", "check"):
            if preferred in obs.legal_actions:
                return preferred
        return obs.legal_actions[0]


class CfrAgent(Agent):
    """Samples from a trained profile's average strategy; uniform off-tree."""

    def __init__(self, profile: StrategyProfile, seed: int = 0, name: str | None = None):
        self.profile = profile
        self.seed = seed
        self.name = name or f"cfr:{profile.variant}:{profile.algorithm}"

    def act(self, obs, game_seed):
        rng = decision_rng(self.seed, game_seed, obs)
        try:
            sigma = self.profile.average_strategy(self.profile.key_for(obs))
        except UnknownInfosetError:
            sigma = np.full(len(obs.legal_actions), 1.0 / len(obs.legal_actions))
        return obs.legal_actions[rng.choice_weighted(sigma)]


class _BridgeProcess:
    """One subprocess speaking the ndjson bridge, restarted after faults."""

    def __init__(self, command: str, timeout: float):
        self.command = command
        self.timeout = timeout
        self.proc = None
        self.replies = None

    def _ensure(self):
        if self.proc is not None and self.proc.poll() is None:
            return
        self.proc = subprocess.Popen(
            shlex.split(self.command),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )
        self.replies = queue.Queue()

        def pump(proc, out):
            for line in proc.stdout:
                out.put(line)

        threading.Thread(
            target=pump, args=(self.proc, self.replies), daemon=True
        ).start()

    def ask(self, payload: dict) -> dict:
        self._ensure()
        try:
            self.proc.stdin.write(json.dumps(payload) + "\n")
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            self._kill()
            raise BridgeError(f"bridge died: {exc}") from exc
        try:
            line = self.replies.get(timeout=self.timeout)
        except queue.Empty:
            self._kill()  # a late reply would desync the stream
            raise BridgeTimeoutError(f"no reply within {self.timeout}s") from None
        try:
            return json.loads(line)
        except json.JSONDecodeError as exc:
            self._kill()
            raise BridgeError(f"bridge sent bad JSON: {line!r}") from exc

    def _kill(self):
        if self.proc is not None and self.proc.poll() is None:
            self.proc.kill()
        self.proc = None

    def close(self):
        if self.proc is not None and self.proc.poll() is None:
            try:
                self.proc.stdin.close()
            except OSError:
                pass
            try:
                self.proc.wait(timeout=1.0)
            except subprocess.TimeoutExpired:
                self.proc.kill()
        self.proc = None


class ExternalAgent(Agent):
    """Bridge to an out-of-process policy over stdio or HTTP."""

    deterministic = False

    def __init__(self, transport: str, target: str, timeout: float = DEFAULT_BRIDGE_TIMEOUT):
        if transport not in ("cmd", "http"):
            raise ValueError("external transport must be 'cmd' or 'http'")
        self.transport = transport
        self.target = target
        self.timeout = timeout
        self.name = f"external:{transport}:{target}"
        self._bridge = _BridgeProcess(target, timeout) if transport == "cmd" else None

    def act(self, obs, game_seed):
        payload = obs.to_json()
        payload["rendered"] = render_observation(obs)
        if self.transport == "cmd":
            reply = self._bridge.ask(payload)
        else:
            body = json.dumps(payload).encode("utf-8")
            req = urllib.request.Request(
                self.target, data=body, headers={"Content-Type": "application/json"}
            )
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    reply = json.loads(resp.read().decode("utf-8"))
            except Exception as exc:  # transport failure of any kind
                raise BridgeError(f"http bridge failed: {exc}") from exc
        if not isinstance(reply, dict) or "action" not in reply:
            raise BridgeError(f"bridge reply missing 'action': {reply!r}")
        return str(reply["action"])

    def close(self):
        if self._bridge is not None:
            self._bridge.close()


def make_agent(spec: str, timeout: float = DEFAULT_BRIDGE_TIMEOUT) -> Agent:
    """Build an agent from its spec string.

    random[:seed] | always_call | cfr:<profile path>[:seed] |
    external:cmd:<command> | external:http:<url>
    """
    if spec == "always_call":
        return AlwaysCallAgent()
    if spec == "random" or spec.startswith("random:"):
        seed = int(spec.split(":", 1)[1]) if ":" in spec else 0
        return RandomAgent(seed)
    if spec.startswith("cfr:"):
        rest = spec.split(":", 1)[1]
        path, seed = rest, 0
        if ":" in rest and rest.rsplit(":", 1)[1].isdigit():
            path, seed_text = rest.rsplit(":", 1)
            seed = int(seed_text)
        return CfrAgent(load_profile(path), seed=seed, name=spec)
    if spec.startswith("external:"):
        _, transport, target = spec.split(":", 2)
        return ExternalAgent(transport, target, timeout)
    raise ValueError(f"unknown agent spec {spec!r}")


def agent_act(agent: Agent, obs: eng.Observation, game_seed: int = 0) -> str:
    """One decision, checked for legality (illegal replies raise)."""
    action = agent.act(obs, game_seed)
    if action not in obs.legal_actions:
        raise BridgeError(f"illegal action {action!r}; legal: {obs.legal_actions}")
    return action


def _fallback_action(obs: eng.Observation) -> str:
    if "fold" in obs.legal_actions:
        return "fold"
    return "check" if "check" in obs.legal_actions else obs.legal_actions[0]


@dataclass
class GameRecord:
    seed: int
    sb_agent: str  # "a" or "b"
    history: str
    net_a: int
    net_b: int
    illegal_a: int = 0
    illegal_b: int = 0

    def to_json(self):
        return {
            "seed": self.seed,
            "sb_agent": self.sb_agent,
            "history": self.history,
            "net_a": self.net_a,
            "net_b": self.net_b,
            "illegal_a": self.illegal_a,
            "illegal_b": self.illegal_b,
        }


@dataclass
class MatchReport:
    variant: str
    agent_a: str
    agent_b: str
    seeds: list[int]
    games: list[GameRecord] = field(default_factory=list)

    @property
    def net_a(self) -> int:
        return sum(g.net_a for g in self.games)

    @property
    def net_b(self) -> int:
        return sum(g.net_b for g in self.games)

    def illegal_counts(self) -> tuple[int, int]:
        return (
            sum(g.illegal_a for g in self.games),
            sum(g.illegal_b for g in self.games),
        )

    def paired_nets(self, agent: str = "a") -> list[int]:
        """Per-seed net for one agent summed over both passes."""
        by_seed: dict[int, int] = {s: 0 for s in self.seeds}
        for g in self.games:
            by_seed[g.seed] += g.net_a if agent == "a" else g.net_b
        return [by_seed[s] for s in self.seeds]

    def to_json(self) -> dict:
        ill_a, ill_b = self.illegal_counts()
        return {
            "variant": self.variant,
            "agent_a": self.agent_a,
            "agent_b": self.agent_b,
            "seeds": list(self.seeds),
            "games": [g.to_json() for g in self.games],
            "aggregate": {
                "games": len(self.games),
                "net_a": self.net_a,
                "net_b": self.net_b,
                "illegal_a": ill_a,
                "illegal_b": ill_b,
            },
        }

    @staticmethod
    def from_json(obj: dict) -> "MatchReport":
        report = MatchReport(
            variant=obj["variant"],
            agent_a=obj["agent_a"],
            agent_b=obj["agent_b"],
            seeds=list(obj["seeds"]),
        )
        for g in obj["games"]:
            report.games.append(GameRecord(
                seed=g["seed"], sb_agent=g["sb_agent"], history=g["history"],
                net_a=g["net_a"], net_b=g["net_b"],
                illegal_a=g["illegal_a"], illegal_b=g["illegal_b"],
            ))
        return report


def play_game(variant: str, seed: int, seat_agents: tuple[Agent, Agent]):
    """One hand; returns (terminal state, per-seat nets, per-seat incidents)."""
    state = eng.new_game(variant, seed)
    incidents = [0, 0]
    while not state.terminal:
        seat = state.to_act
        obs = eng.observe(state)
        try:
            action = agent_act(seat_agents[seat], obs, seed)
        except BridgeError:
            incidents[seat] += 1
            action = _fallback_action(obs)
        state = eng.apply_action(state, action)
    return state, eng.payoffs(state), incidents


def run_match(agent_a: Agent, agent_b: Agent, variant: str, seeds) -> MatchReport:
    """Play every seed twice with swapped seats; agent A opens as SB."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seed list must be nonempty")
    report = MatchReport(variant, agent_a.name, agent_b.name, seeds)
    for seed in seeds:
        for sb_agent, seats in (("a", (agent_a, agent_b)), ("b", (agent_b, agent_a))):
            state, nets, incidents = play_game(variant, seed, seats)
            a_seat = 0 if sb_agent == "a" else 1
            report.games.append(GameRecord(
                seed=seed,
                sb_agent=sb_agent,
                history=state.history_text(),
                net_a=nets[a_seat],
                net_b=nets[1 - a_seat],
                illegal_a=incidents[a_seat],
                illegal_b=incidents[1 - a_seat],
            ))
    return report


def bootstrap_stderr(paired_nets, resamples: int = 1000, seed: int = 0) -> float:
    """Bootstrap standard error of the total net over paired seeds."""
    x = np.asarray(paired_nets, dtype=float)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(x), size=(resamples, len(x)))
    totals = x[idx].sum(axis=1)
    return float(totals.std())


# ---------------------------------------------------------------------------
# observation rendering

DEFAULT_TEMPLATE = (
    "You are a professional poker player playing 2-handed {game_name} Poker. "
    "The following will be a game scenario and you need to make the optimal decision.\n"
    "\n"
    "Here is a game summary:\n"
    "\n"
    "{blind_line} Everyone started with 100 chips.\n"
    "The player positions involved in this game are Small Blind, Big Blind.\n"
    "\n"
    "In this hand:\n"
    "\n"
    "Your position is {position_name}, and your holding is Your card: {holding}.\n"
    "\n"
    "Community card: {community}\n"
    "Current betting round: {round_name}\n"
    "Current pot: {pot} chips\n"
    "\n"
    "This is the historical action of the game:\n"
    "{history}\n"
    "\n"
    "Your admissible actions:\n"
    "\n"
    "{actions}\n"
    "\n"
    "Now it is your turn to make a move.\n"
    "\n"
    "To remind you, the current pot size is {pot} chips, and you are in position "
    "{position_name}, and your holding is Your card: {holding}.\n"
    "\n"
    "Decide on an action from the admissible actions based on the strength of "
    "your hand on this board, your position, and actions before you.\n"
    "\n"
    "Your optimal action is:"
)


def _card_name(card) -> str:
    return f"{RANK_NAMES[card.rank]} of {SUIT_NAMES[card.suit]}"


def _history_lines(obs: eng.Observation) -> str:
    names = ROUND_NAMES[obs.variant]
    st = eng.structure_for(obs.variant)
    lines = []
    for rnd, codes in enumerate(obs.history):
        if not codes:
            continue
        actor = st.first_actor[rnd]
        parts = []
        for ch in codes:
            who = POSITION_NAMES[eng.POSITIONS[actor]]
            parts.append(f"{who} {eng.CODE_ACTION[ch]}")
            actor = 1 - actor
        lines.append(f"{names[rnd]}: " + "; ".join(parts) + ";")
    return "\n".join(lines) if lines else "(no actions yet)"


def render_observation(obs: eng.Observation, template: str | None = None) -> str:
    """Fill the prompt template for text agents; field order is fixed."""
    st = eng.structure_for(obs.variant)
    if obs.variant == "kuhn":
        blind_line = (
            "In Kuhn, each player receives exactly one private card and antes 1 chip."
        )
    else:
        n = "exactly one private card" if st.hole_cards == 1 else "two private cards"
        blind_line = (
            f"In {GAME_NAMES[obs.variant]}, each player receives {n}, and "
            "Small Blind and Big Blind ante 1 and 2 chips, respectively."
        )
    fields = {
        "game_name": GAME_NAMES[obs.variant],
        "blind_line": blind_line,
        "position_name": POSITION_NAMES[obs.position],
        "holding": "[" + ", ".join(f"'{_card_name(c)}'" for c in obs.my_cards) + "]",
        "community": (
            ", ".join(_card_name(c) for c in obs.community)
            if obs.community
            else "Not yet revealed"
        ),
        "round_name": ROUND_NAMES[obs.variant][obs.round],
        "pot": obs.pot,
        "history": _history_lines(obs),
        "actions": "\n".join(obs.legal_actions),
        "my_contribution": obs.my_contribution,
        "opponent_contribution": obs.opponent_contribution,
    }
    return (template or DEFAULT_TEMPLATE).format(**fields)
