"""Dataset pipelines: CFR-vs-random action records and tool-augmented traces.

``collect_action_dataset`` plays a trained profile against a random agent,
alternating the solver's seat per hand, and emits one record per solver
decision. The recorded action is the canonical one, the argmax of the
average strategy with first-in-order tie-break, and it is also the action
played, so every record replays through the engine.

``augment_tir`` splices a record together with the unified solver's
response for that state into a tagged reasoning trace: a think segment,
the tool call, its output, a closing think segment, then the answer.

The tool line renders arguments in the fixed order player_card,
public_card, my_pot, opponent_pot, my_raise_num, opponent_raise_num,
legal_actions, with python-style quoted lists. The think segments carry a
deterministic structured summary (situation, solver mix, equities,
decision) rather than free prose, so records stay checkable offline; a
language-model annotator can be layered on top later.

JSONL container: first line is a schema header
``{"schema": "pokerlab/<kind>", "version": 1}``, one record object per
following line, UTF-8. Appending writes records only, so concatenated
files stay valid; repeated identical headers are tolerated on read.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import engine as eng
from .cfr import StrategyProfile, UnknownInfosetError
from .harness import RandomAgent, render_observation
from .rng import mix64
from .service import SolverResponse, canonical_dumps, query_from_observation, solve_query

SCHEMA_VERSION = 1
ACTION_SCHEMA = "pokerlab/action-records"
TIR_SCHEMA = "pokerlab/tir-records"


class DatasetError(Exception):
    pass


class SchemaMismatchError(DatasetError):
    pass


class RecordMismatchError(DatasetError):
    pass


@dataclass(frozen=True)
class ActionRecord:
    variant: str
    seed: int  # game seed of the hand this decision came from
    hand_index: int
    infoset_key: str
    action: str  # canonical solver action: argmax of action_dist
    action_dist: dict[str, float]
    observation: dict  # structured Observation JSON
    rendered: str

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "seed": self.seed,
            "hand_index": self.hand_index,
            "infoset_key": self.infoset_key,
            "action": self.action,
            "action_dist": self.action_dist,
            "observation": self.observation,
            "rendered": self.rendered,
        }

    @staticmethod
    def from_json(obj: dict) -> "ActionRecord":
        return ActionRecord(
            variant=obj["variant"],
            seed=obj["seed"],
            hand_index=obj["hand_index"],
            infoset_key=obj["infoset_key"],
            action=obj["action"],
            action_dist=dict(obj["action_dist"]),
            observation=obj["observation"],
            rendered=obj["rendered"],
        )


@dataclass(frozen=True)
class TirRecord:
    record: ActionRecord
    trace: str

    def to_json(self) -> dict:
        out = self.record.to_json()
        out["trace"] = self.trace
        return out

    @staticmethod
    def from_json(obj: dict) -> "TirRecord":
        body = {k: v for k, v in obj.items() if k != "trace"}
        return TirRecord(ActionRecord.from_json(body), obj["trace"])


def canonical_action(actions, dist: dict[str, float]) -> str:
    """Argmax with the same first-in-order tie-break the service uses."""
    return max(actions, key=lambda a: dist[a])


def collect_action_dataset(profile: StrategyProfile, variant: str,
                           target_count: int, seed: int):
    """Yield exactly ``target_count`` ActionRecords, deterministically."""
    if profile.variant != variant:
        raise RecordMismatchError(
            f"profile is for {profile.variant!r}, dataset wants {variant!r}"
        )
    opponent = RandomAgent(seed=mix64(seed, 0x0BB))
    emitted = 0
    hand = 0
    while emitted < target_count:
        game_seed = mix64(seed, hand)
        solver_seat = hand % 2  # alternate positions across hands
        state = eng.new_game(variant, game_seed)
        while not state.terminal and emitted < target_count:
            obs = eng.observe(state)
            if state.to_act == solver_seat:
                key = profile.key_for(obs)
                try:
                    sigma = profile.average_strategy(key)
                except UnknownInfosetError:  # sampled limit training only
                    sigma = np.full(len(obs.legal_actions), 1.0 / len(obs.legal_actions))
                dist = {a: float(p) for a, p in zip(obs.legal_actions, sigma)}
                action = canonical_action(obs.legal_actions, dist)
                yield ActionRecord(
                    variant=variant,
                    seed=game_seed,
                    hand_index=hand,
                    infoset_key=key,
                    action=action,
                    action_dist=dist,
                    observation=obs.to_json(),
                    rendered=render_observation(obs),
                )
                emitted += 1
            else:
                action = opponent.act(obs, game_seed)
            state = eng.apply_action(state, action)
        hand += 1


def _py_list(items) -> str:
    return "[" + ", ".join(f"'{x}'" for x in items) + "]"


def tool_call_line(observation: dict) -> str:
    """The canonical solver invocation for one observation."""
    return (
        "solver("
        f"player_card={_py_list(observation['my_cards'])}, "
        f"public_card={_py_list(observation['community'])}, "
        f"my_pot={observation['my_contribution']}, "
        f"opponent_pot={observation['opponent_contribution']}, "
        f"my_raise_num={observation['my_raise_num']}, "
        f"opponent_raise_num={observation['opponent_raise_num']}, "
        f"legal_actions={_py_list(observation['legal_actions'])})"
    )


def _situation_summary(record: ActionRecord) -> str:
    obs = record.observation
    community = ", ".join(obs["community"]) if obs["community"] else "none"
    hist = ";".join(h for h in obs["history"] if h) or "none"
    return (
        "1) Situation: {pos} in {variant}, round {rnd}; pot {pot} "
        "(mine {mine}, opponent {opp}); holding {cards}; community {community}; "
        "betting so far: {hist}.\n"
        "2) Plan: query the unified solver for the equilibrium action mix, "
        "equities, and hand ranges before acting."
    ).format(
        pos=obs["position"],
        variant=record.variant,
        rnd=obs["round"],
        pot=obs["pot"],
        mine=obs["my_contribution"],
        opp=obs["opponent_contribution"],
        cards=", ".join(obs["my_cards"]),
        community=community,
        hist=hist,
    )


def _decision_summary(record: ActionRecord, response: SolverResponse) -> str:
    mix = ", ".join(
        f"{a} {p:.3f}" for a, p in sorted(response.action_dist.items())
    )
    return (
        "3) Solver mix: {mix}; my equity {eq:.3f} vs opponent {opp:.3f}.\n"
        "4) Decision: take '{action}', the highest-probability equilibrium action."
    ).format(
        mix=mix,
        eq=response.my_equity,
        opp=response.opponent_equity,
        action=record.action,
    )


def augment_tir(record: ActionRecord, response: SolverResponse) -> TirRecord:
    """Build the tagged trace for a record from its solver response."""
    if response.profile.get("variant") != record.variant:
        raise RecordMismatchError(
            f"response profile is {response.profile.get('variant')!r}, "
            f"record is {record.variant!r}"
        )
    if set(response.action_dist) != set(record.observation["legal_actions"]):
        raise RecordMismatchError(
            "response action support does not match the record's legal actions"
        )
    trace = (
        f"<think>{_situation_summary(record)}</think>"
        f"<tool>{tool_call_line(record.observation)}</tool>"
        f"<output>{canonical_dumps(response.to_json())}</output>"
        f"<think>{_decision_summary(record, response)}</think>"
        f"<answer>{record.action}</answer>"
    )
    return TirRecord(record, trace)


def collect_tir_dataset(profile: StrategyProfile, variant: str, target_count: int,
                        seed: int, store):
    """Action records augmented with live solver responses."""
    for record in collect_action_dataset(profile, variant, target_count, seed):
        query = query_from_observation(eng.Observation.from_json(record.observation))
        yield augment_tir(record, solve_query(query, store))


# ---------------------------------------------------------------------------
# JSONL container

_SCHEMA_BY_TYPE = {ActionRecord: ACTION_SCHEMA, TirRecord: TIR_SCHEMA}
_TYPE_BY_SCHEMA = {ACTION_SCHEMA: ActionRecord, TIR_SCHEMA: TirRecord}


def write_jsonl(records, path: str, append: bool = False) -> int:
    """One canonical JSON object per line; header first unless appending."""
    count = 0
    schema = None
    with open(path, "a" if append else "w", encoding="utf-8") as fh:
        for record in records:
            if schema is None:
                schema = _SCHEMA_BY_TYPE[type(record)]
                if not append:
                    fh.write(canonical_dumps(
                        {"schema": schema, "version": SCHEMA_VERSION}
                    ) + "\n")
            elif _SCHEMA_BY_TYPE[type(record)] != schema:
                raise SchemaMismatchError("mixed record types in one file")
            fh.write(canonical_dumps(record.to_json()) + "\n")
            count += 1
    return count


def read_jsonl(path: str):
    """Typed records back from a JSONL file; header is mandatory."""
    records = []
    schema = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "schema" in obj and "version" in obj and len(obj) == 2:
                if obj["version"] != SCHEMA_VERSION:
                    raise SchemaMismatchError(
                        f"schema version {obj['version']} != {SCHEMA_VERSION}"
                    )
                if schema is None:
                    schema = obj["schema"]
                elif obj["schema"] != schema:
                    raise SchemaMismatchError("conflicting headers in one file")
                continue
            if schema is None:
                raise SchemaMismatchError(f"{path} is missing its schema header")
            records.append(_TYPE_BY_SCHEMA[schema].from_json(obj))
    if schema is None:
        raise SchemaMismatchError(f"{path} is missing its schema header")
    return records


def reachable_solver_infosets(profile: StrategyProfile, variant: str) -> set[str]:
    """Infoset keys the collector can reach: solver plays argmax, opponent anything."""
    keys: set[str] = set()
    for solver_seat in (0, 1):
        for h0, h1, board, _ in eng.enumerate_deals(variant):
            stack = [eng.from_deal(variant, h0, h1, board)]
            while stack:
                state = stack.pop()
                if state.terminal:
                    continue
                obs = eng.observe(state)
                if state.to_act == solver_seat:
                    key = profile.key_for(obs)
                    keys.add(key)
                    sigma = profile.average_strategy(key)
                    dist = {a: float(p) for a, p in zip(obs.legal_actions, sigma)}
                    stack.append(
                        eng.apply_action(state, canonical_action(obs.legal_actions, dist))
                    )
                else:
                    for action in obs.legal_actions:
                        stack.append(eng.apply_action(state, action))
    return keys
