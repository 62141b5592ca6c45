"""Counterfactual regret minimization over the pokerlab engines.

Tabular solving (Kuhn, Leduc) compiles the betting tree once from the
engine, then iterates full-tree traversals with the chance dimension
vectorized: every node carries value vectors indexed by deal, so one
traversal touches each betting node once regardless of the deal count.

Update rule per iteration t (alternating, player 0 then player 1):

    r_t(I, a) = r_{t-1}(I, a) + sum_deals chance * opp-reach * (v_a - v)

CFR+ additionally clamps stored regrets at zero after each update and
weights the strategy-sum accumulation linearly by t; vanilla CFR leaves
regrets unclamped and averages uniformly. The current strategy is always
regret matching over positive parts, uniform when none are positive.

Limit Hold'em is far too large for exact tabular work, so it gets
external-sampling MCCFR over an expected-hand-strength percentile
bucketing (default 8 buckets per street). This is a desk-scale
approximation, clearly tagged in the profile metadata; its bucket
cutoffs are stored alongside the tables so served queries bucket
identically.

Best response / exploitability are an independent oracle: a grouped
expectimax over engine states that reads only the profile's average
strategy. Exploitability is the mean of both responders' best-response
values (the game is zero-sum), reported in chips per hand.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os
from dataclasses import dataclass

import numpy as np

from . import engine as eng
from .cards import of_codes
from .equity import equity_mc
from .rng import SplitMix64, hash_text, mix64

ALGORITHMS = ("cfr", "cfr+", "mccfr-ext")
AVERAGING = ("linear", "uniform")

PROFILE_FORMAT = "pokerlab-profile"
PROFILE_VERSION = 1


class SolverError(Exception):
    pass


class UnsupportedConfigError(SolverError):
    pass


class UnknownInfosetError(KeyError, SolverError):
    pass


class IncompleteProfileError(SolverError):
    pass


class ProfileIOError(SolverError):
    pass


class ProfileVersionError(ProfileIOError):
    pass


class ProfileCorruptError(ProfileIOError):
    pass


class VariantMismatchError(ProfileIOError):
    pass


def regret_match(regrets, plus_mode: bool = False) -> np.ndarray:
    """Probabilities proportional to positive regret; uniform fallback.

    ``plus_mode`` only documents the caller-side convention that stored
    regrets are clamped at zero after updates; matching itself is the
    same in both modes.
    """
    r = np.asarray(regrets, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("regret vector must be non-empty and one-dimensional")
    pos = np.maximum(r, 0.0)
    total = pos.sum()
    if total <= 0.0:
        return np.full(r.size, 1.0 / r.size)
    return pos / total


@dataclass(frozen=True)
class SolveConfig:
    iterations: int
    algorithm: str = "cfr+"
    seed: int = 0
    averaging: str | None = None  # default: linear for cfr+, else uniform
    buckets: int = 8  # per street, mccfr-ext only
    stop_exploitability: float | None = None  # optional early stop, deterministic
    check_every: int = 50

    def __post_init__(self):
        if self.iterations < 1:
            raise UnsupportedConfigError("iterations must be >= 1")
        if self.algorithm not in ALGORITHMS:
            raise UnsupportedConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.averaging not in (None, *AVERAGING):
            raise UnsupportedConfigError(f"unknown averaging {self.averaging!r}")
        if self.buckets < 1:
            raise UnsupportedConfigError("buckets must be >= 1")

    @property
    def effective_averaging(self) -> str:
        if self.averaging is not None:
            return self.averaging
        return "linear" if self.algorithm == "cfr+" else "uniform"


@dataclass
class InfosetTable:
    actions: tuple[str, ...]
    regrets: np.ndarray
    strategy_sum: np.ndarray


@dataclass
class StrategyProfile:
    """Frozen solver output: per-infoset regrets and strategy sums."""

    variant: str
    algorithm: str
    iterations: int
    averaging: str
    tables: dict[str, InfosetTable]
    buckets: int | None = None
    bucket_cutoffs: list[list[float]] | None = None  # per street, mccfr only
    bucket_seed: int | None = None

    def _table(self, infoset_key: str) -> InfosetTable:
        try:
            return self.tables[infoset_key]
        except KeyError:
            raise UnknownInfosetError(infoset_key) from None

    def actions_at(self, infoset_key: str) -> tuple[str, ...]:
        return self._table(infoset_key).actions

    def average_strategy(self, infoset_key: str) -> np.ndarray:
        """Normalized strategy sums; uniform before any accumulation."""
        t = self._table(infoset_key)
        total = t.strategy_sum.sum()
        if total <= 0.0:
            return np.full(len(t.actions), 1.0 / len(t.actions))
        return t.strategy_sum / total

    def cumulative_regrets(self, infoset_key: str) -> np.ndarray:
        return self._table(infoset_key).regrets.copy()

    def current_strategy(self, infoset_key: str) -> np.ndarray:
        return regret_match(self._table(infoset_key).regrets)

    def key_for(self, obs: eng.Observation) -> str:
        """Profile lookup key for an observation (bucketed for mccfr)."""
        if self.algorithm == "mccfr-ext":
            return bucketed_key(obs, self.bucket_cutoffs, self.bucket_seed)
        return eng.infoset_key(obs)


def uniform_profile(variant: str) -> StrategyProfile:
    """All-zero tables over the full tabular tree: every strategy uniform."""
    tree = _compile_tree(variant)
    tables = {
        key: InfosetTable(actions, np.zeros(len(actions)), np.zeros(len(actions)))
        for key, actions in tree.infoset_actions.items()
    }
    return StrategyProfile(variant, "cfr", 0, "uniform", tables)


# ---------------------------------------------------------------------------
# tabular tree compilation


class _Leaf:
    __slots__ = ("u0",)

    def __init__(self, u0):
        self.u0 = u0  # player-0 utility per deal in this leaf's index set


class _Node:
    __slots__ = ("actor", "actions", "n", "ctx", "keys", "children")

    def __init__(self, actor, actions, n, ctx, keys):
        self.actor = actor
        self.actions = actions
        self.n = n  # number of deals flowing through this node
        self.ctx = ctx  # per-deal local infoset row
        self.keys = keys  # local row -> global infoset key
        # children[a] = list of (child, positions into this node's deal axis)
        self.children = [[] for _ in actions]


class _Tree:
    def __init__(self, variant):
        self.variant = variant
        self.root = None
        self.num_deals = 0
        self.chance = 0.0  # uniform chance weight per deal
        self.infoset_actions: dict[str, tuple[str, ...]] = {}

    def rows(self) -> list[tuple[str, tuple[str, ...]]]:
        return sorted(self.infoset_actions.items())


def _compile_tree(variant: str) -> _Tree:
    deals = eng.enumerate_deals(variant)
    tree = _Tree(variant)
    tree.num_deals = len(deals)
    tree.chance = deals[0][3]
    states = [eng.from_deal(variant, h0, h1, b) for h0, h1, b, _ in deals]
    tree.root = _build_node(tree, states)
    return tree


def _build_node(tree: _Tree, states: list[eng.GameState]):
    first = states[0]
    if first.terminal:
        return _Leaf(np.array([float(eng.payoffs(s)[0]) for s in states]))

    actor = first.to_act
    actions = eng.legal_actions(first)
    keys_per_deal = [eng.infoset_key(eng.observe(s)) for s in states]
    local: dict[str, int] = {}
    ctx = np.empty(len(states), dtype=np.int64)
    for i, k in enumerate(keys_per_deal):
        if k not in local:
            local[k] = len(local)
            tree.infoset_actions[k] = actions
        ctx[i] = local[k]
    keys = [k for k, _ in sorted(local.items(), key=lambda kv: kv[1])]
    node = _Node(actor, actions, len(states), ctx, keys)

    for ai, action in enumerate(actions):
        children = [eng.apply_action(s, action) for s in states]
        # public branching only happens on a community reveal
        groups: dict[tuple, list[int]] = {}
        for pos, child in enumerate(children):
            if child.terminal:
                sig = ("terminal",)
            else:
                sig = (child.round, tuple(of_codes(child.revealed)))
            groups.setdefault(sig, []).append(pos)
        for sig in sorted(groups, key=repr):
            positions = groups[sig]
            sub = _build_node(tree, [children[p] for p in positions])
            node.children[ai].append((sub, np.array(positions, dtype=np.int64)))
    return node


class _TabularTrainer:
    """Vectorized full-tree CFR/CFR+ over a compiled tree.

    An infoset's public history pins a unique tree node, so each node
    owns the (rows x actions) regret and strategy-sum matrices for the
    infosets that live there.
    """

    def __init__(self, variant: str, config: SolveConfig):
        self.variant = variant
        self.config = config
        self.plus = config.algorithm == "cfr+"
        self.tree = _compile_tree(variant)
        self.nodes: list[_Node] = []

        def collect(node):
            if isinstance(node, _Leaf):
                return
            self.nodes.append(node)
            for per_action in node.children:
                for child, _ in per_action:
                    collect(child)

        collect(self.tree.root)
        self.reg = {id(n): np.zeros((len(n.keys), len(n.actions))) for n in self.nodes}
        self.ssum = {id(n): np.zeros((len(n.keys), len(n.actions))) for n in self.nodes}

    def _current(self, reg: np.ndarray) -> np.ndarray:
        pos = np.maximum(reg, 0.0)
        totals = pos.sum(axis=1, keepdims=True)
        out = np.where(
            totals > 0.0, pos / np.where(totals > 0.0, totals, 1.0), 1.0 / reg.shape[1]
        )
        return out

    def _traverse(self, node, reach0, reach1, player, weight):
        if isinstance(node, _Leaf):
            return node.u0
        reg = self.reg[id(node)]
        ssum = self.ssum[id(node)]
        S = self._current(reg)[node.ctx]  # (n, K)
        n, K = S.shape
        V = np.zeros((n, K))
        for ai in range(K):
            for child, pos in node.children[ai]:
                if node.actor == 0:
                    r0 = (reach0 * S[:, ai])[pos]
                    r1 = reach1[pos]
                else:
                    r0 = reach0[pos]
                    r1 = (reach1 * S[:, ai])[pos]
                V[pos, ai] = self._traverse(child, r0, r1, player, weight)
        v = (S * V).sum(axis=1)

        if node.actor == player:
            sign = 1.0 if player == 0 else -1.0
            opp_reach = reach1 if player == 0 else reach0
            my_reach = reach0 if player == 0 else reach1
            w = self.tree.chance * opp_reach
            np.add.at(reg, node.ctx, (w * sign)[:, None] * (V - v[:, None]))
            if self.plus:
                np.maximum(reg, 0.0, out=reg)
            np.add.at(ssum, node.ctx, (weight * my_reach)[:, None] * S)
        return v

    def run(self) -> StrategyProfile:
        cfg = self.config
        linear = cfg.effective_averaging == "linear"
        ones = np.ones(self.tree.num_deals)
        done = 0
        for t in range(1, cfg.iterations + 1):
            w = float(t) if linear else 1.0
            self._traverse(self.tree.root, ones, ones, 0, w)
            self._traverse(self.tree.root, ones, ones, 1, w)
            done = t
            if (
                cfg.stop_exploitability is not None
                and t % cfg.check_every == 0
                and exploitability(self.snapshot(done)) < cfg.stop_exploitability
            ):
                break
        return self.snapshot(done)

    def snapshot(self, iterations: int) -> StrategyProfile:
        tables: dict[str, InfosetTable] = {}
        for node in self.nodes:
            reg = self.reg[id(node)]
            ssum = self.ssum[id(node)]
            for row, key in enumerate(node.keys):
                tables[key] = InfosetTable(node.actions, reg[row].copy(), ssum[row].copy())
        return StrategyProfile(
            variant=self.variant,
            algorithm=self.config.algorithm,
            iterations=iterations,
            averaging=self.config.effective_averaging,
            tables=tables,
        )


# ---------------------------------------------------------------------------
# best response oracle and exploitability


def _regroup(children):
    """Partition (state, reach) pairs by the responder's next view."""
    groups: dict[tuple, list] = {}
    for state, reach in children:
        if state.terminal:
            sig = ("terminal", state.history_text(), tuple(of_codes(state.revealed)))
        else:
            sig = ("live", state.history_text(), tuple(of_codes(state.revealed)))
        groups.setdefault(sig, []).append((state, reach))
    return [groups[sig] for sig in sorted(groups, key=repr)]


def best_response_value(profile: StrategyProfile, responder: int) -> float:
    """Exact value of the responder's best response to the average strategy.

    Full-tree max-backup: states indistinguishable to the responder are
    grouped, opponent moves are weighted by the profile's average
    strategy, and the responder maximizes per group. Tabular variants
    only; the profile must cover every opponent infoset in the tree.
    """
    if profile.variant not in ("kuhn", "leduc"):
        raise UnsupportedConfigError("best response needs an enumerable variant")
    deals = eng.enumerate_deals(profile.variant)
    starts = [
        (eng.from_deal(profile.variant, h0, h1, b), w) for h0, h1, b, w in deals
    ]
    # split by the responder's private cards before anyone acts
    first: dict[tuple, list] = {}
    for state, reach in starts:
        sig = tuple(of_codes(state.hands[responder]))
        first.setdefault(sig, []).append((state, reach))

    def value(group) -> float:
        state0 = group[0][0]
        if state0.terminal:
            return sum(r * eng.payoffs(s)[responder] for s, r in group)
        if state0.to_act == responder:
            best = None
            for action in eng.legal_actions(state0):
                children = [(eng.apply_action(s, action), r) for s, r in group]
                total = sum(value(g) for g in _regroup(children))
                if best is None or total > best:
                    best = total
            return best
        children = []
        for state, reach in group:
            key = eng.infoset_key(eng.observe(state))
            try:
                sigma = profile.average_strategy(key)
            except UnknownInfosetError:
                raise IncompleteProfileError(
                    f"profile missing opponent infoset {key}"
                ) from None
            for action, p in zip(eng.legal_actions(state), sigma):
                if p > 0.0:
                    children.append((eng.apply_action(state, action), reach * p))
        return sum(value(g) for g in _regroup(children))

    return sum(value(g) for g in first.values())


def exploitability(profile: StrategyProfile) -> float:
    """Mean best-response gain over both seats; zero exactly at Nash."""
    br0 = best_response_value(profile, 0)
    br1 = best_response_value(profile, 1)
    return (br0 + br1) / 2.0


def expected_value(profile: StrategyProfile, player: int = 0) -> float:
    """Expected chips for ``player`` when both seats play the average strategy."""
    if profile.variant not in ("kuhn", "leduc"):
        raise UnsupportedConfigError("expected value needs an enumerable variant")

    def walk(state, weight):
        if weight == 0.0:
            return 0.0
        if state.terminal:
            return weight * eng.payoffs(state)[player]
        sigma = profile.average_strategy(eng.infoset_key(eng.observe(state)))
        return sum(
            walk(eng.apply_action(state, a), weight * p)
            for a, p in zip(eng.legal_actions(state), sigma)
        )

    total = 0.0
    for h0, h1, b, w in eng.enumerate_deals(profile.variant):
        total += walk(eng.from_deal(profile.variant, h0, h1, b), w)
    return total


# ---------------------------------------------------------------------------
# limit hold'em: expected-hand-strength buckets + external-sampling MCCFR

EHS_SAMPLES = 50
CALIBRATION_DRAWS = 400
STREET_BOARD = (0, 3, 4, 5)


def _ehs(hole, board, seed: int) -> float:
    """Cheap expected-hand-strength estimate, deterministic per cards."""
    key = "".join(sorted(of_codes(hole))) + "|" + "".join(of_codes(board))
    return equity_mc(
        hole, board, samples=EHS_SAMPLES, seed=mix64(seed, hash_text(key))
    ).equity


def compute_bucket_cutoffs(buckets: int, seed: int) -> list[list[float]]:
    """Per-street EHS percentile boundaries from seeded random situations."""
    from .cards import deck_for

    deck = list(deck_for("limit").cards)
    cutoffs = []
    for street, board_n in enumerate(STREET_BOARD):
        rng = SplitMix64(mix64(seed, 0xB0A4D, street))
        values = []
        for _ in range(CALIBRATION_DRAWS):
            drawn = _draw(rng, deck, 2 + board_n)
            values.append(_ehs(drawn[:2], drawn[2:], seed))
        values.sort()
        qs = [values[int(q * len(values) / buckets)] for q in range(1, buckets)]
        cutoffs.append(qs)
    return cutoffs


def _draw(rng: SplitMix64, pool, k):
    items = list(pool)
    for i in range(k):
        j = i + rng.below(len(items) - i)
        items[i], items[j] = items[j], items[i]
    return items[:k]


def bucket_index(hole, board, cutoffs, seed: int) -> int:
    street = STREET_BOARD.index(len(board))
    ehs = _ehs(hole, board, seed)
    bounds = cutoffs[street]
    lo = 0
    while lo < len(bounds) and ehs >= bounds[lo]:
        lo += 1
    return lo


def bucketed_key(obs: eng.Observation, cutoffs, seed: int,
                 cache: dict | None = None) -> str:
    """Limit infoset key over bucket indices instead of raw cards."""
    if cutoffs is None or seed is None:
        raise IncompleteProfileError("profile has no bucket cutoffs")
    path = []
    for street in range(obs.round + 1):
        board = obs.community[: STREET_BOARD[street]]
        ck = ("".join(sorted(of_codes(obs.my_cards))), "".join(of_codes(board)))
        if cache is not None and ck in cache:
            b = cache[ck]
        else:
            b = bucket_index(obs.my_cards, board, cutoffs, seed)
            if cache is not None:
                cache[ck] = b
        path.append(str(b))
    rounds = list(obs.history)
    while rounds and rounds[-1] == "":
        rounds.pop()
    tail = "/" + ";".join(obs.history[: len(rounds)]) if rounds else ""
    return f"B{'.'.join(path)}|{obs.player}|{obs.round}{tail}"


class _MCCFRTrainer:
    """External-sampling MCCFR with bucket abstraction (limit only)."""

    def __init__(self, config: SolveConfig):
        self.config = config
        self.cutoffs = compute_bucket_cutoffs(config.buckets, config.seed)
        self.tables: dict[str, InfosetTable] = {}
        self.rng = SplitMix64(mix64(config.seed, 0xE5))
        self.bucket_cache: dict = {}

    def _table(self, key: str, actions) -> InfosetTable:
        t = self.tables.get(key)
        if t is None:
            t = InfosetTable(tuple(actions), np.zeros(len(actions)), np.zeros(len(actions)))
            self.tables[key] = t
        return t

    def _key(self, state) -> str:
        return bucketed_key(
            eng.observe(state), self.cutoffs, self.config.seed, self.bucket_cache
        )

    def _traverse(self, state, player, weight):
        if state.terminal:
            return float(eng.payoffs(state)[player])
        actions = eng.legal_actions(state)
        table = self._table(self._key(state), actions)
        sigma = regret_match(table.regrets)
        if state.to_act == player:
            util = np.zeros(len(actions))
            for i, a in enumerate(actions):
                util[i] = self._traverse(eng.apply_action(state, a), player, weight)
            node_value = float(sigma @ util)
            table.regrets += util - node_value
            if self.config.algorithm == "cfr+":
                np.maximum(table.regrets, 0.0, out=table.regrets)
            return node_value
        table.strategy_sum += weight * sigma
        pick = self.rng.choice_weighted(sigma)
        return self._traverse(eng.apply_action(state, actions[pick]), player, weight)

    def run(self) -> StrategyProfile:
        cfg = self.config
        linear = cfg.effective_averaging == "linear"
        for t in range(1, cfg.iterations + 1):
            w = float(t) if linear else 1.0
            for player in (0, 1):
                state = eng.new_game("limit", self.rng.next_u64())
                self._traverse(state, player, w)
        return StrategyProfile(
            variant="limit",
            algorithm="mccfr-ext",
            iterations=cfg.iterations,
            averaging=cfg.effective_averaging,
            tables=self.tables,
            buckets=cfg.buckets,
            bucket_cutoffs=self.cutoffs,
            bucket_seed=cfg.seed,
        )


def train(variant: str, config: SolveConfig) -> StrategyProfile:
    """Solve a variant per the config; deterministic for identical configs."""
    if variant in ("kuhn", "leduc"):
        if config.algorithm == "mccfr-ext":
            raise UnsupportedConfigError(
                "mccfr-ext is the limit solver; use cfr or cfr+ here"
            )
        return _TabularTrainer(variant, config).run()
    if variant == "limit":
        if config.algorithm != "mccfr-ext":
            raise UnsupportedConfigError(
                "exact tabular solving of limit hold'em is infeasible; use mccfr-ext"
            )
        return _MCCFRTrainer(config).run()
    raise UnsupportedConfigError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# profile persistence


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _profile_body(profile: StrategyProfile) -> dict:
    tables = {}
    for key in sorted(profile.tables):
        t = profile.tables[key]
        tables[key] = {
            "actions": list(t.actions),
            "regrets": [float(x) for x in t.regrets],
            "strategy_sum": [float(x) for x in t.strategy_sum],
        }
    return {
        "format": PROFILE_FORMAT,
        "version": PROFILE_VERSION,
        "variant": profile.variant,
        "algorithm": profile.algorithm,
        "iterations": profile.iterations,
        "averaging": profile.averaging,
        "buckets": profile.buckets,
        "bucket_cutoffs": profile.bucket_cutoffs,
        "bucket_seed": profile.bucket_seed,
        "tables": tables,
    }


def save_profile(profile: StrategyProfile, path: str) -> None:
    """Write the versioned, checksummed profile container (gzipped JSON)."""
    body = _profile_body(profile)
    payload = _canonical(body)
    out = {"checksum": hashlib.sha256(payload.encode()).hexdigest(), "body": body}
    try:
        # fixed mtime and no embedded name keep identical profiles
        # byte-identical on disk regardless of path or wall clock
        with open(path, "wb") as raw:
            with gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as fh:
                fh.write(_canonical(out).encode("utf-8"))
    except OSError as exc:
        raise ProfileIOError(f"cannot write {path}: {exc}") from exc


def load_profile(path: str, expect_variant: str | None = None) -> StrategyProfile:
    try:
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            raw = fh.read()
    except FileNotFoundError as exc:
        raise ProfileIOError(f"cannot read {path}: {exc}") from exc
    except (OSError, EOFError, UnicodeDecodeError) as exc:
        raise ProfileCorruptError(f"{path} is not a readable container: {exc}") from exc
    try:
        wrapper = json.loads(raw)
        body = wrapper["body"]
        checksum = wrapper["checksum"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ProfileCorruptError(f"{path} is not a profile container") from exc
    if hashlib.sha256(_canonical(body).encode()).hexdigest() != checksum:
        raise ProfileCorruptError(f"{path} failed its checksum")
    if body.get("format") != PROFILE_FORMAT or body.get("version") != PROFILE_VERSION:
        raise ProfileVersionError(
            f"{path} has format {body.get('format')!r} v{body.get('version')!r}"
        )
    if expect_variant is not None and body["variant"] != expect_variant:
        raise VariantMismatchError(
            f"wanted a {expect_variant} profile, {path} holds {body['variant']}"
        )
    tables = {
        key: InfosetTable(
            tuple(t["actions"]),
            np.array(t["regrets"], dtype=float),
            np.array(t["strategy_sum"], dtype=float),
        )
        for key, t in body["tables"].items()
    }
    return StrategyProfile(
        variant=body["variant"],
        algorithm=body["algorithm"],
        iterations=body["iterations"],
        averaging=body["averaging"],
        tables=tables,
        buckets=body.get("buckets"),
        bucket_cutoffs=body.get("bucket_cutoffs"),
        bucket_seed=body.get("bucket_seed"),
    )


def profile_bytes(profile: StrategyProfile) -> bytes:
    """Canonical serialized form, for determinism checks."""
    return _canonical(_profile_body(profile)).encode()


class ProfileStore:
    """Read-only map of variant -> frozen profile, as the service uses it."""

    def __init__(self, profiles=()):
        self._by_variant: dict[str, StrategyProfile] = {}
        for p in profiles:
            self.add(p)

    def add(self, profile: StrategyProfile):
        self._by_variant[profile.variant] = profile

    def get(self, variant: str) -> StrategyProfile:
        try:
            return self._by_variant[variant]
        except KeyError:
            raise IncompleteProfileError(f"no profile loaded for {variant!r}") from None

    def variants(self):
        return sorted(self._by_variant)

    @classmethod
    def load_dir(cls, directory: str) -> "ProfileStore":
        store = cls()
        for name in sorted(os.listdir(directory)):
            if name.endswith(".profile.json.gz"):
                store.add(load_profile(os.path.join(directory, name)))
        return store


def profile_filename(variant: str) -> str:
    return f"{variant}.profile.json.gz"
