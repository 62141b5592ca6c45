"""HTTP client for the solver service.

The client is a faithful codec over the wire protocol: it sends one JSON
query to ``POST /solve`` and decodes the JSON response field for field.
It never recomputes equities, strategies, or rewards locally.

Transport failures (connection refused, timeouts) are retried up to the
configured count; HTTP error responses are never retried, since queries
are deterministic and a 400 will not heal. Service errors surface the
server's machine-readable ``error`` code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import requests


class ClientError(Exception):
    pass


class TransportError(ClientError):
    pass


class ServiceError(ClientError):
    def __init__(self, status: int, code: str, detail: str = ""):
        super().__init__(f"{status} {code}: {detail}")
        self.status = status
        self.code = code
        self.detail = detail


@dataclass(frozen=True)
class ClientConfig:
    base_url: str = "http://127.0.0.1:8330"
    timeout: float = 10.0
    retries: int = 2

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.retries < 0:
            raise ValueError("retries must be nonnegative")


@dataclass(frozen=True)
class SolverResult:
    """Decoded /solve response; mirrors the server's field names exactly."""

    action: str
    action_dist: dict
    my_equity: float
    opponent_equity: float
    my_hand_histogram: dict
    opponent_hand_histogram: dict
    regret_rewards: dict
    infoset_key: str
    profile: dict
    extras: dict = field(default_factory=dict)  # forward-compatible fields

    @staticmethod
    def from_json(obj: dict) -> "SolverResult":
        known = {
            "action", "action_dist", "my_equity", "opponent_equity",
            "my_hand_histogram", "opponent_hand_histogram", "regret_rewards",
            "infoset_key", "profile",
        }
        return SolverResult(
            action=obj["action"],
            action_dist=dict(obj["action_dist"]),
            my_equity=obj["my_equity"],
            opponent_equity=obj["opponent_equity"],
            my_hand_histogram=dict(obj["my_hand_histogram"]),
            opponent_hand_histogram=dict(obj["opponent_hand_histogram"]),
            regret_rewards=dict(obj["regret_rewards"]),
            infoset_key=obj["infoset_key"],
            profile=dict(obj["profile"]),
            extras={k: v for k, v in obj.items() if k not in known},
        )

    def to_json(self) -> dict:
        out = {
            "action": self.action,
            "action_dist": self.action_dist,
            "my_equity": self.my_equity,
            "opponent_equity": self.opponent_equity,
            "my_hand_histogram": self.my_hand_histogram,
            "opponent_hand_histogram": self.opponent_hand_histogram,
            "regret_rewards": self.regret_rewards,
            "infoset_key": self.infoset_key,
            "profile": self.profile,
        }
        out.update(self.extras)
        return out


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class SolverClient:
    """Synchronous client; callers layer their own parallelism."""

    def __init__(self, config: ClientConfig | None = None, **kwargs):
        self.config = config or ClientConfig(**kwargs)
        self._session = requests.Session()

    def close(self):
        self._session.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _request(self, method: str, path: str, payload=None) -> requests.Response:
        url = self.config.base_url.rstrip("/") + path
        last = None
        for _ in range(self.config.retries + 1):
            try:
                return self._session.request(
                    method, url, json=payload, timeout=self.config.timeout
                )
            except (requests.ConnectionError, requests.Timeout) as exc:
                last = exc
        raise TransportError(f"{method} {url} failed after retries: {last}") from last

    @staticmethod
    def _decode_error(response: requests.Response) -> ServiceError:
        try:
            body = response.json()
            return ServiceError(
                response.status_code, body.get("error", "unknown"),
                body.get("detail", ""),
            )
        except ValueError:
            return ServiceError(response.status_code, "unknown", response.text[:200])

    def solve(self, variant: str, player_card, public_card, my_pot: int,
              opponent_pot: int, my_raise_num: int, opponent_raise_num: int,
              legal_actions, position: str) -> SolverResult:
        """One solver call; returns the decoded bundle untouched."""
        payload = {
            "variant": variant,
            "player_card": list(player_card),
            "public_card": list(public_card),
            "my_pot": my_pot,
            "opponent_pot": opponent_pot,
            "my_raise_num": my_raise_num,
            "opponent_raise_num": opponent_raise_num,
            "legal_actions": list(legal_actions),
            "position": position,
        }
        response = self._request("POST", "/solve", payload)
        if response.status_code != 200:
            raise self._decode_error(response)
        return SolverResult.from_json(response.json())

    def solve_raw(self, query: dict) -> bytes:
        """Raw response body for a prebuilt query (fidelity checks)."""
        response = self._request("POST", "/solve", query)
        if response.status_code != 200:
            raise self._decode_error(response)
        return response.content

    def health(self) -> dict:
        response = self._request("GET", "/health")
        if response.status_code != 200:
            raise self._decode_error(response)
        return response.json()
