"""Match-harness bridge adapter.

The harness speaks newline-delimited JSON over a subprocess's standard
streams: one observation object per line in, one ``{"action": "..."}``
line back. ``run_bridge_agent`` wires a policy callback into that loop so
any Python policy (including a language-model stack) can sit in a match.

Failure contract: if the callback raises, or returns an action outside
the observation's ``legal_actions``, the bridge answers nothing for that
observation. The harness then times out, charges a fold, and carries on;
the loop stays in sync because no stale reply is ever written. Rejected
actions are surfaced through the optional ``on_reject`` hook.
"""

from __future__ import annotations

import json
import sys


class ProtocolViolation(Exception):
    pass


def run_bridge_agent(policy_callback, stdin=None, stdout=None, on_reject=None) -> int:
    """Serve observations until EOF; returns the number answered."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    answered = 0
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            observation = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolViolation(f"harness sent non-JSON line: {line[:80]!r}") from exc
        if not isinstance(observation, dict) or "legal_actions" not in observation:
            raise ProtocolViolation("observation lacks legal_actions")
        try:
            action = policy_callback(observation)
        except Exception:  # callback failure: stay silent, harness folds
            continue
        if action not in observation["legal_actions"]:
            if on_reject is not None:
                on_reject(observation, action)
            continue
        stdout.write(json.dumps({"action": action}) + "\n")
        stdout.flush()
        answered += 1
    return answered


def main(argv=None) -> int:
    """Tiny built-in policy runner: ``python -m pokerlab_client.bridge always_call``."""
    argv = sys.argv[1:] if argv is None else argv
    policy_name = argv[0] if argv else "always_call"
    if policy_name != "always_call":
        raise SystemExit(f"unknown built-in policy {policy_name!r}")

    def always_call(observation):
        for pick in ("call", "check"):
            if pick in observation["legal_actions"]:
                return pick
        return observation["legal_actions"][0]

    run_bridge_agent(always_call)
    return 0


if __name__ == "__main__":
    sys.exit(main())
