"""Reward machinery for tool-integrated reasoning traces.

Three pieces live here:

* regret standardization - a regret vector is shifted by its mean and
  divided by its population standard deviation, giving a per-action
  signal with mean 0 and (nondegenerate) std 1. A constant vector maps
  to all zeros.

* trace parsing - reasoning text is a flat sequence of tagged segments
  <think>...</think>, <tool>...</tool>, <output>...</output>,
  <answer>...</answer>. Tags are literal ASCII, case-sensitive, no
  attributes. Untagged text between segments is discarded. Unclosed or
  interleaved tags raise MalformedTraceError.

* the composite reward - answer (+1 if the final answer text equals the
  solver action after trimming and case-folding, else -1), format
  (1 iff the segment sequence matches one or more think groups, each
  optionally followed by a tool/output pair, then exactly one answer),
  and tool execution (fraction of successful tool calls, 1.0 when there
  are none). The total is answer + alpha_f * format + alpha_t * tool.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

TAG_KINDS = ("think", "tool", "output", "answer")


class MalformedTraceError(ValueError):
    pass


class LogLengthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    kind: str
    text: str


@dataclass(frozen=True)
class Trace:
    segments: tuple[Segment, ...]

    def of_kind(self, kind: str) -> list[Segment]:
        return [s for s in self.segments if s.kind == kind]

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(s.kind for s in self.segments)

    def final_answer(self) -> str | None:
        answers = self.of_kind("answer")
        return answers[-1].text if answers else None


def regret_reward(regrets) -> np.ndarray:
    """Standardize a cumulative-regret vector into per-action rewards."""
    r = np.asarray(regrets, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("regret vector must be non-empty and one-dimensional")
    std = float(r.std())  # population std
    if std == 0.0:
        return np.zeros_like(r)
    return (r - r.mean()) / std


_TAG_RE = re.compile(r"</?(think|tool|output|answer)>")


def parse_trace(text: str) -> Trace:
    """Split tagged reasoning text into ordered segments."""
    segments = []
    tokens = list(_TAG_RE.finditer(text))
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        name = tok.group(1)
        if tok.group(0).startswith("</"):
            raise MalformedTraceError(f"closing </{name}> without an opening tag")
        if i + 1 >= len(tokens):
            raise MalformedTraceError(f"<{name}> is never closed")
        closer = tokens[i + 1]
        if closer.group(0) != f"</{name}>":
            raise MalformedTraceError(
                f"<{name}> interleaved with {closer.group(0)} before closing"
            )
        segments.append(Segment(name, text[tok.end() : closer.start()]))
        i += 2
    return Trace(tuple(segments))


_FORMAT_RE = re.compile(r"^(t(co)?)+a$")
_KIND_CHAR = {"think": "t", "tool": "c", "output": "o", "answer": "a"}


def format_reward(trace: Trace) -> int:
    """1 iff segments follow the think/tool/output/answer schema."""
    word = "".join(_KIND_CHAR[k] for k in trace.kinds)
    return 1 if _FORMAT_RE.match(word) else 0


def tool_reward(trace: Trace, execution_log) -> float:
    """Fraction of successful tool calls; vacuously 1.0 with no calls."""
    calls = trace.of_kind("tool")
    log = list(execution_log)
    if len(log) != len(calls):
        raise LogLengthMismatchError(
            f"{len(calls)} tool segment(s) but {len(log)} execution flag(s)"
        )
    if not calls:
        return 1.0
    return sum(1 for ok in log if ok) / len(calls)


def answer_reward(predicted_action: str | None, solver_action: str) -> int:
    """+1 on a normalized exact match with the solver action, else -1.

    No synonym mapping: "check" never matches "call".
    """
    if predicted_action is None:
        return -1
    return 1 if predicted_action.strip().casefold() == solver_action.strip().casefold() else -1


@dataclass(frozen=True)
class RewardBreakdown:
    answer: int  # -1 or +1
    format: int  # 0 or 1
    tool: float  # in [0, 1]
    alpha_f: float
    alpha_t: float
    total: float

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "format": self.format,
            "tool": self.tool,
            "alpha_f": self.alpha_f,
            "alpha_t": self.alpha_t,
            "total": self.total,
        }


DEFAULT_ALPHA_F = 0.1
DEFAULT_ALPHA_T = 0.1


def composite_reward(trace: Trace, execution_log, solver_action: str,
                     alpha_f: float = DEFAULT_ALPHA_F,
                     alpha_t: float = DEFAULT_ALPHA_T) -> RewardBreakdown:
    """Weighted answer + format + tool-execution reward for one trace."""
    if alpha_f < 0 or alpha_t < 0:
        raise ValueError("reward weights must be nonnegative")
    ans = answer_reward(trace.final_answer(), solver_action)
    fmt = format_reward(trace)
    tool = tool_reward(trace, execution_log)
    total = ans + alpha_f * fmt + alpha_t * tool
    return RewardBreakdown(ans, fmt, tool, alpha_f, alpha_t, total)
