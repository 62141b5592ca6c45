import json
import sys
import textwrap

import pytest

from pokerlab import cfr
from pokerlab import engine as eng
from pokerlab import harness


def test_random_agents_are_replayable_and_legal():
    agent = harness.RandomAgent(3)
    state = eng.new_game("leduc", 8)
    obs = eng.observe(state)
    picks = {agent.act(obs, 8) for _ in range(10)}
    assert len(picks) == 1  # same observation, same seed, same choice
    assert picks.pop() in obs.legal_actions


def test_always_call_preferences():
    state = eng.new_game("leduc", 8)  # SB faces the blind: call available
    assert harness.AlwaysCallAgent().act(eng.observe(state), 8) == "call"
    checked = eng.apply_action(state, "call")
    assert harness.AlwaysCallAgent().act(eng.observe(checked), 8) == "check"


def test_cfr_agent_unknown_infoset_falls_back_to_uniform():
    empty = cfr.StrategyProfile("leduc", "cfr+", 0, "linear", tables={})
    agent = harness.CfrAgent(empty, seed=0)
    state = eng.new_game("leduc", 8)
    counts = {}
    for game_seed in range(300):
        action = agent.act(eng.observe(state), game_seed)
        counts[action] = counts.get(action, 0) + 1
    assert set(counts) == set(eng.legal_actions(state))
    assert min(counts.values()) > 50  # roughly uniform across 3 actions


def test_agent_act_rejects_illegal():
    class Liar(harness.Agent):
        def act(self, obs, game_seed):
            return "raise" if "raise" not in obs.legal_actions else "fold"

    state = eng.new_game("kuhn", 1)
    with pytest.raises(harness.BridgeError):
        harness.agent_act(Liar(), eng.observe(state), 1)


def test_match_counts_and_zero_sum():
    report = harness.run_match(
        harness.RandomAgent(1), harness.RandomAgent(2), "leduc", range(50)
    )
    assert len(report.games) == 100
    assert report.net_a + report.net_b == 0
    for game in report.games:
        assert game.net_a + game.net_b == 0
        assert abs(game.net_a) <= 14


def test_self_match_cancels_exactly():
    for make in (lambda: harness.RandomAgent(4), harness.AlwaysCallAgent):
        report = harness.run_match(make(), make(), "leduc", range(20))
        assert report.net_a == 0 and report.net_b == 0


def test_match_reports_are_reproducible(leduc_profile):
    def agents():
        return harness.CfrAgent(leduc_profile, seed=2), harness.RandomAgent(6)

    a1, b1 = agents()
    a2, b2 = agents()
    r1 = harness.run_match(a1, b1, "leduc", range(40))
    r2 = harness.run_match(a2, b2, "leduc", range(40))
    assert r1.to_json() == r2.to_json()


def test_transcripts_replay_to_recorded_payoffs():
    report = harness.run_match(
        harness.RandomAgent(1), harness.RandomAgent(2), "kuhn", range(30)
    )
    for game in report.games:
        fresh = eng.new_game("kuhn", game.seed)
        state = eng.replay("kuhn", fresh.hands[0], fresh.hands[1], fresh.board,
                           game.history)
        assert state.terminal
        p0, p1 = eng.payoffs(state)
        if game.sb_agent == "a":
            assert (p0, p1) == (game.net_a, game.net_b)
        else:
            assert (p0, p1) == (game.net_b, game.net_a)


def test_report_json_round_trip():
    report = harness.run_match(
        harness.RandomAgent(1), harness.AlwaysCallAgent(), "leduc", range(10)
    )
    back = harness.MatchReport.from_json(report.to_json())
    assert back.to_json() == report.to_json()


def test_bootstrap_stderr_scales_with_noise():
    tight = harness.bootstrap_stderr([1] * 100, 500, 1)
    loose = harness.bootstrap_stderr([20, -20] * 50, 500, 1)
    assert tight == 0.0
    assert loose > 10


def test_make_agent_specs(tmp_path, kuhn_profile):
    assert isinstance(harness.make_agent("always_call"), harness.AlwaysCallAgent)
    assert isinstance(harness.make_agent("random:9"), harness.RandomAgent)
    path = str(tmp_path / "kuhn.profile.json.gz")
    cfr.save_profile(kuhn_profile, path)
    agent = harness.make_agent(f"cfr:{path}")
    assert isinstance(agent, harness.CfrAgent)
    with pytest.raises(ValueError):
        harness.make_agent("psychic")


BRIDGE_SCRIPT = textwrap.dedent("""\
    import json, sys
    for line in sys.stdin:
        obs = json.loads(line)
        mode = sys.argv[1]
        if mode == "call":
            for pick in ("call", "check"):
                if pick in obs["legal_actions"]:
                    break
            else:
                pick = obs["legal_actions"][0]
        elif mode == "illegal":
            pick = "jump"
        else:
            raise SystemExit(1)
        sys.stdout.write(json.dumps({"action": pick}) + "\\n")
        sys.stdout.flush()
""")


@pytest.fixture()
def bridge_script(tmp_path):
    path = tmp_path / "bridge.py"
    path.write_text(BRIDGE_SCRIPT)
    return str(path)


def test_external_bridge_matches_builtin_always_call(bridge_script):
    external = harness.ExternalAgent("cmd", f"{sys.executable} {bridge_script} call")
    try:
        ext_report = harness.run_match(
            external, harness.RandomAgent(3), "leduc", range(15)
        )
    finally:
        external.close()
    builtin_report = harness.run_match(
        harness.AlwaysCallAgent(), harness.RandomAgent(3), "leduc", range(15)
    )
    assert [g.net_a for g in ext_report.games] == [g.net_a for g in builtin_report.games]
    assert [g.history for g in ext_report.games] == [g.history for g in builtin_report.games]
    assert ext_report.illegal_counts() == (0, 0)


def test_external_illegal_actions_become_folds(bridge_script):
    external = harness.ExternalAgent("cmd", f"{sys.executable} {bridge_script} illegal")
    try:
        report = harness.run_match(
            external, harness.AlwaysCallAgent(), "leduc", range(5)
        )
    finally:
        external.close()
    illegal_a, illegal_b = report.illegal_counts()
    assert illegal_a > 0 and illegal_b == 0
    assert report.net_a < 0  # folding every hand bleeds blinds


def test_external_crash_becomes_fold(bridge_script):
    external = harness.ExternalAgent(
        "cmd", f"{sys.executable} {bridge_script} crash", timeout=1.0
    )
    try:
        report = harness.run_match(
            external, harness.AlwaysCallAgent(), "leduc", [0, 1]
        )
    finally:
        external.close()
    assert report.illegal_counts()[0] > 0
    assert report.net_a + report.net_b == 0


def test_render_observation_matches_prompt_shape():
    state = eng.new_game("limit", 11)
    state = eng.apply_action(state, "raise")
    obs = eng.observe(state)
    text = harness.render_observation(obs)
    assert "Current pot: 6 chips" in text
    assert "Big Blind" in text
    assert "pre-flop" in text
    for action in obs.legal_actions:
        assert action in text
    assert harness.render_observation(obs) == text  # stable output


def test_render_lists_exact_engine_actions():
    state = eng.new_game("leduc", 5)
    state = eng.apply_action(state, "call")
    state = eng.apply_action(state, "check")
    obs = eng.observe(state)
    block = harness.render_observation(obs).split("Your admissible actions:")[1]
    listed = [ln for ln in block.split("Now it is your turn")[0].splitlines() if ln.strip()]
    assert tuple(listed) == obs.legal_actions


def test_render_custom_template():
    obs = eng.observe(eng.new_game("kuhn", 2))
    out = harness.render_observation(obs, "{position_name}|{pot}|{round_name}")
    assert out == "Small Blind|2|pre-flop"
