"""Command-line front end: train / equity / reward / serve / match / dataset."""

from __future__ import annotations

import json
import os
import sys

import click

from . import cfr, datasets, engine, harness, service
from .equity import equity_exact, equity_mc
from .rewards import composite_reward, parse_trace

BIND_ENV = "POKERLAB_BIND"


@click.group()
def main():
    """Poker solver toolbench: CFR training, equities, rewards, serving, matches."""


@main.command()
@click.option("--variant", type=click.Choice(engine.VARIANTS_CHOICES), required=True)
@click.option("--algo", "algorithm", type=click.Choice(list(cfr.ALGORITHMS)), default="cfr+")
@click.option("--iters", "iterations", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--averaging", type=click.Choice(list(cfr.AVERAGING)), default=None)
@click.option("--buckets", type=int, default=8, help="EHS buckets per street (mccfr-ext)")
@click.option("--stop-exploitability", type=float, default=None,
              help="stop once exploitability drops below this (tabular only)")
@click.option("--out", type=click.Path(), required=True)
def train(variant, algorithm, iterations, seed, averaging, buckets,
          stop_exploitability, out):
    """Train a strategy profile and write the checksummed container."""
    config = cfr.SolveConfig(
        iterations=iterations,
        algorithm=algorithm,
        seed=seed,
        averaging=averaging,
        buckets=buckets,
        stop_exploitability=stop_exploitability,
    )
    profile = cfr.train(variant, config)
    cfr.save_profile(profile, out)
    line = {
        "variant": variant,
        "algorithm": algorithm,
        "iterations": profile.iterations,
        "infosets": len(profile.tables),
        "out": out,
    }
    if variant in ("kuhn", "leduc"):
        line["exploitability"] = cfr.exploitability(profile)
    click.echo(json.dumps(line))


@main.command()
@click.option("--variant", type=click.Choice(engine.VARIANTS_CHOICES), required=True)
@click.option("--hole", required=True, help="comma-separated card codes, e.g. SK,CT")
@click.option("--community", default="", help="comma-separated card codes")
@click.option("--samples", type=int, default=100000, help="Monte Carlo samples (limit)")
@click.option("--seed", type=int, default=0)
def equity(variant, hole, community, samples, seed):
    """Print one EquityResult JSON object."""
    hole_cards = [c for c in hole.split(",") if c]
    community_cards = [c for c in community.split(",") if c]
    if variant == "limit":
        result = equity_mc(hole_cards, community_cards, samples=samples, seed=seed)
    else:
        result = equity_exact(variant, hole_cards, community_cards)
    click.echo(service.canonical_dumps(result.to_json()))


@main.command()
@click.option("--trace-file", type=click.Path(exists=True), required=True)
@click.option("--solver-action", required=True)
@click.option("--alpha-f", type=float, default=0.1)
@click.option("--alpha-t", type=float, default=0.1)
@click.option("--tool-log", type=click.Path(exists=True), default=None,
              help="JSON list of per-call success flags; default: all succeeded")
def reward(trace_file, solver_action, alpha_f, alpha_t, tool_log):
    """Score one tagged trace file and print the reward breakdown."""
    with open(trace_file, encoding="utf-8") as fh:
        trace = parse_trace(fh.read())
    if tool_log is not None:
        with open(tool_log, encoding="utf-8") as fh:
            log = json.load(fh)
    else:
        log = [True] * len(trace.of_kind("tool"))
    breakdown = composite_reward(trace, log, solver_action, alpha_f, alpha_t)
    click.echo(service.canonical_dumps(breakdown.to_json()))


@main.command()
@click.option("--bind", default=None, help="host:port; env POKERLAB_BIND overrides the default")
@click.option("--profiles-dir", type=click.Path(exists=True), required=True)
def serve(bind, profiles_dir):
    """Serve POST /solve and GET /health until interrupted."""
    bind = bind or os.environ.get(BIND_ENV, "127.0.0.1:8330")
    store = cfr.ProfileStore.load_dir(profiles_dir)
    if not store.variants():
        raise click.ClickException(f"no *.profile.json.gz files in {profiles_dir}")
    click.echo(json.dumps({"bind": bind, "profiles": store.variants()}), err=True)
    service.serve(bind, store)


@main.command()
@click.option("--variant", type=click.Choice(engine.VARIANTS_CHOICES), required=True)
@click.option("--agent-a", required=True)
@click.option("--agent-b", required=True)
@click.option("--seeds-file", type=click.Path(exists=True), default=None,
              help="one integer seed per line")
@click.option("--num-seeds", type=int, default=50, help="seeds 0..N-1 when no file given")
@click.option("--timeout", type=float, default=harness.DEFAULT_BRIDGE_TIMEOUT,
              help="external bridge reply timeout, seconds")
@click.option("--out", type=click.Path(), required=True)
def match(variant, agent_a, agent_b, seeds_file, num_seeds, timeout, out):
    """Run the paired-seed protocol and write the match report."""
    if seeds_file:
        with open(seeds_file, encoding="utf-8") as fh:
            seeds = [int(line) for line in fh if line.strip()]
    else:
        seeds = list(range(num_seeds))
    a = harness.make_agent(agent_a, timeout)
    b = harness.make_agent(agent_b, timeout)
    try:
        report = harness.run_match(a, b, variant, seeds)
    finally:
        a.close()
        b.close()
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(service.canonical_dumps(report.to_json()) + "\n")
    click.echo(service.canonical_dumps(report.to_json()["aggregate"]))


@main.command()
@click.option("--variant", type=click.Choice(engine.VARIANTS_CHOICES), required=True)
@click.option("--profile", "profile_path", type=click.Path(exists=True), required=True)
@click.option("--count", type=int, default=10000)
@click.option("--seed", type=int, default=0)
@click.option("--tir/--action-only", "tir", default=False)
@click.option("--out", type=click.Path(), required=True)
def dataset(variant, profile_path, count, seed, tir, out):
    """Generate an action-only or tool-augmented JSONL dataset."""
    profile = cfr.load_profile(profile_path, expect_variant=variant)
    if tir:
        store = cfr.ProfileStore([profile])
        records = datasets.collect_tir_dataset(profile, variant, count, seed, store)
    else:
        records = datasets.collect_action_dataset(profile, variant, count, seed)
    written = datasets.write_jsonl(records, out)
    click.echo(json.dumps({"records": written, "tir": tir, "out": out}))


if __name__ == "__main__":
    sys.exit(main())
