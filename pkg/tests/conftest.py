import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pokerlab import cfr

KUHN_CONFIG = cfr.SolveConfig(iterations=10000, algorithm="cfr+", seed=1)
LEDUC_CONFIG = cfr.SolveConfig(
    iterations=100000,
    algorithm="cfr+",
    seed=1,
    stop_exploitability=4.5e-3,
    check_every=25,
)


@pytest.fixture(scope="session")
def kuhn_trained():
    t0 = time.monotonic()
    profile = cfr.train("kuhn", KUHN_CONFIG)
    return {"profile": profile, "seconds": time.monotonic() - t0, "config": KUHN_CONFIG}


@pytest.fixture(scope="session")
def kuhn_profile(kuhn_trained):
    return kuhn_trained["profile"]


@pytest.fixture(scope="session")
def leduc_trained():
    t0 = time.monotonic()
    profile = cfr.train("leduc", LEDUC_CONFIG)
    return {"profile": profile, "seconds": time.monotonic() - t0, "config": LEDUC_CONFIG}


@pytest.fixture(scope="session")
def leduc_profile(leduc_trained):
    return leduc_trained["profile"]


@pytest.fixture(scope="session")
def limit_profile():
    return cfr.train(
        "limit", cfr.SolveConfig(iterations=20, algorithm="mccfr-ext", seed=5, buckets=8)
    )


@pytest.fixture(scope="session")
def leduc_store(leduc_profile):
    return cfr.ProfileStore([leduc_profile])


@pytest.fixture(scope="session")
def kuhn_store(kuhn_profile):
    return cfr.ProfileStore([kuhn_profile])
