import json
import shutil
import socket
import subprocess
import time
import urllib.request
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
POKERLAB = shutil.which("pokerlab")

pytestmark = pytest.mark.skipif(POKERLAB is None, reason="pokerlab CLI not installed")


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="session")
def profiles_dir(tmp_path_factory):
    if POKERLAB is None:
        pytest.skip("pokerlab CLI not installed")
    directory = tmp_path_factory.mktemp("profiles")
    # same training recipe the golden fixture was captured against
    subprocess.run(
        [POKERLAB, "train", "--variant", "kuhn", "--algo", "cfr+",
         "--iters", "2000", "--seed", "1",
         "--out", str(directory / "kuhn.profile.json.gz")],
        check=True, capture_output=True,
    )
    return directory


@pytest.fixture(scope="session")
def server_url(profiles_dir):
    port = free_port()
    proc = subprocess.Popen(
        [POKERLAB, "serve", "--bind", f"127.0.0.1:{port}",
         "--profiles-dir", str(profiles_dir)],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
    )
    url = f"http://127.0.0.1:{port}"
    try:
        deadline = time.monotonic() + 15
        while time.monotonic() < deadline:
            try:
                urllib.request.urlopen(url + "/health", timeout=1)
                break
            except OSError:
                time.sleep(0.1)
        else:
            raise RuntimeError("solver service did not come up")
        yield url
    finally:
        proc.terminate()
        proc.wait(timeout=5)


@pytest.fixture(scope="session")
def golden_solve():
    with open(FIXTURES / "golden_solve.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def golden_observation():
    with open(FIXTURES / "golden_observation.json", encoding="utf-8") as fh:
        return json.load(fh)
