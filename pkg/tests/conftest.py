import os
import sys
from pathlib import Path

import pytest

from hboot.reporting import fixture_path, load_dataset

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def hcr():
    return load_dataset(fixture_path("hcr"), "h_values", fixture_path("norms"))


@pytest.fixture(scope="session")
def profiles_ds():
    return load_dataset(fixture_path("profiles"), "citation_profiles", fixture_path("profile_norms"))


def run_cli(args, env=None, cwd=None):
    """Run ``python -m hboot.cli`` in a subprocess; returns the CompletedProcess."""
    import subprocess
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "hboot.cli", *args], capture_output=True,
                          env=full_env, cwd=cwd)
