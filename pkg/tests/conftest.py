import subprocess
import sys

import pytest

from hypgap import ProblemParams, gap_interval, shoot


@pytest.fixture(scope="session")
def params31():
    return ProblemParams(3.0, 1.0)


@pytest.fixture(scope="session")
def gap31(params31):
    return gap_interval(params31)


@pytest.fixture(scope="session")
def solution31_lam7(params31):
    out = shoot(params31, 7.0)
    assert out.kind == "Solution"
    return out


def run_cli(*args, timeout=600):
    """Run the installed CLI in a subprocess, return CompletedProcess."""
    return subprocess.run(
        [sys.executable, "-m", "hypgap", *map(str, args)],
        capture_output=True,
        text=True,
        timeout=timeout,
    )


@pytest.fixture(scope="session")
def cli():
    return run_cli
