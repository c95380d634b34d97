import json
import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from charmgolay.sds import load_sds68  # noqa: E402
from charmgolay.sequences import from_signs  # noqa: E402


@pytest.fixture(scope="session")
def example68():
    data = json.loads(resources.files("charmgolay.data").joinpath("example68.json").read_text())
    return {
        "A": tuple(from_signs(data["A"]).tolist()),
        "B": tuple(from_signs(data["B"]).tolist()),
        "A34": tuple(data["A_compressed"]),
        "B34": tuple(data["B_compressed"]),
    }


@pytest.fixture(scope="session")
def sds68():
    return load_sds68()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
