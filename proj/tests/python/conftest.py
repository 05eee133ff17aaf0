import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("HEINZCERT_CLI", str(ROOT / "build" / "heinzcert"))
    if not os.path.exists(path):
        pytest.skip("heinzcert CLI not built")
    return path


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("HEINZCERT_SCHEMA", str(ROOT / "schema" / "report.schema.json"))
    with open(path) as f:
        return json.load(f)
