import sys
from pathlib import Path

import pytest

# Oracles live next to the tests, not in the package.
sys.path.insert(0, str(Path(__file__).parent))

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture(scope="session")
def toy_config_path() -> Path:
    return DATA_DIR / "toy.yaml"


@pytest.fixture(scope="session")
def toy_tsv_path() -> Path:
    return DATA_DIR / "toy.tsv"


@pytest.fixture(scope="session")
def toy_profiler(toy_config_path):
    """The bundled toy experiment, trained once per session."""
    from ats.config import load_experiment
    from ats.profiler import train

    return train(load_experiment(toy_config_path))
