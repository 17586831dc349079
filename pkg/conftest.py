"""Shared fixtures: the rank-6 worked example, its cached pipeline run, seeded randomness."""

import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings as hypothesis_settings

# run the suite from a plain checkout
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

from coxcent.config import RunConfig, get_settings  # noqa: E402
from coxcent.coxeter.graph import CoxeterGraph, Problem, parse_document  # noqa: E402
from coxcent.services.analysis import PipelineResult, run_pipeline  # noqa: E402

hypothesis_settings.register_profile(
    "coxcent", derandomize=True, max_examples=200, deadline=None
)
hypothesis_settings.load_profile("coxcent")

SAMPLES = Path(__file__).parent / "samples"

# Tuples of the worked example, labelled v1..v10 (0-based generators).
WORKED_VERTICES = {
    1: (0, 2, 3),
    2: (0, 3, 4),
    3: (0, 4, 5),
    4: (1, 4, 5),
    5: (1, 3, 4),
    6: (1, 4, 3),
    7: (1, 5, 4),
    8: (0, 5, 4),
    9: (0, 4, 3),
    10: (0, 3, 2),
}
WORKED_LABELS = {v: label for label, v in WORKED_VERTICES.items()}

# e1 = v4 <- v3, e2 = v6 <- v5, e3 = v8 <- v7
E1, E2, E3 = "s1,s5,s6>s2", "s2,s4,s5>s3", "s2,s6,s5>s1"


@pytest.fixture(scope="session")
def worked_problem() -> Problem:
    return parse_document((SAMPLES / "rank6_example.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def worked_graph(worked_problem: Problem) -> CoxeterGraph:
    return worked_problem.graph


@pytest.fixture(scope="session")
def worked_config() -> RunConfig:
    return RunConfig(bound_L=2, tree_avoid=[E1, E2, E3])


@pytest.fixture(scope="session")
def worked(worked_problem: Problem, worked_config: RunConfig) -> PipelineResult:
    return run_pipeline(worked_problem, worked_config)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(get_settings().SEED)


def load_sample(name: str) -> Problem:
    return parse_document((SAMPLES / name).read_text(encoding="utf-8"))
