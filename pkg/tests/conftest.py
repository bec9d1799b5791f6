import random

import pytest

from crowder.fixtures import demo_records, demo_truth
from crowder.similarity import CandidatePair, PruneConfig, generate_candidates, make_pair

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _acceptance_results.append((name, report.outcome))
    elif report.when == "setup" and report.skipped:
        _acceptance_results.append((name, "skipped"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"  {name}: {outcome.upper()}")


@pytest.fixture(scope="session")
def demo():
    return demo_records()


@pytest.fixture(scope="session")
def demo_pairs(demo):
    return generate_candidates(demo, PruneConfig(0.3))


@pytest.fixture(scope="session")
def truth():
    return demo_truth()


def random_sparse_pairs(
    n_vertices: int, n_edges: int, seed: int
) -> list[CandidatePair]:
    """A uniform random simple graph as a candidate pair list."""
    rng = random.Random(seed)
    edges: set[tuple[str, str]] = set()
    max_edges = n_vertices * (n_vertices - 1) // 2
    n_edges = min(n_edges, max_edges)
    while len(edges) < n_edges:
        i, j = rng.sample(range(n_vertices), 2)
        a, b = f"v{min(i, j):04d}", f"v{max(i, j):04d}"
        edges.add((a, b))
    return [make_pair(a, b, 1.0) for a, b in sorted(edges)]
