import random
from pathlib import Path

import pytest

from hypersect import GF, QQ, PointConfig, ProjPoint, general_position
from hypersect.linalg import Matrix, mat_rank

DATA = Path(__file__).resolve().parent.parent / "data"

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def random_gp_config(n, q, rng, field=QQ, bound=5):
    """q random points of P^n in general position."""
    while True:
        pts = []
        for _ in range(q):
            while True:
                v = [rng.randint(-bound, bound) for _ in range(n + 1)]
                if any(v):
                    break
            pts.append(ProjPoint([field.convert(c) for c in v], field))
        if len(set(pts)) < q:
            continue
        cfg = PointConfig(pts, n, field)
        if general_position(cfg):
            return cfg


def random_invertible(n1, rng, field=QQ, bound=3):
    while True:
        rows = [[field.convert(rng.randint(-bound, bound)) for _ in range(n1)] for _ in range(n1)]
        m = Matrix(rows, field, n1)
        if mat_rank(m) == n1:
            return m


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def quadric_file():
    return DATA / "quadric_p3.json"


@pytest.fixture
def points_file():
    return DATA / "two_points_on_quadric.json"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["DATA", "GF", "random_gp_config", "random_invertible"]
