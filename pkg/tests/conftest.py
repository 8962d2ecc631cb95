"""Shared fixtures: the Hirzebruch-surface bundle example and friends."""

from pathlib import Path

import pytest

import torbun as tb

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

F1_RAYS = [(1, 0), (1, 1), (0, 1), (-1, -1)]
F1_MAX_CONES = [(0, 1), (1, 2), (2, 3), (3, 0)]


@pytest.fixture(scope="session")
def f1_fan():
    return tb.fan_from_ray_lists(2, F1_RAYS, F1_MAX_CONES)


@pytest.fixture(scope="session")
def base_algebra():
    return tb.make_free_truncated([("a1", 1), ("a2", 1)], 4)


@pytest.fixture(scope="session")
def mixing(base_algebra):
    return tb.MixingMap(
        base_algebra,
        [base_algebra.basis_element("a1"), base_algebra.basis_element("a2")],
    )


@pytest.fixture(scope="session")
def a1(base_algebra):
    return base_algebra.basis_element("a1")


@pytest.fixture(scope="session")
def a2(base_algebra):
    return base_algebra.basis_element("a2")


@pytest.fixture(scope="session")
def p1p1_fan():
    return tb.fan_from_ray_lists(
        2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (2, 1), (1, 3), (3, 0)]
    )


@pytest.fixture(scope="session")
def p1_fan():
    return tb.fan_from_ray_lists(1, [(1,), (-1,)], [(0,), (1,)])


def f1_cone(fan, indices):
    return fan.cone_by_ray_indices(indices)
