"""Shared fixtures: the shipped graph files, built once per session."""

import json
from pathlib import Path

import pytest

from coxroot.document import parse_graph_file

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def load_graph(name):
    return parse_graph_file(FIXTURE_DIR / name).build()


def fixture_path(name):
    return FIXTURE_DIR / name


def fixture_json(name):
    with open(FIXTURE_DIR / name, encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture(scope="session")
def a2():
    return load_graph("a2.json")


@pytest.fixture(scope="session")
def b2():
    return load_graph("b2.json")


@pytest.fixture(scope="session")
def g2():
    return load_graph("g2.json")


@pytest.fixture(scope="session")
def asym_m3():
    return load_graph("asym_m3.json")


@pytest.fixture(scope="session")
def dihedral_pq4():
    return load_graph("dihedral_pq4.json")


@pytest.fixture(scope="session")
def example48():
    return load_graph("example48.json")


@pytest.fixture(scope="session")
def nonunital_triangle():
    return load_graph("nonunital_triangle.json")


@pytest.fixture(scope="session")
def example312():
    return load_graph("example312_reconstruction.json")
