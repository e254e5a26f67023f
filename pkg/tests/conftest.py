import pathlib

import pytest

from sulmin import compute_minimal_model, parse

INPUTS = pathlib.Path(__file__).resolve().parent.parent / "inputs"

EXAMPLE_FILES = {
    "ex1": INPUTS / "ex1.sul",
    "ex2": INPUTS / "ex2.sul",
    "ex3": INPUTS / "ex3.sul",
    "ex4": INPUTS / "ex4.sul",
    "nested": INPUTS / "nested_pair.sul",
    "minimal": INPUTS / "minimal.sul",
    "module1": INPUTS / "module1.sul",
}


def load(name: str):
    return parse(EXAMPLE_FILES[name].read_text())


@pytest.fixture(scope="session")
def algebras():
    return {k: load(k) for k in ("ex1", "ex2", "ex3", "ex4", "nested", "minimal")}


@pytest.fixture(scope="session")
def contractions(algebras):
    return {k: compute_minimal_model(dga) for k, dga in algebras.items()}
