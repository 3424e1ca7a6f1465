import os

import pytest

from micromizar.requirements import enable_groups, load_requirements

CORPUS = os.path.join(os.path.dirname(__file__), "corpus")

ALL_GROUPS = ["BOOLE", "SUBSET", "NUMERALS", "REAL", "ARITHM"]


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def req_file():
    return load_requirements(os.path.join(CORPUS, "requirements.txt"))


@pytest.fixture(scope="session")
def req_all(req_file):
    table, note = enable_groups(req_file, ALL_GROUPS)
    assert note is None
    return table
