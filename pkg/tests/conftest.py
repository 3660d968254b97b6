import os

import pytest

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture(scope="session")
def iris_path() -> str:
    return data_path("iris.csv")


@pytest.fixture(scope="session")
def wine_path() -> str:
    return data_path("wine.csv")
