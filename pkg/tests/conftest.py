import pytest

from helpers import example_db, example_table


@pytest.fixture(scope="session")
def ex_db():
    return example_db()


@pytest.fixture(scope="session")
def ex_table():
    return example_table()
