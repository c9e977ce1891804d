import pytest

from tlh.recursion import MemoTable


@pytest.fixture(scope="session")
def shared_memo():
    """One memo table for the whole run; entries are pure values."""
    return MemoTable()


@pytest.fixture(scope="session")
def shared_q1_memo():
    return {}
