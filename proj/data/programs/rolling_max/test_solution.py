from solution import *


def test_rolling():
    assert rolling_max([1, 2, 3, 2, 3, 4, 2]) == [1, 2, 3, 3, 3, 4, 4]

def test_empty():
    assert rolling_max([]) == []
