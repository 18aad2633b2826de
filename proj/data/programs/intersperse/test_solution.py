from solution import *


def test_empty():
    assert intersperse([], 4) == []

def test_three():
    assert intersperse([1, 2, 3], 4) == [1, 4, 2, 4, 3]
