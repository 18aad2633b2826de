from solution import *


def test_empty():
    assert sum_product([]) == (0, 1)

def test_values():
    assert sum_product([1, 2, 3, 4]) == (10, 24)
