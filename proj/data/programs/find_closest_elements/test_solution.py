from solution import *


def test_closest():
    assert find_closest_elements([1.0, 2.0, 3.0, 4.0, 5.0, 2.2]) == (2.0, 2.2)

def test_equal():
    assert find_closest_elements([1.0, 2.0, 2.0]) == (2.0, 2.0)
