from solution import *


def test_close():
    assert has_close_elements([1.0, 2.0, 3.9, 4.0], 0.3)

def test_far():
    assert not has_close_elements([1.0, 2.0, 3.0], 0.5)

def test_empty():
    assert not has_close_elements([], 1.0)
