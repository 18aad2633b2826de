from solution import *


def test_never():
    assert below_zero([1, 2, -3]) is False

def test_dips():
    assert below_zero([1, -2, 5]) is True

def test_empty():
    assert below_zero([]) is False
