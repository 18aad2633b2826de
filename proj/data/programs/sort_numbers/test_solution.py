from solution import *


def test_sort():
    assert sort_numbers("three one five") == "one three five"
