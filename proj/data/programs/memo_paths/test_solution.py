from solution import *


def test_grid():
    assert grid_paths(3, 3) == 6
    assert grid_paths(10, 10) == 48620

def test_climb():
    assert climb(5) == 8
    assert climb(4, steps=(1, 3)) == 3
