from solution import *


def test_mad():
    assert abs(mean_absolute_deviation([1.0, 2.0, 3.0, 4.0]) - 1.0) < 1e-9

def test_constant():
    assert mean_absolute_deviation([5.0, 5.0]) == 0.0
