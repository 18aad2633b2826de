from solution import *


def test_counter():
    c = make_counter(10, step=5)
    assert [c(), c(), c()] == [15, 20, 25]

def test_total():
    assert add_to_total(1, 2, scale=3) == 9
    assert add_to_total(1) == 10
