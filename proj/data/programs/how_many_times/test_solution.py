from solution import *


def test_overlap():
    assert how_many_times("aaaa", "aa") == 3

def test_empty():
    assert how_many_times("", "a") == 0
