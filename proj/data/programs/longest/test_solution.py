from solution import *


def test_none():
    assert longest([]) is None

def test_first_of_longest():
    assert longest(["a", "bb", "cc"]) == "bb"
