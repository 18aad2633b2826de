from solution import *


def test_xor():
    assert string_xor("010", "110") == "100"
