from solution import *


def test_encode():
    assert rle_encode("aaabccdddd") == "3a1b2c4d"

def test_decode():
    assert rle_decode("12x1y") == "x" * 12 + "y"
