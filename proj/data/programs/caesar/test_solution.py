from solution import *


def test_encode():
    assert encode("Hello, World!") == "Khoor, Zruog!"

def test_roundtrip():
    assert decode(encode("abc xyz", 5), 5) == "abc xyz"
