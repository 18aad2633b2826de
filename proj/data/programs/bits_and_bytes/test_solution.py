from solution import *


def test_checksum():
    assert checksum(b"") == 0
    assert checksum(b"ab") == (97 << 1 ^ 98) & 0xFFFF

def test_popcount():
    assert popcount(255) == 8

def test_header():
    assert HEADER == b"\x89PNG\r\n"
