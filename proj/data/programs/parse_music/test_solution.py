from solution import *


def test_music():
    assert parse_music("o o| .| o| o| .| .| .| .| o o") == [4, 2, 1, 2, 2, 1, 1, 1, 1, 4, 4]

def test_empty():
    assert parse_music("") == []
