from solution import *


def test_top():
    assert word_frequencies("the cat and the hat and the bat") == [("the", 3), ("and", 2), ("bat", 1)]

def test_short():
    assert word_frequencies("a", top=5) == [("a", 1)]
