from solution import *


def test_mixed_case():
    assert count_distinct_characters("xyzXYZ") == 3

def test_jerry():
    assert count_distinct_characters("Jerry") == 4
