from solution import *


def test_simple():
    assert to_roman(8) == "VIII"

def test_subtractive():
    assert to_roman(4) == "IV"

def test_large():
    assert to_roman(2023) == "MMXXIII"
