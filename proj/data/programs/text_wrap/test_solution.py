from solution import *


def test_wrap():
    assert wrap("the quick brown fox jumps", 10) == ["the quick", "brown fox", "jumps"]

def test_banner():
    assert banner("hi", 6) == "**hi**"
    assert banner("x", 3, "-") == "-x-"
