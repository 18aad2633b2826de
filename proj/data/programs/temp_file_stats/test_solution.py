from solution import *


def test_stats():
    assert line_stats(["ab", "", "abcd"]) == {"count": 3, "longest": 4, "empty": 1}
