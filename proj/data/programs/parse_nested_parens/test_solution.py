from solution import *


def test_depths():
    assert parse_nested_parens("(()()) ((())) () ((())()())") == [2, 3, 1, 3]
