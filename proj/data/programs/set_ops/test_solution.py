from solution import *


def test_sets():
    r = compare_teams("abc", "bcd")
    assert r == {"both": ["b", "c"], "only_a": ["a"], "either": ["a", "b", "c", "d"], "one": ["a", "d"]}

def test_pangram():
    assert is_pangram("The quick brown fox jumps over the lazy dog")
    assert not is_pangram("hello")
