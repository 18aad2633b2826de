from solution import *


def test_flatten():
    assert list(flatten([1, [2, (3, [4])], 5])) == [1, 2, 3, 4, 5]

def test_chunks():
    assert chunks([1, 2, 3, 4, 5], 2) == [[1, 2], [3, 4], [5]]

def test_bad_size():
    try:
        chunks([1], 0)
    except AssertionError as e:
        assert str(e) == "size must be positive"
    else:
        assert False
