from solution import *


def test_eval():
    assert evaluate("3 4 + 2 *") == 14

def test_underflow():
    try:
        evaluate("+")
    except StackError as e:
        assert "empty" in str(e)
    else:
        assert False

def test_leftover():
    try:
        evaluate("1 2")
    except StackError as e:
        assert "malformed" in str(e)
    else:
        assert False
