from solution import *


def test_empty():
    assert make_palindrome("") == ""

def test_cat():
    assert make_palindrome("cat") == "catac"

def test_cata():
    assert make_palindrome("cata") == "catac"
