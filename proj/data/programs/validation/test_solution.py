from solution import *


def test_mixed():
    assert safe_parse(["3", "x", "200", "42"]) == ([3, 42], ["not a number: x", "age out of range"])

def test_cause():
    try:
        parse_age("q")
    except ValidationError as e:
        assert isinstance(e.__cause__, ValueError)
