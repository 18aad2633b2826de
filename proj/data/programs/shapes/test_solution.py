from solution import *


def test_rect():
    assert Rectangle.square(3).describe() == "Rectangle with 4 sides and area 9.0"

def test_circle():
    assert Circle.unit().describe() == "Circle with 0 sides and area 3.1"

def test_abstract():
    try:
        Shape().area()
    except NotImplementedError:
        pass
    else:
        assert False
