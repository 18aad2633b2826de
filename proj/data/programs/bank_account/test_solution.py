from solution import *


def test_flow():
    a = Account("ann")
    a.deposit(10)
    a.withdraw(3.5)
    assert a.summary == "ann: 6.50 (2 ops)"

def test_overdraw():
    a = Account("bob", 1.0)
    try:
        a.withdraw(2)
    except ValueError:
        pass
    else:
        assert False
    assert a.history == []
