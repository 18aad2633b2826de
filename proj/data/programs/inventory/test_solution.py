from solution import *


def test_inventory():
    inv = Inventory()
    inv.add("apple", 3)
    inv.add("pear")
    inv.remove("apple", 3)
    assert inv.report() == "pear=1"
    assert "apple" not in inv.stock

def test_missing():
    inv = Inventory()
    try:
        inv.remove("kiwi")
    except KeyError:
        pass
    else:
        assert False
