from collections import defaultdict


class Inventory:
    def __init__(self):
        self.stock = defaultdict(int)

    def add(self, item, qty=1):
        self.stock[item] += qty

    def remove(self, item, qty=1):
        if self.stock[item] < qty:
            raise KeyError(item)
        self.stock[item] -= qty
        if self.stock[item] == 0:
            del self.stock[item]

    def report(self):
        return ", ".join(f"{k}={v}" for k, v in sorted(self.stock.items()) if v is not None)
