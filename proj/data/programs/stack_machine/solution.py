class StackError(Exception):
    pass


class Stack:
    def __init__(self):
        self._items = []

    def push(self, item):
        self._items.append(item)
        return self

    def pop(self):
        if not self._items:
            raise StackError("pop from empty stack")
        return self._items.pop()

    def __len__(self):
        return len(self._items)


def evaluate(tokens):
    stack = Stack()
    ops = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}
    for tok in tokens.split():
        if tok in ops:
            b, a = stack.pop(), stack.pop()
            stack.push(ops[tok](a, b))
        else:
            stack.push(int(tok))
    if len(stack) != 1:
        raise StackError(f"malformed expression: {tokens!r}")
    return stack.pop()
