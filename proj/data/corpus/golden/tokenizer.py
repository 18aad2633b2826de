import re

TOKEN_SPEC = [
    ("NUMBER", r"\d+(?:\.\d*)?"),
    ("NAME", r"[A-Za-z_]\w*"),
    ("OP", r"[+\-*/()=]"),
    ("SKIP", r"[ \t]+"),
    ("MISMATCH", r".")
]
MASTER = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


def tokenize(text):
    for match in MASTER.finditer(text):
        kind = match.lastgroup
        value = match.group()
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise SyntaxError(f"unexpected {value!r} at {match.start()}")
        yield kind, float(value) if kind == "NUMBER" and "." in value else int(value) if kind == "NUMBER" else value


class Parser:
    """Recursive descent over + - * / and parentheses."""

    def __init__(self, text):
        self.tokens = list(tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def take(self):
        kind, value = self.tokens[self.pos]
        self.pos += 1
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            value = value + self.term() if self.take() == "+" else value - self.term()
        return value

    def term(self):
        value = self.atom()
        while self.peek() in ("*", "/"):
            value = value * self.atom() if self.take() == "*" else value / self.atom()
        return value

    def atom(self):
        if self.peek() == "(":
            self.take()
            value = self.expr()
            self.take()
            return value
        if self.peek() == "-":
            self.take()
            return -self.atom()
        return self.take()


def evaluate(text):
    return Parser(text).expr()
