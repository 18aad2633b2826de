"""Freezes CPython's answers for the unit tests' snippet oracles.

tests/oracles/python_tokens.json: token type names per snippet (ENDMARKER
excluded), from the tokenize module.
tests/oracles/ast_pairs.json: whether ast.dump agrees for two snippets.
Pairs marked "lossless" differ only in literal spelling or comments, which
CPython drops and the toolkit's tree keeps.
"""
import ast
import io
import json
import pathlib
import tokenize

SNIPPETS = [
    "",
    "if x:\n    y\n",
    "a = (1 +\n 2)",
    "x = 1",
    "x=1\n",
    "def f(a):\n    return a\n",
    "# only a comment\n",
    "x = [1,\n     2]  # trailing\n\n\ny = 'a' 'b'\n",
    "class C(B):\n    def m(self, *a, k=1, **kw):\n        pass\n",
    "for i in range(3):\n    if i:\n        continue\n    else:\n        break\nelse:\n    pass\n",
    "s = f'{x!r:>{w}}' + rb'\\d'\n",
    "while not done: step()\n",
    "x = 1; y = 2\n",
    "def g():\n\tif a:\n\t\treturn b\n",
    "with open(p) as f, lock:\n    data = f.read()\n",
]

PAIRS = [
    ("x = 1", "x=1"),
    ("x = 1", "x = 2"),
    ("def f(a): return a", "def f(a):\n    return a"),
    ("if x>=1:\n    pass", "if x >= 1: pass"),
    ("a = (1 +\n 2)", "a = 1 + 2"),
    ("a = (b)", "a = b"),
    ("y = 'a' 'b'", "y = 'ab'", "lossless"),
    ("x = 1  # c", "x = 1", "lossless"),
    ("f(x for x in y)", "f((x for x in y))"),
    ("a = b, c", "a = (b, c)"),
    ("a = b, c", "a = [b, c]"),
    ("x = -1", "x = - 1"),
    ("not a in b", "a not in b"),
    ("print(1 if a else 2)", "print((1 if a else 2))"),
    ("x = 0x10", "x = 16", "lossless"),
    ("x = 1.0", "x = 1.", "lossless"),
]


def token_types(source):
    toks = tokenize.generate_tokens(io.StringIO(source).readline)
    return [tokenize.tok_name[t.type] for t in toks if t.type != tokenize.ENDMARKER]


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "oracles"
    out.mkdir(parents=True, exist_ok=True)
    tokens = [{"source": s, "types": token_types(s)} for s in SNIPPETS]
    (out / "python_tokens.json").write_text(json.dumps(tokens, indent=1) + "\n")
    pairs = []
    for a, b, *flag in PAIRS:
        pairs.append({"a": a, "b": b, "equal": ast.dump(ast.parse(a)) == ast.dump(ast.parse(b)),
                      "lossless": bool(flag)})
    (out / "ast_pairs.json").write_text(json.dumps(pairs, indent=1) + "\n")


if __name__ == "__main__":
    main()
