from solution import *


def test_sections():
    cfg = parse_config("name = demo\n[db]\nport = 5432 # default\nratio = 0.5\ndebug = True\n")
    assert cfg == {"name": "demo", "db": {"port": 5432, "ratio": 0.5, "debug": True}}

def test_error():
    try:
        parse_config("oops")
    except SyntaxError as e:
        assert "line 1" in str(e)
    else:
        assert False
