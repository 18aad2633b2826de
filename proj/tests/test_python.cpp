#include <doctest.h>

#include <string>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/python.hpp"
#include "test_support.hpp"

using namespace simpy;

namespace {

// CPython's tokenize type name for one of our tokens.
std::string cpython_type(const Token& t) {
    switch (t.kind) {
    case Tok::Name: return "NAME";
    case Tok::Number: return "NUMBER";
    case Tok::String: return "STRING";
    case Tok::Comment: return "COMMENT";
    case Tok::Newline: return "NEWLINE";
    case Tok::NL: return "NL";
    case Tok::Indent: return "INDENT";
    case Tok::Dedent: return "DEDENT";
    default: return is_keyword_role(t.kind) ? "NAME" : "OP";
    }
}

} // namespace

TEST_CASE("python lexer agrees with CPython tokenize") {
    auto cases = test_support::load_json("tests/oracles/python_tokens.json");
    REQUIRE(cases.size() > 10);
    for (const auto& c : cases) {
        std::string src = c["source"];
        CAPTURE(src);
        std::vector<std::string> got;
        for (const auto& t : lex_python(src))
            if (t.kind != Tok::End) got.push_back(cpython_type(t));
        CHECK(got == c["types"].get<std::vector<std::string>>());
        CHECK(python_token_count(src) == got.size());
    }
}

TEST_CASE("ast_equal agrees with CPython except where the tree is lossless") {
    auto pairs = test_support::load_json("tests/oracles/ast_pairs.json");
    for (const auto& p : pairs) {
        std::string a = p["a"], b = p["b"];
        CAPTURE(a);
        CAPTURE(b);
        bool ours = ast_equal(parse_python(a), parse_python(b));
        if (p["lossless"].get<bool>()) {
            CHECK(p["equal"].get<bool>());
            CHECK_FALSE(ours);
        } else {
            CHECK(ours == p["equal"].get<bool>());
        }
        CHECK((ast_dump(parse_python(a)) == ast_dump(parse_python(b))) == ours);
    }
}

TEST_CASE("emit_python is canonical") {
    CHECK(emit_python(parse_python("")) == "");
    CHECK(emit_python(parse_python("x=1")) == "x = 1\n");
    CHECK(emit_python(parse_python("def f(a):return a")) == "def f(a):\n    return a\n");
    CHECK(emit_python(parse_python("if a>=b :\n\tpass\nelse:\n  x=[1,2]")) ==
          "if a >= b:\n    pass\nelse:\n    x = [1, 2]\n");
    CHECK(emit_python(parse_python("print( a if b else c )")) == "print(a if b else c)\n");
}

TEST_CASE("emit then parse reproduces the tree") {
    const char* sources[] = {
        "import os.path as p, sys\nfrom . import a\nfrom ..x import (b as c, d)\n",
        "class A(B, metaclass=M):\n    @staticmethod\n    def f(*args, k=1, **kw) -> int:\n        yield from g()\n",
        "try:\n    x\nexcept (A, B) as e:\n    raise C from e\nelse:\n    pass\nfinally:\n    del x[1:2, ::3]\n",
        "while not done:\n    for i, j in zip(a, b):\n        continue\n    else:\n        break\n",
        "with open(f) as h, g:\n    s = f'{x!r:>{w}} {y=}' 'tail'\n",
        "d = {k: v for k, v in items if k is not None}\nlam = lambda x, /, y=2: x ** -y\n",
        "x: list[int] = [*a, *b]\ny += {**c, 'k': 1}\nassert x, 'msg'\nglobal g\n",
    };
    for (const char* s : sources) {
        CAPTURE(s);
        Ast ast = parse_python(s);
        CHECK(ast_equal(parse_python(emit_python(ast)), ast));
    }
}

TEST_CASE("comments are kept") {
    Ast ast = parse_python("# head\nx = 1  # trailing\n");
    std::string out = emit_python(ast);
    CHECK(out.find("# head") != std::string::npos);
    CHECK(out.find("# trailing") != std::string::npos);
}

TEST_CASE("malformed python fails with a located error") {
    try {
        parse_python("x = 1\ny = (2\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).size() > 0);
    }
    CHECK_THROWS_AS(parse_python("def f(a b):\n    pass\n"), ParseError);
    CHECK_THROWS_AS(lex_python("s = 'abc\n"), LexError);
    CHECK_THROWS_AS(lex_python("if x:\n        a\n    b\n"), LexError);
    try {
        parse_python("a = 1\nb = = 2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(describe_location("a = 1\nb = = 2\n", e.span.start_byte).rfind("2:", 0) == 0);
    }
}

TEST_CASE("serialize/deserialize preserves the tree") {
    Ast ast = parse_python("def f(x):\n    return x + 1  # c\n");
    Ast back = deserialize(serialize(ast));
    CHECK(ast_equal(ast, back));
    CHECK(ast_dump(ast) == ast_dump(back));
    CHECK_THROWS_AS(deserialize("{\"not\": \"a tree\"}"), Error);
}
