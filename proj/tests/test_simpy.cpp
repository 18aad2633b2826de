#include <doctest.h>

#include <string>

#include "simpy/python.hpp"
#include "simpy/simpy.hpp"

using namespace simpy;

TEST_CASE("simpy lexer splits placeholders by longest match") {
    auto toks = lex_simpy("x<ge>=1");
    REQUIRE(toks.size() >= 4);
    CHECK(toks[0].kind == SimpyTokenKind::Identifier);
    CHECK(toks[1].kind == SimpyTokenKind::Placeholder);
    CHECK(toks[1].text == "<ge>");
    CHECK(simpy_token_count("x=1<line_sep>y=2") == 7);
    CHECK(simpy_token_count("") == 0);
}

TEST_CASE("simpy parser handles statements and blocks") {
    CHECK(ast_equal(parse_simpy("x=1<line_sep>y=2"), parse_python("x = 1\ny = 2\n")));
    CHECK(ast_equal(parse_simpy("<def_stmt>f a<block_start><return_stmt>a<block_end>"),
                    parse_python("def f(a):\n    return a\n")));
    CHECK(ast_equal(parse_simpy(""), parse_python("")));
}

TEST_CASE("simpy parser rejects unbalanced blocks") {
    CHECK_THROWS_AS(parse_simpy("x=1<block_end>"), ParseError);
    CHECK_THROWS_AS(parse_simpy("<block_start>"), ParseError);
}

TEST_CASE("end of input closes open blocks") {
    CHECK(ast_equal(parse_simpy("<if_stmt>a<block_start><pass_stmt>"), parse_python("if a:\n    pass\n")));
}

TEST_CASE("emit_simpy output is one line without indentation") {
    Ast ast = parse_python("if a:\n    for x in y:\n        pass\nelse:\n    z = 1\n");
    std::string s = emit_simpy(ast);
    CHECK(s.find('\n') == std::string::npos);
    CHECK(s.find("<block_start>") != std::string::npos);
    CHECK(s.find("<block_end>") != std::string::npos);
    CHECK(ast_equal(parse_simpy(s), ast));
}

TEST_CASE("line_sep appears only before expression-led statements") {
    std::string s = emit_simpy(parse_python("x = 1\nreturn_value = 2\n"));
    CHECK(s == "x=1<line_sep>return_value=2");
    std::string t = emit_simpy(parse_python("pass\nreturn\n"));
    CHECK(t.find("<line_sep>") == std::string::npos);
}

TEST_CASE("merged placeholders expand to the same tree") {
    const char* src = "if not a is not None:\n    return None\nwhile not (x not in y):\n    yield from z\n";
    Ast ast = parse_python(src);
    std::string s = emit_simpy(ast);
    CHECK(s.find("<if_not>") != std::string::npos);
    CHECK(s.find("<is_not_none>") != std::string::npos);
    CHECK(s.find("<return_none>") != std::string::npos);
    CHECK(s.find("<yield_from>") != std::string::npos);
    CHECK(ast_equal(parse_simpy(s), ast));
}

TEST_CASE("parse stats report bounded lookahead and no backtracking") {
    SimpyParseStats stats;
    parse_simpy(emit_simpy(parse_python("a = [x for x in y if x]\nb = a[1:2]\nc = lambda q: q\n")), default_table(),
                &stats);
    CHECK(stats.max_lookahead <= 2);
    CHECK(stats.backtracks == 0);
}

TEST_CASE("comments survive the simpy form") {
    Ast ast = parse_python("# note <ge> here\nx = 1\n");
    std::string s = emit_simpy(ast);
    CHECK(s.find("<comment>") != std::string::npos);
    CHECK(ast_equal(parse_simpy(s), ast));
}

TEST_CASE("identifiers spelled like placeholders stay distinct") {
    Ast ast = parse_python("a < ge > b\n");
    CHECK(ast_equal(parse_simpy(emit_simpy(ast)), ast));
}
