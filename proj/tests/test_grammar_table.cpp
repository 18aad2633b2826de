#include <doctest.h>

#include <algorithm>
#include <string>

#include "simpy/grammar_table.hpp"

using namespace simpy;

TEST_CASE("default table has 78 unique placeholders including the mandatory ones") {
    const auto& t = default_table();
    CHECK(t.placeholder_count() == kDefaultPlaceholderCount);
    auto ph = t.placeholders();
    auto sorted = ph;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    for (const auto& m : mandatory_placeholders()) {
        CAPTURE(m);
        CHECK(t.is_placeholder(m));
    }
    for (const auto& p : ph) {
        CAPTURE(p);
        CHECK(p.front() == '<');
        CHECK(p.back() == '>');
    }
}

TEST_CASE("lookup prefers context entries and keeps unmapped terminals") {
    const auto& t = default_table();
    REQUIRE(t.lookup("def") != nullptr);
    CHECK(t.lookup("def")->simpy_token == "<def_stmt>");
    REQUIRE(t.lookup("True") != nullptr);
    CHECK(t.lookup("True")->simpy_token == "<true>");
    CHECK(t.lookup(".") == nullptr);
    const auto* comma = t.lookup(",", "with_stmt");
    REQUIRE(comma != nullptr);
    CHECK(comma->action == TableAction::WhitespaceSeparator);
    CHECK(t.lookup(",") == nullptr);
    const auto* colon = t.lookup(":", "if_stmt");
    REQUIRE(colon != nullptr);
    CHECK(colon->action == TableAction::Drop);
}

TEST_CASE("table text round-trips through parse") {
    const auto& t = default_table();
    auto again = GrammarTable::parse(t.to_text(), true);
    CHECK(again.placeholders() == t.placeholders());
    CHECK(again.entries().size() == t.entries().size());
}

TEST_CASE("invalid tables are rejected") {
    const auto& text = default_table_text();
    SUBCASE("duplicate placeholder") {
        CHECK_THROWS_AS(GrammarTable::parse(text + "global\treplace\t@@\t<ge>\n"), TableError);
    }
    SUBCASE("unknown action") {
        CHECK_THROWS_AS(GrammarTable::parse("global\tswap\tdef\t<def_stmt>\n"), TableError);
    }
    SUBCASE("wrong column count") {
        CHECK_THROWS_AS(GrammarTable::parse("global\treplace\tdef\n"), TableError);
    }
    SUBCASE("strict roster") {
        CHECK_NOTHROW(GrammarTable::parse("global\treplace\tdef\t<def_stmt>\n"));
        CHECK_THROWS_AS(GrammarTable::parse("global\treplace\tdef\t<def_stmt>\n", true), TableError);
    }
}
