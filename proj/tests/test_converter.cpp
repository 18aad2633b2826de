#include <algorithm>
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "simpy/converter.hpp"
#include "simpy/fuzz.hpp"
#include "simpy/python.hpp"
#include "simpy/simpy.hpp"
#include "test_support.hpp"

using namespace simpy;

TEST_CASE("conversion examples") {
    CHECK(py_to_simpy("") == "");
    CHECK(py_to_simpy("x = 1\ny = 2\n") == "x=1<line_sep>y=2");
    CHECK(py_to_simpy("def f(a):\n    return a\n") == "<def_stmt>f a<block_start><return_stmt>a<block_end>");
    CHECK(simpy_to_py("<def_stmt>f a<block_start><return_stmt>a<block_end>") == "def f(a):\n    return a\n");
    CHECK(simpy_to_py(py_to_simpy("s = 'a' \"b\"\n")) == "s = 'a' \"b\"\n");
}

TEST_CASE("roundtrip_check reports the failing stage") {
    auto ok = roundtrip_check("if x >= 1:\n    y = True\n");
    CHECK(ok.ok());
    CHECK(ok.text_equal_ignoring_whitespace);
    CHECK(ok.simpy_token_count < ok.python_token_count);

    auto bad = roundtrip_check("def (:\n");
    CHECK_FALSE(bad.ok());
    CHECK(bad.failed_stage == RoundTripStage::ParsePython);
    CHECK_FALSE(bad.error.empty());
}

TEST_CASE("strip_whitespace keeps string contents") {
    CHECK(strip_whitespace("x = 'a b'\n\ty =  2\n") == "x='a b'y=2");
    CHECK(strip_whitespace("a\xc2\xa0=\xe2\x80\x83" "1") == "a=1");
}

TEST_CASE("golden modules are text-equal after the round trip") {
    auto files = python_files(test_support::source_path("data/corpus/golden"));
    REQUIRE(files.size() >= 10);
    for (const auto& r : roundtrip_files(files)) {
        CAPTURE(r.file_id);
        CHECK(r.ok());
        CHECK(r.text_equal_ignoring_whitespace);
    }
}

TEST_CASE("reports serialize one row per file") {
    auto reports = roundtrip_files({test_support::source_path("data/corpus/golden/lru.py"), "/nonexistent.py"});
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].ok());
    CHECK(reports[1].failed_stage == RoundTripStage::ParsePython);
    std::ostringstream csv, jsonl;
    write_reports_csv(csv, reports);
    write_reports_jsonl(jsonl, reports);
    auto rows = csv.str();
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
    auto js = jsonl.str();
    CHECK(std::count(js.begin(), js.end(), '\n') == 2);
}

TEST_CASE("fuzz self-tests") {
    SUBCASE("empty modules pass trivially") {
        FuzzOptions opt;
        opt.empty_modules = true;
        auto s = fuzz_roundtrip(7, 50, default_table(), opt);
        CHECK(s.cases == 50);
        CHECK(s.passed == 50);
    }
    SUBCASE("small run passes with bounded lookahead") {
        auto s = fuzz_roundtrip(42, 300);
        CHECK(s.failed == 0);
        CHECK(s.max_lookahead <= 2);
        CHECK(s.backtracking_parses == 0);
        CHECK(s.alternate_parses == 0);
        CHECK(s.token_property_failures == 0);
    }
    SUBCASE("cases replay deterministically") {
        CHECK(ast_equal(generate_case(42, 17), generate_case(42, 17)));
        CHECK(check_case(generate_case(42, 17)).failed_property.empty());
    }
    SUBCASE("a corrupted table is caught") {
        std::istringstream in(default_table_text());
        std::string line, text;
        while (std::getline(in, line))
            if (line.find("<block_end>") == std::string::npos) text += line + "\n";
        GrammarTable broken = GrammarTable::parse(text);
        auto s = fuzz_roundtrip(42, 200, broken);
        CHECK(s.failed > 0);
        REQUIRE_FALSE(s.counterexamples.empty());
        CHECK(s.counterexamples[0].shrunk_nodes <= s.counterexamples[0].original_nodes);
    }
}
