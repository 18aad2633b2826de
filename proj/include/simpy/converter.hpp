#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "simpy/grammar_table.hpp"

namespace simpy {

/// emit_simpy(parse_python(source)).
std::string py_to_simpy(std::string_view source, const GrammarTable& table = default_table());

/// emit_python(parse_simpy(source)).
std::string simpy_to_py(std::string_view source, const GrammarTable& table = default_table());

enum class RoundTripStage : std::uint8_t { Ok, ParsePython, EmitSimpy, ParseSimpy, EmitPython, Reparse };

std::string_view stage_name(RoundTripStage stage);

struct RoundTripReport {
    std::string file_id;
    RoundTripStage failed_stage = RoundTripStage::Ok;
    std::string error;
    bool ast_equal = false;
    bool text_equal_ignoring_whitespace = false;
    std::size_t python_token_count = 0;
    std::size_t simpy_token_count = 0;
    double py_to_simpy_us = 0;
    double simpy_to_py_us = 0;

    bool ok() const { return failed_stage == RoundTripStage::Ok && ast_equal; }
};

/// Python -> SimPy -> Python. Never throws for bad input; the stage that
/// failed is recorded instead.
RoundTripReport roundtrip_check(std::string_view source, const GrammarTable& table = default_table(),
                                std::string file_id = {});

/// Source with every whitespace character outside string literals removed.
/// Unicode whitespace (UTF-8 encoded) counts too.
std::string strip_whitespace(std::string_view python_source);

/// Every `*.py` file under `path`, recursively and sorted; `path` itself if
/// it is a file.
std::vector<std::string> python_files(const std::string& path);
std::string read_file(const std::string& path);

/// roundtrip_check over files, `jobs` threads (0 = all cores). Unreadable
/// files are reported as ParsePython failures.
std::vector<RoundTripReport> roundtrip_files(const std::vector<std::string>& files,
                                             const GrammarTable& table = default_table(), unsigned jobs = 1);

void write_reports_csv(std::ostream& out, const std::vector<RoundTripReport>& reports);
void write_reports_jsonl(std::ostream& out, const std::vector<RoundTripReport>& reports);

} // namespace simpy
