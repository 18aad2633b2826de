#include "simpy/converter.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "lex_util.hpp"
#include "parallel.hpp"
#include "simpy/python.hpp"
#include "simpy/simpy.hpp"

namespace simpy {

std::string py_to_simpy(std::string_view source, const GrammarTable& table) {
    return emit_simpy(parse_python(source), table);
}

std::string simpy_to_py(std::string_view source, const GrammarTable& table) {
    return emit_python(parse_simpy(source, table));
}

std::string_view stage_name(RoundTripStage stage) {
    switch (stage) {
    case RoundTripStage::Ok: return "ok";
    case RoundTripStage::ParsePython: return "parse_python";
    case RoundTripStage::EmitSimpy: return "emit_simpy";
    case RoundTripStage::ParseSimpy: return "parse_simpy";
    case RoundTripStage::EmitPython: return "emit_python";
    case RoundTripStage::Reparse: return "reparse_python";
    }
    return "?";
}

namespace {

// Byte length of a UTF-8 encoded whitespace character at `i`, or 0.
std::size_t whitespace_len(std::string_view s, std::size_t i) {
    auto u = [&](std::size_t k) { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u; };
    unsigned c = u(0);
    if (c == ' ' || (c >= '\t' && c <= '\r') || c == 0x1c || c == 0x1d || c == 0x1e || c == 0x1f) return 1;
    if (c == 0xC2 && (u(1) == 0x85 || u(1) == 0xA0)) return 2;
    if (c == 0xE1 && u(1) == 0x9A && u(2) == 0x80) return 3;  // U+1680
    if (c == 0xE2 && u(1) == 0x80 && (u(2) <= 0x8A || u(2) == 0xA8 || u(2) == 0xA9 || u(2) == 0xAF)) return 3;
    if (c == 0xE2 && u(1) == 0x81 && u(2) == 0x9F) return 3;  // U+205F
    if (c == 0xE3 && u(1) == 0x80 && u(2) == 0x80) return 3;  // U+3000
    return 0;
}

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

} // namespace

std::string strip_whitespace(std::string_view src) {
    std::string out;
    out.reserve(src.size());
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::size_t n = whitespace_len(src, i)) {
            i += n;
            continue;
        }
        if (c == '#') {
            // Comment: copy up to the line end, dropping whitespace.
            while (i < src.size() && src[i] != '\n' && src[i] != '\r') {
                if (std::size_t n = whitespace_len(src, i)) {
                    i += n;
                } else {
                    out += src[i++];
                }
            }
            continue;
        }
        if (c == '"' || c == '\'') {
            std::size_t end = src.size();
            try {
                end = lex::scan_string(src, i);
            } catch (const LexError&) {
            }
            out.append(src.substr(i, end - i));
            i = end;
            continue;
        }
        out += c;
        ++i;
    }
    return out;
}

RoundTripReport roundtrip_check(std::string_view source, const GrammarTable& table, std::string file_id) {
    RoundTripReport r;
    r.file_id = std::move(file_id);
    RoundTripStage stage = RoundTripStage::ParsePython;
    try {
        r.python_token_count = python_token_count(source);
        auto t0 = Clock::now();
        Ast original = parse_python(source);
        stage = RoundTripStage::EmitSimpy;
        std::string simpy = emit_simpy(original, table);
        r.py_to_simpy_us = micros_since(t0);
        r.simpy_token_count = simpy_token_count(simpy, table);

        stage = RoundTripStage::ParseSimpy;
        t0 = Clock::now();
        Ast back = parse_simpy(simpy, table);
        stage = RoundTripStage::EmitPython;
        std::string python = emit_python(back);
        r.simpy_to_py_us = micros_since(t0);

        stage = RoundTripStage::Reparse;
        r.ast_equal = ast_equal(original, parse_python(python));
        r.text_equal_ignoring_whitespace = strip_whitespace(source) == strip_whitespace(python);
        if (!r.ast_equal) r.error = "round-tripped tree differs from the original";
    } catch (const std::exception& e) {
        r.failed_stage = stage;
        r.error = e.what();
    }
    return r;
}

std::vector<std::string> python_files(const std::string& path) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    if (fs::is_regular_file(path)) return {path};
    if (!fs::is_directory(path)) throw Error("no such file or directory: " + path);
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".py") out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<RoundTripReport> roundtrip_files(const std::vector<std::string>& files, const GrammarTable& table,
                                             unsigned jobs) {
    std::vector<RoundTripReport> reports(files.size());
    detail::parallel_for(files.size(), jobs, [&](std::size_t i) {
        std::string source;
        try {
            source = read_file(files[i]);
        } catch (const Error& e) {
            reports[i].file_id = files[i];
            reports[i].failed_stage = RoundTripStage::ParsePython;
            reports[i].error = e.what();
            return;
        }
        reports[i] = roundtrip_check(source, table, files[i]);
    });
    return reports;
}


void write_reports_csv(std::ostream& out, const std::vector<RoundTripReport>& reports) {
    out << "file_id,stage,ast_equal,text_equal_ignoring_whitespace,python_tokens,simpy_tokens,"
           "py_to_simpy_us,simpy_to_py_us,error\n";
    for (const auto& r : reports) {
        out << detail::csv_field(r.file_id) << ',' << stage_name(r.failed_stage) << ',' << r.ast_equal << ','
            << r.text_equal_ignoring_whitespace << ',' << r.python_token_count << ',' << r.simpy_token_count << ','
            << r.py_to_simpy_us << ',' << r.simpy_to_py_us << ',' << detail::csv_field(r.error) << '\n';
    }
}

void write_reports_jsonl(std::ostream& out, const std::vector<RoundTripReport>& reports) {
    for (const auto& r : reports) {
        nlohmann::json j = {
            {"file_id", r.file_id},
            {"stage", stage_name(r.failed_stage)},
            {"ast_equal", r.ast_equal},
            {"text_equal_ignoring_whitespace", r.text_equal_ignoring_whitespace},
            {"python_tokens", r.python_token_count},
            {"simpy_tokens", r.simpy_token_count},
            {"py_to_simpy_us", r.py_to_simpy_us},
            {"simpy_to_py_us", r.simpy_to_py_us},
            {"error", r.error},
        };
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

} // namespace simpy
