// Acceptance gate: one PASS/FAIL line per criterion, thresholds fixed here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simpy/bench.hpp"
#include "simpy/bpe.hpp"
#include "simpy/converter.hpp"
#include "simpy/fuzz.hpp"
#include "simpy/gateway.hpp"
#include "simpy/python.hpp"
#include "simpy/token_metrics.hpp"

using namespace simpy;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kFuzzSeed = 42;
constexpr std::size_t kFuzzCases = 10000;
constexpr std::size_t kMinCorpusFiles = 200;
constexpr double kRoundTripSeconds = 120;
constexpr std::size_t kMinPrograms = 30;
constexpr double kCodeReductionMin = 5.0;
constexpr double kWebReductionMin = 15.0;
constexpr double kExternalReductionLo = 20.0;
constexpr double kExternalReductionHi = 40.0;
constexpr double kSmallBucketMs = 1.0;
constexpr double kMidBucketMs = 5.0;
constexpr double kMonotoneSlack = 0.20;
constexpr double kBenchSeconds = 60;
constexpr int kBenchReps = 5;
constexpr int kMaxLookahead = 2;
constexpr std::size_t kGateMaxTokens = 500;
constexpr double kGateP95Ms = 5.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << n << " " << name << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<std::string> files_under(const std::vector<std::string>& roots) {
    std::vector<std::string> out;
    for (const auto& r : roots) {
        auto f = python_files(r);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double p95(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[std::min(v.size() - 1, static_cast<std::size_t>(0.95 * static_cast<double>(v.size())))];
}

struct Context {
    std::string root;
    std::string simpy_bin;
    std::string python;
    FuzzSummary fuzz;
    double fuzz_seconds = 0;
};

Outcome roundtrip(Context& ctx) {
    auto t0 = Clock::now();
    auto files = files_under({ctx.root + "/data/corpus", ctx.root + "/data/programs"});
    auto reports = roundtrip_files(files, default_table(), 0);
    std::size_t ok = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
    auto f0 = Clock::now();
    ctx.fuzz = fuzz_roundtrip(kFuzzSeed, kFuzzCases);
    ctx.fuzz_seconds = seconds_since(f0);
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "corpus " << ok << "/" << files.size() << " ast_equal, fuzz(seed " << kFuzzSeed << ") " << ctx.fuzz.passed
      << "/" << ctx.fuzz.cases << ", " << fmt("%.1f", secs) << " s (limit " << kRoundTripSeconds << " s)";
    for (const auto& r : reports)
        if (!r.ok()) d << "; " << r.file_id << " [" << stage_name(r.failed_stage) << "] " << r.error;
    for (const auto& c : ctx.fuzz.counterexamples) d << "; fuzz case " << c.case_index << " " << c.property;
    bool pass = files.size() >= kMinCorpusFiles && ok == files.size() && ctx.fuzz.cases == kFuzzCases &&
                ctx.fuzz.passed == kFuzzCases && secs < kRoundTripSeconds;
    return {pass, d.str()};
}

Outcome textual(const Context& ctx) {
    auto files = python_files(ctx.root + "/data/corpus/golden");
    for (const auto& f : python_files(ctx.root + "/data/programs"))
        if (f.ends_with("/solution.py")) files.push_back(f);
    auto reports = roundtrip_files(files, default_table(), 0);
    std::size_t ok = 0;
    std::ostringstream bad;
    for (const auto& r : reports) {
        if (r.ok() && r.text_equal_ignoring_whitespace)
            ++ok;
        else
            bad << "; " << r.file_id;
    }
    std::ostringstream d;
    d << ok << "/" << files.size() << " golden files whitespace-stripped equal" << bad.str();
    return {!files.empty() && ok == files.size(), d.str()};
}

Outcome behaviour(const Context& ctx) {
    auto programs = files_under({ctx.root + "/data/programs"});
    std::size_t n = std::count_if(programs.begin(), programs.end(),
                                  [](const auto& f) { return f.ends_with("/solution.py"); });
    std::string cmd = "\"" + ctx.python + "\" \"" + ctx.root + "/tools/run_behavior.py\" --simpy \"" +
                      ctx.simpy_bin + "\" \"" + ctx.root + "/data/programs\"";
    std::string out;
    int status = -1;
    if (FILE* p = popen(cmd.c_str(), "r")) {
        char buf[4096];
        while (std::fgets(buf, sizeof buf, p)) out += buf;
        status = pclose(p);
    }
    std::string last;
    std::istringstream lines(out);
    for (std::string l; std::getline(lines, l);)
        if (!l.empty()) last = l;
    std::ostringstream d;
    d << n << " programs; " << (last.empty() ? "runner produced no output" : last);
    return {status == 0 && n >= kMinPrograms, d.str()};
}

Outcome reduction(const Context& ctx) {
    std::string corpus = ctx.root + "/data/corpus";
    auto code = compare_corpus(corpus, load_vocab_dir(ctx.root + "/data/vocabs/code-cl100k"), default_table(), 0);
    auto web = compare_corpus(corpus, load_vocab_dir(ctx.root + "/data/vocabs/web-gpt2"), default_table(), 0);
    bool pass = code.failures.empty() && web.failures.empty() && code.reduction_percent >= kCodeReductionMin &&
                web.reduction_percent >= kWebReductionMin;
    std::ostringstream d;
    d << "code-cl100k " << fmt("%.1f%%", code.reduction_percent) << " (>= " << kCodeReductionMin << "), web-gpt2 "
      << fmt("%.1f%%", web.reduction_percent) << " (>= " << kWebReductionMin << ")";
    if (const char* ext = std::getenv("SIMPY_GPT2_VOCAB_DIR")) {
        auto v = load_vocab(std::string(ext) + "/vocab.json", std::string(ext) + "/merges.txt", "external");
        auto r = compare_corpus(corpus, v, default_table(), 0);
        pass = pass && r.reduction_percent >= kExternalReductionLo && r.reduction_percent <= kExternalReductionHi;
        d << ", external " << fmt("%.1f%%", r.reduction_percent) << " (in [" << kExternalReductionLo << ", "
          << kExternalReductionHi << "])";
    } else {
        d << ", external vocab not supplied (SIMPY_GPT2_VOCAB_DIR)";
    }
    return {pass, d.str()};
}

Outcome latency(const Context& ctx) {
    auto t0 = Clock::now();
    auto files = load_sources(ctx.root + "/data/corpus");
    auto programs = load_sources(ctx.root + "/data/programs");
    files.insert(files.end(), programs.begin(), programs.end());
    auto r = bench_convert(files, load_vocab_dir(ctx.root + "/data/vocabs/code-cl100k"), default_table(), kBenchReps);
    double secs = seconds_since(t0);
    const auto& b = r.buckets;
    bool pass = r.failed_files.empty() && b.size() == 5 && b[0].files > 0 && b[1].files > 0 &&
                b[0].py_to_simpy.mean_ms <= kSmallBucketMs && b[0].simpy_to_py.mean_ms <= kSmallBucketMs &&
                b[1].py_to_simpy.mean_ms <= kMidBucketMs && b[1].simpy_to_py.mean_ms <= kMidBucketMs &&
                secs < kBenchSeconds;
    std::ostringstream d;
    const LatencyBucket* prev = nullptr;
    for (const auto& x : b) {
        if (x.files == 0) continue;
        if (prev) {
            pass = pass && x.py_to_simpy.mean_ms >= prev->py_to_simpy.mean_ms * (1 - kMonotoneSlack) &&
                   x.simpy_to_py.mean_ms >= prev->simpy_to_py.mean_ms * (1 - kMonotoneSlack);
        }
        prev = &x;
        d << x.label() << " n=" << x.files << " " << fmt("%.3f", x.py_to_simpy.mean_ms) << "/"
          << fmt("%.3f", x.simpy_to_py.mean_ms) << " ms; ";
    }
    d << "limits " << kSmallBucketMs << " / " << kMidBucketMs << " ms, " << fmt("%.1f", secs) << " s";
    return {pass, d.str()};
}

Outcome determinism(const Context& ctx) {
    const auto& f = ctx.fuzz;
    std::ostringstream d;
    d << f.cases << " fuzz parses: max lookahead " << f.max_lookahead << " (<= " << kMaxLookahead << "), "
      << f.backtracking_parses << " backtracking, " << f.alternate_parses << " alternate parses";
    bool pass = f.cases == kFuzzCases && f.max_lookahead <= kMaxLookahead && f.backtracking_parses == 0 &&
                f.alternate_parses == 0;
    return {pass, d.str()};
}

// Content with the tag and body of every python/simpy fence cut out.
std::string outside_code(const std::string& content) {
    std::string out;
    std::size_t pos = 0;
    for (const auto& s : extract_code_spans(content)) {
        out += content.substr(pos, s.tag_begin - pos);
        out += content.substr(s.tag_end, s.body_begin - s.tag_end);
        pos = s.body_end;
    }
    return out + content.substr(pos);
}

Outcome gateway(const Context& ctx) {
    Gateway gw(echo_upstream());
    std::vector<double> in_ms, out_ms;
    std::size_t requests = 0, equal = 0, bytes_ok = 0;
    std::ostringstream bad;
    for (const auto& [id, src] : load_sources(ctx.root + "/data/programs")) {
        if (python_token_count(src) > kGateMaxTokens) continue;
        std::string content = "Review this code.\n\n```python\n" + src + "```\n\nThanks!  \n";
        nlohmann::json req = {{"model", "stub"}, {"messages", {{{"role", "user"}, {"content", content}}}}};
        auto reply = gw.handle_chat(req.dump());
        ++requests;
        if (reply.status != 200) {
            bad << "; " << id << " status " << reply.status;
            continue;
        }
        auto j = nlohmann::json::parse(reply.body);
        std::string got = j["choices"][0]["message"]["content"];
        in_ms.push_back(j["simpy_gateway"]["gate_in_us"].get<double>() / 1000);
        out_ms.push_back(j["simpy_gateway"]["gate_out_us"].get<double>() / 1000);
        auto spans = extract_code_spans(got);
        if (spans.size() == 1 && spans[0].language == "python" &&
            ast_equal(parse_python(spans[0].body), parse_python(src)))
            ++equal;
        else
            bad << "; " << id << " ast differs";
        if (outside_code(got) == outside_code(content))
            ++bytes_ok;
        else
            bad << "; " << id << " non-code bytes differ";
    }
    double pin = p95(in_ms), pout = p95(out_ms);
    std::ostringstream d;
    d << requests << " requests (<= " << kGateMaxTokens << " tokens): " << equal << " ast_equal, " << bytes_ok
      << " non-code identical, gate p95 in " << fmt("%.3f", pin) << " ms / out " << fmt("%.3f", pout)
      << " ms (limit " << kGateP95Ms << ")" << bad.str();
    bool pass = requests >= kMinPrograms && equal == requests && bytes_ok == requests && pin <= kGateP95Ms &&
                pout <= kGateP95Ms;
    return {pass, d.str()};
}

Outcome table_integrity(const Context& ctx) {
    std::ostringstream d;
    try {
        auto t = load_table(ctx.root + "/data/grammar_table.tsv", true);
        bool same = t.placeholders() == default_table().placeholders();
        std::size_t mandatory = 0;
        for (const auto& m : mandatory_placeholders()) mandatory += t.is_placeholder(m);
        d << t.placeholder_count() << " placeholders (need " << kDefaultPlaceholderCount << "), " << mandatory << "/"
          << mandatory_placeholders().size() << " mandatory, embedded copy "
          << (same ? "matches" : "differs");
        return {t.placeholder_count() == kDefaultPlaceholderCount && mandatory == mandatory_placeholders().size() &&
                    same,
                d.str()};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

} // namespace

int main(int argc, char** argv) {
    Context ctx;
    ctx.root = SIMPY_SOURCE_DIR;
    ctx.python = SIMPY_PYTHON;
    CLI::App app{"Acceptance checks"};
    app.add_option("--simpy", ctx.simpy_bin, "simpy executable")->required()->check(CLI::ExistingFile);
    app.add_option("--python", ctx.python, "Python 3 interpreter");
    app.add_option("--root", ctx.root, "source tree")->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    auto guarded = [&](int n, const std::string& name, Outcome (*fn)(Context&)) {
        Outcome o;
        try {
            o = fn(ctx);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(n, name, o);
    };
    guarded(1, "round-trip ast_equal", roundtrip);
    guarded(2, "textual round-trip", [](Context& c) { return textual(c); });
    guarded(3, "behaviour preserved", [](Context& c) { return behaviour(c); });
    guarded(4, "token reduction", [](Context& c) { return reduction(c); });
    guarded(5, "conversion latency", [](Context& c) { return latency(c); });
    guarded(6, "deterministic parsing", [](Context& c) { return determinism(c); });
    guarded(7, "gateway end-to-end", [](Context& c) { return gateway(c); });
    guarded(8, "table integrity", [](Context& c) { return table_integrity(c); });
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << 8 - failures << "/8" << std::endl;
    return failures ? 1 : 0;
}
