#include "simpy/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <sys/utsname.h>

#include <json.hpp>

#include "simpy/converter.hpp"

namespace simpy {

namespace {

constexpr std::size_t kBounds[] = {0, 100, 500, 2000, 5000, SIZE_MAX};
constexpr std::size_t kBuckets = 5;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

Timing summarize(std::vector<double> v) {
    Timing t;
    if (v.empty()) return t;
    double sum = 0;
    for (double x : v) sum += x;
    t.mean_ms = sum / static_cast<double>(v.size());
    std::sort(v.begin(), v.end());
    auto k = static_cast<std::size_t>(0.95 * static_cast<double>(v.size() - 1) + 0.5);
    t.p95_ms = v[k];
    return t;
}

template <class Fn>
double time_ms(Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Median of `reps` timed calls after one untimed warm-up.
template <class Fn>
double median_ms(int reps, Fn&& fn) {
    fn();
    std::vector<double> runs;
    for (int r = 0; r < reps; ++r) runs.push_back(time_ms(fn));
    return median(std::move(runs));
}

LatencyReport empty_report(const BpeVocab& vocab, int repetitions) {
    if (repetitions < 3) throw Error("repetitions must be at least 3");
    LatencyReport report;
    report.vocab_name = vocab.name;
    report.repetitions = repetitions;
    report.machine = machine_description();
    for (std::size_t b = 0; b < kBuckets; ++b) {
        LatencyBucket bucket;
        bucket.lo = kBounds[b];
        bucket.hi = kBounds[b + 1];
        report.buckets.push_back(bucket);
    }
    return report;
}

} // namespace

std::string LatencyBucket::label() const {
    return "[" + std::to_string(lo) + "," + (hi == SIZE_MAX ? std::string("inf") : std::to_string(hi)) + ")";
}

double LatencyBucket::convert_to_tokenize_ratio() const {
    if (round_trip.mean_ms <= 0 || tokenize.mean_ms <= 0) return 0;
    return round_trip.mean_ms / tokenize.mean_ms;
}

std::size_t bucket_index(std::size_t python_tokens) {
    for (std::size_t b = 0; b < kBuckets; ++b) {
        if (python_tokens < kBounds[b + 1]) return b;
    }
    return kBuckets - 1;
}

SourceFiles load_sources(const std::string& corpus) {
    SourceFiles files;
    for (const auto& f : python_files(corpus)) files.emplace_back(f, read_file(f));
    return files;
}

std::string machine_description() {
    std::ostringstream out;
    utsname u{};
    if (uname(&u) == 0) out << u.sysname << ' ' << u.release << ' ' << u.machine << ", ";
    out << std::thread::hardware_concurrency() << " threads, ";
#if defined(__clang__)
    out << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
    out << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
    out << "unknown compiler";
#endif
    return out.str();
}

LatencyReport bench_convert(const SourceFiles& files, const BpeVocab& vocab, const GrammarTable& table,
                            int repetitions) {
    LatencyReport report = empty_report(vocab, repetitions);
    std::vector<std::vector<double>> fwd(kBuckets), back(kBuckets), both(kBuckets);
    for (const auto& [id, source] : files) {
        std::string simpy;
        try {
            simpy = py_to_simpy(source, table);
            simpy_to_py(simpy, table);
        } catch (const std::exception&) {
            report.failed_files.push_back(id);
            continue;
        }
        std::size_t b = bucket_index(tokenize(vocab, source).size());
        double f = median_ms(repetitions, [&] { py_to_simpy(source, table); });
        double r = median_ms(repetitions, [&] { simpy_to_py(simpy, table); });
        fwd[b].push_back(f);
        back[b].push_back(r);
        both[b].push_back(f + r);
    }
    for (std::size_t b = 0; b < kBuckets; ++b) {
        report.buckets[b].files = fwd[b].size();
        report.buckets[b].py_to_simpy = summarize(fwd[b]);
        report.buckets[b].simpy_to_py = summarize(back[b]);
        report.buckets[b].round_trip = summarize(both[b]);
    }
    return report;
}

LatencyReport bench_tokenize(const SourceFiles& files, const BpeVocab& vocab, int repetitions) {
    LatencyReport report = empty_report(vocab, repetitions);
    std::vector<std::vector<double>> tok(kBuckets);
    for (const auto& [id, source] : files) {
        std::size_t b = bucket_index(tokenize(vocab, source).size());
        tok[b].push_back(median_ms(repetitions, [&] { tokenize(vocab, source); }));
    }
    for (std::size_t b = 0; b < kBuckets; ++b) {
        report.buckets[b].files = tok[b].size();
        report.buckets[b].tokenize = summarize(tok[b]);
    }
    return report;
}

LatencyReport bench_all(const SourceFiles& files, const BpeVocab& vocab, const GrammarTable& table, int repetitions) {
    LatencyReport report = bench_convert(files, vocab, table, repetitions);
    SourceFiles converted;
    for (const auto& f : files) {
        if (std::find(report.failed_files.begin(), report.failed_files.end(), f.first) == report.failed_files.end()) {
            converted.push_back(f);
        }
    }
    LatencyReport tok = bench_tokenize(converted, vocab, repetitions);
    for (std::size_t b = 0; b < kBuckets; ++b) report.buckets[b].tokenize = tok.buckets[b].tokenize;
    return report;
}

void write_latency_csv(std::ostream& out, const LatencyReport& report) {
    out << "# vocab=" << report.vocab_name << " repetitions=" << report.repetitions << " machine=" << report.machine
        << '\n';
    out << "bucket,files,py_to_simpy_mean_ms,py_to_simpy_p95_ms,simpy_to_py_mean_ms,simpy_to_py_p95_ms,"
           "round_trip_mean_ms,round_trip_p95_ms,tokenize_mean_ms,tokenize_p95_ms,convert_to_tokenize_ratio\n";
    for (const auto& b : report.buckets) {
        out << '"' << b.label() << "\"," << b.files << ',' << b.py_to_simpy.mean_ms << ',' << b.py_to_simpy.p95_ms << ','
            << b.simpy_to_py.mean_ms << ',' << b.simpy_to_py.p95_ms << ',' << b.round_trip.mean_ms << ','
            << b.round_trip.p95_ms << ',' << b.tokenize.mean_ms << ',' << b.tokenize.p95_ms << ','
            << b.convert_to_tokenize_ratio() << '\n';
    }
}

void write_latency_json(std::ostream& out, const LatencyReport& report) {
    using json = nlohmann::ordered_json;
    auto timing = [](const Timing& t) { return json{{"mean_ms", t.mean_ms}, {"p95_ms", t.p95_ms}}; };
    json buckets = json::array();
    for (const auto& b : report.buckets) {
        buckets.push_back({{"bucket", b.label()},
                           {"files", b.files},
                           {"py_to_simpy", timing(b.py_to_simpy)},
                           {"simpy_to_py", timing(b.simpy_to_py)},
                           {"round_trip", timing(b.round_trip)},
                           {"tokenize", timing(b.tokenize)},
                           {"convert_to_tokenize_ratio", b.convert_to_tokenize_ratio()}});
    }
    json j = {{"vocab", report.vocab_name},
              {"repetitions", report.repetitions},
              {"machine", report.machine},
              {"buckets", buckets},
              {"failed_files", report.failed_files}};
    out << j.dump(2) << '\n';
}

void write_latency_table(std::ostream& out, const LatencyReport& report) {
    out << "vocab " << report.vocab_name << ", " << report.repetitions << " repetitions, " << report.machine << '\n';
    out << std::left << std::setw(14) << "tokens" << std::right << std::setw(7) << "files" << std::setw(13)
        << "py->simpy ms" << std::setw(13) << "simpy->py ms" << std::setw(12) << "p95 sum ms" << std::setw(13)
        << "tokenize ms" << std::setw(8) << "ratio" << '\n';
    out << std::fixed << std::setprecision(3);
    for (const auto& b : report.buckets) {
        out << std::left << std::setw(14) << b.label() << std::right << std::setw(7) << b.files << std::setw(13)
            << b.py_to_simpy.mean_ms << std::setw(13) << b.simpy_to_py.mean_ms << std::setw(12) << b.round_trip.p95_ms
            << std::setw(13) << b.tokenize.mean_ms << std::setw(8) << std::setprecision(2)
            << b.convert_to_tokenize_ratio() << std::setprecision(3) << '\n';
    }
    out.unsetf(std::ios::fixed);
    if (!report.failed_files.empty()) out << report.failed_files.size() << " files failed to convert\n";
}

} // namespace simpy
