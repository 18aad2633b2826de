#pragma once

// Conversion and tokenization latency by Python token count.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "simpy/bpe.hpp"
#include "simpy/grammar_table.hpp"

namespace simpy {

struct Timing {
    double mean_ms = 0;
    double p95_ms = 0;
};

struct LatencyBucket {
    std::size_t lo = 0;
    /// Exclusive; SIZE_MAX for the open last bucket.
    std::size_t hi = 0;
    std::size_t files = 0;
    Timing py_to_simpy;
    Timing simpy_to_py;
    /// Both directions per file.
    Timing round_trip;
    /// Tokenizing the Python text with the bucketing vocab.
    Timing tokenize;

    std::string label() const;
    /// round_trip mean / tokenize mean; 0 when either was not measured.
    double convert_to_tokenize_ratio() const;
};

struct LatencyReport {
    std::string vocab_name;
    int repetitions = 0;
    std::string machine;
    /// [0,100), [100,500), [500,2000), [2000,5000), [5000,inf).
    std::vector<LatencyBucket> buckets;
    std::vector<std::string> failed_files;
};

using SourceFiles = std::vector<std::pair<std::string, std::string>>;

/// Loads every Python file under `corpus` (lexicographic order) into memory.
SourceFiles load_sources(const std::string& corpus);

/// Per file: one discarded warm-up, then the median of `repetitions` timed
/// runs on the steady clock. Buckets report mean and p95 of those medians.
/// Files that fail to convert are listed and left out. Throws Error when
/// repetitions < 3.
LatencyReport bench_convert(const SourceFiles& files, const BpeVocab& vocab,
                            const GrammarTable& table = default_table(), int repetitions = 5);
/// Same protocol, timing only tokenize(vocab, python).
LatencyReport bench_tokenize(const SourceFiles& files, const BpeVocab& vocab, int repetitions = 5);
/// bench_convert with the tokenize timings of bench_tokenize filled in.
LatencyReport bench_all(const SourceFiles& files, const BpeVocab& vocab, const GrammarTable& table = default_table(),
                        int repetitions = 5);

/// Index of the bucket for a Python token count.
std::size_t bucket_index(std::size_t python_tokens);

std::string machine_description();

void write_latency_csv(std::ostream& out, const LatencyReport& report);
void write_latency_json(std::ostream& out, const LatencyReport& report);
/// Human-readable table.
void write_latency_table(std::ostream& out, const LatencyReport& report);

} // namespace simpy
