#pragma once

// Python vs SimPy token counts under a BPE vocabulary.

#include <iosfwd>
#include <string>
#include <vector>

#include "simpy/bpe.hpp"
#include "simpy/grammar_table.hpp"

namespace simpy {

struct ReductionRow {
    std::string file_id;
    std::size_t python_tokens = 0;
    std::size_t simpy_tokens = 0;
    double reduction_percent = 0;
};

struct ReductionFailure {
    std::string file_id;
    std::string error;
};

struct ReductionReport {
    std::string vocab_name;
    /// Sums over the files that converted.
    std::size_t python_tokens = 0;
    std::size_t simpy_tokens = 0;
    /// 100 * (1 - simpy / python) on the sums.
    double reduction_percent = 0;
    std::vector<ReductionRow> rows;
    std::vector<ReductionFailure> failures;
};

double reduction_percent(std::size_t python_tokens, std::size_t simpy_tokens);

/// Python text is tokenized with `vocab`, its SimPy form with `vocab`
/// extended by the table's placeholders. Files that do not convert are
/// listed in `failures` and left out of the sums.
ReductionReport compare_sources(const std::vector<std::pair<std::string, std::string>>& id_and_source,
                                const BpeVocab& vocab, const GrammarTable& table = default_table(),
                                unsigned jobs = 1);

/// compare_sources over python_files(corpus).
ReductionReport compare_corpus(const std::string& corpus, const BpeVocab& vocab,
                               const GrammarTable& table = default_table(), unsigned jobs = 1);

void write_reduction_csv(std::ostream& out, const std::vector<ReductionReport>& reports);
void write_reduction_jsonl(std::ostream& out, const std::vector<ReductionReport>& reports);
/// One line per vocabulary: name, Python tokens, SimPy tokens, reduction.
void write_reduction_table(std::ostream& out, const std::vector<ReductionReport>& reports);

} // namespace simpy
