#include "simpy/token_metrics.hpp"

#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "parallel.hpp"
#include "simpy/converter.hpp"

namespace simpy {

double reduction_percent(std::size_t python_tokens, std::size_t simpy_tokens) {
    if (python_tokens == 0) return 0;
    return 100.0 * (1.0 - static_cast<double>(simpy_tokens) / static_cast<double>(python_tokens));
}

ReductionReport compare_sources(const std::vector<std::pair<std::string, std::string>>& id_and_source,
                                const BpeVocab& vocab, const GrammarTable& table, unsigned jobs) {
    const BpeVocab extended = extend_vocab(vocab, table);
    struct Slot {
        ReductionRow row;
        std::string error;
        bool ok = false;
    };
    std::vector<Slot> slots(id_and_source.size());
    detail::parallel_for(id_and_source.size(), jobs, [&](std::size_t i) {
        const auto& [id, source] = id_and_source[i];
        Slot& s = slots[i];
        s.row.file_id = id;
        try {
            std::string simpy = py_to_simpy(source, table);
            s.row.python_tokens = tokenize(vocab, source).size();
            s.row.simpy_tokens = tokenize(extended, simpy).size();
            s.row.reduction_percent = reduction_percent(s.row.python_tokens, s.row.simpy_tokens);
            s.ok = true;
        } catch (const std::exception& e) {
            s.error = e.what();
        }
    });
    ReductionReport report;
    report.vocab_name = vocab.name;
    for (auto& s : slots) {
        if (!s.ok) {
            report.failures.push_back({s.row.file_id, s.error});
            continue;
        }
        report.python_tokens += s.row.python_tokens;
        report.simpy_tokens += s.row.simpy_tokens;
        report.rows.push_back(std::move(s.row));
    }
    report.reduction_percent = reduction_percent(report.python_tokens, report.simpy_tokens);
    return report;
}

ReductionReport compare_corpus(const std::string& corpus, const BpeVocab& vocab, const GrammarTable& table,
                               unsigned jobs) {
    std::vector<std::pair<std::string, std::string>> sources;
    for (const auto& f : python_files(corpus)) sources.emplace_back(f, read_file(f));
    return compare_sources(sources, vocab, table, jobs);
}

void write_reduction_csv(std::ostream& out, const std::vector<ReductionReport>& reports) {
    out << "vocab,file_id,python_tokens,simpy_tokens,reduction_percent,error\n";
    for (const auto& r : reports) {
        for (const auto& row : r.rows) {
            out << detail::csv_field(r.vocab_name) << ',' << detail::csv_field(row.file_id) << ','
                << row.python_tokens << ',' << row.simpy_tokens << ',' << row.reduction_percent << ",\n";
        }
        for (const auto& f : r.failures) {
            out << detail::csv_field(r.vocab_name) << ',' << detail::csv_field(f.file_id) << ",,,,"
                << detail::csv_field(f.error) << '\n';
        }
        out << detail::csv_field(r.vocab_name) << ",TOTAL," << r.python_tokens << ',' << r.simpy_tokens << ','
            << r.reduction_percent << ",\n";
    }
}

void write_reduction_jsonl(std::ostream& out, const std::vector<ReductionReport>& reports) {
    auto dump = [&](const nlohmann::json& j) {
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    };
    for (const auto& r : reports) {
        for (const auto& row : r.rows) {
            dump({{"vocab", r.vocab_name},
                  {"file_id", row.file_id},
                  {"python_tokens", row.python_tokens},
                  {"simpy_tokens", row.simpy_tokens},
                  {"reduction_percent", row.reduction_percent}});
        }
        for (const auto& f : r.failures) dump({{"vocab", r.vocab_name}, {"file_id", f.file_id}, {"error", f.error}});
        dump({{"vocab", r.vocab_name},
              {"total", true},
              {"files", r.rows.size()},
              {"failures", r.failures.size()},
              {"python_tokens", r.python_tokens},
              {"simpy_tokens", r.simpy_tokens},
              {"reduction_percent", r.reduction_percent}});
    }
}

void write_reduction_table(std::ostream& out, const std::vector<ReductionReport>& reports) {
    std::size_t width = 10;
    for (const auto& r : reports) width = std::max(width, r.vocab_name.size());
    out << std::left << std::setw(static_cast<int>(width)) << "tokenizer" << std::right << std::setw(12) << "python"
        << std::setw(12) << "simpy" << std::setw(11) << "reduction" << '\n';
    for (const auto& r : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << r.vocab_name << std::right << std::setw(12)
            << r.python_tokens << std::setw(12) << r.simpy_tokens << std::setw(10) << std::fixed
            << std::setprecision(1) << r.reduction_percent << "%";
        if (!r.failures.empty()) out << "  (" << r.failures.size() << " files failed)";
        out << '\n';
        out.unsetf(std::ios::fixed);
    }
}

} // namespace simpy
