#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simpy/bench.hpp"
#include "simpy/bpe.hpp"
#include "simpy/converter.hpp"
#include "simpy/fuzz.hpp"
#include "simpy/gateway.hpp"
#include "simpy/grammar_table.hpp"
#include "simpy/python.hpp"
#include "simpy/simpy.hpp"
#include "simpy/token.hpp"
#include "simpy/token_metrics.hpp"

namespace fs = std::filesystem;
using namespace simpy;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    std::string table_path;
    std::string format = "table";
    unsigned jobs = 1;
};

GrammarTable load_selected_table(const Common& c) {
    if (!c.table_path.empty()) return load_table(c.table_path);
    return table_from_env_or_default();
}

std::string data_dir() {
    if (const char* env = std::getenv("SIMPY_DATA")) return env;
    return SIMPY_DATA_DIR;
}

std::vector<std::string> default_vocab_dirs() {
    std::vector<std::string> out;
    fs::path root = fs::path(data_dir()) / "vocabs";
    if (!fs::is_directory(root)) return out;
    for (const auto& e : fs::directory_iterator(root)) {
        if (e.is_directory() && fs::exists(e.path() / "vocab.json")) out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

// "path:line:col: message" for errors that carry a span.
std::string located(const std::string& path, const std::string& source, const std::exception& e) {
    std::uint32_t byte = 0;
    bool has_span = false;
    if (auto* p = dynamic_cast<const ParseError*>(&e)) {
        byte = p->span.start_byte;
        has_span = true;
    } else if (auto* l = dynamic_cast<const LexError*>(&e)) {
        byte = l->span.start_byte;
        has_span = true;
    }
    std::string where = path;
    if (has_span) where += ":" + describe_location(source, byte);
    return where + ": " + e.what();
}

int cmd_convert(const Common& c, const std::string& to, const std::string& input, const std::string& output) {
    GrammarTable table = load_selected_table(c);
    std::string source = read_input(input);
    try {
        write_output(output, to == "simpy" ? py_to_simpy(source, table) : simpy_to_py(source, table));
    } catch (const Error& e) {
        std::cerr << located(input, source, e) << '\n';
        return kFail;
    }
    return kOk;
}

int cmd_roundtrip(const Common& c, const std::string& path, bool text) {
    GrammarTable table = load_selected_table(c);
    auto files = python_files(path);
    if (files.empty()) {
        std::cerr << "warning: no .py files under " << path << '\n';
        return kOk;
    }
    auto reports = roundtrip_files(files, table, c.jobs);
    std::size_t ast_ok = 0;
    std::size_t text_ok = 0;
    bool failed = false;
    for (const auto& r : reports) {
        ast_ok += r.ok();
        text_ok += r.text_equal_ignoring_whitespace;
        if (!r.ok() || (text && !r.text_equal_ignoring_whitespace)) failed = true;
    }
    if (c.format == "csv") {
        write_reports_csv(std::cout, reports);
    } else if (c.format == "json") {
        write_reports_jsonl(std::cout, reports);
    } else {
        for (const auto& r : reports) {
            if (!r.ok()) {
                std::cout << "FAIL " << r.file_id << " [" << stage_name(r.failed_stage) << "] " << r.error << '\n';
            } else if (text && !r.text_equal_ignoring_whitespace) {
                std::cout << "TEXT " << r.file_id << " differs after stripping whitespace\n";
            }
        }
        std::cout << "files " << reports.size() << ", ast_equal " << ast_ok << ", text_equal " << text_ok << '\n';
    }
    return failed ? kFail : kOk;
}

std::vector<BpeVocab> load_vocabs(std::vector<std::string> dirs) {
    if (dirs.empty()) dirs = default_vocab_dirs();
    if (dirs.empty()) throw Error("no vocabulary given and none bundled under " + data_dir() + "/vocabs");
    std::vector<BpeVocab> out;
    for (const auto& d : dirs) out.push_back(load_vocab_dir(d));
    return out;
}

int cmd_tokens(const Common& c, const std::string& corpus, const std::vector<std::string>& vocab_dirs) {
    GrammarTable table = load_selected_table(c);
    std::vector<ReductionReport> reports;
    for (const auto& v : load_vocabs(vocab_dirs)) reports.push_back(compare_corpus(corpus, v, table, c.jobs));
    if (c.format == "csv") {
        write_reduction_csv(std::cout, reports);
    } else if (c.format == "json") {
        write_reduction_jsonl(std::cout, reports);
    } else {
        write_reduction_table(std::cout, reports);
    }
    for (const auto& r : reports) {
        for (const auto& f : r.failures) std::cerr << f.file_id << ": " << f.error << '\n';
    }
    return kOk;
}

int cmd_bench(const Common& c, const std::string& corpus, const std::string& vocab_dir, int repetitions) {
    GrammarTable table = load_selected_table(c);
    BpeVocab vocab;
    if (!vocab_dir.empty()) {
        vocab = load_vocab_dir(vocab_dir);
    } else {
        auto dirs = default_vocab_dirs();
        auto code = std::find_if(dirs.begin(), dirs.end(), [](const std::string& d) {
            return fs::path(d).filename().string().rfind("code", 0) == 0;
        });
        if (code == dirs.end()) throw Error("no code-class vocabulary bundled; pass --vocab");
        vocab = load_vocab_dir(*code);
    }
    auto report = bench_all(load_sources(corpus), vocab, table, repetitions);
    if (c.format == "csv") {
        write_latency_csv(std::cout, report);
    } else if (c.format == "json") {
        write_latency_json(std::cout, report);
    } else {
        write_latency_table(std::cout, report);
    }
    return kOk;
}

// Writes the Python form of each generated tree, for outside oracles.
int cmd_fuzz_emit(std::uint64_t seed, std::size_t n, const FuzzOptions& options, const std::string& dir) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = "case_" + std::to_string(i) + ".py";
        write_output((fs::path(dir) / name).string(), emit_python(generate_case(seed, i, options)));
    }
    return kOk;
}

int cmd_fuzz(const Common& c, std::uint64_t seed, std::size_t n, const FuzzOptions& options) {
    GrammarTable table = load_selected_table(c);
    FuzzSummary s = fuzz_roundtrip(seed, n, table, options);
    if (c.format == "json") {
        std::cout << "{\"cases\":" << s.cases << ",\"passed\":" << s.passed << ",\"failed\":" << s.failed
                  << ",\"max_lookahead\":" << s.max_lookahead << ",\"backtracking_parses\":" << s.backtracking_parses
                  << ",\"alternate_parses\":" << s.alternate_parses
                  << ",\"token_property_checked\":" << s.token_property_checked
                  << ",\"token_property_failures\":" << s.token_property_failures << "}\n";
    } else {
        std::cout << "cases " << s.cases << ", passed " << s.passed << ", failed " << s.failed << '\n'
                  << "max lookahead " << s.max_lookahead << ", backtracking parses " << s.backtracking_parses
                  << ", alternate parses " << s.alternate_parses << '\n'
                  << "token-count property checked on " << s.token_property_checked << " trees, "
                  << s.token_property_failures << " failures\n";
    }
    for (const auto& ce : s.counterexamples) {
        std::cerr << "case " << ce.case_index << ": " << ce.property << ": " << ce.detail << " (shrunk "
                  << ce.original_nodes << " -> " << ce.shrunk_nodes << " nodes)\n"
                  << ce.dump << '\n';
    }
    return s.failed == 0 ? kOk : kFail;
}

int cmd_serve(const Common& c, const std::string& listen, const std::string& upstream, const std::string& stub_mode,
              const std::string& stub_reply) {
    static GrammarTable table = load_selected_table(c);
    ServeConfig config;
    auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--listen", "expected host:port");
    config.host = listen.substr(0, colon);
    config.port = std::stoi(listen.substr(colon + 1));
    if (!stub_mode.empty()) {
        config.upstream = stub_mode == "echo" ? echo_upstream() : fixed_upstream(stub_reply);
    } else if (upstream.empty()) {
        throw CLI::ValidationError("serve", "give --upstream URL or --stub-mode");
    } else {
        config.upstream_url = upstream;
    }
    GatewayServer server(config, table);
    int port = server.bind();
    std::cerr << "listening on " << config.host << ':' << port << '\n';
    server.run();
    return kOk;
}

int cmd_export_table(const Common& c, const std::string& output) {
    GrammarTable table = load_selected_table(c);
    write_output(output, table.to_text());
    if (!output.empty() && output != "-") std::cerr << table.placeholder_count() << " placeholders written\n";
    return kOk;
}

int cmd_train_vocab(const std::vector<std::string>& inputs, std::size_t merges, const std::string& pretok,
                    std::string name, const std::string& output) {
    std::vector<std::string> texts;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            for (const auto& f : python_files(in)) texts.push_back(read_file(f));
        } else {
            texts.push_back(read_file(in));
        }
    }
    if (name.empty()) name = fs::path(output).filename().string();
    BpeVocab vocab = train_bpe(texts, merges, pretokenizer_from_name(pretok), name);
    save_vocab_dir(vocab, output);
    std::cerr << name << ": " << vocab.size() << " tokens, " << vocab.merges().size() << " merges\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SimPy: convert between Python and its AI-oriented grammar, and measure the effect"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub, bool report) {
        sub->add_option("--table", common.table_path, "Grammar table file (default: $SIMPY_TABLE or built-in)");
        if (report) {
            sub->add_option("--format", common.format, "Output format")
                ->check(CLI::IsMember({"table", "csv", "json"}));
        }
        sub->add_option("--jobs,-j", common.jobs, "Worker threads (0 = all cores)");
    };

    std::string to;
    std::string input;
    std::string output;
    auto* convert = app.add_subcommand("convert", "Convert one file between Python and SimPy");
    convert->add_option("--to", to, "Target grammar")->required()->check(CLI::IsMember({"simpy", "python"}));
    convert->add_option("input", input, "Input file, - for stdin")
        ->required()
        ->check(CLI::Validator(
            [](std::string& v) { return v == "-" || fs::is_regular_file(v) ? std::string() : "no such file: " + v; },
            "FILE"));
    convert->add_option("-o,--output", output, "Output file (default stdout)");
    add_common(convert, false);

    std::string path;
    bool text = false;
    auto* roundtrip = app.add_subcommand("roundtrip", "Python -> SimPy -> Python over a file or directory");
    roundtrip->add_option("path", path, "File or directory")->required()->check(CLI::ExistingPath);
    roundtrip->add_flag("--text", text, "Also require whitespace-stripped text equality");
    add_common(roundtrip, true);

    std::vector<std::string> vocab_dirs;
    auto* tokens = app.add_subcommand("tokens", "Token reduction of a corpus under BPE vocabularies");
    tokens->add_option("corpus", path, "File or directory")->required()->check(CLI::ExistingPath);
    tokens->add_option("--vocab", vocab_dirs, "Vocabulary directory (repeatable; default: bundled)");
    add_common(tokens, true);

    std::string vocab_dir;
    int repetitions = 5;
    auto* bench = app.add_subcommand("bench", "Conversion latency by Python token count");
    bench->add_option("corpus", path, "File or directory")->required()->check(CLI::ExistingPath);
    bench->add_option("--vocab", vocab_dir, "Vocabulary for bucketing (default: bundled code-class)");
    bench->add_option("--repetitions,-r", repetitions, "Timed runs per file")->check(CLI::Range(3, 1000));
    add_common(bench, true);

    std::uint64_t seed = 0;
    std::size_t cases = 1000;
    FuzzOptions fuzz_options;
    auto* fuzz = app.add_subcommand("fuzz", "Random-AST differential test of both frontends");
    fuzz->add_option("--seed", seed, "Generator seed");
    fuzz->add_option("-n,--cases", cases, "Number of trees");
    fuzz->add_option("--max-expr-depth", fuzz_options.max_expr_depth);
    fuzz->add_option("--max-block-depth", fuzz_options.max_block_depth);
    fuzz->add_option("--max-statements", fuzz_options.max_statements);
    std::string emit_dir;
    fuzz->add_option("--emit-python", emit_dir, "Only write each tree's Python source into this directory");
    add_common(fuzz, true);

    std::string listen = "127.0.0.1:8080";
    std::string upstream;
    std::string stub_mode;
    std::string stub_reply = "```simpy\n<pass_stmt>\n```";
    auto* serve = app.add_subcommand("serve", "Gateway converting code blocks of chat traffic");
    serve->add_option("--listen", listen, "host:port");
    serve->add_option("--upstream", upstream, "Chat-completion URL of the model");
    serve->add_option("--stub-mode", stub_mode, "Built-in upstream instead of --upstream")
        ->check(CLI::IsMember({"echo", "fixed"}));
    serve->add_option("--stub-reply", stub_reply, "Reply content for --stub-mode fixed");
    add_common(serve, false);

    auto* export_table = app.add_subcommand("export-table", "Write the grammar table");
    export_table->add_option("-o,--output", output, "Output file (default stdout)");
    add_common(export_table, false);

    std::vector<std::string> train_inputs;
    std::size_t merges = 8000;
    std::string pretok = "gpt2";
    std::string name;
    auto* train = app.add_subcommand("train-vocab", "Train a byte-level BPE vocabulary");
    train->add_option("inputs", train_inputs, "Text files or directories of .py files")
        ->required()
        ->check(CLI::ExistingPath);
    train->add_option("--merges", merges, "Merge rules to learn");
    train->add_option("--pretokenizer", pretok)->check(CLI::IsMember({"gpt2", "cl100k"}));
    train->add_option("--name", name, "Vocabulary name (default: output directory name)");
    train->add_option("-o,--output", output, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*convert) return cmd_convert(common, to, input, output);
        if (*roundtrip) return cmd_roundtrip(common, path, text);
        if (*tokens) return cmd_tokens(common, path, vocab_dirs);
        if (*bench) return cmd_bench(common, path, vocab_dir, repetitions);
        if (*fuzz) {
            if (!emit_dir.empty()) return cmd_fuzz_emit(seed, cases, fuzz_options, emit_dir);
            return cmd_fuzz(common, seed, cases, fuzz_options);
        }
        if (*serve) return cmd_serve(common, listen, upstream, stub_mode, stub_reply);
        if (*export_table) return cmd_export_table(common, output);
        if (*train) return cmd_train_vocab(train_inputs, merges, pretok, name, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
