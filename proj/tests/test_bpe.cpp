#include <sstream>
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "simpy/bench.hpp"
#include "simpy/bpe.hpp"
#include "simpy/converter.hpp"
#include "simpy/token_metrics.hpp"
#include "test_support.hpp"

using namespace simpy;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("simpy_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const BpeVocab& web_vocab() {
    static BpeVocab v = load_vocab_dir(test_support::source_path("data/vocabs/web-gpt2"));
    return v;
}

const BpeVocab& code_vocab() {
    static BpeVocab v = load_vocab_dir(test_support::source_path("data/vocabs/code-cl100k"));
    return v;
}

} // namespace

TEST_CASE("vocab files load and validate") {
    auto dir = scratch_dir("vocab");
    write(dir / "vocab.json", R"({"a": 0, "b": 1})");
    write(dir / "merges.txt", "#version: 0.2\n");
    auto v = load_vocab((dir / "vocab.json").string(), (dir / "merges.txt").string(), "tiny");
    CHECK(v.size() == 2);
    CHECK(v.id("b") == 1);
    CHECK(v.id("c") == -1);

    write(dir / "merges.txt", "a c\n");
    CHECK_THROWS_AS(load_vocab((dir / "vocab.json").string(), (dir / "merges.txt").string()), VocabError);
    write(dir / "merges.txt", "a b\n");
    CHECK_THROWS_AS(load_vocab((dir / "vocab.json").string(), (dir / "merges.txt").string()), VocabError);
    write(dir / "vocab.json", R"({"a": 0, "b": 2})");
    write(dir / "merges.txt", "");
    CHECK_THROWS_AS(load_vocab((dir / "vocab.json").string(), (dir / "merges.txt").string()), VocabError);
}

TEST_CASE("extend_vocab adds each placeholder once as one token") {
    const auto& base = web_vocab();
    auto ext = extend_vocab(base, default_table());
    CHECK(ext.size() == base.size() + kDefaultPlaceholderCount);
    CHECK(ext.atomic_tokens().size() == kDefaultPlaceholderCount);
    CHECK(tokenize(ext, "<def_stmt>").size() == 1);
    CHECK(tokenize(ext, "").empty());
    CHECK(tokenize(base, "<def_stmt>").size() > 1);
    CHECK_THROWS_AS(extend_vocab(ext, default_table()), VocabError);
}

TEST_CASE("tokenize and detokenize are inverse") {
    auto ext = extend_vocab(code_vocab(), default_table());
    const char* texts[] = {"", "hello world", "  indented\n\n\tline 12345", "caf\xc3\xa9 \xf0\x9f\x98\x80",
                           "<def_stmt>f a<block_start><return_stmt>a<ge>1<block_end>", "<notaplaceholder>"};
    for (const char* t : texts) {
        CAPTURE(t);
        CHECK(detokenize(ext, tokenize(ext, t)) == t);
        CHECK(detokenize(web_vocab(), tokenize(web_vocab(), t)) == t);
    }
}

TEST_CASE("pre-tokenizers follow the reference split rules") {
    auto g = pretokenize("Hello, world's 12345  x", Pretokenizer::Gpt2);
    CHECK(g == std::vector<std::string_view>{"Hello", ",", " world", "'s", " 12345", " ", " x"});
    auto c = pretokenize("x.foo 12345\n\n  y", Pretokenizer::Cl100k);
    CHECK(c == std::vector<std::string_view>{"x", ".foo", " ", "123", "45", "\n\n", " ", " y"});
}

TEST_CASE("training is deterministic and saves in the interchange format") {
    std::vector<std::string> texts = {"low lower lowest", "new newer newest", "low new low new"};
    auto a = train_bpe(texts, 20, Pretokenizer::Gpt2, "toy");
    auto b = train_bpe(texts, 20, Pretokenizer::Gpt2, "toy");
    CHECK(a.merges() == b.merges());
    CHECK(a.size() == 256 + a.merges().size());
    CHECK(tokenize(a, " lowest").size() < 7);

    auto dir = scratch_dir("train");
    save_vocab_dir(a, dir.string());
    auto back = load_vocab_dir(dir.string());
    CHECK(back.name == "toy");
    CHECK(back.merges() == a.merges());
    CHECK(tokenize(back, "lower newest") == tokenize(a, "lower newest"));
}

TEST_CASE("an external GPT-2 vocabulary loads when provided") {
    const char* dir = std::getenv("SIMPY_GPT2_VOCAB_DIR");
    if (!dir) return;
    auto v = load_vocab(std::string(dir) + "/vocab.json", std::string(dir) + "/merges.txt", "gpt2");
    CHECK(v.size() == 50257);
    CHECK(extend_vocab(v, default_table()).size() == 50257 + kDefaultPlaceholderCount);
}

TEST_CASE("token reduction") {
    CHECK(reduction_percent(100, 80) == doctest::Approx(20.0));
    CHECK(reduction_percent(0, 0) == doctest::Approx(0.0));

    auto r = compare_sources({{"pass", "pass\n"}, {"bad", "def (:\n"}}, web_vocab());
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].simpy_tokens <= r.rows[0].python_tokens);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].file_id == "bad");

    auto golden = compare_corpus(test_support::source_path("data/corpus/golden"), code_vocab());
    CHECK(golden.failures.empty());
    CHECK(golden.rows.size() >= 10);
    CHECK(golden.reduction_percent > 0);

    std::ostringstream csv, table;
    write_reduction_csv(csv, {golden});
    write_reduction_table(table, {golden});
    CHECK(csv.str().find("file_id") != std::string::npos);
    CHECK(table.str().find("code-cl100k") != std::string::npos);
}

TEST_CASE("bench protocol") {
    CHECK_THROWS_AS(bench_convert({}, web_vocab(), default_table(), 2), Error);
    auto empty = bench_all({}, web_vocab());
    CHECK(empty.buckets.size() == 5);
    for (const auto& b : empty.buckets) CHECK(b.files == 0);

    CHECK(bucket_index(0) == 0);
    CHECK(bucket_index(99) == 0);
    CHECK(bucket_index(100) == 1);
    CHECK(bucket_index(4999) == 3);
    CHECK(bucket_index(100000) == 4);

    auto files = load_sources(test_support::source_path("data/corpus/golden"));
    files.push_back({"broken.py", "def (:\n"});
    auto r = bench_all(files, web_vocab(), default_table(), 3);
    CHECK(r.failed_files == std::vector<std::string>{"broken.py"});
    std::size_t counted = 0;
    for (const auto& b : r.buckets) {
        counted += b.files;
        if (b.files) {
            CHECK(b.py_to_simpy.mean_ms > 0);
            CHECK(b.py_to_simpy.p95_ms >= b.py_to_simpy.mean_ms * 0.5);
            CHECK(b.convert_to_tokenize_ratio() > 0);
        }
    }
    CHECK(counted == files.size() - 1);
    std::ostringstream js;
    write_latency_json(js, r);
    CHECK(js.str().find("\"buckets\"") != std::string::npos);
}
