#pragma once

// Byte-level BPE in the GPT-2 interchange format (vocab.json + merges.txt).

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/grammar_table.hpp"

namespace simpy {

class VocabError : public Error {
public:
    using Error::Error;
};

/// Pre-tokenizer split rules. Gpt2 follows the GPT-2 regex; Cl100k the
/// GPT-4 one (letters may take one leading punctuation character, digits
/// group by three, newline runs split off).
enum class Pretokenizer : std::uint8_t { Gpt2, Cl100k };

std::string_view pretokenizer_name(Pretokenizer p);
Pretokenizer pretokenizer_from_name(std::string_view name);

class BpeVocab {
public:
    std::string name;
    Pretokenizer pretokenizer = Pretokenizer::Gpt2;

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
    /// -1 when absent.
    int id(std::string_view token) const;
    const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
    /// Tokens added by extend_vocab; matched atomically before pre-tokenizing.
    const std::vector<std::string>& atomic_tokens() const { return atomic_; }

    /// Builds a vocabulary from token strings (index = id) and merge rules in
    /// byte-level symbol form. Throws VocabError when a merge names an unknown
    /// symbol or its result is missing.
    static BpeVocab build(std::vector<std::string> tokens, std::vector<std::pair<std::string, std::string>> merges,
                          std::string name, Pretokenizer pretokenizer);

private:
    friend BpeVocab extend_vocab(const BpeVocab& vocab, const GrammarTable& table);
    friend std::vector<int> tokenize(const BpeVocab& vocab, std::string_view text);
    void index();
    void add_merge_index(std::size_t rank);

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
    std::vector<std::pair<std::string, std::string>> merges_;
    // (left id << 32 | right id) -> (rank, merged id)
    std::unordered_map<std::uint64_t, std::pair<int, int>> merge_index_;
    std::vector<std::string> atomic_;
    std::unordered_set<std::string> atomic_set_;
};

/// vocab.json is a JSON object token -> id with ids dense in [0, n);
/// merges.txt has one space-separated pair per line (a leading `#version`
/// line is allowed).
BpeVocab load_vocab(const std::string& vocab_path, const std::string& merges_path, std::string name = {},
                    Pretokenizer pretokenizer = Pretokenizer::Gpt2);
void save_vocab(const BpeVocab& vocab, const std::string& vocab_path, const std::string& merges_path);

/// A vocabulary directory holds vocab.json, merges.txt and config.json
/// ({"name": ..., "pretokenizer": "gpt2" | "cl100k"}). Without config.json
/// the name is the directory name and the pre-tokenizer is gpt2.
BpeVocab load_vocab_dir(const std::string& dir);
void save_vocab_dir(const BpeVocab& vocab, const std::string& dir);

/// Adds every placeholder of `table` as one atomic token, ids appended after
/// the existing ones. Throws VocabError if any placeholder is already present.
BpeVocab extend_vocab(const BpeVocab& vocab, const GrammarTable& table);

std::vector<int> tokenize(const BpeVocab& vocab, std::string_view text);
std::string detokenize(const BpeVocab& vocab, const std::vector<int>& ids);

/// Pre-tokenizer pieces of `text` (no placeholder handling).
std::vector<std::string_view> pretokenize(std::string_view text, Pretokenizer p);

/// Trains `merges` byte-level merge rules on `texts`. Ties between equally
/// frequent pairs go to the pair of smaller symbol ids, so training is
/// deterministic. Stops early when no pair occurs twice.
BpeVocab train_bpe(const std::vector<std::string>& texts, std::size_t merges, Pretokenizer pretokenizer,
                   std::string name);

/// Byte -> printable symbol mapping of GPT-2's byte-level BPE.
const std::string& byte_symbol(unsigned char b);

} // namespace simpy
