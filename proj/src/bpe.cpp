#include "simpy/bpe.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace simpy {

namespace {

struct ByteTables {
    std::array<std::string, 256> symbol;
    std::unordered_map<std::uint32_t, unsigned char> byte_of;
};

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// GPT-2's bytes_to_unicode: printable Latin-1 bytes map to themselves, the
// rest to code points from 256 upwards.
const ByteTables& byte_tables() {
    static const ByteTables tables = [] {
        ByteTables t;
        std::array<bool, 256> printable{};
        for (int b = '!'; b <= '~'; ++b) printable[b] = true;
        for (int b = 0xA1; b <= 0xAC; ++b) printable[b] = true;
        for (int b = 0xAE; b <= 0xFF; ++b) printable[b] = true;
        std::uint32_t next = 256;
        for (int b = 0; b < 256; ++b) {
            std::uint32_t cp = printable[b] ? static_cast<std::uint32_t>(b) : next++;
            append_utf8(t.symbol[b], cp);
            t.byte_of[cp] = static_cast<unsigned char>(b);
        }
        return t;
    }();
    return tables;
}

// Decodes one UTF-8 sequence; invalid bytes decode as themselves.
std::uint32_t decode(std::string_view s, std::size_t i, std::size_t& len) {
    auto b = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto c = [&](std::size_t k) { return static_cast<std::uint32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F); };
    if (b < 0x80) {
        len = 1;
        return b;
    }
    if ((b & 0xE0) == 0xC0 && cont(1)) {
        len = 2;
        return ((b & 0x1Fu) << 6) | c(1);
    }
    if ((b & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        len = 3;
        return ((b & 0x0Fu) << 12) | (c(1) << 6) | c(2);
    }
    if ((b & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        len = 4;
        return ((b & 0x07u) << 18) | (c(1) << 12) | (c(2) << 6) | c(3);
    }
    len = 1;
    return 0xFFFD;
}

bool is_space(std::uint32_t c) {
    return c == ' ' || (c >= '\t' && c <= '\r') || c == 0x85 || c == 0xA0 || c == 0x1680 ||
           (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool is_number(std::uint32_t c) {
    return (c >= '0' && c <= '9') || c == 0xB2 || c == 0xB3 || c == 0xB9 || (c >= 0xBC && c <= 0xBE);
}

// Letters: ASCII letters plus non-ASCII code points outside the common
// punctuation and symbol blocks.
bool is_letter(std::uint32_t c) {
    if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (is_space(c) || is_number(c)) return false;
    if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
    if (c == 0xD7 || c == 0xF7) return false;
    if (c >= 0x2000 && c <= 0x2BFF) return false;
    if (c >= 0x3000 && c <= 0x303F) return false;
    if (c >= 0xFE30 && c <= 0xFE4F) return false;
    if (c >= 0xFF00 && c <= 0xFF20) return false;
    if (c == 0xFFFD) return false;
    if (c >= 0x1F000) return false;
    return true;
}

bool is_other(std::uint32_t c) {
    return !is_space(c) && !is_letter(c) && !is_number(c);
}

class Scanner {
public:
    explicit Scanner(std::string_view s) : s_(s) {}

    std::size_t size() const { return s_.size(); }
    std::uint32_t at(std::size_t i, std::size_t* len = nullptr) const {
        std::size_t l = 0;
        std::uint32_t c = i < s_.size() ? decode(s_, i, l) : 0;
        if (len) *len = l;
        return c;
    }
    std::size_t next(std::size_t i) const {
        std::size_t l = 0;
        decode(s_, i, l);
        return i + l;
    }
    template <class Pred>
    std::size_t run(std::size_t i, Pred pred, std::size_t limit = SIZE_MAX) const {
        std::size_t count = 0;
        while (i < s_.size() && count < limit && pred(at(i))) {
            i = next(i);
            ++count;
        }
        return i;
    }

private:
    std::string_view s_;
};

std::size_t contraction(std::string_view s, std::size_t i, bool fold_case) {
    if (s[i] != '\'') return 0;
    auto lower = [&](std::size_t k) -> char {
        if (i + k >= s.size()) return '\0';
        char c = s[i + k];
        return fold_case && c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c;
    };
    char a = lower(1);
    char b = lower(2);
    if ((a == 'r' && b == 'e') || (a == 'v' && b == 'e') || (a == 'l' && b == 'l')) return 3;
    if (a == 's' || a == 't' || a == 'm' || a == 'd') return 2;
    return 0;
}

// Whitespace run at `i` (which is whitespace), leaving the final character
// for the next piece when non-space text follows (`\s+(?!\S)` then `\s+`).
std::size_t whitespace_piece(const Scanner& sc, std::size_t i) {
    std::size_t end = sc.run(i, is_space);
    if (end >= sc.size()) return end;
    std::size_t last = i;
    for (std::size_t k = i; k < end; k = sc.next(k)) last = k;
    return last > i ? last : end;
}

std::size_t gpt2_piece(const Scanner& sc, std::string_view s, std::size_t i) {
    if (std::size_t n = contraction(s, i, false)) return i + n;
    std::size_t len = 0;
    std::uint32_t c = sc.at(i, &len);
    std::size_t j = i;
    if (c == ' ' && i + 1 < s.size()) {
        std::uint32_t c2 = sc.at(i + 1);
        if (!is_space(c2)) {
            j = i + 1;
            c = c2;
        }
    }
    if (is_letter(c)) return sc.run(j, is_letter);
    if (is_number(c)) return sc.run(j, is_number);
    if (is_other(c)) return sc.run(j, is_other);
    return whitespace_piece(sc, i);
}

std::size_t cl100k_piece(const Scanner& sc, std::string_view s, std::size_t i) {
    if (std::size_t n = contraction(s, i, true)) return i + n;
    std::size_t len = 0;
    std::uint32_t c = sc.at(i, &len);
    if (is_letter(c)) return sc.run(i, is_letter);
    if (c != '\r' && c != '\n' && !is_number(c) && i + len < s.size() && is_letter(sc.at(i + len))) {
        return sc.run(i + len, is_letter);
    }
    if (is_number(c)) return sc.run(i, is_number, 3);
    std::size_t j = i;
    if (c == ' ' && i + 1 < s.size() && is_other(sc.at(i + 1))) j = i + 1;
    if (is_other(sc.at(j))) {
        std::size_t end = sc.run(j, is_other);
        return sc.run(end, [](std::uint32_t x) { return x == '\r' || x == '\n'; });
    }
    // whitespace: up to the last newline of the run, if any
    std::size_t end = sc.run(i, is_space);
    std::size_t last_nl = 0;
    for (std::size_t k = i; k < end; k = sc.next(k)) {
        if (s[k] == '\n' || s[k] == '\r') last_nl = k + 1;
    }
    if (last_nl > 0) return last_nl;
    return whitespace_piece(sc, i);
}

} // namespace

const std::string& byte_symbol(unsigned char b) {
    return byte_tables().symbol[b];
}

std::string_view pretokenizer_name(Pretokenizer p) {
    return p == Pretokenizer::Gpt2 ? "gpt2" : "cl100k";
}

Pretokenizer pretokenizer_from_name(std::string_view name) {
    if (name == "gpt2") return Pretokenizer::Gpt2;
    if (name == "cl100k") return Pretokenizer::Cl100k;
    throw VocabError("unknown pre-tokenizer '" + std::string(name) + "'");
}

std::vector<std::string_view> pretokenize(std::string_view text, Pretokenizer p) {
    std::vector<std::string_view> out;
    Scanner sc(text);
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t end = p == Pretokenizer::Gpt2 ? gpt2_piece(sc, text, i) : cl100k_piece(sc, text, i);
        if (end <= i) end = sc.next(i);
        out.push_back(text.substr(i, end - i));
        i = end;
    }
    return out;
}

int BpeVocab::id(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? -1 : it->second;
}

void BpeVocab::add_merge_index(std::size_t rank) {
    const auto& [a, b] = merges_[rank];
    int ia = id(a);
    int ib = id(b);
    int im = id(a + b);
    if (ia < 0 || ib < 0) {
        throw VocabError("merge rule " + std::to_string(rank + 1) + " references an unknown symbol: " + a + " " + b);
    }
    if (im < 0) throw VocabError("merge rule " + std::to_string(rank + 1) + " produces a token not in the vocabulary");
    auto key = (static_cast<std::uint64_t>(ia) << 32) | static_cast<std::uint32_t>(ib);
    merge_index_.try_emplace(key, static_cast<int>(rank), im);
}

void BpeVocab::index() {
    ids_.clear();
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (!ids_.emplace(tokens_[i], static_cast<int>(i)).second) {
            throw VocabError("duplicate token '" + tokens_[i] + "'");
        }
    }
    merge_index_.clear();
    for (std::size_t r = 0; r < merges_.size(); ++r) add_merge_index(r);
}

BpeVocab BpeVocab::build(std::vector<std::string> tokens, std::vector<std::pair<std::string, std::string>> merges,
                         std::string name, Pretokenizer pretokenizer) {
    BpeVocab v;
    v.name = std::move(name);
    v.pretokenizer = pretokenizer;
    v.tokens_ = std::move(tokens);
    v.merges_ = std::move(merges);
    v.index();
    return v;
}

BpeVocab load_vocab(const std::string& vocab_path, const std::string& merges_path, std::string name,
                    Pretokenizer pretokenizer) {
    std::ifstream vf(vocab_path, std::ios::binary);
    if (!vf) throw VocabError("cannot open " + vocab_path);
    nlohmann::json j;
    try {
        vf >> j;
    } catch (const nlohmann::json::exception& e) {
        throw VocabError(vocab_path + ": " + e.what());
    }
    if (!j.is_object()) throw VocabError(vocab_path + ": expected a JSON object token -> id");
    std::vector<std::string> tokens(j.size());
    std::vector<bool> seen(j.size(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number_integer()) throw VocabError(vocab_path + ": id of '" + it.key() + "' is not an integer");
        auto id = it.value().get<long long>();
        if (id < 0 || id >= static_cast<long long>(tokens.size()) || seen[static_cast<std::size_t>(id)]) {
            throw VocabError(vocab_path + ": ids are not dense in [0, " + std::to_string(tokens.size()) + ")");
        }
        seen[static_cast<std::size_t>(id)] = true;
        tokens[static_cast<std::size_t>(id)] = it.key();
    }
    std::ifstream mf(merges_path, std::ios::binary);
    if (!mf) throw VocabError("cannot open " + merges_path);
    std::vector<std::pair<std::string, std::string>> merges;
    std::string line;
    bool first = true;
    while (std::getline(mf, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.rfind("#version", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        if (line.empty()) continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size() || line.find(' ', sp + 1) != std::string::npos) {
            throw VocabError(merges_path + ": malformed merge line '" + line + "'");
        }
        merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    if (name.empty()) name = vocab_path;
    return BpeVocab::build(std::move(tokens), std::move(merges), std::move(name), pretokenizer);
}

void save_vocab(const BpeVocab& vocab, const std::string& vocab_path, const std::string& merges_path) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < vocab.size(); ++i) j[vocab.token(static_cast<int>(i))] = i;
    std::ofstream vf(vocab_path, std::ios::binary);
    if (!vf) throw VocabError("cannot write " + vocab_path);
    vf << j.dump() << '\n';
    std::ofstream mf(merges_path, std::ios::binary);
    if (!mf) throw VocabError("cannot write " + merges_path);
    mf << "#version: 0.2\n";
    for (const auto& [a, b] : vocab.merges()) mf << a << ' ' << b << '\n';
}

BpeVocab load_vocab_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path root(dir);
    std::string name = root.filename().empty() ? root.parent_path().filename().string() : root.filename().string();
    Pretokenizer pretok = Pretokenizer::Gpt2;
    if (std::ifstream cf(root / "config.json"); cf) {
        try {
            auto j = nlohmann::json::parse(cf);
            name = j.value("name", name);
            pretok = pretokenizer_from_name(j.value("pretokenizer", "gpt2"));
        } catch (const nlohmann::json::exception& e) {
            throw VocabError((root / "config.json").string() + ": " + e.what());
        }
    }
    return load_vocab((root / "vocab.json").string(), (root / "merges.txt").string(), name, pretok);
}

void save_vocab_dir(const BpeVocab& vocab, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path root(dir);
    save_vocab(vocab, (root / "vocab.json").string(), (root / "merges.txt").string());
    std::ofstream cf(root / "config.json");
    if (!cf) throw VocabError("cannot write " + (root / "config.json").string());
    nlohmann::ordered_json j = {{"name", vocab.name}, {"pretokenizer", pretokenizer_name(vocab.pretokenizer)}};
    cf << j.dump(2) << '\n';
}

BpeVocab extend_vocab(const BpeVocab& vocab, const GrammarTable& table) {
    BpeVocab v = vocab;
    for (const auto& ph : table.placeholders()) {
        if (v.ids_.count(ph)) throw VocabError("placeholder " + ph + " is already in the vocabulary");
        v.ids_.emplace(ph, static_cast<int>(v.tokens_.size()));
        v.tokens_.push_back(ph);
        v.atomic_.push_back(ph);
        v.atomic_set_.insert(ph);
    }
    return v;
}

namespace {

void encode_piece(const BpeVocab& vocab, std::string_view piece, const std::array<int, 256>& byte_ids,
                  const std::unordered_map<std::uint64_t, std::pair<int, int>>& merges, std::vector<int>& out) {
    std::vector<int> word;
    word.reserve(piece.size());
    for (char ch : piece) {
        int id = byte_ids[static_cast<unsigned char>(ch)];
        if (id < 0) throw VocabError("vocabulary '" + vocab.name + "' has no symbol for a byte of the input");
        word.push_back(id);
    }
    while (word.size() > 1) {
        int best_rank = -1;
        std::uint64_t best_key = 0;
        int merged = -1;
        for (std::size_t k = 0; k + 1 < word.size(); ++k) {
            auto key = (static_cast<std::uint64_t>(word[k]) << 32) | static_cast<std::uint32_t>(word[k + 1]);
            auto it = merges.find(key);
            if (it != merges.end() && (best_rank < 0 || it->second.first < best_rank)) {
                best_rank = it->second.first;
                best_key = key;
                merged = it->second.second;
            }
        }
        if (best_rank < 0) break;
        std::vector<int> next;
        next.reserve(word.size());
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (k + 1 < word.size() &&
                ((static_cast<std::uint64_t>(word[k]) << 32) | static_cast<std::uint32_t>(word[k + 1])) == best_key) {
                next.push_back(merged);
                ++k;
            } else {
                next.push_back(word[k]);
            }
        }
        word.swap(next);
    }
    out.insert(out.end(), word.begin(), word.end());
}

} // namespace

std::vector<int> tokenize(const BpeVocab& vocab, std::string_view text) {
    std::array<int, 256> byte_ids;
    for (int b = 0; b < 256; ++b) byte_ids[b] = vocab.id(byte_symbol(static_cast<unsigned char>(b)));
    std::vector<int> out;
    auto plain = [&](std::string_view segment) {
        for (auto piece : pretokenize(segment, vocab.pretokenizer)) {
            encode_piece(vocab, piece, byte_ids, vocab.merge_index_, out);
        }
    };
    if (vocab.atomic_.empty()) {
        plain(text);
        return out;
    }
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '<') {
            auto close = text.find('>', i);
            if (close != std::string_view::npos && close - i < 64) {
                std::string cand(text.substr(i, close + 1 - i));
                if (vocab.atomic_set_.count(cand)) {
                    plain(text.substr(start, i - start));
                    out.push_back(vocab.id(cand));
                    i = close + 1;
                    start = i;
                    continue;
                }
            }
        }
        ++i;
    }
    plain(text.substr(start));
    return out;
}

std::string detokenize(const BpeVocab& vocab, const std::vector<int>& ids) {
    const auto& byte_of = byte_tables().byte_of;
    std::unordered_set<std::string> atomic(vocab.atomic_tokens().begin(), vocab.atomic_tokens().end());
    std::string out;
    for (int id : ids) {
        const std::string& tok = vocab.token(id);
        if (atomic.count(tok)) {
            out += tok;
            continue;
        }
        for (std::size_t i = 0; i < tok.size();) {
            std::size_t len = 0;
            std::uint32_t cp = decode(tok, i, len);
            auto it = byte_of.find(cp);
            if (it != byte_of.end()) {
                out += static_cast<char>(it->second);
            } else {
                out.append(tok, i, len);
            }
            i += len;
        }
    }
    return out;
}

BpeVocab train_bpe(const std::vector<std::string>& texts, std::size_t num_merges, Pretokenizer pretokenizer,
                   std::string name) {
    std::unordered_map<std::string, long long> counts;
    for (const auto& t : texts) {
        for (auto piece : pretokenize(t, pretokenizer)) ++counts[std::string(piece)];
    }
    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> ids;
    for (int b = 0; b < 256; ++b) {
        ids.emplace(byte_symbol(static_cast<unsigned char>(b)), b);
        tokens.push_back(byte_symbol(static_cast<unsigned char>(b)));
    }

    // Words in a fixed order so training does not depend on hash iteration.
    std::vector<std::pair<std::string, long long>> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<int>> words;
    std::vector<long long> freq;
    for (const auto& [w, c] : sorted) {
        std::vector<int> syms;
        for (char ch : w) syms.push_back(static_cast<unsigned char>(ch));
        words.push_back(std::move(syms));
        freq.push_back(c);
    }

    auto key_of = [](int a, int b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
    std::unordered_map<std::uint64_t, long long> pair_count;
    std::unordered_map<std::uint64_t, std::vector<int>> pair_words;
    // Max-heap on count; ties go to the smaller key.
    using Entry = std::pair<long long, std::uint64_t>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first != b.first ? a.first < b.first : a.second > b.second; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

    for (std::size_t w = 0; w < words.size(); ++w) {
        for (std::size_t k = 0; k + 1 < words[w].size(); ++k) {
            auto key = key_of(words[w][k], words[w][k + 1]);
            pair_count[key] += freq[w];
            pair_words[key].push_back(static_cast<int>(w));
        }
    }
    for (const auto& [key, c] : pair_count) heap.emplace(c, key);

    std::vector<std::pair<std::string, std::string>> merges;
    std::vector<int> stamp(words.size(), -1);
    while (merges.size() < num_merges && !heap.empty()) {
        auto [c, key] = heap.top();
        heap.pop();
        auto it = pair_count.find(key);
        long long current = it == pair_count.end() ? 0 : it->second;
        if (current != c) {
            if (current > 0) heap.emplace(current, key);
            continue;
        }
        if (c < 2) break;
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xFFFFFFFFu);
        std::string merged_text = tokens[static_cast<std::size_t>(a)] + tokens[static_cast<std::size_t>(b)];
        auto [slot, inserted] = ids.emplace(merged_text, static_cast<int>(tokens.size()));
        if (inserted) tokens.push_back(merged_text);
        int merged = slot->second;
        merges.emplace_back(tokens[static_cast<std::size_t>(a)], tokens[static_cast<std::size_t>(b)]);

        std::vector<int> affected = std::move(pair_words[key]);
        pair_words.erase(key);
        const int round = static_cast<int>(merges.size());
        std::unordered_map<std::uint64_t, long long> delta;
        for (int w : affected) {
            if (stamp[static_cast<std::size_t>(w)] == round) continue;
            stamp[static_cast<std::size_t>(w)] = round;
            auto& syms = words[static_cast<std::size_t>(w)];
            bool has = false;
            for (std::size_t k = 0; k + 1 < syms.size() && !has; ++k) has = syms[k] == a && syms[k + 1] == b;
            if (!has) continue;
            long long f = freq[static_cast<std::size_t>(w)];
            for (std::size_t k = 0; k + 1 < syms.size(); ++k) delta[key_of(syms[k], syms[k + 1])] -= f;
            std::vector<int> next;
            next.reserve(syms.size());
            for (std::size_t k = 0; k < syms.size(); ++k) {
                if (k + 1 < syms.size() && syms[k] == a && syms[k + 1] == b) {
                    next.push_back(merged);
                    ++k;
                } else {
                    next.push_back(syms[k]);
                }
            }
            syms.swap(next);
            for (std::size_t k = 0; k + 1 < syms.size(); ++k) {
                auto nk = key_of(syms[k], syms[k + 1]);
                delta[nk] += f;
                if (syms[k] == merged || syms[k + 1] == merged) pair_words[nk].push_back(w);
            }
        }
        for (const auto& [k, d] : delta) {
            if (d == 0) continue;
            long long& pc = pair_count[k];
            pc += d;
            if (d > 0) heap.emplace(pc, k);
            if (pc <= 0) pair_count.erase(k);
        }
    }
    return BpeVocab::build(std::move(tokens), std::move(merges), std::move(name), pretokenizer);
}

} // namespace simpy
