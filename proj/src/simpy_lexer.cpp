#include "lex_util.hpp"
#include "simpy/simpy.hpp"
#include "simpy_internal.hpp"

namespace simpy {

namespace {

constexpr std::string_view kRetained = ".()[]{},=:+-*/%<>@&|^~";

// Length of a placeholder-shaped run `<[a-z_]+>` at `pos`, or 0.
std::size_t placeholder_shape(std::string_view src, std::size_t pos) {
    if (pos >= src.size() || src[pos] != '<') return 0;
    std::size_t j = pos + 1;
    while (j < src.size() && ((src[j] >= 'a' && src[j] <= 'z') || src[j] == '_')) ++j;
    if (j == pos + 1 || j >= src.size() || src[j] != '>') return 0;
    return j + 1 - pos;
}

class SimpyLexer {
public:
    SimpyLexer(std::string_view src, const GrammarTable& table) : src_(src), table_(table) {
        if (const auto* e = table.lookup("COMMENT")) comment_ = e->simpy_token;
    }

    std::vector<SimpyToken> run() {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
                ++pos_;
                space_ = true;
                continue;
            }
            std::size_t start = pos_;
            if (std::size_t n = table_placeholder(pos_)) {
                std::string text(src_.substr(pos_, n));
                pos_ += n;
                if (text == comment_) {
                    emit(SimpyTokenKind::CommentText, comment_body(), start);
                } else {
                    emit(SimpyTokenKind::Placeholder, std::move(text), start);
                }
                continue;
            }
            if (lex::is_ident_start(c)) {
                std::size_t end = lex::scan_identifier(src_, pos_);
                std::string_view word = src_.substr(pos_, end - pos_);
                if (end < src_.size() && (src_[end] == '"' || src_[end] == '\'') && lex::is_string_prefix(word)) {
                    pos_ = lex::scan_string(src_, end);
                    emit(SimpyTokenKind::String, std::string(src_.substr(start, pos_ - start)), start);
                    continue;
                }
                if (keyword_role(word) != Tok::End) {
                    throw LexError("reserved word '" + std::string(word) + "' must be written as a placeholder",
                                   span(start, end));
                }
                pos_ = end;
                emit(SimpyTokenKind::Identifier, std::string(word), start);
                continue;
            }
            if (c == '"' || c == '\'') {
                pos_ = lex::scan_string(src_, pos_);
                emit(SimpyTokenKind::String, std::string(src_.substr(start, pos_ - start)), start);
                continue;
            }
            if (lex::is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && lex::is_digit(src_[pos_ + 1]))) {
                pos_ = lex::scan_number(src_, pos_);
                emit(SimpyTokenKind::Number, std::string(src_.substr(start, pos_ - start)), start);
                continue;
            }
            if (kRetained.find(c) != std::string_view::npos) {
                ++pos_;
                emit(SimpyTokenKind::Symbol, std::string(1, c), start);
                continue;
            }
            throw LexError("unexpected character '" + std::string(1, c) + "'", span(start, start + 1));
        }
        emit(SimpyTokenKind::End, "", pos_);
        return std::move(tokens_);
    }

private:
    static SourceSpan span(std::size_t a, std::size_t b) {
        return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    }

    std::size_t table_placeholder(std::size_t pos) const {
        std::size_t n = placeholder_shape(src_, pos);
        if (n == 0 || !table_.is_placeholder(src_.substr(pos, n))) return 0;
        return n;
    }

    // Comment text runs to the next unescaped placeholder; backslash quotes
    // the following character.
    std::string comment_body() {
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size()) {
                out += src_[pos_ + 1];
                pos_ += 2;
                continue;
            }
            if (c == '<' && table_placeholder(pos_)) break;
            out += c;
            ++pos_;
        }
        return out;
    }

    void emit(SimpyTokenKind kind, std::string text, std::size_t start) {
        tokens_.push_back({kind, std::move(text), span(start, pos_), space_});
        space_ = false;
    }

    std::string_view src_;
    const GrammarTable& table_;
    std::string comment_ = "<comment>";
    std::size_t pos_ = 0;
    bool space_ = false;
    std::vector<SimpyToken> tokens_;
};

} // namespace

std::vector<SimpyToken> lex_simpy(std::string_view source, const GrammarTable& table) {
    return SimpyLexer(source, table).run();
}

std::size_t simpy_token_count(std::string_view source, const GrammarTable& table) {
    auto toks = lex_simpy(source, table);
    return toks.size() - 1;
}

namespace detail {

std::string escape_comment(std::string_view body, const GrammarTable& table) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '<' && placeholder_shape(body, i) && table.is_placeholder(body.substr(i, placeholder_shape(body, i)))) {
            out += "\\<";
        } else {
            out += c;
        }
    }
    return out;
}

std::vector<Token> simpy_roles(const std::vector<SimpyToken>& toks, const SimpyVocab& vocab) {
    std::vector<Token> out;
    out.reserve(toks.size() + 8);
    for (const auto& t : toks) {
        Token r;
        r.span = t.span;
        r.space_before = t.space_before;
        switch (t.kind) {
        case SimpyTokenKind::Placeholder: {
            const auto* roles = vocab.roles(t.text);
            if (roles == nullptr) {
                throw ParseError("placeholder " + t.text + " has no meaning in the SimPy grammar", t.span);
            }
            for (std::size_t i = 0; i < roles->size(); ++i) {
                r.kind = (*roles)[i];
                r.space_before = i == 0 && t.space_before;
                out.push_back(r);
            }
            continue;
        }
        case SimpyTokenKind::CommentText:
            r.kind = Tok::Comment;
            r.text = t.text;
            break;
        case SimpyTokenKind::Identifier:
            r.kind = Tok::Name;
            r.text = t.text;
            break;
        case SimpyTokenKind::Number:
            r.kind = Tok::Number;
            r.text = t.text;
            break;
        case SimpyTokenKind::String:
            r.kind = Tok::String;
            r.text = t.text;
            break;
        case SimpyTokenKind::Symbol:
            r.kind = Tok::End;
            for (Tok op : operator_roles_longest_first()) {
                if (python_spelling(op) == t.text) {
                    r.kind = op;
                    break;
                }
            }
            if (r.kind == Tok::End) throw ParseError("unexpected symbol '" + t.text + "'", t.span);
            break;
        case SimpyTokenKind::End:
            r.kind = Tok::End;
            break;
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

} // namespace simpy
