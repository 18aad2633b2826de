#include "simpy/python.hpp"

#include <algorithm>
#include <utility>

#include "lex_util.hpp"

namespace simpy {

namespace {

class PythonLexer {
public:
    explicit PythonLexer(std::string_view src) : src_(src) {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    }

    std::vector<Token> run() {
        indents_.push_back({0, 0});
        while (pos_ < src_.size()) {
            if (at_line_start_ && depth_ == 0) {
                if (!handle_line_start()) continue;
            }
            scan_token();
        }
        if (depth_ > 0) {
            throw LexError("unexpected end of input inside brackets", here(0));
        }
        if (line_has_content_) emit(Tok::Newline, "", here(0));
        release_held(0);
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit(Tok::Dedent, "", here(0));
        }
        emit(Tok::End, "", here(0));
        return std::move(tokens_);
    }

private:
    struct Indent {
        int col;     // tab stops of 8
        int altcol;  // tabs counted as one column
    };

    SourceSpan here(std::size_t len) const {
        return {static_cast<std::uint32_t>(pos_), static_cast<std::uint32_t>(pos_ + len)};
    }

    void emit(Tok kind, std::string text, SourceSpan span, bool inline_comment = false) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.span = span;
        t.space_before = pending_space_;
        t.inline_comment = inline_comment;
        pending_space_ = false;
        tokens_.push_back(std::move(t));
    }

    bool at_newline() const {
        return pos_ < src_.size() && (src_[pos_] == '\n' || src_[pos_] == '\r');
    }

    void skip_newline() {
        if (src_[pos_] == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') ++pos_;
        ++pos_;
    }

    // Measures indentation of a fresh logical line. Returns false when the
    // line turned out blank or comment-only (already consumed).
    bool handle_line_start() {
        int col = 0;
        int altcol = 0;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ') {
                ++col;
                ++altcol;
            } else if (c == '\t') {
                col = (col / 8 + 1) * 8;
                ++altcol;
            } else if (c == '\f') {
                col = altcol = 0;
            } else {
                break;
            }
            ++pos_;
        }
        if (pos_ >= src_.size()) return false;
        // Blank and comment-only lines are held back until the next real
        // line decides how many blocks close, so that a comment lands in the
        // block its own indentation points at.
        if (at_newline()) {
            auto span = here(1);
            skip_newline();
            emit(Tok::NL, "", span);
            held_.push_back({std::move(tokens_.back()), -1});
            tokens_.pop_back();
            return false;
        }
        if (src_[pos_] == '#') {
            scan_comment(false);
            held_.push_back({std::move(tokens_.back()), col});
            tokens_.pop_back();
            if (pos_ < src_.size()) {
                auto span = here(1);
                skip_newline();
                emit(Tok::NL, "", span);
                held_.push_back({std::move(tokens_.back()), -1});
                tokens_.pop_back();
            }
            return false;
        }
        at_line_start_ = false;
        release_held(col);
        const Indent& top = indents_.back();
        if (col == top.col) {
            if (altcol != top.altcol) throw LexError("inconsistent use of tabs and spaces in indentation", here(1));
        } else if (col > top.col) {
            if (altcol <= top.altcol) throw LexError("inconsistent use of tabs and spaces in indentation", here(1));
            indents_.push_back({col, altcol});
            emit(Tok::Indent, "", here(0));
        } else {
            while (indents_.size() > 1 && col < indents_.back().col) {
                indents_.pop_back();
                emit(Tok::Dedent, "", here(0));
            }
            if (col != indents_.back().col) {
                throw LexError("unindent does not match any outer indentation level", here(1));
            }
            if (altcol != indents_.back().altcol) {
                throw LexError("inconsistent use of tabs and spaces in indentation", here(1));
            }
        }
        return true;
    }

    // Emits held lines; a comment first closes the blocks indented deeper
    // than both itself and the line that follows.
    void release_held(int next_col) {
        // Before elif/else/except/finally a comment may not leave the body
        // that the clause continues: the keyword cannot follow a comment
        // statement.
        const bool clause = starts_clause_keyword();
        auto may_pop = [&](int col) {
            const std::size_t n = indents_.size();
            if (n <= 1 || indents_.back().col <= std::max(col, next_col)) return false;
            return !clause || indents_[n - 2].col > next_col;
        };
        for (auto& [tok, col] : held_) {
            if (col >= 0) {
                while (may_pop(col)) {
                    indents_.pop_back();
                    emit(Tok::Dedent, "", tok.span);
                    tokens_.back().span.end_byte = tokens_.back().span.start_byte;
                }
            }
            tokens_.push_back(std::move(tok));
        }
        held_.clear();
    }

    bool starts_clause_keyword() const {
        std::size_t end = lex::scan_identifier(src_, pos_);
        std::string_view word = src_.substr(pos_, end - pos_);
        return word == "elif" || word == "else" || word == "except" || word == "finally";
    }

    void scan_comment(bool is_inline) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') ++pos_;
        std::string_view text = src_.substr(start, pos_ - start);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\f')) {
            text.remove_suffix(1);
        }
        emit(Tok::Comment, std::string(text),
             {static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(pos_)}, is_inline);
    }

    void scan_token() {
        char c = src_[pos_];
        if (c == ' ' || c == '\t' || c == '\f') {
            ++pos_;
            pending_space_ = true;
            return;
        }
        if (c == '#') {
            scan_comment(true);
            return;
        }
        if (c == '\\') {
            if (pos_ + 1 < src_.size() && (src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '\r')) {
                ++pos_;
                skip_newline();
                pending_space_ = true;
                if (pos_ >= src_.size()) throw LexError("unexpected end of input after line continuation", here(0));
                return;
            }
            throw LexError("unexpected character after line continuation character", here(1));
        }
        if (c == '\n' || c == '\r') {
            auto span = here(1);
            skip_newline();
            if (depth_ > 0 || !line_has_content_) {
                emit(Tok::NL, "", span);
            } else {
                emit(Tok::Newline, "", span);
                line_has_content_ = false;
                at_line_start_ = true;
            }
            pending_space_ = false;
            return;
        }
        line_has_content_ = true;
        std::size_t start = pos_;
        if (lex::is_ident_start(c)) {
            std::size_t end = lex::scan_identifier(src_, pos_);
            std::string_view word = src_.substr(pos_, end - pos_);
            if (end < src_.size() && (src_[end] == '"' || src_[end] == '\'') && lex::is_string_prefix(word)) {
                std::size_t str_end = lex::scan_string(src_, end);
                pos_ = str_end;
                emit(Tok::String, std::string(src_.substr(start, str_end - start)), span_from(start));
                return;
            }
            pos_ = end;
            Tok kw = keyword_role(word);
            emit(kw == Tok::End ? Tok::Name : kw, std::string(word), span_from(start));
            return;
        }
        if (c == '"' || c == '\'') {
            pos_ = lex::scan_string(src_, pos_);
            emit(Tok::String, std::string(src_.substr(start, pos_ - start)), span_from(start));
            return;
        }
        if (lex::is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && lex::is_digit(src_[pos_ + 1]))) {
            pos_ = lex::scan_number(src_, pos_);
            emit(Tok::Number, std::string(src_.substr(start, pos_ - start)), span_from(start));
            return;
        }
        for (Tok role : operator_roles_longest_first()) {
            std::string_view sp = python_spelling(role);
            if (src_.substr(pos_, sp.size()) == sp) {
                pos_ += sp.size();
                if (role == Tok::LPar || role == Tok::LSqb || role == Tok::LBrace) ++depth_;
                if (role == Tok::RPar || role == Tok::RSqb || role == Tok::RBrace) {
                    if (depth_ == 0) throw LexError("unmatched '" + std::string(sp) + "'", span_from(start));
                    --depth_;
                }
                emit(role, std::string(sp), span_from(start));
                return;
            }
        }
        throw LexError("invalid character '" + std::string(1, c) + "'", here(1));
    }

    SourceSpan span_from(std::size_t start) const {
        return {static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(pos_)};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    bool at_line_start_ = true;
    bool line_has_content_ = false;
    bool pending_space_ = false;
    std::vector<Indent> indents_;
    std::vector<Token> tokens_;
    std::vector<std::pair<Token, int>> held_;
};

} // namespace

std::vector<Token> lex_python(std::string_view source) {
    return PythonLexer(source).run();
}

std::size_t python_token_count(std::string_view source) {
    auto toks = lex_python(source);
    return toks.empty() ? 0 : toks.size() - 1;
}

} // namespace simpy
