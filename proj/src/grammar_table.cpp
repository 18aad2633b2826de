#include "simpy/grammar_table.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace simpy {

extern const char* const kEmbeddedGrammarTable;

namespace {

bool valid_placeholder(std::string_view s) {
    if (s.size() < 3 || s.front() != '<' || s.back() != '>') return false;
    for (char c : s.substr(1, s.size() - 2)) {
        if (!((c >= 'a' && c <= 'z') || c == '_')) return false;
    }
    return true;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        out.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \r");
    if (a == std::string_view::npos) return {};
    std::size_t b = s.find_last_not_of(" \r");
    return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void reject(int line, const std::string& msg) {
    throw TableError("grammar table line " + std::to_string(line) + ": " + msg);
}

} // namespace

std::string_view action_name(TableAction action) {
    switch (action) {
    case TableAction::Replace: return "replace";
    case TableAction::Merge: return "merge";
    case TableAction::Drop: return "drop";
    case TableAction::WhitespaceSeparator: return "whitespace-separator";
    }
    return "?";
}

std::vector<std::string> TableEntry::terminals() const {
    return split(python_terminal, ' ');
}

const std::vector<std::string>& mandatory_placeholders() {
    static const std::vector<std::string> names = {
        "<def_stmt>", "<class_stmt>", "<if_stmt>", "<true>", "<ge>",
        "<block_start>", "<block_end>", "<line_sep>", "<concat>",
    };
    return names;
}

GrammarTable GrammarTable::parse(std::string_view text, bool strict) {
    GrammarTable table;
    std::set<std::string> seen_placeholders;
    std::set<std::pair<std::string, std::string>> seen_keys;
    int line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("#version:", 0) == 0) {
            try {
                table.version_ = std::stoi(trim(line.substr(9)));
            } catch (const std::exception&) {
                reject(line_no, "bad version tag");
            }
            continue;
        }
        if (trim(line).empty() || line.front() == '#') continue;

        auto cols = split(line, '\t');
        if (cols.size() != 4) reject(line_no, "expected 4 tab-separated columns, found " + std::to_string(cols.size()));
        TableEntry e;
        e.context = trim(cols[0]);
        e.python_terminal = trim(cols[2]);
        e.simpy_token = trim(cols[3]);
        e.line = line_no;
        const std::string action = trim(cols[1]);
        if (action == "replace") {
            e.action = TableAction::Replace;
        } else if (action == "merge") {
            e.action = TableAction::Merge;
        } else if (action == "drop") {
            e.action = TableAction::Drop;
        } else if (action == "whitespace-separator") {
            e.action = TableAction::WhitespaceSeparator;
        } else {
            reject(line_no, "unknown action '" + action + "'");
        }
        if (e.context.empty()) reject(line_no, "empty context");
        if (e.python_terminal.empty()) reject(line_no, "empty python terminal");

        if (e.has_placeholder()) {
            if (!valid_placeholder(e.simpy_token)) {
                reject(line_no, "placeholder '" + e.simpy_token + "' does not match <[a-z_]+>");
            }
            if (!seen_placeholders.insert(e.simpy_token).second) {
                reject(line_no, "duplicate placeholder " + e.simpy_token);
            }
            if (e.action == TableAction::Merge && e.terminals().size() < 2) {
                reject(line_no, "merge entry needs at least two terminals");
            }
            if (e.action == TableAction::Replace && e.terminals().size() != 1) {
                reject(line_no, "replace entry takes exactly one terminal");
            }
        } else {
            if (e.simpy_token != "-") reject(line_no, std::string(action_name(e.action)) + " entry takes '-' as token");
            if (e.context == "global") {
                reject(line_no, std::string(action_name(e.action)) + " entry must name the production it applies to");
            }
        }
        if (!seen_keys.insert({e.context, e.python_terminal}).second) {
            reject(line_no, "duplicate entry for '" + e.python_terminal + "' in context " + e.context);
        }
        table.entries_.push_back(std::move(e));
    }

    if (strict) {
        for (const auto& m : mandatory_placeholders()) {
            if (!seen_placeholders.count(m)) throw TableError("grammar table: missing mandatory placeholder " + m);
        }
        if (seen_placeholders.size() != kDefaultPlaceholderCount) {
            throw TableError("grammar table: expected " + std::to_string(kDefaultPlaceholderCount) +
                             " placeholders, found " + std::to_string(seen_placeholders.size()));
        }
    }
    return table;
}

std::size_t GrammarTable::placeholder_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.has_placeholder() ? 1 : 0;
    return n;
}

std::vector<std::string> GrammarTable::placeholders() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.has_placeholder()) out.push_back(e.simpy_token);
    }
    return out;
}

const TableEntry* GrammarTable::find_placeholder(std::string_view token) const {
    for (const auto& e : entries_) {
        if (e.has_placeholder() && e.simpy_token == token) return &e;
    }
    return nullptr;
}

bool GrammarTable::is_placeholder(std::string_view token) const {
    return find_placeholder(token) != nullptr;
}

const TableEntry* GrammarTable::lookup(std::string_view terminal, std::string_view context) const {
    const TableEntry* global = nullptr;
    for (const auto& e : entries_) {
        if (e.python_terminal != terminal) continue;
        if (e.context == context) return &e;
        if (e.context == "global") global = &e;
    }
    return global;
}

std::string GrammarTable::to_text() const {
    std::ostringstream out;
    out << "#version: " << version_ << "\n";
    for (const auto& e : entries_) {
        out << e.context << '\t' << action_name(e.action) << '\t' << e.python_terminal << '\t' << e.simpy_token
            << '\n';
    }
    return out.str();
}

const std::string& default_table_text() {
    static const std::string text = kEmbeddedGrammarTable;
    return text;
}

const GrammarTable& default_table() {
    static const GrammarTable table = GrammarTable::parse(default_table_text(), true);
    return table;
}

GrammarTable load_table(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableError("cannot open grammar table '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return GrammarTable::parse(ss.str(), strict);
}

GrammarTable table_from_env_or_default() {
    const char* path = std::getenv("SIMPY_TABLE");
    if (path != nullptr && *path != '\0') return load_table(path);
    return default_table();
}

} // namespace simpy
