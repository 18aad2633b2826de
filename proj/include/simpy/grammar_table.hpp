#pragma once

// The Python -> SimPy terminal mapping, as data.
//
// File format: UTF-8, one entry per line,
//     context <TAB> action <TAB> python_terminal(s) <TAB> simpy_token
// Blank lines and lines starting with '#' are ignored, except `#version: N`.
// Actions: replace, merge (several space-separated terminals become one
// placeholder), drop and whitespace-separator (simpy_token is "-").

#include <string>
#include <string_view>
#include <vector>

#include "simpy/ast.hpp"

namespace simpy {

class TableError : public Error {
public:
    using Error::Error;
};

enum class TableAction { Replace, Merge, Drop, WhitespaceSeparator };

std::string_view action_name(TableAction action);

struct TableEntry {
    std::string context;
    TableAction action = TableAction::Replace;
    std::string python_terminal;
    std::string simpy_token;
    int line = 0;

    std::vector<std::string> terminals() const;
    bool has_placeholder() const {
        return action == TableAction::Replace || action == TableAction::Merge;
    }
};

/// Placeholders every shipped table must contain.
const std::vector<std::string>& mandatory_placeholders();

inline constexpr std::size_t kDefaultPlaceholderCount = 78;

class GrammarTable {
public:
    /// Parses and validates table text. With `strict`, also enforces the
    /// shipped-table roster: exactly 78 placeholders including the mandatory
    /// ones. Throws TableError naming the first violated rule.
    static GrammarTable parse(std::string_view text, bool strict = false);

    const std::vector<TableEntry>& entries() const { return entries_; }
    int version() const { return version_; }

    std::size_t placeholder_count() const;
    std::vector<std::string> placeholders() const;
    bool is_placeholder(std::string_view token) const;
    const TableEntry* find_placeholder(std::string_view token) const;

    /// Most specific entry for `terminal`: an entry for `context` wins over
    /// a global one. nullptr means the terminal is kept verbatim.
    const TableEntry* lookup(std::string_view terminal, std::string_view context = "global") const;

    /// Serialized form accepted by parse().
    std::string to_text() const;

private:
    std::vector<TableEntry> entries_;
    int version_ = 1;
};

/// The embedded default table (validated strictly on first use).
const GrammarTable& default_table();
const std::string& default_table_text();

/// Loads a table file; strict validation only when `strict` is set.
GrammarTable load_table(const std::string& path, bool strict = false);

/// Table named by $SIMPY_TABLE if set, otherwise the default.
GrammarTable table_from_env_or_default();

} // namespace simpy
