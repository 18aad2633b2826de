#pragma once

// Random-AST differential testing of the two frontends.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/grammar_table.hpp"

namespace simpy {

struct FuzzOptions {
    int max_expr_depth = 3;
    int max_block_depth = 3;
    int max_statements = 4;
    /// Generate only empty modules (harness self-test).
    bool empty_modules = false;
    /// Shrink counterexamples before reporting them.
    bool shrink = true;
    /// Stop collecting counterexamples after this many.
    std::size_t max_counterexamples = 10;
};

struct CaseResult {
    /// Empty when every property held, else the first one that failed.
    std::string failed_property;
    std::string detail;
    int max_lookahead = 0;
    int backtracks = 0;
    /// The tree contains a block, so SimPy must need fewer tokens than Python
    /// once the surcharge for string concatenation and placeholder-named
    /// operands is taken off.
    bool token_property_applies = false;
};

/// Checks every round-trip property on one tree.
CaseResult check_case(const Ast& ast, const GrammarTable& table = default_table());

/// Greedy structural shrinking: repeatedly takes the first one-step
/// reduction for which `still_fails` holds.
Ast shrink_ast(const Ast& ast, const std::function<bool(const Ast&)>& still_fails, int max_steps = 2000);

struct Counterexample {
    std::uint64_t case_index = 0;
    std::string property;
    std::string detail;
    std::string dump;
    std::size_t original_nodes = 0;
    std::size_t shrunk_nodes = 0;
};

struct FuzzSummary {
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::vector<Counterexample> counterexamples;
    int max_lookahead = 0;
    std::size_t backtracking_parses = 0;
    /// Parses that succeeded but produced a different tree than the one the
    /// text was emitted from.
    std::size_t alternate_parses = 0;
    std::size_t double_line_seps = 0;
    std::size_t token_property_checked = 0;
    std::size_t token_property_failures = 0;
};

/// Case i uses its own generator seeded with (seed, i), so any case can be
/// replayed alone.
FuzzSummary fuzz_roundtrip(std::uint64_t seed, std::size_t n, const GrammarTable& table = default_table(),
                           FuzzOptions options = {});

Ast generate_case(std::uint64_t seed, std::uint64_t index, const FuzzOptions& options = {});

} // namespace simpy
