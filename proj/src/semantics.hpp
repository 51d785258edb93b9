#pragma once

#include <optional>
#include <string>
#include <vector>

#include "machines.hpp"

namespace cfa {

// Exact path counts over the endmarked input LEND x REND via a table walk.
PathCounts count_paths(const Nfa& a, const std::string& x);

// Accepting minus rejecting path count.
Int gap_value(const Nfa& a, const std::string& x);

enum class PathLabel { Accepting, Rejecting, Improper };

struct PathRecord {
    std::vector<State> states;  // visited states, starting at the start state
    PathLabel label;
};

// Brute-force oracle: walks every computation path explicitly.  Throws
// CapExceeded once more than `limit` paths have been resolved.
std::vector<PathRecord> enumerate_paths(const Nfa& a, const std::string& x, std::uint64_t limit = 1'000'000);

PathCounts tally(const std::vector<PathRecord>& paths);

struct PfaResult {
    Rat accept, reject, other;  // other = mass alive in non-halting states after REND
};
PfaResult pfa_probabilities(const Pfa& p, const std::string& x);

// One-way deterministic transducer; nullopt when a transition is missing.
std::optional<std::string> transduce(const Dft& t, const std::string& x);

struct DpdaOutcome {
    enum class Verdict { Accept, Reject, Improper, CapExceeded } verdict;
    std::uint64_t steps = 0;
    int turns = 0;  // switches from a stack-height-increasing phase to a non-increasing one
};
DpdaOutcome dpda_run(const Dpda& d, const std::string& x, std::uint64_t step_cap = 1'000'000);

void check_alphabet(const std::string& alphabet, const std::string& x);

std::string endmarked(const std::string& x);

}  // namespace cfa
