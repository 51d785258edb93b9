#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "machines.hpp"

namespace cfa {

enum class ClassCond { OneN, OneU, OneParity, OneCeq, OneSP, OneP };

ClassCond class_cond_from_name(const std::string& name);  // "1N" "1U" "1parity" "1Ceq" "1SP" "1P"

struct CheckResult {
    std::string id;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::string scale;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string render() const;  // deterministic given (suite, seed, scale)
};

// Evaluates the class predicate (counting or gap semantics per condition) on
// every enumerated valid string of the family.
SuiteReport check_class_condition(ClassCond cond, const Nfa& machine, const std::string& family_name, int n,
                                  int max_len);

// Named invariant suites; `negative_control` injects deliberately broken
// machines whose checks are expected to FAIL.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const std::string& scale,
                      bool negative_control = false);

// Seeded random machine over `alphabet`: per (state, symbol) successor counts
// drawn from {0: 15%, 1: 50%, 2: 25%, 3: 10%}.
Nfa random_nfa(std::mt19937_64& rng, int max_states, const std::string& alphabet);

std::string random_input(std::mt19937_64& rng, const std::string& alphabet, int max_len);

}  // namespace cfa
