#pragma once

#include <functional>
#include <string>
#include <vector>

#include "machines.hpp"

namespace cfa {

enum class Verdict3 { Positive, Negative, Invalid };

const char* verdict_name(Verdict3 v);

// A promise problem family: per-index classifier, enumerator of promise
// instances (length-then-lexicographic), and an optional witness machine.
struct PromiseFamily {
    std::string name;
    std::string alphabet;
    std::function<Verdict3(int n, const std::string&)> classify;
    std::function<std::vector<std::string>(int n, int max_len)> enumerate;  // max_len 0 = family default
    bool has_machine = false;
};

const PromiseFamily& family(const std::string& name);  // UnknownFamily
std::vector<std::string> family_names();

Machine build_machine(const std::string& name, int n);  // NoMachine for machine-less families

// All padded sequences over entries [0,bound] with k blocks of width m.
std::vector<std::string> padded_universe(int bound, int m, int k);

}  // namespace cfa
