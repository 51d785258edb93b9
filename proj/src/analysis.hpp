#pragma once

#include <optional>
#include <string>
#include <vector>

#include "families.hpp"
#include "machines.hpp"

namespace cfa {

struct PrefixVector {
    std::vector<Rat> vec;  // nu_ini * M_LEND * M_w, exact
    std::string prefix;
};

PrefixVector prefix_vector(const Pfa& p, const std::string& w);

// Greedy exact Gaussian elimination in input order; result is a maximal
// independent subset whose vectors span all input vectors.
std::vector<std::string> spanning_prefix_set(const Pfa& p, const std::vector<std::string>& prefixes);

struct AffineDecomposition {
    std::vector<Rat> coefficients;  // aligned with the spanning set
    Rat sum;                        // diagnostics: the proof wants sum = 1 ...
    Rat min_coefficient;            // ... and nonnegativity; neither is asserted
};

// Writes the prefix vector of x as a combination of the spanning set's
// vectors; throws NotInSpan when no exact solution exists.
AffineDecomposition affine_decomposition(const Pfa& p, const std::vector<std::string>& s, const std::string& x);

struct ExtensionViolation {
    std::string y, x;  // xy classified non-Positive although Sy was all-Positive
};

struct ExtensionReport {
    std::vector<std::string> base;      // A = {x of length m : xz Positive}
    std::vector<std::string> span;      // S, a spanning subset of A
    std::size_t candidates_checked = 0;  // y's with Sy all-Positive
    std::vector<ExtensionViolation> violations;
};

ExtensionReport check_cequal_extension(const Pfa& p, const std::string& family_name, int n, int m, int l,
                                       const std::string& z);

// One bit per spanning prefix: 1 if w_i y is Positive, 0 if Negative;
// nullopt (undefined) if any concatenation is Invalid.
std::optional<std::string> sign_pattern(const std::string& family_name, int n, const std::vector<std::string>& s,
                                        const std::string& y);

// Value-level ops: add mul propersub intdiv dec1 half max min.
Int funop_apply(const std::string& op, const Int& a, const std::optional<Int>& b = std::nullopt);

}  // namespace cfa
