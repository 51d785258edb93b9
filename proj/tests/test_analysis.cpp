#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "analysis.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "families.hpp"

using namespace cfa;

namespace {

Pfa lsp_pfa() {
    return gap_balanced_pfa(complement_gapwise(build_machine("Lsp", 2).nfa()));
}

std::vector<std::string> short_strings(const std::string& alphabet, int max_len) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((int)out[i].size() == max_len) continue;
        for (char c : alphabet) out.push_back(out[i] + c);
    }
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

// independent rank oracle: eliminate in reverse order with last-nonzero pivots
std::size_t rank_oracle(std::vector<std::vector<Rat>> rows) {
    std::reverse(rows.begin(), rows.end());
    std::size_t rank = 0;
    std::vector<std::pair<std::size_t, std::vector<Rat>>> basis;
    for (auto& v : rows) {
        for (const auto& [piv, b] : basis)
            if (v[piv] != 0) {
                Rat f = v[piv] / b[piv];
                for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * b[c];
            }
        std::size_t piv = v.size();
        for (std::size_t c = v.size(); c-- > 0;)
            if (v[c] != 0) { piv = c; break; }
        if (piv == v.size()) continue;
        basis.push_back({piv, v});
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("prefix vectors obey the concatenation law") {
    Pfa p = lsp_pfa();
    for (const auto& w : short_strings("01#", 2)) {
        auto full = prefix_vector(p, w + "0#").vec;
        // stepwise: extend w's vector by the remaining matrices
        auto v = prefix_vector(p, w).vec;
        for (char c : std::string("0#")) {
            std::vector<Rat> next(v.size(), Rat(0));
            const auto& mat = p.matrices.at(c);
            for (std::size_t r = 0; r < v.size(); ++r)
                for (std::size_t k = 0; k < v.size(); ++k) next[k] += v[r] * mat[r][k];
            v = next;
        }
        CHECK(v == full);
    }
}

TEST_CASE("spanning set matches an independent rank oracle") {
    Pfa p = lsp_pfa();
    auto prefixes = short_strings("01#", 3);
    auto span = spanning_prefix_set(p, prefixes);
    CHECK((int)span.size() <= p.num_states);
    std::vector<std::vector<Rat>> rows;
    for (const auto& w : prefixes) rows.push_back(prefix_vector(p, w).vec);
    CHECK(span.size() == rank_oracle(rows));
    // members of the span are themselves prefixes from the input, in order
    CHECK(std::includes(prefixes.begin(), prefixes.end(), span.begin(), span.end(),
                        [](const std::string& a, const std::string& b) {
                            return a.size() != b.size() ? a.size() < b.size() : a < b;
                        }));
}

TEST_CASE("affine decomposition reconstructs exactly") {
    Pfa p = lsp_pfa();
    auto prefixes = short_strings("01#", 3);
    auto span = spanning_prefix_set(p, prefixes);
    for (const auto& x : prefixes) {
        AffineDecomposition dec = affine_decomposition(p, span, x);
        std::vector<Rat> recon(p.num_states, Rat(0));
        Rat sum = 0;
        for (std::size_t j = 0; j < span.size(); ++j) {
            auto v = prefix_vector(p, span[j]).vec;
            for (int r = 0; r < p.num_states; ++r) recon[r] += dec.coefficients[j] * v[r];
            sum += dec.coefficients[j];
        }
        CHECK(recon == prefix_vector(p, x).vec);
        CHECK(dec.sum == sum);
    }
    // a member of S decomposes as a unit vector
    AffineDecomposition unit = affine_decomposition(p, span, span[1]);
    for (std::size_t j = 0; j < span.size(); ++j) CHECK(unit.coefficients[j] == (j == 1 ? 1 : 0));
}

TEST_CASE("vectors outside the span are rejected") {
    Pfa p = lsp_pfa();
    // restrict S artificially so some vector falls outside
    std::vector<std::string> tiny{""};
    bool threw = false;
    for (const auto& x : short_strings("01#", 2)) {
        try {
            affine_decomposition(p, tiny, x);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotInSpan);
            threw = true;
        }
    }
    CHECK(threw);
}

TEST_CASE("extension implication on the gap-complemented chain machine") {
    ExtensionReport r = check_cequal_extension(lsp_pfa(), "Lsp", 2, 4, 1, "#");
    CHECK(!r.base.empty());
    CHECK((int)r.span.size() <= lsp_pfa().num_states);
    CHECK(r.candidates_checked > 0);
    CHECK(r.violations.empty());
}

TEST_CASE("extension scale guards") {
    CHECK_THROWS_AS(check_cequal_extension(lsp_pfa(), "Lsp", 2, 2, 2, "##"), Error);  // l > m-1
    CHECK_THROWS_AS(check_cequal_extension(lsp_pfa(), "Lsp", 2, 40, 1, "#"), Error);  // enumeration too large
}

TEST_CASE("sign patterns") {
    CHECK(sign_pattern("Lsp", 2, {"0#", "00#"}, "0") == "01");
    CHECK(sign_pattern("Lsp", 2, {"0#", "0#0"}, "") == "10");
    CHECK(!sign_pattern("Lsp", 2, {"0#"}, "#"));  // second separator: undefined
}

TEST_CASE("functional operations") {
    CHECK(funop_apply("intdiv", 7, Int(2)) == 3);
    CHECK(funop_apply("intdiv", -7, Int(2)) == -4);  // floor, not truncation
    CHECK(funop_apply("propersub", 3, Int(5)) == 0);
    CHECK(funop_apply("propersub", 5, Int(3)) == 2);
    CHECK(funop_apply("dec1", 0) == 0);
    CHECK(funop_apply("dec1", 9) == 8);
    CHECK(funop_apply("half", -3) == -2);
    CHECK(funop_apply("max", 2, Int(5)) == 5);
    CHECK(funop_apply("min", 2, Int(5)) == 2);
    CHECK(funop_apply("add", Int("123456789012345678901234567890"), Int(1)) ==
          Int("123456789012345678901234567891"));
    CHECK_THROWS_AS(funop_apply("intdiv", 1, Int(0)), Error);
    CHECK_THROWS_AS(funop_apply("add", 1, std::nullopt), Error);
    CHECK_THROWS_AS(funop_apply("nope", 1, Int(1)), Error);
}
