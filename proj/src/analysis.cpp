#include "analysis.hpp"

#include <algorithm>

#include "errors.hpp"
#include "semantics.hpp"

namespace cfa {

namespace {

std::vector<Rat> times_matrix(const std::vector<Rat>& v, const std::vector<std::vector<Rat>>& m) {
    std::vector<Rat> out(v.size(), Rat(0));
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (v[r] == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (m[r][c] != 0) out[c] += v[r] * m[r][c];
    }
    return out;
}

// Row-reduced basis for exact span tests; pivots are first nonzero columns.
struct Basis {
    std::vector<std::vector<Rat>> rows;
    std::vector<std::size_t> pivots;

    // Reduces v against the basis; returns false if it was dependent.
    bool insert(std::vector<Rat> v) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v[pivots[i]] != 0) {
                Rat f = v[pivots[i]];
                for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows[i][c];
            }
        auto nz = std::find_if(v.begin(), v.end(), [](const Rat& r) { return r != 0; });
        if (nz == v.end()) return false;
        std::size_t piv = (std::size_t)(nz - v.begin());
        Rat lead = v[piv];
        for (Rat& r : v) r /= lead;
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

std::vector<std::string> all_strings(const std::string& alphabet, int len) {
    std::vector<std::string> out{""};
    for (int i = 0; i < len; ++i) {
        std::vector<std::string> next;
        for (const auto& p : out)
            for (char c : alphabet) next.push_back(p + c);
        out = std::move(next);
        if (out.size() > 500'000) fail(ErrorCode::ScaleError, "enumeration too large");
    }
    return out;
}

}  // namespace

PrefixVector prefix_vector(const Pfa& p, const std::string& w) {
    check_alphabet(p.alphabet, w);
    std::vector<Rat> v = times_matrix(p.initial, p.matrices.at(LEND));
    for (char c : w) v = times_matrix(v, p.matrices.at(c));
    return {std::move(v), w};
}

std::vector<std::string> spanning_prefix_set(const Pfa& p, const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) fail(ErrorCode::RangeError, "need at least one prefix");
    Basis basis;
    std::vector<std::string> s;
    for (const auto& w : prefixes)
        if (basis.insert(prefix_vector(p, w).vec)) s.push_back(w);
    return s;
}

AffineDecomposition affine_decomposition(const Pfa& p, const std::vector<std::string>& s, const std::string& x) {
    if (s.empty()) fail(ErrorCode::RangeError, "empty spanning set");
    std::size_t dim = (std::size_t)p.num_states, k = s.size();
    // Augmented system: columns are the spanning vectors, rhs is x's vector.
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(k + 1, Rat(0)));
    for (std::size_t j = 0; j < k; ++j) {
        auto v = prefix_vector(p, s[j]).vec;
        for (std::size_t r = 0; r < dim; ++r) m[r][j] = v[r];
    }
    auto target = prefix_vector(p, x).vec;
    for (std::size_t r = 0; r < dim; ++r) m[r][k] = target[r];

    std::vector<std::size_t> pivot_row(k, SIZE_MAX);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < dim; ++col) {
        std::size_t pr = row;
        while (pr < dim && m[pr][col] == 0) ++pr;
        if (pr == dim) continue;
        std::swap(m[row], m[pr]);
        Rat lead = m[row][col];
        for (auto& e : m[row]) e /= lead;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_row[col] = row++;
    }
    for (std::size_t r = row; r < dim; ++r)
        if (m[r][k] != 0) fail(ErrorCode::NotInSpan, "prefix vector of '" + x + "' is outside the span");

    AffineDecomposition out;
    out.coefficients.assign(k, Rat(0));
    for (std::size_t j = 0; j < k; ++j)
        if (pivot_row[j] != SIZE_MAX) out.coefficients[j] = m[pivot_row[j]][k];
    out.sum = 0;
    out.min_coefficient = out.coefficients.empty() ? Rat(0) : out.coefficients[0];
    for (const Rat& c : out.coefficients) {
        out.sum += c;
        out.min_coefficient = std::min(out.min_coefficient, c);
    }
    return out;
}

ExtensionReport check_cequal_extension(const Pfa& p, const std::string& family_name, int n, int m, int l,
                                       const std::string& z) {
    const PromiseFamily& fam = family(family_name);
    if (l < 0 || l > m - 1) fail(ErrorCode::RangeError, "need 0 <= l <= m-1");
    if ((int)z.size() != l) fail(ErrorCode::LengthError, "z must have length l");
    ExtensionReport report;
    for (const auto& x : all_strings(fam.alphabet, m - l))
        if (fam.classify(n, x + z) == Verdict3::Positive) report.base.push_back(x);
    if (report.base.empty()) return report;  // vacuous
    report.span = spanning_prefix_set(p, report.base);
    for (const auto& y : all_strings(fam.alphabet, l)) {
        bool all_pos = true;
        for (const auto& w : report.span)
            if (fam.classify(n, w + y) != Verdict3::Positive) { all_pos = false; break; }
        if (!all_pos) continue;
        ++report.candidates_checked;
        for (const auto& x : report.base)
            if (fam.classify(n, x + y) != Verdict3::Positive) report.violations.push_back({y, x});
    }
    return report;
}

std::optional<std::string> sign_pattern(const std::string& family_name, int n, const std::vector<std::string>& s,
                                        const std::string& y) {
    const PromiseFamily& fam = family(family_name);
    std::string bits;
    for (const auto& w : s) {
        switch (fam.classify(n, w + y)) {
            case Verdict3::Positive: bits.push_back('1'); break;
            case Verdict3::Negative: bits.push_back('0'); break;
            case Verdict3::Invalid: return std::nullopt;
        }
    }
    return bits;
}

Int funop_apply(const std::string& op, const Int& a, const std::optional<Int>& b) {
    auto binary = [&]() -> const Int& {
        if (!b) fail(ErrorCode::RangeError, "'" + op + "' needs two operands");
        return *b;
    };
    auto floordiv = [](const Int& x, const Int& y) {
        Int q = x / y;
        if (x % y != 0 && ((x < 0) != (y < 0))) --q;
        return q;
    };
    if (op == "add") return a + binary();
    if (op == "mul") return a * binary();
    if (op == "propersub") { const Int& v = binary(); return a > v ? Int(a - v) : Int(0); }
    if (op == "intdiv") {
        const Int& v = binary();
        if (v == 0) fail(ErrorCode::DivisionByZero, "integer division by zero");
        return floordiv(a, v);
    }
    if (op == "max") return std::max(a, binary());
    if (op == "min") return std::min(a, binary());
    if (op == "dec1") return a > 0 ? Int(a - 1) : Int(0);  // proper decrement
    if (op == "half") return floordiv(a, 2);
    fail(ErrorCode::RangeError, "unknown functional operation '" + op + "'");
}

}  // namespace cfa
