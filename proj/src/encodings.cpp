#include "encodings.hpp"

#include "errors.hpp"

namespace cfa::enc {

std::string bin(const Int& k) {
    if (k < 0) fail(ErrorCode::RangeError, "bin of negative value");
    if (k == 0) return "";
    std::string s;
    Int v = k;
    while (v > 0) {
        s.push_back(char('0' + int(v & 1)));
        v >>= 1;
    }
    return std::string(s.rbegin(), s.rend());
}

std::string encode_trans(const Int& v) {
    if (v == 0) return "";
    if (v > 0) return "1" + bin(v);
    return "0" + bin(-v);
}

Int decode_trans(const std::string& code) {
    if (code.empty()) return 0;
    // Sign bit followed by bin(k), which must be nonempty and lead with 1.
    if (code.size() < 2 || code[1] != '1') fail(ErrorCode::MalformedCode, "trans code '" + code + "'");
    Int mag = 0;
    for (std::size_t i = 1; i < code.size(); ++i) {
        char c = code[i];
        if (c != '0' && c != '1') fail(ErrorCode::MalformedCode, "non-binary symbol in trans code");
        mag = (mag << 1) + (c - '0');
    }
    if (code[0] == '1') return mag;
    if (code[0] == '0') return -mag;
    fail(ErrorCode::MalformedCode, "bad sign symbol in trans code");
}

std::string bracket_encode(const std::vector<unsigned>& entries) {
    if (entries.empty()) fail(ErrorCode::RangeError, "bracket sequence must be nonempty");
    std::string s;
    for (unsigned i : entries) {
        if (i == 0) fail(ErrorCode::RangeError, "bracket entries must be positive");
        s.append(i, '1');
        s.push_back('0');
    }
    return s;
}

std::vector<unsigned> bracket_decode(const std::string& s) {
    std::vector<unsigned> entries;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t run = 0;
        while (pos < s.size() && s[pos] == '1') {
            ++run;
            ++pos;
        }
        if (run == 0 || pos >= s.size() || s[pos] != '0')
            fail(ErrorCode::MalformedCode, "bracket string '" + s + "'");
        entries.push_back(static_cast<unsigned>(run));
        ++pos;
    }
    if (entries.empty()) fail(ErrorCode::MalformedCode, "empty bracket string");
    return entries;
}

std::string padded_encode(const std::vector<unsigned>& entries, unsigned m, unsigned n) {
    if (entries.empty()) fail(ErrorCode::RangeError, "padded sequence must be nonempty");
    if (n > m) fail(ErrorCode::RangeError, "padded form requires n <= m");
    std::string s;
    bool first = true;
    for (unsigned i : entries) {
        if (i > n) fail(ErrorCode::RangeError, "padded entry out of [0,n]");
        if (!first) s.push_back('0');
        first = false;
        s.append(i, '1');
        s.append(m - i, '0');
    }
    return s;
}

std::vector<unsigned> padded_decode(const std::string& s, unsigned m) {
    if (m == 0) fail(ErrorCode::RangeError, "pad width must be positive");
    if ((s.size() + 1) % (m + 1) != 0) fail(ErrorCode::MalformedCode, "padded string length is not k*m+k-1");
    std::size_t k = (s.size() + 1) / (m + 1);
    std::vector<unsigned> entries;
    for (std::size_t b = 0; b < k; ++b) {
        std::size_t base = b * (m + 1);
        unsigned ones = 0;
        bool in_zeros = false;
        for (unsigned j = 0; j < m; ++j) {
            char c = s[base + j];
            if (c == '1') {
                if (in_zeros) fail(ErrorCode::MalformedCode, "padded block is not 1^i 0^(m-i)");
                ++ones;
            } else if (c == '0') {
                in_zeros = true;
            } else {
                fail(ErrorCode::MalformedCode, "non-binary symbol in padded string");
            }
        }
        if (b + 1 < k && s[base + m] != '0') fail(ErrorCode::MalformedCode, "padded blocks must be separated by 0");
        entries.push_back(ones);
    }
    return entries;
}

std::set<unsigned> entry_set(const std::vector<unsigned>& entries) {
    return {entries.begin(), entries.end()};
}

std::size_t count_symbol(const std::string& w, char sigma) {
    std::size_t n = 0;
    for (char c : w)
        if (c == sigma) ++n;
    return n;
}

Int bitwise_dot(const std::string& x, const std::string& y) {
    if (x.size() != y.size()) fail(ErrorCode::LengthError, "bitwise_dot requires equal lengths");
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == '1' && y[i] == '1') ++acc;
    return acc;
}

}  // namespace cfa::enc
