#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace cfa::enc {

// bin(k): binary representation of k > 0 leading with 1; bin(0) is empty.
std::string bin(const Int& k);

// trans(k): empty for 0, '1' + bin(k) for k > 0, '0' + bin(-k) for k < 0.
std::string encode_trans(const Int& v);

// Strict inverse of encode_trans; rejects anything outside its image.
Int decode_trans(const std::string& code);

// [i1,...,ik] = 1^{i1} 0 1^{i2} 0 ... 1^{ik} 0, all entries positive.
std::string bracket_encode(const std::vector<unsigned>& entries);
std::vector<unsigned> bracket_decode(const std::string& s);

// Padded form over width m: blocks 1^{i} 0^{m-i} joined by a single '0';
// entries in [0, n] with n <= m. Length is k*m + k - 1.
std::string padded_encode(const std::vector<unsigned>& entries, unsigned m, unsigned n);
std::vector<unsigned> padded_decode(const std::string& s, unsigned m);

// Set(r) / MSet(r) accessors over a decoded entry list.
std::set<unsigned> entry_set(const std::vector<unsigned>& entries);

// #_sigma(w): occurrences of sigma in w.
std::size_t count_symbol(const std::string& w, char sigma);

// Bitwise inner product of equal-length binary strings.
Int bitwise_dot(const std::string& x, const std::string& y);

}  // namespace cfa::enc
