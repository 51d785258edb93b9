#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cfa {

// Arbitrary-precision integer and exact rational. All counting and all
// probability arithmetic in this library is exact; no floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

}  // namespace cfa
