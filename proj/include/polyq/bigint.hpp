#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace polyq {

// Exact representation counts and function-field exponents outgrow 64 bits.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace polyq
