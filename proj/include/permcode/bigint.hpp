#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace permcode {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k);
BigInt factorial(std::size_t n);
BigInt parse_bigint(const std::string& decimal);
inline std::string to_string(const BigInt& v) { return v.str(); }
/// Parses "0.95", "1", "3/4" into an exact rational in [0, 1].
BigRational parse_probability(const std::string& text);

}  // namespace permcode
