#include "permcode/bigint.hpp"

#include <cctype>

#include "permcode/error.hpp"

namespace permcode {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(std::size_t n) {
  BigInt result = 1;
  for (std::size_t i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt parse_bigint(const std::string& decimal) {
  if (decimal.empty()) fail(ErrorCode::Parse, "empty integer");
  for (char c : decimal) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorCode::Parse, "not a non-negative decimal integer: " + decimal);
    }
  }
  return BigInt(decimal);
}

BigRational parse_probability(const std::string& text) {
  BigRational value;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::Parse, "zero denominator: " + text);
    value = BigRational(num, den);
  } else {
    auto dot = text.find('.');
    std::string whole = text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = parse_bigint(whole) * den + (frac.empty() ? BigInt(0) : parse_bigint(frac));
    value = BigRational(num, den);
  }
  if (value > 1) fail(ErrorCode::Parse, "probability above 1: " + text);
  return value;
}

}  // namespace permcode
