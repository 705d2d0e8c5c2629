#include "electmap/rational.hpp"

#include <limits>

namespace electmap {

namespace {

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned __int128 abs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-v)
               : static_cast<unsigned __int128>(v);
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  unsigned __int128 g = gcd128(abs128(num), abs128(den));
  num /= static_cast<__int128>(g);
  den /= static_cast<__int128>(g);
  constexpr __int128 kMax = std::numeric_limits<long long>::max();
  constexpr __int128 kMin = std::numeric_limits<long long>::min();
  if (num > kMax || num < kMin || den > kMax) {
    throw std::overflow_error("rational out of 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

Rational Rational::parse(const std::string& text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos) throw std::invalid_argument("empty rational");
  std::string body = text.substr(begin, end - begin + 1);
  size_t slash = body.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(body));
    }
    long long num = std::stoll(body.substr(0, slash));
    long long den = std::stoll(body.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::overflow_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: " + body);
  }
}

}  // namespace electmap
