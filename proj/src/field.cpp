#include "cactus/field.hpp"

#include <charconv>

namespace cactus {

namespace {

struct Fraction {
  std::string numerator;
  std::string denominator;
};

Fraction split_fraction(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto slash = text.find('/');
  Fraction f;
  f.numerator = std::string(trim(text.substr(0, slash)));
  f.denominator = slash == std::string_view::npos ? "1" : std::string(trim(text.substr(slash + 1)));
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid_int(f.numerator) || !valid_int(f.denominator))
    throw FieldError("malformed scalar '" + std::string(text) + "', expected \"p/q\"");
  return f;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Rational Field<Rational>::parse(std::string_view text) const {
  const auto f = split_fraction(text);
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  Rational num(strip_plus(f.numerator));
  Rational den(strip_plus(f.denominator));
  if (den.is_zero()) throw FieldError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

Fp Field<Fp>::parse(std::string_view text) const {
  const auto f = split_fraction(text);
  auto mod_of = [this](const std::string& s) {
    // Reduce digit by digit so that arbitrarily long integers are accepted.
    bool negative = s[0] == '-';
    long long acc = 0;
    for (char c : s) {
      if (c < '0' || c > '9') continue;
      acc = (acc * 10 + (c - '0')) % static_cast<long long>(prime);
    }
    return Fp(negative ? -acc : acc, prime);
  };
  const Fp den = mod_of(f.denominator);
  if (den.is_zero())
    throw FieldError("denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(prime));
  return mod_of(f.numerator) / den;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return FieldSpec{};
  if (text.starts_with("p:")) {
    const auto digits = text.substr(2);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw FieldError("malformed field '" + std::string(text) + "'");
    if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
    if (p >= (1ULL << 31)) throw FieldError("prime modulus must be below 2^31");
    return FieldSpec{static_cast<std::uint32_t>(p)};
  }
  throw FieldError("unknown field '" + std::string(text) + "', expected q or p:<prime>");
}

}  // namespace cactus
