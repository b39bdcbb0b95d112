#include <charconv>
#include <cmath>
#include <string>

#include "sawlab/error.hpp"
#include "sawlab/mcsaw.hpp"

namespace sawlab::mcsaw {

ExponentSet exponent_algebra(Rational nu, Rational gamma, Rational rho) {
  if (nu <= 0) throw InvalidArgument("exponent_algebra: nu must be > 0");
  ExponentSet e;
  e.nu = nu;
  e.gamma = gamma;
  e.rho = rho;
  e.a = 1 + (2 * rho - gamma) / (2 * nu);
  e.b = 1 - gamma / (2 * nu);
  e.a_prime = 2;
  e.b_prime = 2 - 1 / nu;
  e.alpha = 2 - 2 * nu;
  return e;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument("not a rational number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InvalidArgument("too many decimal digits");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto whole_text = text.substr(0, dot);
    const bool negative = !whole_text.empty() && whole_text.front() == '-';
    const std::int64_t whole =
        whole_text.empty() || whole_text == "-" ? 0 : parse_int(whole_text);
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    const std::int64_t num = whole * scale + (negative ? -part : part);
    return Rational(num, scale);
  }
  return Rational(parse_int(text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" +
         std::to_string(r.denominator());
}

}  // namespace sawlab::mcsaw
