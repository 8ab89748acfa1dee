#include "semimatch/params.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace semimatch {
namespace {

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view s) {
  // digits[.digits][e[+-]digits]
  BigInt mantissa = 0;
  unsigned frac_digits = 0;
  bool seen_digit = false;
  bool seen_dot = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: " + std::string(s));
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a number: " + std::string(s));
    ++i;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("not a number: " + std::string(s));
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])) || exponent > 1000) {
        throw std::invalid_argument("not a number: " + std::string(s));
      }
      exponent = exponent * 10 + (s[i] - '0');
    }
    if (negative) exponent = -exponent;
  }
  exponent -= static_cast<long>(frac_digits);
  if (exponent >= 0) return Rational(mantissa * pow10(static_cast<unsigned>(exponent)));
  return Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
}

std::uint64_t to_u64_saturating(const BigInt& x) {
  if (x > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return x.convert_to<std::uint64_t>();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == Rational(0)) throw std::invalid_argument("zero denominator: " + std::string(text));
  return num / den;
}

double to_double(const Rational& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return r.numerator().str();
  return r.numerator().str() + "/" + r.denominator().str();
}

BigInt ceil(const Rational& r) {
  BigInt q = r.numerator() / r.denominator();
  if (q * r.denominator() < r.numerator()) ++q;
  return q;
}

Rational delta(const Rational& k) { return Rational(1) / (Rational(2) * k * (k + 2)); }

std::string_view to_string(Mode mode) {
  return mode == Mode::kBudget ? "budget" : "quiescent";
}

Mode parse_mode(std::string_view text) {
  if (text == "budget") return Mode::kBudget;
  if (text == "quiescent" || text == "until-quiescent") return Mode::kUntilQuiescent;
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

std::optional<BigInt> Params::bundle_budget() const {
  if (!phase_budget) return std::nullopt;
  return BigInt(*phase_budget) * bundles_per_phase;
}

Params compute_params(const Rational& eps, Mode mode, const ParamOverrides& overrides) {
  if (eps <= Rational(0) || eps > Rational(1)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  Params p;
  p.eps = eps;
  p.mode = mode;
  const Rational inv = Rational(1) / eps;
  const Rational inv2 = inv * inv;
  const Rational inv4 = inv2 * inv2;
  const Rational inv6 = inv4 * inv2;

  p.hold_limit = to_u64_saturating(ceil(inv4));
  p.bundles_per_phase = to_u64_saturating(ceil(inv6));
  p.max_path_length = static_cast<std::uint32_t>(to_u64_saturating(ceil(2 * inv)));

  auto at_least_one = [](auto value, const char* name) {
    if (value < 1) throw std::invalid_argument(std::string(name) + " override must be >= 1");
    return value;
  };
  if (overrides.bundles_per_phase) {
    p.bundles_per_phase = at_least_one(*overrides.bundles_per_phase, "tau");
  }
  if (overrides.max_path_length) {
    p.max_path_length = at_least_one(*overrides.max_path_length, "l_max");
  }
  if (overrides.hold_limit) p.hold_limit = at_least_one(*overrides.hold_limit, "limit");

  p.delta_k = delta(2 * inv);
  const Rational tau(BigInt(p.bundles_per_phase));
  const Rational limit(BigInt(p.hold_limit));
  p.active_fraction = (2 + inv) / (eps * tau) + Rational(2) / limit;
  p.structure_size_bound = BigInt(p.bundles_per_phase) * (p.max_path_length + 1) * p.hold_limit;

  const Rational denominator = 2 * p.delta_k - p.active_fraction / eps;
  if (denominator > Rational(0)) {
    const Rational bound = (1 + 2 * Rational(p.structure_size_bound)) / denominator;
    p.phase_budget = to_u64_saturating(ceil(bound));
  }
  if (overrides.phase_budget) p.phase_budget = at_least_one(*overrides.phase_budget, "T");
  return p;
}

}  // namespace semimatch
