#include "capfair/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace capfair {

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw std::invalid_argument("rational denominator must be nonzero");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_digits = num;
  bool negative = false;
  if (!num_digits.empty() && (num_digits.front() == '+' || num_digits.front() == '-')) {
    negative = num_digits.front() == '-';
    num_digits.remove_prefix(1);
  }
  if (!all_digits(num_digits) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational literal: '" + std::string(text) + "'");
  }
  // mpq's own string constructor rejects a leading '+', so the sign is
  // re-applied after construction.
  Rational r(std::string(num_digits) + "/" + std::string(den));
  if (negative) r = -r;
  if (r.get_den() == 0) {
    throw std::invalid_argument("rational literal has zero denominator: '" +
                                std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) {
    return value.get_num().get_str();
  }
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

DifferenceRatio DifferenceRatio::finite(Rational value) {
  return DifferenceRatio(Kind::finite, std::move(value));
}

DifferenceRatio DifferenceRatio::positive_infinity() {
  return DifferenceRatio(Kind::positive_infinity, Rational(0));
}

DifferenceRatio DifferenceRatio::negative_infinity() {
  return DifferenceRatio(Kind::negative_infinity, Rational(0));
}

DifferenceRatio DifferenceRatio::from_quotient(const Rational& numerator,
                                               const Rational& denominator) {
  // Zero numerator dominates: the ratio is 0 even when the denominator is
  // also 0.  Only afterwards does a zero denominator produce an infinity.
  if (sgn(numerator) == 0) {
    return finite(Rational(0));
  }
  if (sgn(denominator) == 0) {
    return sgn(numerator) > 0 ? positive_infinity() : negative_infinity();
  }
  Rational q = numerator / denominator;
  q.canonicalize();
  return finite(q);
}

const Rational& DifferenceRatio::value() const {
  if (!is_finite()) {
    throw std::logic_error("value() called on an infinite DifferenceRatio");
  }
  return value_;
}

int DifferenceRatio::compare(const DifferenceRatio& other) const {
  if (kind_ != other.kind_) {
    return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
  }
  if (kind_ != Kind::finite) return 0;
  return cmp(value_, other.value_);
}

int DifferenceRatio::compare(const Rational& finite_value) const {
  switch (kind_) {
    case Kind::negative_infinity: return -1;
    case Kind::positive_infinity: return 1;
    case Kind::finite: return cmp(value_, finite_value);
  }
  return 0;  // unreachable
}

std::string DifferenceRatio::str() const {
  switch (kind_) {
    case Kind::negative_infinity: return "-inf";
    case Kind::positive_infinity: return "+inf";
    case Kind::finite: return format_rational(value_);
  }
  return "";  // unreachable
}

}  // namespace capfair
