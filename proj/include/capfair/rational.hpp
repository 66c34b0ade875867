#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace capfair {

// All utilities and derived quantities are exact rationals.  GMP's mpq_class
// gives us arbitrary precision with the usual operator overloads; the helpers
// below exist because mpq_class has two sharp edges we must not expose:
//
//   * the (num, den) and string constructors do NOT canonicalize, and every
//     comparison in GMP assumes canonical form, so we normalize on entry;
//   * the textual format accepted by mpq_class is looser than our I/O
//     contract (it allows whitespace, bases, etc.), so parsing is strict here.
using Rational = mpq_class;

// Builds num/den in canonical form.  den must be nonzero.
Rational make_rational(long num, long den = 1);

// Parses "p", "-p", or "p/q" (decimal, optional leading sign on the
// numerator, q > 0 after sign normalization).  Throws std::invalid_argument
// on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Renders as "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string format_rational(const Rational& value);

// Value of a ratio of utility differences.  The denominator of such a ratio
// can vanish while the numerator does not, so the type is the rationals
// extended with two infinities, ordered -inf < every finite value < +inf.
//
// The zero conventions are part of the contract and are encoded in
// from_quotient: a zero numerator yields finite 0 regardless of the
// denominator; a zero denominator with nonzero numerator yields the signed
// infinity matching the numerator's sign.
class DifferenceRatio {
 public:
  static DifferenceRatio finite(Rational value);
  static DifferenceRatio positive_infinity();
  static DifferenceRatio negative_infinity();

  // Applies the zero conventions described above to numerator/denominator.
  static DifferenceRatio from_quotient(const Rational& numerator,
                                       const Rational& denominator);

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_positive_infinity() const { return kind_ == Kind::positive_infinity; }
  bool is_negative_infinity() const { return kind_ == Kind::negative_infinity; }

  // Precondition: is_finite().
  const Rational& value() const;

  // Three-way comparison under the total order; returns <0, 0, or >0.
  int compare(const DifferenceRatio& other) const;

  // Comparison against a finite rational (e.g. a weight ratio w1/w2).
  int compare(const Rational& finite_value) const;

  std::string str() const;  // "p/q", "+inf", or "-inf"

  friend bool operator==(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) != 0;
  }
  friend bool operator<(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) < 0;
  }
  friend bool operator<=(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) <= 0;
  }
  friend bool operator>(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) > 0;
  }
  friend bool operator>=(const DifferenceRatio& a, const DifferenceRatio& b) {
    return a.compare(b) >= 0;
  }

 private:
  enum class Kind { negative_infinity, finite, positive_infinity };

  DifferenceRatio(Kind kind, Rational value)
      : kind_(kind), value_(std::move(value)) {}

  Kind kind_;
  Rational value_;  // meaningful only when kind_ == finite
};

}  // namespace capfair
