#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mixtilt {

using Integer = mpz_class;

/// Raised when a self-duality relation fails to hold on computed data.
/// This always indicates an upstream inconsistency, never a user error.
class SelfDualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
  Sparse Laurent polynomial in one variable t with arbitrary-precision
  integer coefficients. Zero coefficients are never stored, so the zero
  polynomial is the empty map and structural equality is value equality.
*/
class LaurentPoly {
 public:
  using Terms = std::map<int, Integer>;

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT: constants convert implicitly
  LaurentPoly(std::initializer_list<std::pair<const int, Integer>> terms);

  static LaurentPoly monomial(int exponent, Integer coeff = 1);
  /// t - t^{-1}
  static LaurentPoly t_minus_tinv();

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Integer coeff(int exponent) const;
  /// Smallest / largest exponent with nonzero coefficient; the polynomial
  /// must be nonzero.
  int min_exponent() const;
  int max_exponent() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(int exponent, const Integer& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  /// Multiply by t^k.
  LaurentPoly shifted(int k) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Descending exponents, e.g. "t^2 - 2 + t^-2"; zero prints "0".
  std::string to_string(std::string_view var = "t") const;
  /// Ascending exponents, used for KL polynomials in q ("1 + q").
  std::string to_string_ascending(std::string_view var) const;

 private:
  Terms terms_;
};

/// t -> t^{-1}
LaurentPoly bar(const LaurentPoly& p);
/// Substitute t -> -t.
LaurentPoly sign_twist(const LaurentPoly& p);

bool is_nonneg(const LaurentPoly& p);
/// No i >= 0 with both coeff(i) and coeff(-i) nonzero; in particular no
/// constant term.
bool is_noncancelling(const LaurentPoly& p);
/// Support inside {1, 2, 3, ...}.
bool is_in_tZt(const LaurentPoly& p);
bool is_antisymmetric(const LaurentPoly& p);

enum class SplitRule { PositivePart, NonCancel };

std::string_view to_string(SplitRule rule);

/*
  Solve W - bar(W) = g for antisymmetric g.

  PositivePart: the unique solution supported in strictly positive degrees.
  NonCancel:    the unique solution with non-negative coefficients and no
                pair of opposite exponents both present.

  Throws SelfDualityError when g is not antisymmetric.
*/
LaurentPoly split(const LaurentPoly& g, SplitRule rule);

}  // namespace mixtilt
