#pragma once

#include <map>
#include <string>

#include <gmpxx.h>

namespace lcmv {

/// Laurent polynomial with integer coefficients in named symbols. Negative
/// exponents are only meaningful for symbols standing for units.
class SymPoly {
 public:
  using Monomial = std::map<std::string, int>;

  SymPoly() = default;
  SymPoly(long constant);  // NOLINT(google-explicit-constructor)
  static SymPoly symbol(const std::string& name, int exponent = 1);
  static SymPoly monomial(const Monomial& m, const mpz_class& coeff = 1);

  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator-() const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly& operator+=(const SymPoly& o) { return *this = *this + o; }

  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpz_class& c);
  std::map<Monomial, mpz_class> terms_;
};

}  // namespace lcmv
