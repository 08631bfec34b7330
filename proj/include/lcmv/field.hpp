#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lcmv {

/// Coefficient field for all exact linear algebra: the rationals or Z/p.
///
/// Scalars are carried as mpq_class in both cases. Over Z/p every value is
/// kept in canonical form, an integer in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);
  /// Accepts "q" or "p:<prime>".
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  mpq_class reduce(const mpq_class& x) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
  mpq_class inv(const mpq_class& a) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace lcmv
