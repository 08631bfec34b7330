#include "lcmv/field.hpp"

#include <charconv>

#include "lcmv/error.hpp"

namespace lcmv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  // Products of two residues must fit in 64 bits for the sparse kernels.
  if (p >= (std::uint64_t{1} << 31)) {
    throw Error(ErrorCode::kInvalidArgument, "prime characteristic must be below 2^31");
  }
  if (!is_prime(p)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(p) + " is not prime");
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "p:") {
    std::uint64_t p = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime(p);
  }
  throw Error(ErrorCode::kInputError, "field must be 'q' or 'p:<prime>', got '" + std::string(text) + "'");
}

std::string Field::name() const {
  return is_rational() ? std::string("q") : "p:" + std::to_string(p_);
}

mpq_class Field::reduce(const mpq_class& x) const {
  if (is_rational()) return x;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) {
    throw Error(ErrorCode::kInvalidArgument, "denominator vanishes in characteristic " + std::to_string(p_));
  }
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * den_inv) % p;
  return mpq_class(r);
}

mpq_class Field::inv(const mpq_class& a) const {
  if (a == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  if (is_rational()) return 1 / a;
  return reduce(mpq_class(1) / a);
}

}  // namespace lcmv
