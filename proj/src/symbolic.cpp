#include "lcmv/symbolic.hpp"

#include <sstream>

namespace lcmv {

SymPoly::SymPoly(long constant) {
  if (constant != 0) terms_[{}] = constant;
}

SymPoly SymPoly::symbol(const std::string& name, int exponent) {
  SymPoly p;
  if (exponent == 0) {
    p.terms_[{}] = 1;
  } else {
    p.terms_[{{name, exponent}}] = 1;
  }
  return p;
}

SymPoly SymPoly::monomial(const Monomial& m, const mpz_class& coeff) {
  SymPoly p;
  p.add_term(m, coeff);
  return p;
}

void SymPoly::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  Monomial clean;
  for (const auto& [s, e] : m) {
    if (e != 0) clean[s] = e;
  }
  auto& slot = terms_[clean];
  slot += c;
  if (slot == 0) terms_.erase(clean);
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

SymPoly SymPoly::operator-() const {
  SymPoly out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
  SymPoly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (const auto& [s, e] : mb) m[s] += e;
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (a != 1 || m.empty()) {
      os << a.get_str();
      need_star = true;
    }
    for (const auto& [s, e] : m) {
      if (need_star) os << '*';
      os << s;
      if (e != 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace lcmv
