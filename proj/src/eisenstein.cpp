#include "lcmv/eisenstein.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "lcmv/error.hpp"

namespace lcmv {

namespace {

std::string x_power_text(std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return "X";
  return "X^" + std::to_string(k);
}

bool is_single_term(const SymPoly& p) { return p.terms().size() == 1; }

// Appends c * X^k to a rendered sum.
void append_term(std::ostringstream& os, bool first, const SymPoly& c, std::size_t k) {
  std::string body = c.to_string();
  bool negative = is_single_term(c) && body.front() == '-';
  if (negative) body.erase(0, 1);
  if (!is_single_term(c)) body = "(" + body + ")";
  if (first) {
    if (negative) os << '-';
  } else {
    os << (negative ? " - " : " + ");
  }
  if (k == 0) {
    os << body;
  } else if (body == "1") {
    os << x_power_text(k);
  } else {
    os << body << '*' << x_power_text(k);
  }
}

}  // namespace

LocalModel LocalModel::unramified(std::uint64_t p, std::size_t dim) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidArgument, "residue characteristic must be prime");
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "local model needs dim >= 1");
  LocalModel m{p, dim, {"p"}};
  for (std::size_t i = 1; i < dim; ++i) m.parameters.push_back("x" + std::to_string(i));
  return m;
}

CoefficientDescriptor CoefficientDescriptor::with_order(unsigned ord) {
  CoefficientDescriptor c;
  c.ord_m = ord;
  return c;
}

CoefficientDescriptor CoefficientDescriptor::term(const LocalModel& model, std::string_view text,
                                                  std::string unit) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "0") return zero();
  CoefficientDescriptor c;
  c.unit = std::move(unit);
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    c.sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  c.monomial.assign(model.parameters.size(), 0);
  unsigned order = 0;
  while (!text.empty()) {
    auto star = text.find('*');
    std::string_view factor = trim(text.substr(0, star));
    text = star == std::string_view::npos ? std::string_view{} : text.substr(star + 1);
    if (factor == "1") continue;
    unsigned exponent = 1;
    if (auto caret = factor.find('^'); caret != std::string_view::npos) {
      auto digits = factor.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw Error(ErrorCode::kInputError, "bad exponent in coefficient term '" + std::string(factor) + "'");
      }
      factor = factor.substr(0, caret);
    }
    auto it = std::find(model.parameters.begin(), model.parameters.end(), factor);
    if (it == model.parameters.end()) {
      throw Error(ErrorCode::kInputError, "unknown parameter '" + std::string(factor) + "' in coefficient term");
    }
    c.monomial[static_cast<std::size_t>(it - model.parameters.begin())] += exponent;
    order += exponent;
  }
  c.ord_m = order;
  return c;
}

SymPoly CoefficientDescriptor::symbolic(const LocalModel& model, std::size_t index) const {
  if (is_zero()) return SymPoly();
  SymPoly value = sign;
  if (!has_monomial()) return value * SymPoly::symbol("a" + std::to_string(index));
  for (std::size_t k = 0; k < monomial.size(); ++k) {
    if (monomial[k] > 0) value = value * SymPoly::symbol(model.parameters[k], static_cast<int>(monomial[k]));
  }
  if (!unit.empty()) value = value * SymPoly::symbol(unit);
  return value;
}

std::string CoefficientDescriptor::to_string(const LocalModel& model, std::size_t index) const {
  return symbolic(model, index).to_string();
}

EisensteinPoly::EisensteinPoly(std::size_t l, std::vector<CoefficientDescriptor> a)
    : degree(l), coeffs(std::move(a)) {
  if (degree == 0) throw Error(ErrorCode::kInvalidArgument, "Eisenstein polynomial needs degree >= 1");
  if (coeffs.size() != degree) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(degree) + " coefficients, got " +
                                                 std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs) {
    if (c.has_monomial()) {
      unsigned total = 0;
      for (auto e : c.monomial) total += e;
      if (c.ord_m && *c.ord_m != total) {
        throw Error(ErrorCode::kInvalidArgument, "coefficient order disagrees with its monomial");
      }
    }
  }
}

SymPoly EisensteinPoly::symbolic(const LocalModel& model) const {
  SymPoly f = SymPoly::symbol("X", static_cast<int>(degree));
  for (std::size_t i = 1; i <= degree; ++i) {
    f += coeffs[i - 1].symbolic(model, i) * SymPoly::symbol("X", static_cast<int>(degree - i));
  }
  return f;
}

std::string EisensteinPoly::to_string(const LocalModel& model) const {
  std::ostringstream os;
  os << x_power_text(degree);
  for (std::size_t i = 1; i <= degree; ++i) {
    const auto& c = coeffs[i - 1];
    if (c.is_zero()) continue;
    append_term(os, false, c.symbolic(model, i), degree - i);
  }
  return os.str();
}

std::string_view tag(EisensteinViolation v) {
  switch (v) {
    case EisensteinViolation::kCoefficientNotInMaximalIdeal: return "NOT_IN_M";
    case EisensteinViolation::kConstantInMaximalIdealSquared: return "CONSTANT_IN_M_SQUARED";
  }
  return "UNKNOWN";
}

EisensteinVerdict validate_eisenstein(const EisensteinPoly& poly) {
  EisensteinVerdict verdict;
  for (std::size_t i = 1; i <= poly.degree; ++i) {
    const auto& c = poly.coeffs[i - 1];
    if (c.ord_m && *c.ord_m < 1) {
      verdict.violations.push_back({i, EisensteinViolation::kCoefficientNotInMaximalIdeal,
                                    "a_" + std::to_string(i) + " ∉ m"});
    }
  }
  const auto& last = poly.coeffs.back();
  if (!last.ord_m || *last.ord_m >= 2) {
    verdict.violations.push_back({poly.degree, EisensteinViolation::kConstantInMaximalIdealSquared,
                                  "a_l ∈ m²"});
  }
  verdict.valid = verdict.violations.empty();
  return verdict;
}

ExtensionDescriptor make_extension(LocalModel base, EisensteinPoly poly) {
  auto verdict = validate_eisenstein(poly);
  if (!verdict.valid) {
    throw Error(ErrorCode::kPrecondition, "not an Eisenstein polynomial: " + verdict.violations.front().message);
  }
  for (const auto& c : poly.coeffs) {
    if (c.has_monomial() && c.monomial.size() != base.parameters.size()) {
      throw Error(ErrorCode::kInvalidArgument, "coefficient monomial does not match the local model");
    }
  }
  ExtensionDescriptor ext{std::move(base), std::move(poly), {}};
  ext.maximal_ideal_gens = ext.base.parameters;
  ext.maximal_ideal_gens.push_back("X");
  return ext;
}

RamificationResult ramification_witness(const ExtensionDescriptor& ext) {
  const auto& poly = ext.poly;
  if (!validate_eisenstein(poly).valid) {
    throw Error(ErrorCode::kPrecondition, "ramification witness needs an Eisenstein polynomial");
  }
  const std::size_t l = poly.degree;
  const auto& last = poly.coeffs.back();
  bool assumed = !last.has_monomial();
  if (!assumed) {
    bool is_p = last.monomial[0] == 1;
    for (std::size_t k = 1; k < last.monomial.size(); ++k) is_p = is_p && last.monomial[k] == 0;
    if (!is_p) throw Error(ErrorCode::kPrecondition, "a_l is not p times a unit");
  }

  RamificationResult result;
  if (l == 1) {
    result.flag = std::string(kNoRamificationFlag);
    return result;
  }

  const SymPoly p = SymPoly::symbol("p");
  const SymPoly unit = last.unit.empty() ? SymPoly(1) : SymPoly::symbol(last.unit);
  const SymPoly unit_inv = last.unit.empty() ? SymPoly(1) : SymPoly::symbol(last.unit, -1);
  const SymPoly su = SymPoly(last.sign) * unit;
  const SymPoly prefactor = SymPoly(-last.sign) * unit_inv;  // -(s u)^{-1}

  RamificationCertificate cert;
  cert.constant_term_assumed = assumed;
  cert.prefactor = prefactor.to_string();
  SymPoly rhs = SymPoly::symbol("X", static_cast<int>(l));
  cert.summands.push_back({l, std::nullopt, x_power_text(l),
                           x_power_text(l) + " ∈ n² since X ∈ n and l = " + std::to_string(l) + " >= 2"});
  std::ostringstream sum;
  sum << x_power_text(l);
  for (std::size_t i = 1; i < l; ++i) {
    const auto& c = poly.coeffs[i - 1];
    if (c.is_zero()) continue;
    SymPoly coeff = c.symbolic(ext.base, i);
    rhs += coeff * SymPoly::symbol("X", static_cast<int>(l - i));
    std::ostringstream term;
    append_term(term, true, coeff, l - i);
    cert.summands.push_back({l - i, i, term.str(),
                             "a_" + std::to_string(i) + " ∈ m ⊆ n and X ∈ n, so a_" + std::to_string(i) + "*" +
                                 x_power_text(l - i) + " ∈ n²"});
    append_term(sum, false, coeff, l - i);
  }

  std::ostringstream text;
  text << "p = ";
  std::string pre = cert.prefactor;
  if (pre == "1") {
    text << sum.str();
  } else if (pre == "-1") {
    text << (cert.summands.size() == 1 ? "-" + sum.str() : "-(" + sum.str() + ")");
  } else {
    text << pre << "*(" << sum.str() << ")";
  }
  cert.text = text.str();

  // s u (p - prefactor * rhs) must reproduce f(X) term by term.
  SymPoly f = SymPoly::symbol("X", static_cast<int>(l));
  for (std::size_t i = 1; i < l; ++i) {
    f += poly.coeffs[i - 1].symbolic(ext.base, i) * SymPoly::symbol("X", static_cast<int>(l - i));
  }
  f += su * p;
  cert.identity_verified = (su * (p - prefactor * rhs)) == f;

  result.certified = true;
  result.certificate = std::move(cert);
  return result;
}

ExtendedIdeal extend_ideal(const Ideal& ideal, const ExtensionDescriptor& ext) {
  const std::size_t base_vars = ext.base.dim;
  const std::size_t s_vars = base_vars + 1;
  const RingDescriptor& ring = ring_of(ideal);
  if (ring.n_vars() != base_vars && ring.n_vars() != s_vars) {
    throw Error(ErrorCode::kRingMismatch, "ideal ring has " + std::to_string(ring.n_vars()) +
                                              " variables; the base model has " + std::to_string(base_vars));
  }
  RingDescriptor s_ring(s_vars, ring.field());
  ExtendedIdeal out{ideal, {"generators of I reused verbatim in S = R[X]/(f)",
                            "S is free of rank " + std::to_string(ext.rank()) + " over R, hence flat"}};
  if (const auto* c = std::get_if<CoordinateIdeal>(&ideal)) {
    if (ring.n_vars() == s_vars && c->vars().contains(base_vars)) {
      throw Error(ErrorCode::kNotExtended, "generator X does not come from the base ring");
    }
    out.ideal = CoordinateIdeal(s_ring, c->vars());
    return out;
  }
  const Matrix& m = std::get<LinearIdeal>(ideal).echelon();
  Matrix padded(m.rows(), s_vars);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (ring.n_vars() == s_vars && m(r, base_vars) != 0) {
      throw Error(ErrorCode::kNotExtended, "a generator involves X");
    }
    for (std::size_t c = 0; c < base_vars; ++c) padded(r, c) = m(r, c);
  }
  out.ideal = LinearIdeal(s_ring, padded);
  return out;
}

FlatTransfer flat_transfer(const std::set<int>& base_support, bool ass_finite_over_base) {
  FlatTransfer t;
  t.support = base_support;
  t.ass_finite_over_extension = ass_finite_over_base;
  t.provenance = {
      "S = R[X]/(f) is free of rank l over R, hence flat",
      "S is local and m S ⊆ n, so S is faithfully flat over R",
      "H^i_{IS}(S) ≅ H^i_I(R) ⊗_R S",
      "faithful flatness: H^i_I(R) ⊗_R S = 0 iff H^i_I(R) = 0",
      "Ass_R H^i_I(R) finite (Lyubeznik, unramified case) transfers to finiteness of Ass_S H^i_{IS}(S)",
  };
  return t;
}

std::vector<SymPoly> MultiplicationTable::multiply(const std::vector<SymPoly>& u,
                                                   const std::vector<SymPoly>& v) const {
  if (u.size() != rank || v.size() != rank) {
    throw Error(ErrorCode::kInvalidArgument, "element has the wrong number of coordinates");
  }
  std::vector<SymPoly> out(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < rank; ++j) {
      if (v[j].is_zero()) continue;
      SymPoly c = u[i] * v[j];
      for (std::size_t k = 0; k < rank; ++k) out[k] += c * products[i][j][k];
    }
  }
  return out;
}

MultiplicationTable s_module_basis(const ExtensionDescriptor& ext) {
  const std::size_t l = ext.poly.degree;
  MultiplicationTable table;
  table.rank = l;
  for (std::size_t k = 0; k < l; ++k) table.basis.push_back(k == 0 ? "1" : x_power_text(k));

  // powers[k] = X^k reduced by X^l -> -(a_1 X^{l-1} + ... + a_l).
  std::vector<std::vector<SymPoly>> powers;
  std::vector<SymPoly> current(l);
  current[0] = 1;
  powers.push_back(current);
  for (std::size_t k = 1; k + 1 < 2 * l; ++k) {
    std::vector<SymPoly> next(l);
    for (std::size_t j = 0; j + 1 < l; ++j) next[j + 1] = current[j];
    const SymPoly overflow = current[l - 1];
    if (!overflow.is_zero()) {
      for (std::size_t i = 1; i <= l; ++i) {
        next[l - i] = next[l - i] - overflow * ext.poly.coeffs[i - 1].symbolic(ext.base, i);
      }
    }
    powers.push_back(next);
    current = std::move(next);
  }
  table.products.assign(l, std::vector<std::vector<SymPoly>>(l));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) table.products[i][j] = powers[i + j];
  }
  return table;
}

}  // namespace lcmv
