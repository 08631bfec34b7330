#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lcmv/ring.hpp"
#include "lcmv/symbolic.hpp"

namespace lcmv {

/// Unramified local ring of mixed characteristic p: a regular system of
/// parameters p, x1, ..., x_{dim-1} of the maximal ideal m.
struct LocalModel {
  std::uint64_t residue_char = 0;
  std::size_t dim = 0;
  std::vector<std::string> parameters;

  static LocalModel unramified(std::uint64_t p, std::size_t dim);
};

/// A coefficient of f(X), described by its m-adic order and, optionally, a
/// monomial in the parameters times a sign and a unit tag.
struct CoefficientDescriptor {
  std::optional<unsigned> ord_m;   // nullopt: zero coefficient, order infinity
  int sign = 1;
  std::vector<unsigned> monomial;  // exponents over LocalModel::parameters; empty if unknown
  std::string unit;                // empty means the unit is 1

  static CoefficientDescriptor zero() { return {}; }
  static CoefficientDescriptor with_order(unsigned ord);
  /// Parses "-p*x1^2" style products of parameters; "0" is the zero coefficient.
  static CoefficientDescriptor term(const LocalModel& model, std::string_view text, std::string unit = {});

  bool is_zero() const { return !ord_m.has_value(); }
  bool has_monomial() const { return !monomial.empty(); }
  /// Symbolic value; coefficients known only by order become the generic symbol a<index>.
  SymPoly symbolic(const LocalModel& model, std::size_t index) const;
  std::string to_string(const LocalModel& model, std::size_t index) const;
};

/// f(X) = X^l + a_1 X^{l-1} + ... + a_l.
struct EisensteinPoly {
  std::size_t degree = 0;
  std::vector<CoefficientDescriptor> coeffs;  // a_1 .. a_l

  EisensteinPoly() = default;
  EisensteinPoly(std::size_t l, std::vector<CoefficientDescriptor> a);

  SymPoly symbolic(const LocalModel& model) const;
  std::string to_string(const LocalModel& model) const;
};

enum class EisensteinViolation {
  kCoefficientNotInMaximalIdeal,   // a_i ∉ m
  kConstantInMaximalIdealSquared,  // a_l ∈ m²
};

struct EisensteinViolationEntry {
  std::size_t index;  // 1-based coefficient index
  EisensteinViolation kind;
  std::string message;
};

struct EisensteinVerdict {
  bool valid = true;
  std::vector<EisensteinViolationEntry> violations;
};

std::string_view tag(EisensteinViolation v);
EisensteinVerdict validate_eisenstein(const EisensteinPoly& poly);

/// S = R[X]/(f) with maximal ideal n = (m, X)S.
struct ExtensionDescriptor {
  LocalModel base;
  EisensteinPoly poly;
  std::vector<std::string> maximal_ideal_gens;

  std::size_t rank() const { return poly.degree; }
};

/// Throws kPrecondition if the polynomial is not Eisenstein.
ExtensionDescriptor make_extension(LocalModel base, EisensteinPoly poly);

struct CertificateSummand {
  std::size_t x_power = 0;
  std::optional<std::size_t> coeff_index;  // nullopt for the leading X^l
  std::string text;
  std::string membership;
};

/// p = -(s u)^{-1} (X^l + a_1 X^{l-1} + ... + a_{l-1} X) where a_l = s u p.
struct RamificationCertificate {
  std::string prefactor;
  std::vector<CertificateSummand> summands;
  std::string text;
  /// s u (p - rhs) multiplied out equals f(X).
  bool identity_verified = false;
  /// a_l was given by order only and is taken to be p times a unit.
  bool constant_term_assumed = false;
};

struct RamificationResult {
  bool certified = false;
  std::optional<RamificationCertificate> certificate;
  std::string flag;
};

inline constexpr std::string_view kNoRamificationFlag = "extension does not ramify via this certificate";

RamificationResult ramification_witness(const ExtensionDescriptor& ext);

/// I S for an ideal I of the base, living in the coordinate model of S
/// whose variables are the base parameters followed by X.
struct ExtendedIdeal {
  Ideal ideal;
  std::vector<std::string> provenance;
};

ExtendedIdeal extend_ideal(const Ideal& ideal, const ExtensionDescriptor& ext);

struct FlatTransfer {
  std::set<int> support;
  bool ass_finite_over_extension = false;
  std::vector<std::string> provenance;
};

/// Nonvanishing degrees of H^i_{IS}(S) from those of H^i_I(R).
FlatTransfer flat_transfer(const std::set<int>& base_support, bool ass_finite_over_base = true);

/// S as a free module over the base with basis 1, X, ..., X^{l-1}.
struct MultiplicationTable {
  std::size_t rank = 0;
  std::vector<std::string> basis;
  /// products[i][j] = coordinates of X^i * X^j.
  std::vector<std::vector<std::vector<SymPoly>>> products;

  std::vector<SymPoly> multiply(const std::vector<SymPoly>& u, const std::vector<SymPoly>& v) const;
};

MultiplicationTable s_module_basis(const ExtensionDescriptor& ext);

}  // namespace lcmv
