#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lcmv/field.hpp"
#include "lcmv/linalg.hpp"

namespace lcmv {

/// Polynomial ring k[x_1..x_n] localized at the origin; stands in for the
/// ambient regular local ring.
class RingDescriptor {
 public:
  static constexpr std::size_t kMaxVars = 64;

  explicit RingDescriptor(std::size_t n_vars, Field field = Field::rationals());

  std::size_t n_vars() const { return n_vars_; }
  const Field& field() const { return field_; }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.n_vars_ == b.n_vars_ && a.field_ == b.field_;
  }

 private:
  std::size_t n_vars_;
  Field field_;
};

/// Set of variable indices, stored 0-based as a bitmask. Rendered 1-based.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr explicit VarSet(std::uint64_t bits) : bits_(bits) {}
  /// From 1-based variable indices.
  static VarSet of(std::initializer_list<std::size_t> one_based);
  static VarSet of(std::span<const std::size_t> one_based);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t zero_based) const { return (bits_ >> zero_based) & 1U; }
  constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VarSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr VarSet operator|(VarSet o) const { return VarSet(bits_ | o.bits_); }
  constexpr VarSet operator&(VarSet o) const { return VarSet(bits_ & o.bits_); }
  /// 1-based indices in increasing order.
  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  friend constexpr bool operator==(VarSet a, VarSet b) { return a.bits_ == b.bits_; }
  friend constexpr auto operator<=>(VarSet a, VarSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// Ideal (x_i : i in F). Empty F is the zero ideal.
class CoordinateIdeal {
 public:
  CoordinateIdeal(RingDescriptor ring, VarSet vars);
  static CoordinateIdeal of(const RingDescriptor& ring, std::initializer_list<std::size_t> one_based) {
    return CoordinateIdeal(ring, VarSet::of(one_based));
  }

  const RingDescriptor& ring() const { return ring_; }
  VarSet vars() const { return vars_; }
  std::size_t height() const { return vars_.size(); }
  std::string to_string() const;

 private:
  RingDescriptor ring_;
  VarSet vars_;
};

/// Ideal generated by linear forms, kept in reduced row-echelon form so that
/// equality is equality of stored matrices.
class LinearIdeal {
 public:
  LinearIdeal(RingDescriptor ring, const Matrix& generators);
  static LinearIdeal from_coordinate(const CoordinateIdeal& ideal);

  const RingDescriptor& ring() const { return ring_; }
  const Matrix& echelon() const { return echelon_; }
  std::size_t height() const { return echelon_.rows(); }
  /// Coordinate ideal with the same row space, if one exists.
  bool is_coordinate() const;
  std::string to_string() const;

 private:
  RingDescriptor ring_;
  Matrix echelon_;
};

/// Squarefree monomial ideal by its minimal generators (supports).
class SquarefreeMonomialIdeal {
 public:
  /// Reduces `generators` to the antichain of minimal supports.
  SquarefreeMonomialIdeal(RingDescriptor ring, std::vector<VarSet> generators);

  const RingDescriptor& ring() const { return ring_; }
  const std::vector<VarSet>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  /// Whether the monomial with the given support lies in the ideal.
  bool contains_monomial(VarSet support) const;
  /// Minimal vertex-cover size, i.e. the height.
  std::size_t height() const;
  /// Minimal primes, as the minimal vertex covers of the generators.
  std::vector<VarSet> minimal_primes() const;
  /// R/J regular: every generator is a single variable.
  bool has_regular_quotient() const;
  std::string to_string() const;

 private:
  RingDescriptor ring_;
  std::vector<VarSet> gens_;
};

using Ideal = std::variant<CoordinateIdeal, LinearIdeal>;

const RingDescriptor& ring_of(const Ideal& ideal);
std::size_t height(const Ideal& ideal);
std::string to_string(const Ideal& ideal);
/// Canonical text key: equal iff the ideals are equal.
std::string canonical_key(const Ideal& ideal);
bool is_coordinate(const Ideal& ideal);

Ideal ideal_sum(std::span<const Ideal> ideals);
CoordinateIdeal ideal_sum(std::span<const CoordinateIdeal> ideals);
LinearIdeal ideal_sum(std::span<const LinearIdeal> ideals);

bool ideal_equal(const Ideal& a, const Ideal& b);
/// big ⊇ small.
bool ideal_contains(const Ideal& big, const Ideal& small);

SquarefreeMonomialIdeal intersect(std::span<const CoordinateIdeal> arrangement);

struct MinimalPrimesVerdict {
  bool ok = true;
  /// (t, s) with I_t ⊆ I_s, 0-based component indices, t != s.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

MinimalPrimesVerdict minimal_primes_check(std::span<const Ideal> arrangement);

/// A basis z_1..z_t of the sum of two linear ideals together with a
/// completion z_{t+1}..z_n to a basis of the space of linear forms.
struct SumRegularCertificate {
  Matrix basis;
  Matrix completion;
  std::size_t height = 0;
  /// (z_1..z_t) equals I+J and z_1..z_n are independent.
  bool regular_quotient = false;
};

SumRegularCertificate sum_regular(const LinearIdeal& a, const LinearIdeal& b);

}  // namespace lcmv
