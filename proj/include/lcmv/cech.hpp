#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <vector>

#include "lcmv/field.hpp"
#include "lcmv/linalg.hpp"
#include "lcmv/ring.hpp"
#include "lcmv/sparse.hpp"

namespace lcmv {

using Multidegree = std::vector<int>;

/// The box [lower, upper]^n of multidegrees scanned by the oracle.
struct DegreeBox {
  int lower = -2;
  int upper = 1;

  /// Contains {-2, ..., 1} in every coordinate.
  bool covers_default() const { return lower <= -2 && upper >= 1; }
};

/// Calls fn(a) for every a in box^n, in lexicographic order.
void for_each_degree(std::size_t n, const DegreeBox& box, const std::function<void(const Multidegree&)>& fn);

/// Variables j with a_j < 0.
VarSet negative_support(std::span<const int> degree);

/// Degree-a strand of the Čech complex on the minimal generators g_1..g_m.
///
/// C^p has one basis vector per p-subset T of generators with
/// (R_{g_T})_a != 0, which holds iff a_j >= 0 for every variable j outside
/// supp(g_T). Subsets are bitmasks over generator positions.
struct GradedPieceComplex {
  Multidegree degree;
  std::vector<VarSet> generators;
  std::vector<std::vector<std::uint32_t>> bases;  // bases[p], p = 0..m
  std::vector<SparseIntMatrix> differentials;     // d^p : C^p -> C^{p+1}, p = 0..m-1
};

/// Builds the strand directly from the support rule.
GradedPieceComplex graded_cech(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree);

/// Memoized graded local cohomology of one squarefree monomial ideal.
///
/// The strand at a depends on a only through the negative support N(a), so
/// results are cached per N(a) unless memoization is switched off.
class GradedCohomology {
 public:
  GradedCohomology(const SquarefreeMonomialIdeal& ideal, const Field& field, bool memoize = true);
  ~GradedCohomology();
  GradedCohomology(GradedCohomology&&) noexcept;
  GradedCohomology& operator=(GradedCohomology&&) noexcept;

  const SquarefreeMonomialIdeal& ideal() const;
  std::size_t max_degree() const;

  /// dims[p] = dim_k H^p_J(R)_a for p = 0..m.
  std::vector<std::size_t> dims(std::span<const int> degree);
  /// Matrix of x_j : H^p_a -> H^p_{a+e_j} in the cached cohomology bases (j 1-based).
  Matrix multiplication(std::span<const int> degree, std::size_t var, std::size_t p);

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

class CechOracle {
 public:
  enum class Scan { kRepresentative, kFullBox };

  explicit CechOracle(Field field = Field::rationals()) : field_(field) {}
  const Field& field() const { return field_; }

  GradedPieceComplex graded_cech(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree) const;
  std::vector<std::size_t> local_cohomology_dims(const SquarefreeMonomialIdeal& ideal,
                                                 std::span<const int> degree) const;
  /// {p : H^p_J(R) != 0}. The representative scan visits {0,-1}^n; the full
  /// scan visits every degree of the box without memoization.
  std::set<int> support(const SquarefreeMonomialIdeal& ideal, Scan scan = Scan::kRepresentative,
                        const DegreeBox& box = {}) const;
  std::vector<CoordinateIdeal> ass(const SquarefreeMonomialIdeal& ideal, int i, const DegreeBox& box = {}) const;
  Matrix multiplication_map(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree, std::size_t var,
                            std::size_t p) const;

 private:
  Field field_;
};

/// Ass detection on an existing cohomology cache. P_F is reported when some
/// class z at a box degree is killed by x_j for all j in F and is not killed
/// by the monomial raising every other variable to the top of the box.
std::vector<CoordinateIdeal> detect_ass(GradedCohomology& cohomology, int i, const DegreeBox& box,
                                        const Field& field);

/// Cohomology dimensions of a cochain complex given by its differentials.
std::vector<std::size_t> cohomology_dims(const GradedPieceComplex& complex, const Field& field);

}  // namespace lcmv
