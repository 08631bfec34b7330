#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcmv/cech.hpp"
#include "lcmv/ring.hpp"
#include "lcmv/sparse.hpp"

namespace lcmv {

/// Ordered list of regular-quotient ideals I_1..I_n, all of one kind.
class Arrangement {
 public:
  Arrangement(RingDescriptor ring, std::vector<Ideal> components);
  static Arrangement coordinate(const RingDescriptor& ring, const std::vector<VarSet>& components);

  const RingDescriptor& ring() const { return ring_; }
  const std::vector<Ideal>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool is_coordinate() const { return lcmv::is_coordinate(components_.front()); }
  /// Throws kUnsupportedForOracle for linear arrangements.
  std::vector<CoordinateIdeal> coordinate_components() const;

 private:
  RingDescriptor ring_;
  std::vector<Ideal> components_;
};

/// A sum ideal J_{i_0..i_p} up to equality; pages refer to classes by index.
struct IdealClass {
  Ideal ideal;
  std::size_t height;
  std::string key;
};

using ClassTable = std::vector<IdealClass>;

/// Summand H^q_{J_T} of E_1^{-p,q} for the tuple T; nonzero only at q = height.
struct Term {
  std::vector<std::size_t> tuple;  // 0-based, strictly increasing
  std::size_t ideal_class;
  std::size_t height;

  std::size_t p() const { return tuple.size() - 1; }
  bool nonzero(std::size_t q) const { return q == height; }
};

/// Position (-p, q).
struct CellPos {
  std::size_t p;
  std::size_t q;

  int column() const { return -static_cast<int>(p); }
  int total_degree() const { return static_cast<int>(q) - static_cast<int>(p); }
  friend auto operator<=>(const CellPos&, const CellPos&) = default;
};

struct CellEntry {
  std::size_t ideal_class;
  std::int64_t multiplicity;

  friend bool operator==(const CellEntry&, const CellEntry&) = default;
};

class SpectralPage {
 public:
  int page = 1;
  std::shared_ptr<const ClassTable> classes;
  std::size_t columns = 0;  // p ranges over [0, columns)
  std::size_t rows = 0;     // q ranges over [0, rows]
  /// Nonzero entries only, each list sorted by class index.
  std::map<CellPos, std::vector<CellEntry>> cells;
  /// E_1 only: one term per nonempty tuple.
  std::vector<Term> terms;

  std::int64_t multiplicity(CellPos pos, std::size_t ideal_class) const;
  bool nonzero(CellPos pos) const { return cells.count(pos) > 0; }
  const IdealClass& ideal_class(std::size_t id) const { return classes->at(id); }
};

SpectralPage build_e1(const Arrangement& arrangement);

/// Test hook: kAllPositive drops the (-1)^j face signs.
enum class SignConvention { kAlternating, kAllPositive };

/// d_1 restricted to one ideal class: column -p to column -p+1.
struct ClassDifferential {
  std::size_t ideal_class;
  std::size_t source_p;
  std::vector<std::size_t> sources;  // indices into SpectralPage::terms
  std::vector<std::size_t> targets;
  SparseIntMatrix matrix;            // rows = targets, cols = sources
};

struct DifferentialFamily {
  std::vector<ClassDifferential> maps;

  const ClassDifferential* find(std::size_t ideal_class, std::size_t source_p) const;
};

DifferentialFamily e1_differential(const SpectralPage& e1, SignConvention signs = SignConvention::kAlternating);

/// First (class, p) with d_{p} ∘ d_{p+1} != 0, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_dd_violation(const DifferentialFamily& diffs);

/// Classwise homology of the E_1 rows. Throws kInternalSignError if d∘d != 0
/// and verification is on.
SpectralPage compute_e2(const SpectralPage& e1, const DifferentialFamily& diffs, const Field& field,
                        bool verify_dd = true);

enum class VanishingReason {
  kSameIdealDegreeClash,
  kProperContainmentRule,
  kSourceOrTargetZero,
  kNoSubtupleRelation,
};

std::string_view tag(VanishingReason reason);

struct CertificateEntry {
  std::size_t r;
  CellPos source;
  CellPos target;
  std::optional<std::size_t> source_class;
  std::optional<std::size_t> target_class;
  VanishingReason reason;
  std::string justification;
};

struct DegenerationCertificate {
  std::size_t max_page = 1;  // highest r examined
  std::vector<CertificateEntry> entries;
  bool total = false;
};

/// Certifies that every d_r, r >= 2, vanishes. Throws kUncertifiedDifferential
/// if some component cannot be certified.
DegenerationCertificate check_degeneration(const SpectralPage& e2);

struct Subquotient {
  CellPos pos;
  std::vector<CellEntry> entries;
};

struct FiltrationReport {
  int degree = 0;
  std::vector<Subquotient> subquotients;  // increasing p
  std::vector<std::size_t> ass_candidates;

  bool empty() const { return subquotients.empty(); }
};

FiltrationReport filtration(const SpectralPage& e_inf, const DegenerationCertificate& cert, int i);
std::set<int> support_degrees(const SpectralPage& e_inf, const DegenerationCertificate& cert);

struct EngineOptions {
  SignConvention signs = SignConvention::kAlternating;
  bool verify_dd = true;
};

struct Analysis {
  Arrangement arrangement;
  MinimalPrimesVerdict minimal_primes;
  SpectralPage e1;
  DifferentialFamily d1;
  SpectralPage e2;
  DegenerationCertificate certificate;
  std::vector<FiltrationReport> filtrations;  // nonempty degrees only, increasing
  std::set<int> support;
  std::vector<std::string> warnings;

  const FiltrationReport* filtration_at(int i) const;
  /// Candidate ideals at total degree i.
  std::vector<Ideal> candidates(int i) const;
};

Analysis analyze(const Arrangement& arrangement, const EngineOptions& options = {});
std::set<int> support_degrees(const Arrangement& arrangement);

/// 1 iff a_j <= -1 on F and a_j >= 0 off F: the Hilbert function of
/// H^{|F|}_{(x_F)}(R) at a.
int pattern_indicator(VarSet vars, std::span<const int> degree);

/// Σ multiplicity × pattern_indicator over the nonzero E_∞ cells of total degree i.
std::int64_t predicted_graded_dim(const Analysis& analysis, int i, std::span<const int> degree);

struct CciResult {
  bool is_cci = false;
  std::set<int> support;
  std::size_t height = 0;
  bool regular_quotient = false;
  std::optional<std::string> finding;
};

inline constexpr std::string_view kRemarkOneTension = "Remark-1 tension";

CciResult cci_check(const CoordinateIdeal& ideal);
/// Throws kMissingOracle when oracle is null.
CciResult cci_check(const SquarefreeMonomialIdeal& ideal, const CechOracle* oracle);

}  // namespace lcmv
