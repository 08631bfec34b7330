#include "lcmv/cech.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>
#include <type_traits>
#include <unordered_map>

#include "lcmv/error.hpp"

namespace lcmv {

namespace {

constexpr std::size_t kMaxGenerators = 24;

void check_oracle_input(const SquarefreeMonomialIdeal& ideal) {
  if (ideal.is_zero()) throw Error(ErrorCode::kZeroIdeal, "the Čech oracle needs a nonzero ideal");
  if (ideal.generators().size() > kMaxGenerators) {
    throw Error(ErrorCode::kInvalidArgument, "too many generators (" + std::to_string(ideal.generators().size()) +
                                                 ") for the brute-force Čech complex");
  }
}

void check_degree(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree) {
  if (degree.size() != ideal.ring().n_vars()) {
    throw Error(ErrorCode::kInvalidArgument, "multidegree has " + std::to_string(degree.size()) +
                                                 " entries, ring has " + std::to_string(ideal.ring().n_vars()) +
                                                 " variables");
  }
}

// Bases of the strand for negative support `neg`: generator subsets T with
// supp(g_T) ⊇ neg, grouped by |T|.
std::vector<std::vector<std::uint32_t>> strand_bases(const std::vector<VarSet>& gens, VarSet neg) {
  const std::size_t m = gens.size();
  std::vector<std::vector<std::uint32_t>> bases(m + 1);
  const std::uint32_t limit = std::uint32_t{1} << m;
  for (std::uint32_t t = 0; t < limit; ++t) {
    VarSet cover;
    for (std::size_t g = 0; g < m; ++g) {
      if ((t >> g) & 1U) cover = cover | gens[g];
    }
    if (neg.subset_of(cover)) bases[static_cast<std::size_t>(std::popcount(t))].push_back(t);
  }
  return bases;
}

// Sign of inserting generator g into T: (-1)^{#{t in T : t < g}}.
int face_sign(std::uint32_t subset, std::size_t g) {
  return (std::popcount(subset & ((std::uint32_t{1} << g) - 1)) % 2 == 0) ? 1 : -1;
}

std::vector<SparseIntMatrix> strand_differentials(const std::vector<std::vector<std::uint32_t>>& bases,
                                                  std::size_t m) {
  std::vector<SparseIntMatrix> diffs;
  for (std::size_t p = 0; p + 1 < bases.size(); ++p) {
    std::unordered_map<std::uint32_t, std::uint32_t> target_index;
    for (std::uint32_t k = 0; k < bases[p + 1].size(); ++k) target_index.emplace(bases[p + 1][k], k);
    SparseIntMatrix d{bases[p + 1].size(), bases[p].size(), {}};
    for (std::uint32_t c = 0; c < bases[p].size(); ++c) {
      const std::uint32_t t = bases[p][c];
      for (std::size_t g = 0; g < m; ++g) {
        if ((t >> g) & 1U) continue;
        auto it = target_index.find(t | (std::uint32_t{1} << g));
        if (it == target_index.end()) continue;
        d.entries.push_back({it->second, c, face_sign(t, g)});
      }
    }
    diffs.push_back(std::move(d));
  }
  return diffs;
}

}  // namespace

void for_each_degree(std::size_t n, const DegreeBox& box, const std::function<void(const Multidegree&)>& fn) {
  if (box.lower > box.upper) throw Error(ErrorCode::kInvalidArgument, "empty degree box");
  Multidegree a(n, box.lower);
  while (true) {
    fn(a);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (a[k] < box.upper) {
        ++a[k];
        break;
      }
      a[k] = box.lower;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

VarSet negative_support(std::span<const int> degree) {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < degree.size(); ++j) {
    if (degree[j] < 0) bits |= std::uint64_t{1} << j;
  }
  return VarSet(bits);
}

GradedPieceComplex graded_cech(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree) {
  check_oracle_input(ideal);
  check_degree(ideal, degree);
  GradedPieceComplex cx;
  cx.degree.assign(degree.begin(), degree.end());
  cx.generators = ideal.generators();
  cx.bases = strand_bases(cx.generators, negative_support(degree));
  cx.differentials = strand_differentials(cx.bases, cx.generators.size());
  return cx;
}

std::vector<std::size_t> cohomology_dims(const GradedPieceComplex& complex, const Field& field) {
  const std::size_t top = complex.bases.size();
  std::vector<std::size_t> ranks(top, 0);  // ranks[p] = rank d^p
  for (std::size_t p = 0; p < complex.differentials.size(); ++p) ranks[p] = rank(complex.differentials[p], field);
  std::vector<std::size_t> dims(top, 0);
  for (std::size_t p = 0; p < top; ++p) {
    std::size_t incoming = p > 0 ? ranks[p - 1] : 0;
    dims[p] = complex.bases[p].size() - ranks[p] - incoming;
  }
  return dims;
}

// ---------------------------------------------------------------------------
// GradedCohomology

struct GradedCohomology::Impl {
  virtual ~Impl() = default;
  virtual const SquarefreeMonomialIdeal& ideal() const = 0;
  virtual std::vector<std::size_t> dims(std::span<const int> degree) = 0;
  virtual Matrix multiplication(std::span<const int> degree, std::size_t var, std::size_t p) = 0;
};

namespace {

template <class Ops>
class CohomologyImpl final : public GradedCohomology::Impl {
 public:
  using V = sparse::Vec<Ops>;

  CohomologyImpl(const SquarefreeMonomialIdeal& ideal, Ops ops, bool memoize)
      : ideal_(ideal), ops_(std::move(ops)), memoize_(memoize) {
    check_oracle_input(ideal_);
  }

  const SquarefreeMonomialIdeal& ideal() const override { return ideal_; }

  std::vector<std::size_t> dims(std::span<const int> degree) override {
    check_degree(ideal_, degree);
    if (!memoize_) {
      auto cx = graded_cech(ideal_, degree);
      return pattern_dims(cx.bases);
    }
    return strand(negative_support(degree)).dims;
  }

  Matrix multiplication(std::span<const int> degree, std::size_t var, std::size_t p) override {
    check_degree(ideal_, degree);
    if (var == 0 || var > degree.size()) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
    Multidegree shifted(degree.begin(), degree.end());
    ++shifted[var - 1];
    return step_map(negative_support(degree), negative_support(shifted), p);
  }

 private:
  struct Classes {
    std::vector<V> reps;        // cocycle representatives in C^p coordinates
    sparse::Echelon<Ops> span;  // image of d^{p-1} plus reps, tagged by rep index
  };

  struct Strand {
    std::vector<std::vector<std::uint32_t>> bases;
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> index;
    std::vector<std::size_t> dims;
    std::map<std::size_t, Classes> classes;
  };

  // Image of basis vector c of C^p under d^p, in C^{p+1} coordinates.
  V image(const Strand& s, std::size_t p, std::uint32_t c) const {
    V out;
    const std::uint32_t t = s.bases[p][c];
    const std::size_t m = ideal_.generators().size();
    for (std::size_t g = 0; g < m; ++g) {
      if ((t >> g) & 1U) continue;
      auto it = s.index[p + 1].find(t | (std::uint32_t{1} << g));
      if (it != s.index[p + 1].end()) out.emplace_back(it->second, ops_.from_int(face_sign(t, g)));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  std::size_t differential_rank(const Strand& s, std::size_t p) const {
    if (p + 1 >= s.bases.size()) return 0;
    if constexpr (std::is_same_v<Ops, sparse::RationalOps>) {
      std::vector<sparse::IntRow> rows;
      for (std::uint32_t c = 0; c < s.bases[p].size(); ++c) {
        sparse::IntRow row;
        for (const auto& [col, value] : image(s, p, c)) row.emplace_back(col, value.get_num().get_si());
        rows.push_back(std::move(row));
      }
      if (auto r = sparse::integer_rank(std::move(rows))) return *r;
    }
    sparse::Echelon<Ops> ech(ops_);
    for (std::uint32_t c = 0; c < s.bases[p].size(); ++c) ech.insert(image(s, p, c));
    return ech.rank();
  }

  std::vector<std::size_t> pattern_dims(const std::vector<std::vector<std::uint32_t>>& bases) const {
    Strand s;
    s.bases = bases;
    s.index.resize(bases.size());
    for (std::size_t p = 0; p < bases.size(); ++p) {
      for (std::uint32_t k = 0; k < bases[p].size(); ++k) s.index[p].emplace(bases[p][k], k);
    }
    std::vector<std::size_t> ranks(bases.size(), 0);
    for (std::size_t p = 0; p < bases.size(); ++p) ranks[p] = differential_rank(s, p);
    std::vector<std::size_t> dims(bases.size(), 0);
    for (std::size_t p = 0; p < bases.size(); ++p) {
      dims[p] = bases[p].size() - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
    }
    return dims;
  }

  Strand& strand(VarSet neg) {
    auto it = strands_.find(neg.bits());
    if (it != strands_.end()) return it->second;
    Strand s;
    s.bases = strand_bases(ideal_.generators(), neg);
    s.index.resize(s.bases.size());
    for (std::size_t p = 0; p < s.bases.size(); ++p) {
      for (std::uint32_t k = 0; k < s.bases[p].size(); ++k) s.index[p].emplace(s.bases[p][k], k);
    }
    std::vector<std::size_t> ranks(s.bases.size(), 0);
    for (std::size_t p = 0; p < s.bases.size(); ++p) ranks[p] = differential_rank(s, p);
    s.dims.assign(s.bases.size(), 0);
    for (std::size_t p = 0; p < s.bases.size(); ++p) {
      s.dims[p] = s.bases[p].size() - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
    }
    return strands_.emplace(neg.bits(), std::move(s)).first->second;
  }

  Classes& classes(Strand& s, std::size_t p) {
    auto it = s.classes.find(p);
    if (it != s.classes.end()) return it->second;
    Classes cls{{}, sparse::Echelon<Ops>(ops_)};
    if (p < s.bases.size() && s.dims[p] > 0) {
      if (p > 0) {
        for (std::uint32_t c = 0; c < s.bases[p - 1].size(); ++c) cls.span.insert(image(s, p - 1, c));
      }
      // Kernel vectors of d^p arise as dependencies among the images d^p(e_T).
      sparse::Echelon<Ops> images(ops_);
      for (std::uint32_t c = 0; c < s.bases[p].size() && cls.reps.size() < s.dims[p]; ++c) {
        V tag{{c, ops_.from_int(1)}};
        V kernel_vector;
        V img = p + 1 < s.bases.size() ? image(s, p, c) : V{};
        if (images.insert(std::move(img), std::move(tag), &kernel_vector)) continue;
        std::sort(kernel_vector.begin(), kernel_vector.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const auto k = static_cast<std::uint32_t>(cls.reps.size());
        if (cls.span.insert(kernel_vector, V{{k, ops_.from_int(1)}})) cls.reps.push_back(kernel_vector);
      }
      if (cls.reps.size() != s.dims[p]) {
        throw Error(ErrorCode::kInternalSignError, "cohomology representatives do not match the rank count");
      }
    }
    return s.classes.emplace(p, std::move(cls)).first->second;
  }

  Matrix step_map(VarSet from, VarSet to, std::size_t p) {
    auto key = std::make_tuple(from.bits(), to.bits(), p);
    if (auto it = maps_.find(key); it != maps_.end()) return it->second;
    Strand& src = strand(from);
    Strand& dst = strand(to);
    const std::size_t src_dim = p < src.dims.size() ? src.dims[p] : 0;
    const std::size_t dst_dim = p < dst.dims.size() ? dst.dims[p] : 0;
    Matrix m(dst_dim, src_dim);
    if (src_dim > 0 && dst_dim > 0) {
      Classes& src_cls = classes(src, p);
      Classes& dst_cls = classes(dst, p);
      for (std::size_t k = 0; k < src_dim; ++k) {
        // Multiplication by x_j sends the monomial basis of (R_{g_T})_a to that of (R_{g_T})_{a+e_j}.
        V moved;
        for (const auto& [idx, value] : src_cls.reps[k]) {
          moved.emplace_back(dst.index[p].at(src.bases[p][idx]), value);
        }
        std::sort(moved.begin(), moved.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        V tag;
        V rest = dst_cls.span.reduce(std::move(moved), &tag);
        if (!rest.empty()) throw Error(ErrorCode::kInternalSignError, "image of a cocycle is not a cocycle");
        for (const auto& [row, value] : tag) m(row, k) = ops_.to_mpq(ops_.neg(value));
      }
    }
    maps_.emplace(key, m);
    return m;
  }

  SquarefreeMonomialIdeal ideal_;
  Ops ops_;
  bool memoize_;
  std::unordered_map<std::uint64_t, Strand> strands_;
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::size_t>, Matrix> maps_;
};

}  // namespace

GradedCohomology::GradedCohomology(const SquarefreeMonomialIdeal& ideal, const Field& field, bool memoize) {
  if (field.is_rational()) {
    impl_ = std::make_unique<CohomologyImpl<sparse::RationalOps>>(ideal, sparse::RationalOps{}, memoize);
  } else {
    impl_ = std::make_unique<CohomologyImpl<sparse::PrimeOps>>(ideal, sparse::PrimeOps{field.characteristic()},
                                                               memoize);
  }
}

GradedCohomology::~GradedCohomology() = default;
GradedCohomology::GradedCohomology(GradedCohomology&&) noexcept = default;
GradedCohomology& GradedCohomology::operator=(GradedCohomology&&) noexcept = default;

const SquarefreeMonomialIdeal& GradedCohomology::ideal() const { return impl_->ideal(); }

std::size_t GradedCohomology::max_degree() const { return impl_->ideal().generators().size(); }

std::vector<std::size_t> GradedCohomology::dims(std::span<const int> degree) { return impl_->dims(degree); }

Matrix GradedCohomology::multiplication(std::span<const int> degree, std::size_t var, std::size_t p) {
  return impl_->multiplication(degree, var, p);
}

// ---------------------------------------------------------------------------
// Ass detection

std::vector<CoordinateIdeal> detect_ass(GradedCohomology& cohomology, int i, const DegreeBox& box,
                                        const Field& field) {
  if (!box.covers_default()) throw Error(ErrorCode::kBoxTooSmall, "Ass detection needs a box containing [-2, 1]^n");
  const auto& ideal = cohomology.ideal();
  const std::size_t n = ideal.ring().n_vars();
  std::set<VarSet> found;
  if (i < 0 || static_cast<std::size_t>(i) > cohomology.max_degree()) return {};
  const auto p = static_cast<std::size_t>(i);

  for_each_degree(n, box, [&](const Multidegree& a) {
    const std::size_t dim = cohomology.dims(a)[p];
    if (dim == 0) return;
    std::vector<Matrix> kill(n);
    std::vector<std::size_t> degenerate;  // variables whose multiplication has a kernel
    for (std::size_t j = 0; j < n; ++j) {
      kill[j] = cohomology.multiplication(a, j + 1, p);
      if (rank(kill[j], field) < dim) degenerate.push_back(j);
    }
    const std::size_t subsets = std::size_t{1} << degenerate.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      VarSet f;
      Matrix stacked(0, dim);
      for (std::size_t b = 0; b < degenerate.size(); ++b) {
        if ((mask >> b) & 1U) {
          f = f | VarSet(std::uint64_t{1} << degenerate[b]);
          stacked = vstack(stacked, kill[degenerate[b]]);
        }
      }
      Matrix kernel = stacked.rows() == 0 ? Matrix::identity(dim) : nullspace(stacked, field);
      if (kernel.rows() == 0) continue;
      // Push every x_j off F to the top of the box; the annihilator of z is
      // exactly P_F iff this monomial does not kill z.
      Multidegree cur = a;
      Matrix acc = Matrix::identity(dim);
      for (std::size_t j = 0; j < n; ++j) {
        if (f.contains(j)) continue;
        const int target = std::max(a[j] + 1, box.upper);
        while (cur[j] < target) {
          acc = multiply(cohomology.multiplication(cur, j + 1, p), acc, field);
          ++cur[j];
        }
      }
      bool ok = false;
      for (std::size_t r = 0; r < kernel.rows() && !ok; ++r) {
        for (std::size_t out = 0; out < acc.rows() && !ok; ++out) {
          mpq_class sum = 0;
          for (std::size_t c = 0; c < dim; ++c) sum += acc(out, c) * kernel(r, c);
          ok = field.reduce(sum) != 0;
        }
      }
      if (ok) found.insert(f);
    }
  });

  std::vector<CoordinateIdeal> out;
  for (VarSet f : found) out.emplace_back(ideal.ring(), f);
  return out;
}

// ---------------------------------------------------------------------------
// CechOracle

GradedPieceComplex CechOracle::graded_cech(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree) const {
  return lcmv::graded_cech(ideal, degree);
}

std::vector<std::size_t> CechOracle::local_cohomology_dims(const SquarefreeMonomialIdeal& ideal,
                                                           std::span<const int> degree) const {
  return cohomology_dims(lcmv::graded_cech(ideal, degree), field_);
}

std::set<int> CechOracle::support(const SquarefreeMonomialIdeal& ideal, Scan scan, const DegreeBox& box) const {
  GradedCohomology cohomology(ideal, field_, scan == Scan::kRepresentative);
  std::set<int> out;
  auto collect = [&](const Multidegree& a) {
    auto dims = cohomology.dims(a);
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (dims[p] > 0) out.insert(static_cast<int>(p));
    }
  };
  if (scan == Scan::kRepresentative) {
    for_each_degree(ideal.ring().n_vars(), DegreeBox{-1, 0}, collect);
  } else {
    for_each_degree(ideal.ring().n_vars(), box, collect);
  }
  return out;
}

std::vector<CoordinateIdeal> CechOracle::ass(const SquarefreeMonomialIdeal& ideal, int i, const DegreeBox& box) const {
  if (!box.covers_default()) throw Error(ErrorCode::kBoxTooSmall, "Ass detection needs a box containing [-2, 1]^n");
  GradedCohomology cohomology(ideal, field_);
  return detect_ass(cohomology, i, box, field_);
}

Matrix CechOracle::multiplication_map(const SquarefreeMonomialIdeal& ideal, std::span<const int> degree,
                                      std::size_t var, std::size_t p) const {
  GradedCohomology cohomology(ideal, field_);
  return cohomology.multiplication(degree, var, p);
}

}  // namespace lcmv
