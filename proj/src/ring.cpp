#include "lcmv/ring.hpp"

#include <algorithm>
#include <sstream>

#include "lcmv/error.hpp"

namespace lcmv {

namespace {

std::vector<VarSet> minimal_elements(std::vector<VarSet> sets) {
  std::sort(sets.begin(), sets.end(), [](VarSet a, VarSet b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VarSet> out;
  for (VarSet s : sets) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](VarSet k) { return k.subset_of(s); });
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b) {
  if (!(a == b)) throw Error(ErrorCode::kRingMismatch, "ideals live in different rings");
}

}  // namespace

RingDescriptor::RingDescriptor(std::size_t n_vars, Field field) : n_vars_(n_vars), field_(field) {
  if (n_vars == 0 || n_vars > kMaxVars) {
    throw Error(ErrorCode::kInvalidArgument, "n_vars must lie in [1, 64], got " + std::to_string(n_vars));
  }
}

VarSet VarSet::of(std::initializer_list<std::size_t> one_based) {
  return of(std::span<const std::size_t>(one_based.begin(), one_based.size()));
}

VarSet VarSet::of(std::span<const std::size_t> one_based) {
  std::uint64_t bits = 0;
  for (auto i : one_based) {
    if (i == 0 || i > RingDescriptor::kMaxVars) {
      throw Error(ErrorCode::kInvalidArgument, "variable index " + std::to_string(i) + " out of range");
    }
    bits |= std::uint64_t{1} << (i - 1);
  }
  return VarSet(bits);
}

std::vector<std::size_t> VarSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i) {
    if (contains(i)) out.push_back(i + 1);
  }
  return out;
}

std::string VarSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i : indices()) {
    os << (first ? "" : ",") << i;
    first = false;
  }
  os << '}';
  return os.str();
}

CoordinateIdeal::CoordinateIdeal(RingDescriptor ring, VarSet vars) : ring_(ring), vars_(vars) {
  if (ring_.n_vars() < 64 && (vars.bits() >> ring_.n_vars()) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "variable set " + vars.to_string() + " exceeds n_vars = " + std::to_string(ring_.n_vars()));
  }
}

std::string CoordinateIdeal::to_string() const {
  if (vars_.empty()) return "(0)";
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto i : vars_.indices()) {
    os << (first ? "" : ",") << 'x' << i;
    first = false;
  }
  os << ')';
  return os.str();
}

LinearIdeal::LinearIdeal(RingDescriptor ring, const Matrix& generators) : ring_(ring) {
  if (generators.rows() > 0 && generators.cols() != ring_.n_vars()) {
    throw Error(ErrorCode::kInvalidArgument, "linear form has " + std::to_string(generators.cols()) +
                                                 " coefficients, ring has " + std::to_string(ring_.n_vars()) +
                                                 " variables");
  }
  echelon_ = generators.rows() > 0 ? rref(generators, ring_.field()) : Matrix(0, ring_.n_vars());
}

LinearIdeal LinearIdeal::from_coordinate(const CoordinateIdeal& ideal) {
  auto idx = ideal.vars().indices();
  Matrix m(idx.size(), ideal.ring().n_vars());
  for (std::size_t r = 0; r < idx.size(); ++r) m(r, idx[r] - 1) = 1;
  return LinearIdeal(ideal.ring(), m);
}

bool LinearIdeal::is_coordinate() const {
  for (std::size_t r = 0; r < echelon_.rows(); ++r) {
    std::size_t nonzero = 0;
    for (std::size_t c = 0; c < echelon_.cols(); ++c) nonzero += echelon_(r, c) != 0;
    if (nonzero != 1) return false;
  }
  return true;
}

std::string LinearIdeal::to_string() const {
  if (echelon_.rows() == 0) return "(0)";
  std::ostringstream os;
  os << '(';
  for (std::size_t r = 0; r < echelon_.rows(); ++r) {
    if (r) os << ", ";
    bool first = true;
    for (std::size_t c = 0; c < echelon_.cols(); ++c) {
      const mpq_class& v = echelon_(r, c);
      if (v == 0) continue;
      if (!first) os << (v < 0 ? " - " : " + ");
      else if (v < 0) os << '-';
      mpq_class a = abs(v);
      if (a != 1) os << a.get_str() << '*';
      os << 'x' << (c + 1);
      first = false;
    }
  }
  os << ')';
  return os.str();
}

SquarefreeMonomialIdeal::SquarefreeMonomialIdeal(RingDescriptor ring, std::vector<VarSet> generators)
    : ring_(ring) {
  for (VarSet g : generators) {
    if (ring_.n_vars() < 64 && (g.bits() >> ring_.n_vars()) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "generator support " + g.to_string() + " exceeds n_vars");
    }
  }
  // The empty support is the unit monomial; it generates the whole ring.
  gens_ = minimal_elements(std::move(generators));
}

bool SquarefreeMonomialIdeal::contains_monomial(VarSet support) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](VarSet g) { return g.subset_of(support); });
}

std::vector<VarSet> SquarefreeMonomialIdeal::minimal_primes() const {
  std::vector<VarSet> covers{VarSet()};
  for (VarSet g : gens_) {
    std::vector<VarSet> next;
    for (VarSet c : covers) {
      if (c.intersects(g)) {
        next.push_back(c);
        continue;
      }
      for (auto i : g.indices()) next.push_back(c | VarSet::of({i}));
    }
    covers = minimal_elements(std::move(next));
  }
  return covers;
}

std::size_t SquarefreeMonomialIdeal::height() const {
  if (gens_.empty()) return 0;
  std::size_t best = ring_.n_vars();
  for (VarSet p : minimal_primes()) best = std::min(best, p.size());
  return best;
}

bool SquarefreeMonomialIdeal::has_regular_quotient() const {
  return std::all_of(gens_.begin(), gens_.end(), [](VarSet g) { return g.size() == 1; });
}

std::string SquarefreeMonomialIdeal::to_string() const {
  if (gens_.empty()) return "(0)";
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (k) os << ',';
    auto idx = gens_[k].indices();
    if (idx.empty()) os << '1';
    for (auto i : idx) os << 'x' << i;
  }
  os << ')';
  return os.str();
}

const RingDescriptor& ring_of(const Ideal& ideal) {
  return std::visit([](const auto& i) -> const RingDescriptor& { return i.ring(); }, ideal);
}

std::size_t height(const Ideal& ideal) {
  return std::visit([](const auto& i) { return i.height(); }, ideal);
}

std::string to_string(const Ideal& ideal) {
  return std::visit([](const auto& i) { return i.to_string(); }, ideal);
}

bool is_coordinate(const Ideal& ideal) { return std::holds_alternative<CoordinateIdeal>(ideal); }

std::string canonical_key(const Ideal& ideal) {
  if (const auto* c = std::get_if<CoordinateIdeal>(&ideal)) return "C" + c->vars().to_string();
  const auto& m = std::get<LinearIdeal>(ideal).echelon();
  std::ostringstream os;
  os << 'L';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c).get_str();
    os << ']';
  }
  return os.str();
}

CoordinateIdeal ideal_sum(std::span<const CoordinateIdeal> ideals) {
  if (ideals.empty()) throw Error(ErrorCode::kInvalidArgument, "ideal_sum of an empty list");
  VarSet acc;
  for (const auto& i : ideals) {
    require_same_ring(ideals.front().ring(), i.ring());
    acc = acc | i.vars();
  }
  return CoordinateIdeal(ideals.front().ring(), acc);
}

LinearIdeal ideal_sum(std::span<const LinearIdeal> ideals) {
  if (ideals.empty()) throw Error(ErrorCode::kInvalidArgument, "ideal_sum of an empty list");
  Matrix stacked(0, ideals.front().ring().n_vars());
  for (const auto& i : ideals) {
    require_same_ring(ideals.front().ring(), i.ring());
    stacked = vstack(stacked, i.echelon());
  }
  return LinearIdeal(ideals.front().ring(), stacked);
}

Ideal ideal_sum(std::span<const Ideal> ideals) {
  if (ideals.empty()) throw Error(ErrorCode::kInvalidArgument, "ideal_sum of an empty list");
  if (is_coordinate(ideals.front())) {
    std::vector<CoordinateIdeal> parts;
    for (const auto& i : ideals) {
      const auto* c = std::get_if<CoordinateIdeal>(&i);
      if (!c) throw Error(ErrorCode::kKindMismatch, "cannot add coordinate and linear ideals");
      parts.push_back(*c);
    }
    return ideal_sum(std::span<const CoordinateIdeal>(parts));
  }
  std::vector<LinearIdeal> parts;
  for (const auto& i : ideals) {
    const auto* l = std::get_if<LinearIdeal>(&i);
    if (!l) throw Error(ErrorCode::kKindMismatch, "cannot add coordinate and linear ideals");
    parts.push_back(*l);
  }
  return ideal_sum(std::span<const LinearIdeal>(parts));
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (a.index() != b.index()) throw Error(ErrorCode::kKindMismatch, "cannot compare coordinate and linear ideals");
  require_same_ring(ring_of(a), ring_of(b));
  if (const auto* ca = std::get_if<CoordinateIdeal>(&a)) return ca->vars() == std::get<CoordinateIdeal>(b).vars();
  return std::get<LinearIdeal>(a).echelon() == std::get<LinearIdeal>(b).echelon();
}

bool ideal_contains(const Ideal& big, const Ideal& small) {
  if (big.index() != small.index()) {
    throw Error(ErrorCode::kKindMismatch, "cannot compare coordinate and linear ideals");
  }
  require_same_ring(ring_of(big), ring_of(small));
  if (const auto* cb = std::get_if<CoordinateIdeal>(&big)) {
    return std::get<CoordinateIdeal>(small).vars().subset_of(cb->vars());
  }
  const auto& lb = std::get<LinearIdeal>(big);
  const auto& ls = std::get<LinearIdeal>(small);
  return rank(vstack(lb.echelon(), ls.echelon()), lb.ring().field()) == lb.height();
}

SquarefreeMonomialIdeal intersect(std::span<const CoordinateIdeal> arrangement) {
  if (arrangement.empty()) throw Error(ErrorCode::kEmptyArrangement, "intersect needs at least one ideal");
  const RingDescriptor& ring = arrangement.front().ring();
  auto gens_of = [](const CoordinateIdeal& c) {
    std::vector<VarSet> g;
    for (auto i : c.vars().indices()) g.push_back(VarSet::of({i}));
    return g;
  };
  std::vector<VarSet> acc = gens_of(arrangement.front());
  for (std::size_t t = 1; t < arrangement.size(); ++t) {
    require_same_ring(ring, arrangement[t].ring());
    std::vector<VarSet> products;
    for (VarSet g : acc) {
      for (VarSet h : gens_of(arrangement[t])) products.push_back(g | h);
    }
    acc = minimal_elements(std::move(products));
  }
  return SquarefreeMonomialIdeal(ring, std::move(acc));
}

MinimalPrimesVerdict minimal_primes_check(std::span<const Ideal> arrangement) {
  MinimalPrimesVerdict verdict;
  for (std::size_t t = 0; t < arrangement.size(); ++t) {
    for (std::size_t s = 0; s < arrangement.size(); ++s) {
      if (t != s && ideal_contains(arrangement[s], arrangement[t])) verdict.violations.emplace_back(t, s);
    }
  }
  verdict.ok = verdict.violations.empty();
  return verdict;
}

SumRegularCertificate sum_regular(const LinearIdeal& a, const LinearIdeal& b) {
  require_same_ring(a.ring(), b.ring());
  const Field& field = a.ring().field();
  const std::size_t n = a.ring().n_vars();
  std::vector<std::size_t> pivots;
  SumRegularCertificate cert;
  cert.basis = rref(vstack(a.echelon(), b.echelon()), field, &pivots);
  cert.height = cert.basis.rows();
  // Unit vectors on the free columns extend the basis to all linear forms.
  cert.completion = Matrix(n - pivots.size(), n);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) cert.completion(row++, c) = 1;
  }
  LinearIdeal generated(a.ring(), cert.basis);
  bool spans_sum = ideal_equal(Ideal(generated), Ideal(ideal_sum(std::vector<LinearIdeal>{a, b})));
  bool full_basis = rank(vstack(cert.basis, cert.completion), field) == n;
  cert.regular_quotient = spans_sum && full_basis;
  return cert;
}

}  // namespace lcmv
