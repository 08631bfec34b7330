#include "lcmv/mvss.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lcmv/error.hpp"

namespace lcmv {

namespace {

constexpr std::size_t kMaxComponents = 20;

std::vector<std::size_t> tuple_of(std::uint32_t mask) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < 32; ++i) {
    if ((mask >> i) & 1U) t.push_back(i);
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Arrangement

Arrangement::Arrangement(RingDescriptor ring, std::vector<Ideal> components)
    : ring_(ring), components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::kEmptyArrangement, "an arrangement needs at least one component");
  if (components_.size() > kMaxComponents) {
    throw Error(ErrorCode::kInvalidArgument, "at most " + std::to_string(kMaxComponents) + " components supported");
  }
  for (const auto& c : components_) {
    if (c.index() != components_.front().index()) {
      throw Error(ErrorCode::kKindMismatch, "arrangement mixes coordinate and linear components");
    }
    if (!(ring_of(c) == ring_)) throw Error(ErrorCode::kRingMismatch, "component lives in a different ring");
  }
}

Arrangement Arrangement::coordinate(const RingDescriptor& ring, const std::vector<VarSet>& components) {
  std::vector<Ideal> ideals;
  for (VarSet f : components) ideals.emplace_back(CoordinateIdeal(ring, f));
  return Arrangement(ring, std::move(ideals));
}

std::vector<CoordinateIdeal> Arrangement::coordinate_components() const {
  std::vector<CoordinateIdeal> out;
  for (const auto& c : components_) {
    const auto* ci = std::get_if<CoordinateIdeal>(&c);
    if (!ci) throw Error(ErrorCode::kUnsupportedForOracle, "linear components have no monomial model");
    out.push_back(*ci);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pages

std::int64_t SpectralPage::multiplicity(CellPos pos, std::size_t ideal_class) const {
  auto it = cells.find(pos);
  if (it == cells.end()) return 0;
  for (const auto& e : it->second) {
    if (e.ideal_class == ideal_class) return e.multiplicity;
  }
  return 0;
}

SpectralPage build_e1(const Arrangement& arrangement) {
  const std::size_t k = arrangement.size();
  const auto& comps = arrangement.components();

  // Tuples ordered by length, then lexicographically.
  std::vector<std::uint32_t> masks((std::size_t{1} << k) - 1);
  std::iota(masks.begin(), masks.end(), 1U);
  std::vector<std::vector<std::size_t>> tuples(masks.size() + 1);
  for (auto m : masks) tuples[m] = tuple_of(m);
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return tuples[a] < tuples[b];
  });

  // J_T = J_{T minus its last index} + I_last.
  std::vector<std::optional<Ideal>> sums(masks.size() + 1);
  std::map<std::string, std::size_t> provisional;
  std::vector<IdealClass> found;
  std::vector<std::size_t> class_of(masks.size() + 1);
  for (auto m : masks) {
    const std::size_t last = tuples[m].back();
    const std::uint32_t rest = m & ~(std::uint32_t{1} << last);
    if (rest == 0) {
      sums[m] = comps[last];
    } else {
      std::vector<Ideal> pair{*sums[rest], comps[last]};
      sums[m] = ideal_sum(std::span<const Ideal>(pair));
    }
    std::string key = canonical_key(*sums[m]);
    auto [it, inserted] = provisional.emplace(key, found.size());
    if (inserted) found.push_back(IdealClass{*sums[m], height(*sums[m]), key});
    class_of[m] = it->second;
  }

  // Canonical class order: by height, then key.
  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].height != found[b].height) return found[a].height < found[b].height;
    return found[a].key < found[b].key;
  });
  std::vector<std::size_t> rename(found.size());
  auto table = std::make_shared<ClassTable>();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rename[order[pos]] = pos;
    table->push_back(found[order[pos]]);
  }

  SpectralPage page;
  page.page = 1;
  page.columns = k;
  page.rows = arrangement.ring().n_vars();
  for (auto m : masks) {
    Term t{tuples[m], rename[class_of[m]], 0};
    t.height = (*table)[t.ideal_class].height;
    page.terms.push_back(t);
  }
  std::map<CellPos, std::map<std::size_t, std::int64_t>> acc;
  for (const auto& t : page.terms) acc[CellPos{t.p(), t.height}][t.ideal_class] += 1;
  for (const auto& [pos, by_class] : acc) {
    auto& cell = page.cells[pos];
    for (const auto& [cls, mult] : by_class) cell.push_back({cls, mult});
  }
  page.classes = std::move(table);
  return page;
}

// ---------------------------------------------------------------------------
// d_1

const ClassDifferential* DifferentialFamily::find(std::size_t ideal_class, std::size_t source_p) const {
  for (const auto& m : maps) {
    if (m.ideal_class == ideal_class && m.source_p == source_p) return &m;
  }
  return nullptr;
}

DifferentialFamily e1_differential(const SpectralPage& e1, SignConvention signs) {
  if (e1.page != 1 || (e1.terms.empty() && !e1.cells.empty())) {
    throw Error(ErrorCode::kInvalidArgument, "e1_differential needs an E1 page with its terms");
  }
  std::map<std::vector<std::size_t>, std::size_t> term_of;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;  // (class, p) -> terms
  for (std::size_t i = 0; i < e1.terms.size(); ++i) {
    term_of.emplace(e1.terms[i].tuple, i);
    groups[{e1.terms[i].ideal_class, e1.terms[i].p()}].push_back(i);
  }

  DifferentialFamily family;
  for (const auto& [key, sources] : groups) {
    const auto [cls, p] = key;
    if (p == 0) continue;
    auto tg = groups.find({cls, p - 1});
    if (tg == groups.end()) continue;
    ClassDifferential d{cls, p, sources, tg->second, {}};
    d.matrix.rows = d.targets.size();
    d.matrix.cols = d.sources.size();
    std::map<std::size_t, std::uint32_t> row_of;
    for (std::uint32_t r = 0; r < d.targets.size(); ++r) row_of.emplace(d.targets[r], r);
    for (std::uint32_t c = 0; c < d.sources.size(); ++c) {
      const auto& tuple = e1.terms[d.sources[c]].tuple;
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        std::vector<std::size_t> face = tuple;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        const std::size_t target = term_of.at(face);
        // Same class means same sum ideal; the map is then the identity of H^q_{J}.
        auto it = row_of.find(target);
        if (it == row_of.end()) continue;
        int sign = (signs == SignConvention::kAlternating && j % 2 == 1) ? -1 : 1;
        d.matrix.entries.push_back({it->second, c, sign});
      }
    }
    family.maps.push_back(std::move(d));
  }
  return family;
}

std::optional<std::pair<std::size_t, std::size_t>> find_dd_violation(const DifferentialFamily& diffs) {
  for (const auto& outer : diffs.maps) {
    const ClassDifferential* inner = diffs.find(outer.ideal_class, outer.source_p + 1);
    if (!inner) continue;
    if (!outer.matrix.compose(inner->matrix).is_zero()) {
      return std::make_pair(outer.ideal_class, outer.source_p);
    }
  }
  return std::nullopt;
}

SpectralPage compute_e2(const SpectralPage& e1, const DifferentialFamily& diffs, const Field& field,
                        bool verify_dd) {
  if (verify_dd) {
    if (auto bad = find_dd_violation(diffs)) {
      throw Error(ErrorCode::kInternalSignError, "d∘d != 0 for class " + std::to_string(bad->first) +
                                                     " at column -" + std::to_string(bad->second));
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> counts;  // (class, p)
  for (const auto& t : e1.terms) counts[{t.ideal_class, t.p()}] += 1;
  auto rank_of = [&](std::size_t cls, std::size_t p) -> std::int64_t {
    const ClassDifferential* d = diffs.find(cls, p);
    return d ? static_cast<std::int64_t>(rank(d->matrix, field)) : 0;
  };

  SpectralPage e2;
  e2.page = 2;
  e2.classes = e1.classes;
  e2.columns = e1.columns;
  e2.rows = e1.rows;
  for (const auto& [key, n] : counts) {
    const auto [cls, p] = key;
    std::int64_t mult = n - rank_of(cls, p) - rank_of(cls, p + 1);
    if (mult == 0) continue;
    e2.cells[CellPos{p, (*e1.classes)[cls].height}].push_back({cls, mult});
  }
  for (auto& [pos, entries] : e2.cells) {
    std::sort(entries.begin(), entries.end(),
              [](const CellEntry& a, const CellEntry& b) { return a.ideal_class < b.ideal_class; });
  }
  return e2;
}

// ---------------------------------------------------------------------------
// Degeneration

std::string_view tag(VanishingReason reason) {
  switch (reason) {
    case VanishingReason::kSameIdealDegreeClash: return "SAME_IDEAL_DEGREE_CLASH";
    case VanishingReason::kProperContainmentRule: return "PROPER_CONTAINMENT_RULE";
    case VanishingReason::kSourceOrTargetZero: return "SOURCE_OR_TARGET_ZERO";
    case VanishingReason::kNoSubtupleRelation: return "NO_SUBTUPLE_RELATION";
  }
  return "UNKNOWN";
}

DegenerationCertificate check_degeneration(const SpectralPage& e2) {
  DegenerationCertificate cert;
  cert.max_page = std::max<std::size_t>(2, e2.columns > 0 ? e2.columns - 1 : 0);
  auto uncertified = [](const std::string& what) { throw Error(ErrorCode::kUncertifiedDifferential, what); };
  auto pos_text = [](CellPos c) { return "(" + std::to_string(c.column()) + "," + std::to_string(c.q) + ")"; };

  for (const auto& [pos, entries] : e2.cells) {
    for (const auto& e : entries) {
      if ((*e2.classes)[e.ideal_class].height != pos.q) {
        uncertified("class " + (*e2.classes)[e.ideal_class].key + " is nonzero off its height at " + pos_text(pos));
      }
    }
  }

  for (std::size_t p = 0; p < e2.columns; ++p) {
    for (std::size_t q = 0; q <= e2.rows; ++q) {
      for (std::size_t r = 2; r <= p; ++r) {
        if (q + 1 < r) break;
        const CellPos src{p, q};
        const CellPos tgt{p - r, q + 1 - r};
        const bool src_nz = e2.nonzero(src);
        const bool tgt_nz = e2.nonzero(tgt);
        if (!src_nz && !tgt_nz) continue;
        if (!src_nz || !tgt_nz) {
          cert.entries.push_back({r, src, tgt, std::nullopt, std::nullopt, VanishingReason::kSourceOrTargetZero,
                                  std::string(src_nz ? "target " : "source ") + "E_" + std::to_string(r) +
                                      pos_text(src_nz ? tgt : src) + " is zero"});
          continue;
        }
        for (const auto& se : e2.cells.at(src)) {
          for (const auto& te : e2.cells.at(tgt)) {
            const IdealClass& sc = (*e2.classes)[se.ideal_class];
            const IdealClass& tc = (*e2.classes)[te.ideal_class];
            CertificateEntry entry{r, src, tgt, se.ideal_class, te.ideal_class,
                                   VanishingReason::kSourceOrTargetZero, {}};
            if (se.ideal_class == te.ideal_class) {
              entry.reason = VanishingReason::kSameIdealDegreeClash;
              entry.justification = "H^q_J' is nonzero only at q = height(J') = " + std::to_string(sc.height) +
                                    ", so one of H^" + std::to_string(q) + " and H^" + std::to_string(tgt.q) +
                                    " vanishes";
            } else if (ideal_contains(sc.ideal, tc.ideal)) {
              entry.reason = VanishingReason::kProperContainmentRule;
              entry.justification = "no nonzero map H^" + std::to_string(q) + "_" + to_string(sc.ideal) + " -> H^" +
                                    std::to_string(tgt.q) + "_" + to_string(tc.ideal) +
                                    " for a proper regular-quotient subideal";
            } else if (ideal_contains(tc.ideal, sc.ideal)) {
              uncertified("target " + to_string(tc.ideal) + " strictly contains source " + to_string(sc.ideal) +
                          " at " + pos_text(src) + " -> " + pos_text(tgt));
            } else {
              entry.reason = VanishingReason::kNoSubtupleRelation;
              entry.justification = "d_r sends the summand of a tuple into summands of its subtuples, whose sums lie "
                                    "inside " + to_string(sc.ideal) + "; " + to_string(tc.ideal) + " does not";
            }
            cert.entries.push_back(std::move(entry));
          }
        }
      }
    }
  }
  cert.total = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Filtration

FiltrationReport filtration(const SpectralPage& e_inf, const DegenerationCertificate& cert, int i) {
  if (!cert.total) throw Error(ErrorCode::kDegenerationNotCertified, "filtration needs a total certificate");
  FiltrationReport report;
  report.degree = i;
  std::set<std::size_t> candidates;
  for (const auto& [pos, entries] : e_inf.cells) {
    if (pos.total_degree() != i) continue;
    report.subquotients.push_back({pos, entries});
    for (const auto& e : entries) candidates.insert(e.ideal_class);
  }
  std::sort(report.subquotients.begin(), report.subquotients.end(),
            [](const Subquotient& a, const Subquotient& b) { return a.pos.p < b.pos.p; });
  report.ass_candidates.assign(candidates.begin(), candidates.end());
  return report;
}

std::set<int> support_degrees(const SpectralPage& e_inf, const DegenerationCertificate& cert) {
  if (!cert.total) throw Error(ErrorCode::kDegenerationNotCertified, "support needs a total certificate");
  std::set<int> out;
  for (const auto& [pos, entries] : e_inf.cells) out.insert(pos.total_degree());
  return out;
}

// ---------------------------------------------------------------------------
// Analysis

const FiltrationReport* Analysis::filtration_at(int i) const {
  for (const auto& f : filtrations) {
    if (f.degree == i) return &f;
  }
  return nullptr;
}

std::vector<Ideal> Analysis::candidates(int i) const {
  std::vector<Ideal> out;
  if (const auto* f = filtration_at(i)) {
    for (auto c : f->ass_candidates) out.push_back((*e2.classes)[c].ideal);
  }
  return out;
}

Analysis analyze(const Arrangement& arrangement, const EngineOptions& options) {
  Analysis a{arrangement, minimal_primes_check(arrangement.components()), {}, {}, {}, {}, {}, {}, {}};
  if (!a.minimal_primes.ok) {
    std::ostringstream os;
    os << "minimal-primes hypothesis fails:";
    for (auto [t, s] : a.minimal_primes.violations) os << " I_" << t + 1 << " ⊆ I_" << s + 1 << ';';
    a.warnings.push_back(os.str());
  }
  const auto& comps = arrangement.components();
  for (std::size_t t = 0; t < comps.size(); ++t) {
    for (std::size_t s = t + 1; s < comps.size(); ++s) {
      if (ideal_equal(comps[t], comps[s])) {
        a.warnings.push_back("duplicate components I_" + std::to_string(t + 1) + " = I_" + std::to_string(s + 1));
      }
    }
  }
  a.e1 = build_e1(arrangement);
  a.d1 = e1_differential(a.e1, options.signs);
  a.e2 = compute_e2(a.e1, a.d1, arrangement.ring().field(), options.verify_dd);
  a.certificate = check_degeneration(a.e2);
  const int lowest = -static_cast<int>(arrangement.size());
  const int highest = static_cast<int>(arrangement.ring().n_vars());
  for (int i = lowest; i <= highest; ++i) {
    auto f = filtration(a.e2, a.certificate, i);
    if (!f.empty()) a.filtrations.push_back(std::move(f));
  }
  a.support = support_degrees(a.e2, a.certificate);
  return a;
}

std::set<int> support_degrees(const Arrangement& arrangement) { return analyze(arrangement).support; }

int pattern_indicator(VarSet vars, std::span<const int> degree) {
  for (std::size_t j = 0; j < degree.size(); ++j) {
    if (vars.contains(j) ? degree[j] > -1 : degree[j] < 0) return 0;
  }
  return 1;
}

std::int64_t predicted_graded_dim(const Analysis& analysis, int i, std::span<const int> degree) {
  const auto* f = analysis.filtration_at(i);
  if (!f) return 0;
  std::int64_t total = 0;
  for (const auto& sq : f->subquotients) {
    for (const auto& e : sq.entries) {
      const auto* ci = std::get_if<CoordinateIdeal>(&(*analysis.e2.classes)[e.ideal_class].ideal);
      if (!ci) throw Error(ErrorCode::kUnsupportedForOracle, "graded dimensions need coordinate classes");
      total += e.multiplicity * pattern_indicator(ci->vars(), degree);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Cohomologically complete intersections

CciResult cci_check(const CoordinateIdeal& ideal) {
  CciResult r;
  r.height = ideal.height();
  r.support = {static_cast<int>(r.height)};
  r.is_cci = true;
  r.regular_quotient = true;
  return r;
}

CciResult cci_check(const SquarefreeMonomialIdeal& ideal, const CechOracle* oracle) {
  if (!oracle) throw Error(ErrorCode::kMissingOracle, "monomial ideals need an oracle for the CCI check");
  CciResult r;
  r.height = ideal.height();
  r.support = oracle->support(ideal);
  r.is_cci = r.support == std::set<int>{static_cast<int>(r.height)};
  r.regular_quotient = ideal.has_regular_quotient();
  if (r.is_cci != r.regular_quotient) {
    r.finding = std::string(kRemarkOneTension) + ": " + ideal.to_string() +
                (r.is_cci ? " is cohomologically a complete intersection (support {" + std::to_string(r.height) +
                                "}) but R/J is not regular"
                          : " has regular quotient but is not a cohomologically complete intersection");
  }
  return r;
}

}  // namespace lcmv
