#include "lcmv/report.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <iterator>
#include <sstream>
#include <thread>

#include "lcmv/error.hpp"

namespace lcmv::report {

namespace {

[[noreturn]] void input_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kInputError, "field '" + field + "': " + what);
}

std::size_t as_index(const json& v, const std::string& field, std::size_t n_vars) {
  if (!v.is_number_integer()) input_error(field, "expected an integer variable index");
  const auto x = v.get<std::int64_t>();
  if (x < 1 || static_cast<std::uint64_t>(x) > n_vars) {
    input_error(field, "index " + std::to_string(x) + " outside [1, " + std::to_string(n_vars) + "]");
  }
  return static_cast<std::size_t>(x);
}

std::vector<std::size_t> as_index_list(const json& v, const std::string& field, std::size_t n_vars) {
  if (!v.is_array()) input_error(field, "expected a list of variable indices");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(as_index(v[k], field + "[" + std::to_string(k) + "]", n_vars));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

mpq_class as_scalar(const json& v, const std::string& field) {
  if (v.is_number_integer()) return mpq_class(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    mpq_class q;
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || q.set_str(s, 10) != 0) input_error(field, "cannot read '" + s + "' as a rational");
    if (q.get_den() == 0) input_error(field, "zero denominator");
    q.canonicalize();
    return q;
  }
  input_error(field, "expected an integer or a rational string like \"1/2\"");
}

json scalar_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

json degree_json(CellPos pos) { return json::array({pos.column(), pos.q}); }

std::vector<std::size_t> one_based(VarSet s) { return s.indices(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

json page_json(const SpectralPage& page) {
  json cells = json::array();
  for (const auto& [pos, entries] : page.cells) {
    json es = json::array();
    for (const auto& e : entries) {
      es.push_back({{"class", e.ideal_class},
                    {"ideal", to_string(page.ideal_class(e.ideal_class).ideal)},
                    {"multiplicity", e.multiplicity}});
    }
    cells.push_back({{"position", degree_json(pos)}, {"total_degree", pos.total_degree()}, {"entries", es}});
  }
  return {{"page", page.page}, {"columns", page.columns}, {"rows", page.rows}, {"cells", cells}};
}

Analysis run_analysis(const Arrangement& arr, SignConvention signs = SignConvention::kAlternating) {
  return analyze(arr, EngineOptions{signs, signs == SignConvention::kAlternating});
}

json ideal_list(const std::vector<CoordinateIdeal>& ideals) {
  std::vector<std::string> names;
  for (const auto& i : ideals) names.push_back(i.to_string());
  std::sort(names.begin(), names.end());
  return names;
}

json support_json(const std::set<int>& s) { return json(std::vector<int>(s.begin(), s.end())); }

}  // namespace

// ---------------------------------------------------------------------------
// Input

Arrangement InputDocument::arrangement() const {
  if (!has_components()) throw Error(ErrorCode::kInputError, "field 'components': no components given");
  const RingDescriptor r = ring();
  if (!coordinate.empty()) {
    std::vector<VarSet> sets;
    for (const auto& c : coordinate) sets.push_back(VarSet::of(std::span<const std::size_t>(c)));
    return Arrangement::coordinate(r, sets);
  }
  std::vector<Ideal> ideals;
  for (const auto& rows : linear) ideals.emplace_back(LinearIdeal(r, Matrix::from_rows(rows, n_vars)));
  return Arrangement(r, std::move(ideals));
}

SquarefreeMonomialIdeal InputDocument::monomial_ideal() const {
  if (generators) {
    std::vector<VarSet> gens;
    for (const auto& g : *generators) gens.push_back(VarSet::of(std::span<const std::size_t>(g)));
    return SquarefreeMonomialIdeal(ring(), gens);
  }
  return intersect(arrangement().coordinate_components());
}

InputDocument parse_input(const json& doc) {
  if (!doc.is_object()) input_error("$", "the input document must be a JSON object");
  static const std::set<std::string> known = {"n_vars", "field", "components", "generators", "eisenstein", "flags"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) input_error(key, "unknown field");
  }
  InputDocument out;
  const bool needs_ring = doc.contains("components") || doc.contains("generators");
  if (doc.contains("n_vars")) {
    const auto& n = doc["n_vars"];
    if (!n.is_number_integer() || n.get<std::int64_t>() < 1 ||
        n.get<std::int64_t>() > static_cast<std::int64_t>(RingDescriptor::kMaxVars)) {
      input_error("n_vars", "expected an integer in [1, " + std::to_string(RingDescriptor::kMaxVars) + "]");
    }
    out.n_vars = n.get<std::size_t>();
  } else if (needs_ring) {
    input_error("n_vars", "required when components or generators are given");
  }
  if (doc.contains("field")) {
    if (!doc["field"].is_string()) input_error("field", "expected \"q\" or \"p:<prime>\"");
    try {
      out.field = Field::parse(doc["field"].get<std::string>());
    } catch (const Error& e) {
      input_error("field", e.what());
    }
  }
  if (doc.contains("components")) {
    const auto& comps = doc["components"];
    if (!comps.is_array() || comps.empty()) input_error("components", "expected a nonempty list");
    for (std::size_t t = 0; t < comps.size(); ++t) {
      const std::string field = "components[" + std::to_string(t) + "]";
      const auto& c = comps[t];
      if (!c.is_array()) input_error(field, "expected a list of indices or a list of rows");
      const bool linear = !c.empty() && c.front().is_array();
      if (linear) {
        if (!out.coordinate.empty()) input_error(field, "mixes linear rows with coordinate components");
        std::vector<std::vector<mpq_class>> rows;
        for (std::size_t r = 0; r < c.size(); ++r) {
          const std::string rf = field + "[" + std::to_string(r) + "]";
          if (!c[r].is_array() || c[r].size() != out.n_vars) {
            input_error(rf, "expected a row of " + std::to_string(out.n_vars) + " coefficients");
          }
          std::vector<mpq_class> row;
          for (std::size_t j = 0; j < c[r].size(); ++j) row.push_back(as_scalar(c[r][j], rf + "[" + std::to_string(j) + "]"));
          rows.push_back(std::move(row));
        }
        out.linear.push_back(std::move(rows));
      } else {
        if (!out.linear.empty()) input_error(field, "mixes coordinate indices with linear components");
        out.coordinate.push_back(as_index_list(c, field, out.n_vars));
      }
    }
  }
  if (doc.contains("generators")) {
    const auto& gens = doc["generators"];
    if (!gens.is_array() || gens.empty()) input_error("generators", "expected a nonempty list of supports");
    std::vector<std::vector<std::size_t>> g;
    for (std::size_t t = 0; t < gens.size(); ++t) {
      auto s = as_index_list(gens[t], "generators[" + std::to_string(t) + "]", out.n_vars);
      if (s.empty()) input_error("generators[" + std::to_string(t) + "]", "empty support is the unit ideal");
      g.push_back(std::move(s));
    }
    out.generators = std::move(g);
  }
  if (doc.contains("eisenstein")) {
    const auto& e = doc["eisenstein"];
    if (!e.is_object()) input_error("eisenstein", "expected an object");
    for (const auto& [key, value] : e.items()) {
      if (key != "p" && key != "dim" && key != "degree" && key != "coeffs") input_error("eisenstein." + key, "unknown field");
    }
    EisensteinBlock b;
    if (e.contains("p")) {
      if (!e["p"].is_number_unsigned() || !is_prime(e["p"].get<std::uint64_t>())) input_error("eisenstein.p", "expected a prime");
      b.p = e["p"].get<std::uint64_t>();
    }
    if (e.contains("dim")) {
      if (!e["dim"].is_number_unsigned() || e["dim"].get<std::uint64_t>() < 1) input_error("eisenstein.dim", "expected an integer >= 1");
      b.dim = e["dim"].get<std::size_t>();
    } else if (out.n_vars > 0) {
      b.dim = out.n_vars;
    }
    if (!e.contains("coeffs") || !e["coeffs"].is_array() || e["coeffs"].empty()) {
      input_error("eisenstein.coeffs", "expected the list a_1..a_l");
    }
    const auto& cs = e["coeffs"];
    b.degree = cs.size();
    if (e.contains("degree")) {
      if (!e["degree"].is_number_unsigned() || e["degree"].get<std::size_t>() != cs.size()) {
        input_error("eisenstein.degree", "must equal the number of coefficients (" + std::to_string(cs.size()) + ")");
      }
    }
    const LocalModel model = LocalModel::unramified(b.p, b.dim);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string field = "eisenstein.coeffs[" + std::to_string(i) + "]";
      const auto& c = cs[i];
      try {
        if (c.is_null()) {
          b.coeffs.push_back(CoefficientDescriptor::zero());
        } else if (c.is_number_unsigned()) {
          b.coeffs.push_back(CoefficientDescriptor::with_order(c.get<unsigned>()));
        } else if (c.is_string()) {
          b.coeffs.push_back(CoefficientDescriptor::term(model, c.get<std::string>()));
        } else if (c.is_object()) {
          for (const auto& [key, value] : c.items()) {
            if (key != "ord" && key != "term" && key != "unit") input_error(field + "." + key, "unknown field");
          }
          std::string unit = c.contains("unit") ? c["unit"].get<std::string>() : "";
          CoefficientDescriptor d;
          if (c.contains("term")) {
            d = CoefficientDescriptor::term(model, c["term"].get<std::string>(), unit);
            if (c.contains("ord") && d.ord_m != std::optional<unsigned>(c["ord"].get<unsigned>())) {
              input_error(field, "'ord' disagrees with the order of 'term'");
            }
          } else if (c.contains("ord")) {
            d = CoefficientDescriptor::with_order(c["ord"].get<unsigned>());
            d.unit = unit;
          } else {
            input_error(field, "needs 'ord' or 'term'");
          }
          b.coeffs.push_back(std::move(d));
        } else {
          input_error(field, "expected null, an order, a term string or an object");
        }
      } catch (const Error& err) {
        if (err.code() == ErrorCode::kInputError) throw;
        input_error(field, err.what());
      } catch (const json::exception& err) {
        input_error(field, err.what());
      }
    }
    out.eisenstein = std::move(b);
  }
  if (doc.contains("flags")) {
    if (!doc["flags"].is_object()) input_error("flags", "expected an object");
    out.flags = doc["flags"];
  }
  return out;
}

InputDocument parse_input_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInputError, std::string("malformed JSON: ") + e.what());
  }
  return parse_input(doc);
}

json to_json(const InputDocument& doc) {
  json out = json::object();
  if (doc.n_vars > 0) out["n_vars"] = doc.n_vars;
  out["field"] = doc.field.is_rational() ? "q" : "p:" + std::to_string(doc.field.characteristic());
  if (!doc.coordinate.empty()) out["components"] = doc.coordinate;
  if (!doc.linear.empty()) {
    json comps = json::array();
    for (const auto& rows : doc.linear) {
      json rs = json::array();
      for (const auto& row : rows) {
        json r = json::array();
        for (const auto& x : row) r.push_back(scalar_json(x));
        rs.push_back(r);
      }
      comps.push_back(rs);
    }
    out["components"] = comps;
  }
  if (doc.generators) out["generators"] = *doc.generators;
  if (doc.eisenstein) {
    const auto& b = *doc.eisenstein;
    const LocalModel model = LocalModel::unramified(b.p, b.dim);
    json cs = json::array();
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
      const auto& c = b.coeffs[i];
      if (c.is_zero()) {
        cs.push_back(nullptr);
      } else if (c.has_monomial()) {
        CoefficientDescriptor bare = c;
        bare.unit.clear();
        json o = {{"term", bare.to_string(model, i + 1)}};
        if (!c.unit.empty()) o["unit"] = c.unit;
        cs.push_back(o);
      } else {
        json o = {{"ord", *c.ord_m}};
        if (!c.unit.empty()) o["unit"] = c.unit;
        cs.push_back(o);
      }
    }
    out["eisenstein"] = {{"p", b.p}, {"dim", b.dim}, {"degree", b.degree}, {"coeffs", cs}};
  }
  if (!doc.flags.empty()) out["flags"] = doc.flags;
  return out;
}

InputDocument document_for(const Arrangement& arrangement) {
  InputDocument doc;
  doc.n_vars = arrangement.ring().n_vars();
  doc.field = arrangement.ring().field();
  for (const auto& c : arrangement.coordinate_components()) doc.coordinate.push_back(one_based(c.vars()));
  return doc;
}

// ---------------------------------------------------------------------------
// Analysis

json analysis_json(const Analysis& a) {
  json out;
  json mp = {{"produced_by", "ring_core.minimal_primes_check"}, {"ok", a.minimal_primes.ok}};
  json viol = json::array();
  for (auto [t, s] : a.minimal_primes.violations) viol.push_back({{"contained", t + 1}, {"in", s + 1}});
  mp["violations"] = viol;
  out["minimal_primes"] = mp;

  json classes = json::array();
  for (std::size_t c = 0; c < a.e1.classes->size(); ++c) {
    const auto& cls = (*a.e1.classes)[c];
    classes.push_back({{"class", c}, {"ideal", to_string(cls.ideal)}, {"height", cls.height}});
  }
  out["ideal_classes"] = {{"produced_by", "mvss_engine.build_e1"}, {"classes", classes}};

  json e1 = page_json(a.e1);
  json terms = json::array();
  for (const auto& t : a.e1.terms) {
    std::vector<std::size_t> tuple;
    for (auto i : t.tuple) tuple.push_back(i + 1);
    terms.push_back({{"tuple", tuple}, {"class", t.ideal_class}, {"q", t.height}});
  }
  e1["terms"] = terms;
  e1["produced_by"] = "mvss_engine.build_e1";
  json e2 = page_json(a.e2);
  e2["produced_by"] = "mvss_engine.compute_e2";
  json einf = page_json(a.e2);
  einf["page"] = "infinity";
  einf["produced_by"] = "mvss_engine.check_degeneration";
  out["pages"] = {{"E1", e1}, {"E2", e2}, {"E_infinity", einf}};

  json maps = json::array();
  for (const auto& d : a.d1.maps) {
    maps.push_back({{"class", d.ideal_class},
                    {"source_column", -static_cast<int>(d.source_p)},
                    {"shape", {d.matrix.rows, d.matrix.cols}},
                    {"nonzero_entries", d.matrix.entries.size()},
                    {"rank", rank(d.matrix, a.arrangement.ring().field())}});
  }
  out["e1_differential"] = {{"produced_by", "mvss_engine.e1_differential"},
                            {"maps", maps},
                            {"d_squared_zero", !find_dd_violation(a.d1).has_value()}};

  json entries = json::array();
  for (const auto& e : a.certificate.entries) {
    json j = {{"r", e.r},
              {"source", degree_json(e.source)},
              {"target", degree_json(e.target)},
              {"reason", tag(e.reason)},
              {"justification", e.justification}};
    j["source_class"] = e.source_class ? json(*e.source_class) : json(nullptr);
    j["target_class"] = e.target_class ? json(*e.target_class) : json(nullptr);
    entries.push_back(j);
  }
  out["degeneration"] = {{"produced_by", "mvss_engine.check_degeneration"},
                         {"total", a.certificate.total},
                         {"max_page", a.certificate.max_page},
                         {"entries", entries}};

  json filt = json::array();
  for (const auto& f : a.filtrations) {
    json sqs = json::array();
    for (const auto& sq : f.subquotients) {
      json es = json::array();
      for (const auto& e : sq.entries) {
        es.push_back({{"class", e.ideal_class},
                      {"ideal", to_string(a.e2.ideal_class(e.ideal_class).ideal)},
                      {"multiplicity", e.multiplicity}});
      }
      sqs.push_back({{"position", degree_json(sq.pos)}, {"entries", es}});
    }
    std::vector<std::string> cands;
    for (auto c : f.ass_candidates) cands.push_back(to_string(a.e2.ideal_class(c).ideal));
    filt.push_back({{"degree", f.degree}, {"subquotients", sqs}, {"ass_candidates", cands}});
  }
  out["filtration"] = {{"produced_by", "mvss_engine.filtration"}, {"degrees", filt}};
  out["support"] = {{"produced_by", "mvss_engine.support_degrees"}, {"degrees", support_json(a.support)}};
  out["warnings"] = a.warnings;
  return out;
}

Result cmd_analyze(const InputDocument& doc) {
  const Analysis a = run_analysis(doc.arrangement());
  json r = analysis_json(a);
  r["command"] = "analyze";
  r["produced_by"] = "cli_report.cmd_analyze";
  r["input"] = to_json(doc);
  r["findings"] = json::array();
  return {r, 0};
}

// ---------------------------------------------------------------------------
// Oracle comparison

Result cmd_compare(const InputDocument& doc, const CompareOptions& options) {
  const Arrangement arr = doc.arrangement();
  const auto comps = arr.coordinate_components();
  if (!options.box.covers_default()) throw Error(ErrorCode::kBoxTooSmall, "compare needs a box containing [-2, 1]^n");
  const Field& field = arr.ring().field();
  const std::size_t n = arr.ring().n_vars();
  const SquarefreeMonomialIdeal J = intersect(comps);

  json r;
  r["command"] = "compare";
  r["produced_by"] = "cli_report.cmd_compare";
  r["input"] = to_json(doc);
  r["box"] = {options.box.lower, options.box.upper};
  r["sign_convention"] = options.signs == SignConvention::kAlternating ? "alternating" : "all_positive";
  r["intersection"] = {{"produced_by", "ring_core.intersect"}, {"ideal", J.to_string()}};

  json mismatch = nullptr;
  auto fail = [&](json m) {
    if (mismatch.is_null()) mismatch = std::move(m);
  };

  std::optional<Analysis> analysis;
  try {
    analysis = run_analysis(arr, options.signs);
  } catch (const Error& e) {
    fail({{"kind", "engine_error"}, {"message", e.what()}});
  }

  GradedCohomology coh(J, field);
  CechOracle oracle(field);
  std::set<int> oracle_support;
  for_each_degree(n, DegreeBox{-1, 0}, [&](const Multidegree& a) {
    auto dims = coh.dims(a);
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (dims[p] > 0) oracle_support.insert(static_cast<int>(p));
    }
  });
  json oracle_section = {{"produced_by", "cech_oracle.support_via_oracle"}, {"support", support_json(oracle_support)}};

  std::size_t degrees_checked = 0;
  json ass_section = json::array();
  if (analysis) {
    r["analysis"] = analysis_json(*analysis);
    if (analysis->support != oracle_support) {
      std::vector<int> diff;
      std::set_symmetric_difference(analysis->support.begin(), analysis->support.end(), oracle_support.begin(),
                                    oracle_support.end(), std::back_inserter(diff));
      fail({{"kind", "support"},
            {"degree", diff.front()},
            {"engine", support_json(analysis->support)},
            {"oracle", support_json(oracle_support)}});
    }

    int top = static_cast<int>(std::max(n, J.generators().size()));
    for (int s : analysis->support) top = std::max(top, s);
    for_each_degree(n, options.box, [&](const Multidegree& a) {
      ++degrees_checked;
      if (!mismatch.is_null()) return;
      auto dims = coh.dims(a);
      for (int i = std::min(0, *analysis->support.begin()); i <= top; ++i) {
        const std::int64_t predicted = predicted_graded_dim(*analysis, i, a);
        const std::int64_t actual =
            i >= 0 && static_cast<std::size_t>(i) < dims.size() ? static_cast<std::int64_t>(dims[static_cast<std::size_t>(i)]) : 0;
        if (predicted != actual) {
          fail({{"kind", "graded_dimension"}, {"degree", i}, {"multidegree", a}, {"engine", predicted}, {"oracle", actual}});
          return;
        }
      }
    });

    for (int i : oracle_support) {
      auto found = detect_ass(coh, i, options.box, field);
      std::set<VarSet> candidates;
      if (const auto* f = analysis->filtration_at(i)) {
        for (auto c : f->ass_candidates) {
          const auto* ci = std::get_if<CoordinateIdeal>(&analysis->e2.ideal_class(c).ideal);
          if (ci) candidates.insert(ci->vars());
        }
      }
      std::vector<std::string> extra;
      for (const auto& P : found) {
        if (!candidates.count(P.vars())) extra.push_back(P.to_string());
      }
      ass_section.push_back({{"degree", i}, {"oracle_ass", ideal_list(found)}, {"subset_of_candidates", extra.empty()}});
      if (!extra.empty()) fail({{"kind", "ass"}, {"degree", i}, {"not_candidates", extra}});
    }
  }
  oracle_section["ass"] = ass_section;
  oracle_section["ass_produced_by"] = "cech_oracle.ass_via_oracle";
  r["oracle"] = oracle_section;
  r["degrees_checked"] = degrees_checked;
  r["verdict"] = mismatch.is_null() ? "PASS" : "FAIL";
  r["first_mismatch"] = mismatch;
  r["findings"] = json::array();
  return {r, mismatch.is_null() ? 0 : 1};
}

Result cmd_oracle(const InputDocument& doc, const std::optional<Multidegree>& degree, const DegreeBox& box) {
  const SquarefreeMonomialIdeal J = doc.monomial_ideal();
  if (J.is_zero()) throw Error(ErrorCode::kZeroIdeal, "the oracle needs a nonzero ideal");
  const CechOracle oracle(doc.field);
  GradedCohomology coh(J, doc.field);
  json r;
  r["command"] = "oracle";
  r["produced_by"] = "cli_report.cmd_oracle";
  r["input"] = to_json(doc);
  r["ideal"] = J.to_string();
  std::set<int> support;
  for_each_degree(J.ring().n_vars(), DegreeBox{-1, 0}, [&](const Multidegree& a) {
    auto dims = coh.dims(a);
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (dims[p] > 0) support.insert(static_cast<int>(p));
    }
  });
  r["support"] = {{"produced_by", "cech_oracle.support_via_oracle"}, {"degrees", support_json(support)}};
  json ass = json::array();
  for (int i : support) ass.push_back({{"degree", i}, {"ass", ideal_list(detect_ass(coh, i, box, doc.field))}});
  r["ass"] = {{"produced_by", "cech_oracle.ass_via_oracle"},
              {"box", {box.lower, box.upper}},
              {"heuristic", doc.generators.has_value()},
              {"degrees", ass}};
  if (degree) {
    if (degree->size() != J.ring().n_vars()) {
      throw Error(ErrorCode::kInputError, "--degree needs " + std::to_string(J.ring().n_vars()) + " entries");
    }
    auto cx = oracle.graded_cech(J, *degree);
    std::vector<std::size_t> ranks;
    for (const auto& b : cx.bases) ranks.push_back(b.size());
    r["graded_piece"] = {{"produced_by", "cech_oracle.local_cohomology_dims"},
                         {"multidegree", *degree},
                         {"cochain_ranks", ranks},
                         {"dims", coh.dims(*degree)}};
  }
  r["findings"] = json::array();
  return {r, 0};
}

// ---------------------------------------------------------------------------
// Extensions

namespace {

json eisenstein_json(const LocalModel& model, const EisensteinPoly& poly) {
  json out;
  out["produced_by"] = "eisenstein.validate_eisenstein";
  out["model"] = {{"residue_char", model.residue_char}, {"dim", model.dim}, {"parameters", model.parameters}};
  out["polynomial"] = poly.to_string(model);
  const auto verdict = validate_eisenstein(poly);
  json viol = json::array();
  for (const auto& v : verdict.violations) {
    viol.push_back({{"index", v.index}, {"tag", tag(v.kind)}, {"message", v.message}});
  }
  out["valid"] = verdict.valid;
  out["violations"] = viol;
  return out;
}

json ramification_json(const RamificationResult& res) {
  json out = {{"produced_by", "eisenstein.ramification_witness"}, {"certified", res.certified}};
  if (res.certificate) {
    const auto& c = *res.certificate;
    json summands = json::array();
    for (const auto& s : c.summands) {
      summands.push_back({{"term", s.text}, {"x_power", s.x_power}, {"membership", s.membership}});
    }
    out["certificate"] = {{"text", c.text},
                          {"prefactor", c.prefactor},
                          {"summands", summands},
                          {"identity_verified", c.identity_verified},
                          {"constant_term_assumed", c.constant_term_assumed}};
  } else {
    out["certificate"] = nullptr;
  }
  out["flag"] = res.flag.empty() ? json(nullptr) : json(res.flag);
  return out;
}

json table_json(const MultiplicationTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.rank; ++i) {
    for (std::size_t j = 0; j < t.rank; ++j) {
      std::vector<std::string> coords;
      for (const auto& c : t.products[i][j]) coords.push_back(c.to_string());
      rows.push_back({{"left", t.basis[i]}, {"right", t.basis[j]}, {"coordinates", coords}});
    }
  }
  return {{"produced_by", "eisenstein.s_module_basis"}, {"basis", t.basis}, {"products", rows}};
}

}  // namespace

Result cmd_eisenstein(const InputDocument& doc) {
  if (!doc.eisenstein) throw Error(ErrorCode::kInputError, "field 'eisenstein': missing block");
  const auto& b = *doc.eisenstein;
  const LocalModel model = LocalModel::unramified(b.p, b.dim);
  const EisensteinPoly poly(b.degree, b.coeffs);
  json r;
  r["command"] = "eisenstein";
  r["produced_by"] = "cli_report.cmd_eisenstein";
  r["input"] = to_json(doc);
  r["validation"] = eisenstein_json(model, poly);
  r["findings"] = json::array();
  if (!validate_eisenstein(poly).valid) {
    r["ramification"] = nullptr;
    return {r, 0};
  }
  const ExtensionDescriptor ext = make_extension(model, poly);
  r["extension"] = {{"produced_by", "eisenstein.make_extension"},
                    {"rank", ext.rank()},
                    {"maximal_ideal_gens", ext.maximal_ideal_gens}};
  r["ramification"] = ramification_json(ramification_witness(ext));
  r["multiplication_table"] = table_json(s_module_basis(ext));
  if (doc.has_components() && !doc.coordinate.empty()) {
    if (doc.n_vars != b.dim) {
      throw Error(ErrorCode::kInputError, "field 'n_vars': components must live in the base model with " +
                                              std::to_string(b.dim) + " parameters");
    }
    const Arrangement arr = doc.arrangement();
    const Analysis a = run_analysis(arr);
    json extended = json::array();
    for (const auto& c : arr.components()) {
      auto e = extend_ideal(c, ext);
      extended.push_back({{"ideal", to_string(e.ideal)}, {"provenance", e.provenance}});
    }
    const auto transfer = flat_transfer(a.support, true);
    r["extended_components"] = {{"produced_by", "eisenstein.extend_ideal"}, {"ideals", extended}};
    r["flat_transfer"] = {{"produced_by", "eisenstein.flat_transfer"},
                          {"base_support", support_json(a.support)},
                          {"support", support_json(transfer.support)},
                          {"ass_finite_over_extension", transfer.ass_finite_over_extension},
                          {"provenance", transfer.provenance}};
  }
  return {r, 0};
}

Result cmd_demo_remark2(const DemoOptions& options) {
  if (options.n_vars < 2) throw Error(ErrorCode::kInputError, "--n-vars must be at least 2 (p-slot and X)");
  const std::size_t n = options.n_vars;
  const LocalModel model = LocalModel::unramified(options.p, n - 1);
  const EisensteinPoly poly(2, {CoefficientDescriptor::zero(), CoefficientDescriptor::term(model, "-p")});
  const ExtensionDescriptor ext = make_extension(model, poly);
  const RingDescriptor ring(n);

  std::vector<std::string> slots = model.parameters;
  slots.push_back("X");
  const VarSet all((n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  std::vector<VarSet> comps{all};
  for (std::size_t t = 0; t < options.extra_components.size(); ++t) {
    const auto& c = options.extra_components[t];
    if (c.empty()) throw Error(ErrorCode::kInputError, "extra component " + std::to_string(t + 2) + " is empty");
    for (auto i : c) {
      if (i < 1 || i > n) {
        throw Error(ErrorCode::kInputError, "extra component " + std::to_string(t + 2) + ": index " +
                                                std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
      }
    }
    comps.push_back(VarSet::of(std::span<const std::size_t>(c)));
  }
  const Arrangement arr = Arrangement::coordinate(ring, comps);
  const CoordinateIdeal maximal(ring, all);

  json r;
  r["command"] = "demo-remark2";
  r["produced_by"] = "cli_report.cmd_demo_remark2";
  r["model"] = {{"variables", slots}, {"p_slot", 1}, {"X_slot", n}};
  r["extension"] = eisenstein_json(model, poly);
  const auto ram = ramification_witness(ext);
  r["ramification"] = ramification_json(ram);

  bool non_extended = false;
  std::string extension_check;
  try {
    extend_ideal(Ideal(maximal), ext);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotExtended) throw;
    non_extended = true;
    extension_check = e.what();
  }
  auto named = [&](const CoordinateIdeal& c) {
    std::vector<std::string> v;
    for (auto i : c.vars().indices()) v.push_back(slots[i - 1]);
    return "(" + join(v, ",") + ")";
  };
  r["maximal_ideal"] = {{"ideal", maximal.to_string()},
                        {"named", named(maximal)},
                        {"non_extended", non_extended},
                        {"reason", extension_check}};

  const Analysis a = run_analysis(arr);
  r["analysis"] = analysis_json(a);
  const int top = *a.support.rbegin();
  bool contains_n = false;
  std::vector<std::string> cands;
  std::vector<std::string> named_cands;
  for (const auto& c : a.candidates(top)) {
    cands.push_back(to_string(c));
    const auto& ci = std::get<CoordinateIdeal>(c);
    named_cands.push_back(named(ci));
    contains_n = contains_n || ci.vars() == all;
  }
  const bool p_in_n = all.contains(0);
  r["top_degree"] = {{"degree", top},
                     {"ass_candidates", cands},
                     {"named", named_cands},
                     {"finite", true},
                     {"contains_maximal_ideal", contains_n}};
  r["annotations"] = {{"p ∈ n", p_in_n},
                      {"p ∈ n²", ram.certified},
                      {"witness", ram.certificate ? json(ram.certificate->text) : json(nullptr)}};
  json findings = json::array();
  if (!a.minimal_primes.ok) {
    std::vector<std::string> v;
    for (auto [t, s] : a.minimal_primes.violations) {
      v.push_back("J_" + std::to_string(t + 1) + " ⊆ J_" + std::to_string(s + 1));
    }
    findings.push_back("hypothesis violation: components are not pairwise incomparable (" + join(v, ", ") + ")");
  }
  if (!contains_n) findings.push_back("top-degree candidates do not contain n");
  r["findings"] = findings;
  const bool ok = a.minimal_primes.ok && contains_n && p_in_n && non_extended;
  r["verdict"] = ok ? "PASS" : "FAIL";
  if (!a.minimal_primes.ok) {
    r["error"] = to_string(ErrorCode::kPrecondition);
    return {r, 2};
  }
  return {r, ok ? 0 : 1};
}

Result cmd_cci(const InputDocument& doc) {
  const CechOracle oracle(doc.field);
  CciResult res;
  std::string ideal;
  if (!doc.generators && doc.coordinate.size() == 1) {
    const CoordinateIdeal c(doc.ring(), VarSet::of(std::span<const std::size_t>(doc.coordinate.front())));
    res = cci_check(c);
    ideal = c.to_string();
  } else {
    const auto J = doc.monomial_ideal();
    res = cci_check(J, &oracle);
    ideal = J.to_string();
  }
  json r;
  r["command"] = "cci";
  r["produced_by"] = "mvss_engine.cci_check";
  r["input"] = to_json(doc);
  r["ideal"] = ideal;
  r["is_cci"] = res.is_cci;
  r["support"] = support_json(res.support);
  r["height"] = res.height;
  r["regular_quotient"] = res.regular_quotient;
  r["findings"] = res.finding ? json::array({*res.finding}) : json::array();
  return {r, 0};
}

// ---------------------------------------------------------------------------
// Batches

std::vector<Result> batch_compare(const std::vector<InputDocument>& docs, const CompareOptions& options,
                                  std::size_t workers) {
  std::vector<Result> out(docs.size());
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, docs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < docs.size();) {
      try {
        out[k] = cmd_compare(docs[k], options);
      } catch (const Error& e) {
        out[k] = {{{"command", "compare"}, {"error", to_string(e.code())}, {"message", e.what()}},
                  exit_code_for(e.code())};
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInternalSignError:
    case ErrorCode::kUncertifiedDifferential:
    case ErrorCode::kDegenerationNotCertified:
      return 3;
    default:
      return 2;
  }
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string cells_text(const json& page) {
  std::ostringstream os;
  for (const auto& cell : page["cells"]) {
    std::vector<std::string> es;
    for (const auto& e : cell["entries"]) {
      es.push_back(e["ideal"].get<std::string>() + " x" + std::to_string(e["multiplicity"].get<std::int64_t>()));
    }
    std::ostringstream pos;
    pos << "(" << cell["position"][0].get<int>() << "," << cell["position"][1].get<int>() << ")";
    os << "    " << std::left << std::setw(10) << pos.str() << join(es, ", ") << "\n";
  }
  if (page["cells"].empty()) os << "    (empty)\n";
  return os.str();
}

std::string ints(const json& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x.dump());
  return "{" + join(parts, ",") + "}";
}

std::string strings(const json& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x.get<std::string>());
  return "{" + join(parts, ", ") + "}";
}

void analysis_text(std::ostringstream& os, const json& a) {
  os << "minimal primes: " << (a["minimal_primes"]["ok"].get<bool>() ? "ok" : "VIOLATED") << "\n";
  for (const auto& w : a["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
  os << "E1 page:\n" << cells_text(a["pages"]["E1"]);
  os << "E2 page:\n" << cells_text(a["pages"]["E2"]);
  const auto& d = a["degeneration"];
  os << "degeneration: " << (d["total"].get<bool>() ? "certified" : "not certified") << " ("
     << d["entries"].size() << " entries)\n";
  for (const auto& e : d["entries"]) {
    os << "    r=" << e["r"].get<int>() << " (" << e["source"][0].get<int>() << "," << e["source"][1].get<int>()
       << ") -> (" << e["target"][0].get<int>() << "," << e["target"][1].get<int>() << ")  "
       << e["reason"].get<std::string>() << "\n";
  }
  os << "filtration:\n";
  for (const auto& f : a["filtration"]["degrees"]) {
    os << "    i=" << std::left << std::setw(4) << f["degree"].get<int>()
       << "candidates " << strings(f["ass_candidates"]) << "\n";
  }
  os << "support: " << ints(a["support"]["degrees"]) << "\n";
}

}  // namespace

std::string render_text(const json& r) {
  std::ostringstream os;
  const std::string cmd = r.value("command", "");
  if (r.contains("error") && !r.contains("analysis")) {
    os << "error: " << r["error"].get<std::string>() << ": " << r.value("message", "") << "\n";
    return os.str();
  }
  if (cmd == "analyze") {
    analysis_text(os, r);
  } else if (cmd == "compare") {
    os << "ideal: " << r["intersection"]["ideal"].get<std::string>() << "\n";
    if (r.contains("analysis")) analysis_text(os, r["analysis"]);
    os << "oracle support: " << ints(r["oracle"]["support"]) << "\n";
    for (const auto& e : r["oracle"]["ass"]) {
      os << "oracle Ass at i=" << e["degree"].get<int>() << ": " << strings(e["oracle_ass"]) << "\n";
    }
    os << "degrees checked: " << r["degrees_checked"].get<std::size_t>() << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
    if (!r["first_mismatch"].is_null()) os << "first mismatch: " << r["first_mismatch"].dump() << "\n";
  } else if (cmd == "oracle") {
    os << "ideal: " << r["ideal"].get<std::string>() << "\n";
    os << "support: " << ints(r["support"]["degrees"]) << "\n";
    for (const auto& e : r["ass"]["degrees"]) {
      os << "Ass at i=" << e["degree"].get<int>() << ": " << strings(e["ass"]) << "\n";
    }
    if (r["ass"]["heuristic"].get<bool>()) os << "note: Ass detection relies on stabilization inside the box\n";
    if (r.contains("graded_piece")) {
      const auto& g = r["graded_piece"];
      os << "degree " << g["multidegree"].dump() << ": cochain ranks " << g["cochain_ranks"].dump() << ", dims "
         << g["dims"].dump() << "\n";
    }
  } else if (cmd == "eisenstein") {
    const auto& v = r["validation"];
    os << "f(X) = " << v["polynomial"].get<std::string>() << "\n";
    os << "Eisenstein: " << (v["valid"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& x : v["violations"]) {
      os << "    " << x["tag"].get<std::string>() << " at a_" << x["index"].get<int>() << ": "
         << x["message"].get<std::string>() << "\n";
    }
    if (!r["ramification"].is_null()) {
      const auto& ram = r["ramification"];
      if (ram["certified"].get<bool>()) {
        os << "ramified: " << ram["certificate"]["text"].get<std::string>() << "\n";
        for (const auto& s : ram["certificate"]["summands"]) {
          os << "    " << s["term"].get<std::string>() << "  " << s["membership"].get<std::string>() << "\n";
        }
      } else {
        os << "flag: " << ram["flag"].get<std::string>() << "\n";
      }
      os << "S-basis: " << strings(r["multiplication_table"]["basis"]) << "\n";
    }
    if (r.contains("flat_transfer")) {
      os << "support over S: " << ints(r["flat_transfer"]["support"]) << "\n";
    }
  } else if (cmd == "demo-remark2") {
    os << "model variables: " << strings(r["model"]["variables"]) << "\n";
    os << "f(X) = " << r["extension"]["polynomial"].get<std::string>() << "\n";
    if (r["ramification"]["certified"].get<bool>()) {
      os << "witness: " << r["ramification"]["certificate"]["text"].get<std::string>() << "\n";
    }
    os << "n = " << r["maximal_ideal"]["named"].get<std::string>() << " = " << r["maximal_ideal"]["ideal"].get<std::string>()
       << (r["maximal_ideal"]["non_extended"].get<bool>() ? " (not extended from R)" : "") << "\n";
    analysis_text(os, r["analysis"]);
    const auto& t = r["top_degree"];
    os << "top degree " << t["degree"].get<int>() << " candidates " << strings(t["named"])
       << (t["contains_maximal_ideal"].get<bool>() ? "  contains n" : "  does not contain n") << "\n";
    os << "p ∈ n: " << (r["annotations"]["p ∈ n"].get<bool>() ? "yes" : "no") << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
  } else if (cmd == "cci") {
    os << "ideal: " << r["ideal"].get<std::string>() << "\n";
    os << "height " << r["height"].get<std::size_t>() << ", support " << ints(r["support"]) << "\n";
    os << "CCI: " << (r["is_cci"].get<bool>() ? "yes" : "no")
       << ", regular quotient: " << (r["regular_quotient"].get<bool>() ? "yes" : "no") << "\n";
  } else {
    os << r.dump(2) << "\n";
    return os.str();
  }
  if (r.contains("findings")) {
    for (const auto& f : r["findings"]) os << "finding: " << f.get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace lcmv::report
