#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcmv/cech.hpp"
#include "lcmv/eisenstein.hpp"
#include "lcmv/error.hpp"
#include "lcmv/mvss.hpp"

namespace lcmv::report {

using json = nlohmann::json;

struct EisensteinBlock {
  std::uint64_t p = 2;
  std::size_t dim = 1;
  std::size_t degree = 0;
  std::vector<CoefficientDescriptor> coeffs;
};

/// Parsed input file. Components are either all coordinate (1-based index
/// lists) or all linear (rows of coefficients).
struct InputDocument {
  std::size_t n_vars = 0;
  Field field = Field::rationals();
  std::vector<std::vector<std::size_t>> coordinate;
  std::vector<std::vector<std::vector<mpq_class>>> linear;
  /// Optional squarefree monomial ideal by generator supports.
  std::optional<std::vector<std::vector<std::size_t>>> generators;
  std::optional<EisensteinBlock> eisenstein;
  json flags = json::object();

  bool has_components() const { return !coordinate.empty() || !linear.empty(); }
  RingDescriptor ring() const { return RingDescriptor(n_vars, field); }
  /// Throws kInputError without components.
  Arrangement arrangement() const;
  SquarefreeMonomialIdeal monomial_ideal() const;
};

/// Throws Error(kInputError) naming the offending field.
InputDocument parse_input(const json& doc);
InputDocument parse_input_text(const std::string& text);
json to_json(const InputDocument& doc);

struct Result {
  json report;
  int exit_code = 0;
};

struct CompareOptions {
  DegreeBox box;
  SignConvention signs = SignConvention::kAlternating;
};

struct DemoOptions {
  std::size_t n_vars = 4;
  std::uint64_t p = 2;
  /// Extra components J_2.. as 1-based index lists over the model variables.
  std::vector<std::vector<std::size_t>> extra_components;
};

json analysis_json(const Analysis& analysis);

Result cmd_analyze(const InputDocument& doc);
Result cmd_compare(const InputDocument& doc, const CompareOptions& options = {});
Result cmd_oracle(const InputDocument& doc, const std::optional<Multidegree>& degree = std::nullopt,
                  const DegreeBox& box = {});
Result cmd_eisenstein(const InputDocument& doc);
Result cmd_demo_remark2(const DemoOptions& options = {});
Result cmd_cci(const InputDocument& doc);

/// Compares every document, fanning out over `workers` threads; results keep input order.
std::vector<Result> batch_compare(const std::vector<InputDocument>& docs, const CompareOptions& options = {},
                                  std::size_t workers = 0);

/// Input document describing a coordinate arrangement.
InputDocument document_for(const Arrangement& arrangement);

/// Plain-text rendering of any report.
std::string render_text(const json& report);

/// Exit code for an exception escaping a command.
int exit_code_for(ErrorCode code);

}  // namespace lcmv::report
