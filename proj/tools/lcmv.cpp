#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lcmv/random.hpp"
#include "lcmv/report.hpp"

using namespace lcmv;
using report::json;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInputError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInputError, path + ": malformed JSON: " + e.what());
  }
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInputError, what + ": cannot read '" + item + "' as an integer");
    }
  }
  return out;
}

void emit(const json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << report::render_text(report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mayer-Vietoris spectral sequences for local cohomology of subspace arrangements"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::uint64_t seed = 1;
  std::string field_text;
  app.add_flag("--json", as_json, "Emit the machine-readable report");
  app.add_option("--seed", seed, "Seed for randomized drivers");
  app.add_option("--field", field_text, "Coefficient field: q or p:<prime>");

  std::string file;
  std::vector<int> box_bounds;
  std::string degree_text;
  bool corrupt_signs = false;
  std::size_t demo_vars = 4;
  std::uint64_t demo_p = 2;
  std::vector<std::string> demo_components;
  std::size_t workers = 0;
  std::size_t count = 200;

  auto* analyze = app.add_subcommand("analyze", "Run the spectral sequence analysis");
  analyze->add_option("file", file, "Input document (- for stdin)")->required();

  auto* compare = app.add_subcommand("compare", "Check the analysis against the Čech oracle");
  compare->add_option("file", file, "Input document (- for stdin)")->required();
  compare->add_option("--box", box_bounds, "Degree box bounds L U")->expected(2);
  compare->add_flag("--corrupt-signs", corrupt_signs, "Test hook: drop the face signs of d1")->group("");

  auto* oracle = app.add_subcommand("oracle", "Brute-force graded local cohomology");
  oracle->add_option("file", file, "Input document (- for stdin)")->required();
  oracle->add_option("--degree", degree_text, "Multidegree a1,..,an");
  oracle->add_option("--box", box_bounds, "Degree box bounds L U")->expected(2);

  auto* eis = app.add_subcommand("eisenstein", "Validate an Eisenstein polynomial and certify ramification");
  eis->add_option("file", file, "Input document (- for stdin)")->required();

  auto* demo = app.add_subcommand("demo-remark2", "Non-extended ideal with finite Ass containing p");
  demo->add_option("--n-vars", demo_vars, "Variables of the extension model (p-slot, x1.., X)");
  demo->add_option("--p", demo_p, "Residue characteristic");
  demo->add_option("--component", demo_components, "Extra component as indices i,j,..")->take_all();

  auto* cci = app.add_subcommand("cci", "Cohomologically complete intersection check");
  cci->add_option("file", file, "Input document (- for stdin)")->required();

  auto* batch = app.add_subcommand("batch-compare", "Compare every document of a JSON array");
  batch->add_option("file", file, "JSON array of input documents")->required();
  batch->add_option("--box", box_bounds, "Degree box bounds L U")->expected(2);
  batch->add_option("--workers", workers, "Worker threads (0 = all cores)");

  auto* random = app.add_subcommand("random", "Compare seeded random coordinate arrangements");
  random->add_option("--count", count, "Number of arrangements");
  random->add_option("--workers", workers, "Worker threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<Field> field;
    if (!field_text.empty()) field = Field::parse(field_text);
    auto load = [&] {
      auto doc = report::parse_input(read_json(file));
      if (field) doc.field = *field;
      return doc;
    };
    auto box = [&] {
      DegreeBox b;
      if (!box_bounds.empty()) {
        b = DegreeBox{box_bounds[0], box_bounds[1]};
        if (b.lower > 0 || b.upper < 0) throw Error(ErrorCode::kInputError, "--box needs L <= 0 <= U");
      }
      return b;
    };

    report::Result result;
    if (*analyze) {
      result = report::cmd_analyze(load());
    } else if (*compare) {
      report::CompareOptions opts{box(), corrupt_signs ? SignConvention::kAllPositive : SignConvention::kAlternating};
      result = report::cmd_compare(load(), opts);
    } else if (*oracle) {
      std::optional<Multidegree> degree;
      if (!degree_text.empty()) degree = parse_ints(degree_text, "--degree");
      result = report::cmd_oracle(load(), degree, box());
    } else if (*eis) {
      result = report::cmd_eisenstein(load());
    } else if (*demo) {
      report::DemoOptions opts{demo_vars, demo_p, {}};
      for (const auto& c : demo_components) {
        std::vector<std::size_t> idx;
        for (int i : parse_ints(c, "--component")) {
          if (i < 1) throw Error(ErrorCode::kInputError, "--component indices are 1-based");
          idx.push_back(static_cast<std::size_t>(i));
        }
        opts.extra_components.push_back(idx);
      }
      result = report::cmd_demo_remark2(opts);
    } else if (*cci) {
      result = report::cmd_cci(load());
    } else if (*batch || *random) {
      std::vector<report::InputDocument> docs;
      if (*batch) {
        const json arr = read_json(file);
        if (!arr.is_array()) throw Error(ErrorCode::kInputError, "batch input must be a JSON array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          try {
            docs.push_back(report::parse_input(arr[k]));
          } catch (const Error& e) {
            throw Error(ErrorCode::kInputError, "document " + std::to_string(k) + ": " + e.what());
          }
          if (field) docs.back().field = *field;
        }
      } else {
        std::mt19937_64 rng(seed);
        RandomArrangementOptions ro;
        if (field) ro.field = *field;
        for (std::size_t k = 0; k < count; ++k) docs.push_back(report::document_for(random_arrangement(rng, ro)));
      }
      auto results = report::batch_compare(docs, {box(), SignConvention::kAlternating}, workers);
      json all = json::array();
      std::size_t passed = 0;
      int code = 0;
      for (const auto& r : results) {
        all.push_back(r.report);
        if (r.exit_code == 0) ++passed;
        code = std::max(code, r.exit_code);
      }
      if (as_json) {
        json out = {{"command", *batch ? "batch-compare" : "random"},
                    {"produced_by", "cli_report.cmd_compare"},
                    {"seed", seed},
                    {"passed", passed},
                    {"total", results.size()},
                    {"reports", all}};
        std::cout << out.dump(2) << "\n";
      } else {
        for (std::size_t k = 0; k < results.size(); ++k) {
          const auto& r = results[k].report;
          std::cout << std::setw(4) << k << "  " << r.value("verdict", r.value("error", "ERROR")) << "  "
                    << (r.contains("intersection") ? r["intersection"]["ideal"].get<std::string>() : r.value("message", ""))
                    << "\n";
        }
        std::cout << passed << "/" << results.size() << " passed\n";
      }
      return code;
    }
    emit(result.report, as_json);
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
