// Command-line front end: evaluate expressions, print reports and traces,
// emit the sphere/torus tables, run the self-check corpus.
//
// Exit codes: 0 success, 2 parse error, 3 inconsistency, 1 anything else.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stablerank/dsl.hpp"
#include "stablerank/report.hpp"
#include "stablerank/selfcheck.hpp"

namespace {

using namespace stablerank;

RankInterval interval_from_json(const nlohmann::json& j, const char* key) {
  auto endpoint = [&](const char* name) -> ExtNat {
    const auto& v = j.at(name);
    if (v.is_string() && v.get<std::string>() == "inf") return ExtNat::inf();
    return ExtNat(v.get<std::uint64_t>());
  };
  (void)key;
  return RankInterval(endpoint("lo"), endpoint("hi"));
}

std::vector<Axiom> load_axioms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open axioms file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array())
    throw std::runtime_error("axioms file must hold a JSON array");
  std::vector<Axiom> axioms;
  for (const auto& entry : doc) {
    Axiom ax;
    ax.node_path = entry.value("node", std::string{});
    ax.quantity = entry.at("quantity").get<std::string>();
    if (entry.contains("lo") || entry.contains("hi")) {
      ax.interval = interval_from_json(entry, "interval");
    } else if (entry.contains("value")) {
      std::string v = entry.at("value").get<std::string>();
      if (v == "yes") ax.flag = TriBool::Yes;
      else if (v == "no") ax.flag = TriBool::No;
      else throw std::runtime_error("axiom value must be yes or no");
    } else {
      throw std::runtime_error("axiom needs lo/hi or value");
    }
    axioms.push_back(std::move(ax));
  }
  return axioms;
}

int cmd_rank(const std::string& expr_text, bool json, bool trace,
             const std::string& axioms_path) {
  auto parsed = parse(expr_text);
  if (!parsed.ok()) {
    std::cerr << "parse error: " << parsed.error->message << "\n";
    return 2;
  }
  try {
    std::vector<Axiom> axioms;
    if (!axioms_path.empty()) axioms = load_axioms(axioms_path);
    InferResult result = infer(parsed.expr, axioms);
    Report report = make_report(expr_text, result, trace);
    std::cout << (json ? to_json(report) : to_text(report)) << "\n";
    return 0;
  } catch (const InconsistencyError& ex) {
    std::cerr << "inconsistency: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

int cmd_table(const std::string& kind, std::uint64_t max_d) {
  std::cout << "d, gsr, csr\n";
  for (std::uint64_t d = 1; d <= max_d; ++d) {
    std::string text = kind == "spheres"
                           ? "Cx(S(" + std::to_string(d) + "))"
                           : "Cx(T(" + std::to_string(d) + "))";
    auto parsed = parse(text);
    InferResult result = infer(parsed.expr);
    const RankState& s = result.root_state();
    std::cout << d << ", " << s.gsr.str() << ", " << s.csr.str() << "\n";
  }
  return 0;
}

int cmd_check(std::size_t corpus_size) {
  std::vector<std::string> failures = run_self_check(corpus_size);
  if (failures.empty()) {
    std::cout << "self-check passed\n";
    return 0;
  }
  for (const auto& f : failures) std::cerr << "FAIL: " << f << "\n";
  std::cerr << failures.size() << " failure(s)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable rank inference for compositional C*-algebra "
               "expressions"};
  app.require_subcommand(1);

  std::string expr_text, axioms_path;
  bool json = false, trace = false;
  auto* rank = app.add_subcommand("rank", "infer rank enclosures for an "
                                          "expression");
  rank->add_option("expr", expr_text, "expression text")->required();
  rank->add_flag("--json", json, "emit the JSON report");
  rank->add_flag("--trace", trace, "include the derivation trace");
  rank->add_option("--axioms-file", axioms_path,
                   "JSON list of user axioms to merge");

  std::string table_kind;
  std::uint64_t max_d = 0;
  auto* table = app.add_subcommand("table", "print the closed-form tables");
  table->add_option("kind", table_kind, "spheres or tori")
      ->required()
      ->check(CLI::IsMember({"spheres", "tori"}));
  table->add_option("--max-d", max_d, "largest dimension")
      ->required()
      ->check(CLI::PositiveNumber);

  std::size_t corpus_size = 1000;
  auto* check = app.add_subcommand("check", "run the embedded self-check");
  check->add_option("--corpus-size", corpus_size,
                    "number of generated expressions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rank->parsed()) return cmd_rank(expr_text, json, trace, axioms_path);
    if (table->parsed()) return cmd_table(table_kind, max_d);
    if (check->parsed()) return cmd_check(corpus_size);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
