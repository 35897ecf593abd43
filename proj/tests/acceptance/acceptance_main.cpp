// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Criteria 1 and 2 drive the installed CLI; the rest use the library.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stablerank/dsl.hpp"
#include "stablerank/engine.hpp"
#include "stablerank/report.hpp"
#include "stablerank/selfcheck.hpp"

using namespace stablerank;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion
            << ": " << what << "\n";
  if (!ok) ++failures;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
  double seconds = 0.0;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  std::string cmd = std::string(STABLERANK_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  auto start = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// rows "d, gsr, csr"; returns gsr and csr column text per dimension
struct TableRow {
  std::string gsr, csr;
};
std::vector<TableRow> parse_table(const std::string& out) {
  std::vector<TableRow> rows;
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || !isdigit(static_cast<unsigned char>(line[0])))
      continue;
    std::size_t p1 = line.find(", ");
    std::size_t p2 = line.find(", ", p1 + 2);
    if (p1 == std::string::npos || p2 == std::string::npos) continue;
    rows.push_back({line.substr(p1 + 2, p2 - p1 - 2), line.substr(p2 + 2)});
  }
  return rows;
}

InferResult rank_of(const std::string& text) {
  auto r = parse(text);
  if (!r.ok()) throw std::runtime_error("parse failed: " + text);
  return infer(r.expr);
}

void criterion_1() {
  CliRun r = run_cli("table spheres --max-d 12");
  auto rows = parse_table(r.out);
  bool ok = r.exit_code == 0 && rows.size() == 12 && r.seconds < 1.0;
  for (std::uint64_t d = 1; ok && d <= 12; ++d)
    ok = rows[d - 1].gsr == gsr_commutative_sphere(d).str();
  report(1, ok,
         "sphere table d=1..12 matches the piecewise values, runtime " +
             std::to_string(r.seconds).substr(0, 5) + "s");
}

void criterion_2() {
  CliRun r = run_cli("table tori --max-d 10");
  auto rows = parse_table(r.out);
  bool ok = r.exit_code == 0 && rows.size() == 10 && r.seconds < 1.0;
  for (std::uint64_t d = 1; ok && d <= 10; ++d)
    ok = rows[d - 1].gsr == gsr_commutative_torus(d).str() &&
         rows[d - 1].csr == csr_commutative_torus(d).str();
  report(2, ok,
         "torus table d=1..10 matches gsr and csr = ceil(d/2)+1, runtime " +
             std::to_string(r.seconds).substr(0, 5) + "s");
}

void criterion_3() {
  bool ok = true;
  for (std::uint64_t d = 5; ok && d <= 10; ++d) {
    std::string text = "pullback(Cx(D(" + std::to_string(d) + ")), Cx(D(" +
                       std::to_string(d) + ")); Cx(S(" +
                       std::to_string(d - 1) + ")))";
    ok = rank_of(text).root_state().gsr.hi() == gsr_commutative_sphere(d);
  }
  report(3, ok,
         "disk-leg pullbacks reproduce gsr(C(S^d)) exactly for d=5..10");
}

void criterion_4() {
  bool ok = true;
  for (std::uint64_t n = 1; ok && n <= 10; ++n) {
    NccwComplex c;
    c.base_blocks = {1};
    for (std::uint64_t k = 1; k <= n; ++k) c.stages.push_back({k, {1}});
    ok = csr_upper_nccw(c) == ExtNat(ceil_div(n, 2) + 1);
  }
  report(4, ok, "unit-block ladders give csr bound ceil(n/2)+1 for n=1..10");
}

void criterion_5() {
  bool ok = true;
  for (std::uint64_t n = 0; ok && n <= 8; ++n) {
    std::string cw = "Cx(cw(" + std::to_string(n) + "))";
    InferResult kirch = rank_of(cw + "*kirchberg_ibn");
    InferResult rot = rank_of(cw + "*rot");
    ok = kirch.root_state().gsr == RankInterval::exact(2) &&
         kirch.root_state().csr == RankInterval::exact(2) &&
         rot.root_state().gsr == RankInterval::exact(1) &&
         rot.root_state().csr == RankInterval::exact(2);
  }
  report(5, ok, "class-F rigidity pins the cw(n) tensors for n=0..8");
}

void criteria_6_to_9() {
  const std::size_t count = 1000;
  auto corpus = make_corpus(count, 0xacce97);
  std::mt19937_64 fuzz_rng(0xfacade);

  std::size_t soundness_violations = 0;
  std::size_t confluence_diffs = 0;
  std::size_t roundtrip_diffs = 0;
  std::size_t parse_crashes = 0;
  std::size_t uncited_bounds = 0;

  for (const AlgRef& expr : corpus) {
    InferResult base;
    try {
      base = infer(expr);
    } catch (const std::exception&) {
      ++soundness_violations;
      continue;
    }

    // 6: intervals valid, order invariants hold, exact values retained
    soundness_violations += check_consistency(base).size();
    for (const auto& node : base.nodes) {
      for (const auto& known : known_exact_values(node.expr)) {
        const RankInterval& iv = known.quantity == "tsr"   ? node.state.tsr
                                 : known.quantity == "gsr" ? node.state.gsr
                                                           : node.state.csr;
        if (!iv.contains(known.value)) ++soundness_violations;
      }
      if (node.state.tsr.lo() > node.state.tsr.hi()) ++soundness_violations;
    }

    // 7: two independently permuted firing orders, identical reports
    InferOptions a, b;
    a.rule_seed = 0xaaaa;
    b.rule_seed = 0xbbbb;
    InferResult ra = infer(expr, {}, a);
    InferResult rb = infer(expr, {}, b);
    std::string sig = state_signature(base);
    if (state_signature(ra) != sig) ++confluence_diffs;
    if (state_signature(rb) != sig) ++confluence_diffs;
    if (to_json(make_report("q", ra, false)) !=
        to_json(make_report("q", rb, false)))
      ++confluence_diffs;

    // 8: parse . format is a fixed point; mangled inputs fail cleanly
    std::string text = format(expr);
    auto reparsed = parse(text);
    if (!reparsed.ok() || format(reparsed.expr) != text) ++roundtrip_diffs;
    std::string broken = text;
    switch (fuzz_rng() % 3) {
      case 0: broken.resize(fuzz_rng() % (broken.size() + 1)); break;
      case 1:
        if (!broken.empty())
          broken[fuzz_rng() % broken.size()] =
              "()*;:,x5"[fuzz_rng() % 8];
        break;
      default: broken += "("; break;
    }
    try {
      auto fz = parse(broken);
      if (!fz.ok() &&
          (fz.error->offset < 1 || fz.error->offset > broken.size() + 1))
        ++parse_crashes;
    } catch (const std::exception&) {
      ++parse_crashes;
    }

    // 9: every tightened bound in the report carries a cited rule step
    auto covered = [&](const char* q, const RankInterval& iv) {
      if (iv.is_unknown()) return;
      for (const Step& s : base.trace.steps)
        if (s.node == base.root && s.quantity == q && !s.citation.empty() &&
            s.rule.size() >= 2 && s.rule[0] == 'R') {
          int num = std::atoi(s.rule.c_str() + 1);
          if (num >= 1 && num <= 26) return;
        }
      ++uncited_bounds;
    };
    covered("tsr", base.root_state().tsr);
    covered("gsr", base.root_state().gsr);
    covered("csr", base.root_state().csr);
  }

  report(6, soundness_violations == 0,
         "soundness corpus of " + std::to_string(count) + " expressions, " +
             std::to_string(soundness_violations) + " violations");
  report(7, confluence_diffs == 0,
         "permuted rule orders reproduce every report, " +
             std::to_string(confluence_diffs) + " diffs");
  report(8, roundtrip_diffs == 0 && parse_crashes == 0,
         "round trip fixed points and located parse errors, " +
             std::to_string(roundtrip_diffs + parse_crashes) + " defects");
  report(9, uncited_bounds == 0,
         "every tightened bound cites a rule R1..R26, " +
             std::to_string(uncited_bounds) + " uncited");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_to_9();
  std::cout << "acceptance: " << (9 - failures) << "/9 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
