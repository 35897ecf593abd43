#include "stablerank/report.hpp"

#include <nlohmann/json.hpp>

namespace stablerank {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json interval_json(const RankInterval& iv) {
  ordered_json j;
  j["lo"] = iv.lo().is_inf() ? ordered_json("inf")
                             : ordered_json(iv.lo().value());
  j["hi"] = iv.hi().is_inf() ? ordered_json("inf")
                             : ordered_json(iv.hi().value());
  return j;
}

}  // namespace

Report make_report(const std::string& query, const InferResult& result,
                   bool include_trace) {
  const RankState& s = result.root_state();
  Report r;
  r.query = query;
  r.tsr = s.tsr;
  r.gsr = s.gsr;
  r.csr = s.csr;
  r.k1_zero = s.k1_zero;
  r.finite = s.finite;
  r.stably_finite = s.stably_finite;
  r.ibn = s.ibn;
  r.class_f = s.class_f;
  r.real_rank_zero = s.real_rank_zero;
  if (include_trace) r.trace = result.trace;
  return r;
}

std::string to_json(const Report& report) {
  ordered_json j;
  j["query"] = report.query;
  j["tsr"] = interval_json(report.tsr);
  j["gsr"] = interval_json(report.gsr);
  j["csr"] = interval_json(report.csr);
  ordered_json flags;
  flags["k1_zero"] = to_string(report.k1_zero);
  flags["finite"] = to_string(report.finite);
  flags["stably_finite"] = to_string(report.stably_finite);
  flags["ibn"] = to_string(report.ibn);
  flags["class_f"] = to_string(report.class_f);
  flags["real_rank_zero"] = to_string(report.real_rank_zero);
  j["flags"] = flags;
  if (report.trace) {
    ordered_json steps = ordered_json::array();
    for (const Step& s : report.trace->steps) {
      ordered_json step;
      step["rule"] = s.rule;
      step["citation"] = s.citation;
      step["node"] = s.node_name;
      step["quantity"] = s.quantity;
      step["before"] = s.before;
      step["after"] = s.after;
      ordered_json inputs = ordered_json::array();
      for (const auto& [node, quantity] : s.inputs) {
        ordered_json in;
        in["node"] = node;
        in["quantity"] = quantity;
        inputs.push_back(in);
      }
      step["inputs"] = inputs;
      steps.push_back(step);
    }
    j["trace"] = steps;
  }
  j["engine"] = report.engine_version;
  return j.dump();
}

std::string to_text(const Report& report) {
  std::string out;
  out += "query: " + report.query + "\n";
  out += "tsr = " + report.tsr.str() + "\n";
  out += "gsr = " + report.gsr.str() + "\n";
  out += "csr = " + report.csr.str() + "\n";
  out += "flags: k1_zero=" + std::string(to_string(report.k1_zero)) +
         " finite=" + to_string(report.finite) +
         " stably_finite=" + to_string(report.stably_finite) +
         " ibn=" + to_string(report.ibn) +
         " class_f=" + to_string(report.class_f) +
         " real_rank_zero=" + to_string(report.real_rank_zero) + "\n";
  if (report.trace) {
    out += "trace:\n";
    for (const Step& s : report.trace->steps) {
      out += "  [" + s.rule + "] " + s.node_name + " " + s.quantity + ": " +
             s.before + " -> " + s.after + "  (" + s.citation + ")\n";
    }
  }
  return out;
}

}  // namespace stablerank
