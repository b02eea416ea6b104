#include "hpe/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hpe/errors.hpp"

namespace hpe {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json series_json(const SeriesReport& s) {
  return json{{"total", s.total}, {"tail_mass", s.tail_mass}, {"pass", s.pass}};
}

}  // namespace

void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out) {
  out << "k,step_sq,gap_sq,v_sq,eps,r_norm,slack,phi,mu\n";
  for (const TraceRecord& r : trace) {
    out << r.k << ',' << fmt(r.step_sq) << ',' << fmt(r.gap_sq) << ',' << fmt(r.v_sq) << ','
        << fmt(r.eps) << ',' << fmt(r.r_norm) << ',' << fmt(r.slack) << ','
        << (r.phi ? fmt(*r.phi) : "") << ',' << (r.mu ? fmt(*r.mu) : "") << '\n';
  }
}

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // no platform newline translation
  if (!out) throw ConfigError("write_trace_csv: cannot open '" + path + "'");
  write_trace_csv(trace, out);
}

json summarize_run(const SolveResult& result, const HpeConfig& config) {
  json j;
  j["iterations"] = result.iterations;
  j["stop_reason"] = result.reason == StopReason::Converged ? "converged" : "max_iterations";
  if (!result.trace.empty()) {
    const TraceRecord& last = result.trace.back();
    j["final"] = json{{"k", last.k},
                      {"v_norm", std::sqrt(last.v_sq)},
                      {"eps", last.eps},
                      {"step_norm", std::sqrt(last.step_sq)}};
    const SummabilityReport sums = summability_report(result.trace);
    j["summability"] = json{{"step_sq", series_json(sums.step)},
                            {"gap_sq", series_json(sums.gap)},
                            {"v_sq", series_json(sums.v)},
                            {"eps", series_json(sums.eps)},
                            {"all_pass", sums.all_pass()}};
    if (config.variant == Variant::Standard && result.trace.front().phi &&
        result.trace.front().mu) {
      const MuDecreaseReport mu = check_mu_decrease(result.trace, config.alpha, config.sigma);
      j["mu_decrease"] = json{{"kappa", mu.kappa},
                              {"checked", mu.checked},
                              {"violations", mu.violation_ks.size()},
                              {"worst_excess", mu.worst_excess},
                              {"gap_sum_bound_ok", mu.gap_sum_bound_ok}};
    }
  }
  return j;
}

void write_summary(const json& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("write_summary: cannot open '" + path + "'");
  out << summary.dump(2) << '\n';
}

}  // namespace hpe
