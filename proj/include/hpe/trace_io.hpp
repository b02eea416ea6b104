#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hpe/hpe_core.hpp"

namespace hpe {

/// Header k,step_sq,gap_sq,v_sq,eps,r_norm,slack,phi,mu; 17 significant
/// digits so every double round-trips; phi/mu cells empty when unavailable.
void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out);
void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path);

/// Run summary: stop reason, iteration count, final residuals, summability
/// tails and (when phi/mu were recorded) the mu-decrease report.
nlohmann::json summarize_run(const SolveResult& result, const HpeConfig& config);
void write_summary(const nlohmann::json& summary, const std::string& path);

}  // namespace hpe
