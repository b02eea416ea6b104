#include "hpe/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "hpe/errors.hpp"

namespace hpe {

double compute_mu(double phi_k, double phi_prev, double alpha_k, double sigma,
                  double gap_prev_sq) {
  return phi_k - alpha_k * phi_prev + 2.0 * alpha_k * (1.0 + sigma * sigma) * gap_prev_sq;
}

MuDecreaseReport check_mu_decrease(const std::vector<TraceRecord>& trace, double alpha,
                                   double sigma) {
  MuDecreaseReport rep;
  rep.kappa = (1.0 - alpha * (5.0 + 4.0 * sigma * sigma) - sigma * sigma) / 2.0;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const TraceRecord& cur = trace[i];
    const TraceRecord& next = trace[i + 1];
    if (!cur.mu || !next.mu) throw UsageError("check_mu_decrease: trace has no mu values");
    const double diff = *next.mu - *cur.mu;
    const double bound = -rep.kappa * cur.gap_sq + 1e-9 * (1.0 + std::abs(*cur.mu));
    rep.checked += 1;
    rep.gap_sum += cur.gap_sq;
    if (diff > bound) {
      rep.violation_ks.push_back(cur.k);
      rep.worst_excess = std::max(rep.worst_excess, diff - bound);
    }
  }
  if (trace.size() >= 2) {
    rep.mu_drop = *trace.front().mu - *trace.back().mu;
    rep.gap_sum_bound_ok =
        rep.kappa * rep.gap_sum <= rep.mu_drop + 1e-9 * (1.0 + std::abs(rep.mu_drop));
  }
  return rep;
}

Lemma1Report lemma1_check(const std::vector<double>& phi, const std::vector<double>& alpha_seq,
                          const std::vector<double>& delta) {
  const std::size_t n = phi.size();
  if (alpha_seq.size() != n || delta.size() != n) {
    throw UsageError("lemma1_check: sequences must be index-aligned with phi");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha_seq[i] < 0.0 || alpha_seq[i] >= 1.0) {
      throw UsageError("lemma1_check: alpha_k must lie in [0, 1)");
    }
    if (delta[i] < 0.0) throw UsageError("lemma1_check: delta_k must be >= 0");
  }

  Lemma1Report rep;
  const std::size_t window = std::max<std::size_t>(1, n / 10);

  for (std::size_t i = 0; i < n; ++i) {
    rep.delta_total += delta[i];
    if (i + window >= n) rep.delta_tail += delta[i];
  }
  rep.delta_summable = rep.delta_tail < 1e-12 * (1.0 + rep.delta_total);

  // Hypothesis inequality at interior indices, with a small float budget.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rep.checked += 1;
    const double lhs = phi[i + 1];
    const double rhs = phi[i] + alpha_seq[i] * (phi[i] - phi[i - 1]) + delta[i];
    const double tol = 1e-9 * (1.0 + std::max(std::abs(phi[i]), std::abs(phi[i + 1])));
    if (lhs > rhs + tol) rep.hypothesis_violations.push_back(static_cast<int>(i));
  }

  double running = 0.0;
  rep.pos_part_partial_sums.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 1; i < n; ++i) {
    running += std::max(phi[i] - phi[i - 1], 0.0);
    rep.pos_part_partial_sums.push_back(running);
    if (i + window >= n) rep.pos_part_tail += std::max(phi[i] - phi[i - 1], 0.0);
  }
  rep.pos_part_total = running;
  rep.pos_part_tail_ok = rep.pos_part_tail < 1e-10 * (1.0 + rep.pos_part_total);

  if (n > 0) {
    const std::size_t start = n - window;
    double lo = phi[start], hi = phi[start];
    for (std::size_t i = start; i < n; ++i) {
      lo = std::min(lo, phi[i]);
      hi = std::max(hi, phi[i]);
    }
    rep.final_window_oscillation = hi - lo;
    rep.limit_ok = rep.final_window_oscillation < 1e-8;
  }
  return rep;
}

namespace {

SeriesReport make_series(std::string name, const std::vector<double>& values) {
  SeriesReport s;
  s.name = std::move(name);
  s.partial_sums.reserve(values.size());
  double running = 0.0;
  const std::size_t window = std::max<std::size_t>(1, values.size() / 10);
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    s.partial_sums.push_back(running);
    if (i + window >= values.size()) s.tail_mass += values[i];
  }
  s.total = running;
  s.pass = s.tail_mass < 1e-10 * (1.0 + s.total);
  return s;
}

}  // namespace

SummabilityReport summability_report(const std::vector<TraceRecord>& trace) {
  std::vector<double> step, gap, v, eps;
  step.reserve(trace.size());
  gap.reserve(trace.size());
  v.reserve(trace.size());
  eps.reserve(trace.size());
  for (const TraceRecord& r : trace) {
    step.push_back(r.step_sq);
    gap.push_back(r.gap_sq);
    v.push_back(r.v_sq);
    eps.push_back(r.eps);
  }
  SummabilityReport rep;
  rep.step = make_series("step_sq", step);
  rep.gap = make_series("gap_sq", gap);
  rep.v = make_series("v_sq", v);
  rep.eps = make_series("eps", eps);
  return rep;
}

void lemma1_inputs_from_trace(const std::vector<TraceRecord>& trace, double alpha, double sigma,
                              std::vector<double>& phi, std::vector<double>& alpha_seq,
                              std::vector<double>& delta) {
  phi.clear();
  alpha_seq.clear();
  delta.clear();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].phi) throw UsageError("lemma1_inputs_from_trace: trace has no phi values");
    phi.push_back(*trace[i].phi);
    alpha_seq.push_back(alpha);
    const double gap_prev = i == 0 ? 0.0 : trace[i - 1].gap_sq;
    delta.push_back(2.0 * alpha * (1.0 + sigma * sigma) * gap_prev);
  }
}

}  // namespace hpe
