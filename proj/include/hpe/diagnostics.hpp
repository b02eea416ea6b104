#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hpe {

/// Per-iteration diagnostics appended by the driver.
struct TraceRecord {
  int k = 0;
  double step_sq = 0.0;  // ||x^{k+1} - x^k||^2
  double gap_sq = 0.0;   // ||x^k - y^k||^2
  double v_sq = 0.0;     // ||v^k||^2
  double eps = 0.0;
  double r_norm = 0.0;   // ||r^k||
  double slack = 0.0;    // step-inequality RHS - LHS
  std::optional<double> phi;  // 0.5 ||x^k - z||^2 when a reference zero z is known
  std::optional<double> mu;
};

/// mu_k = phi_k - alpha_k phi_{k-1} + 2 alpha_k (1 + sigma^2) ||x^{k-1} - y^{k-1}||^2.
double compute_mu(double phi_k, double phi_prev, double alpha_k, double sigma,
                  double gap_prev_sq);

/// Checks the per-step decrease of mu along a trace:
///   mu_{k+1} - mu_k <= -kappa * gap_sq_k,   kappa = (1 - alpha(5 + 4 sigma^2) - sigma^2)/2,
/// with a 1e-9*(1+|mu_k|) float budget. Also reports the telescoped bound
/// kappa * sum(gap_sq) <= mu_first - mu_last.
struct MuDecreaseReport {
  double kappa = 0.0;
  int checked = 0;
  std::vector<int> violation_ks;
  double worst_excess = 0.0;  // largest amount by which the bound was missed
  double gap_sum = 0.0;
  double mu_drop = 0.0;
  bool gap_sum_bound_ok = true;
  bool ok() const { return violation_ks.empty(); }
};

MuDecreaseReport check_mu_decrease(const std::vector<TraceRecord>& trace, double alpha,
                                   double sigma);

/// Numerical check of the extended-Fejer sequence lemma: a nonnegative sequence
/// with phi_{k+1} <= phi_k + alpha_k (phi_k - phi_{k-1}) + delta_k, summable
/// delta and alpha_k <= alpha < 1, has summable positive increments and a
/// limit. The conclusions are tested via tail-mass and last-window surrogates.
struct Lemma1Report {
  std::vector<int> hypothesis_violations;  // indices k with the inequality broken
  int checked = 0;
  double delta_total = 0.0;
  double delta_tail = 0.0;
  bool delta_summable = true;
  std::vector<double> pos_part_partial_sums;  // partial sums of [phi_k - phi_{k-1}]_+
  double pos_part_total = 0.0;
  double pos_part_tail = 0.0;
  bool pos_part_tail_ok = true;
  double final_window_oscillation = 0.0;  // max - min of phi over the last 10%
  bool limit_ok = true;                   // oscillation < 1e-8
  bool ok() const {
    return hypothesis_violations.empty() && delta_summable && pos_part_tail_ok && limit_ok;
  }
};

/// `alpha_seq` and `delta` are index-aligned with `phi`; the hypothesis is
/// evaluated at interior indices 1..n-2.
Lemma1Report lemma1_check(const std::vector<double>& phi, const std::vector<double>& alpha_seq,
                          const std::vector<double>& delta);

struct SeriesReport {
  std::string name;
  double total = 0.0;
  double tail_mass = 0.0;  // sum over the final 10% of iterations
  bool pass = false;       // tail_mass < 1e-10 * (1 + total)
  std::vector<double> partial_sums;
};

/// Tail-mass surrogates for the four summable series of the convergence
/// theorem: step, gap, v and eps.
struct SummabilityReport {
  SeriesReport step, gap, v, eps;
  bool all_pass() const { return step.pass && gap.pass && v.pass && eps.pass; }
};

SummabilityReport summability_report(const std::vector<TraceRecord>& trace);

/// Convenience: builds (phi, alpha_seq, delta) rows for lemma1_check from a
/// trace produced with a reference zero, using delta_k = 2 alpha (1 + sigma^2)
/// * gap_sq_{k-1}. Requires phi on every record.
void lemma1_inputs_from_trace(const std::vector<TraceRecord>& trace, double alpha, double sigma,
                              std::vector<double>& phi, std::vector<double>& alpha_seq,
                              std::vector<double>& delta);

}  // namespace hpe
