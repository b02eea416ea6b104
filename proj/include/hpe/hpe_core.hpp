#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpe/diagnostics.hpp"
#include "hpe/operators.hpp"
#include "hpe/space.hpp"

namespace hpe {

/// Standard carries the inertial history term on the right-hand side of the
/// relative-error test; Relaxed drops it (and uses the stricter parameter
/// condition 5*alpha + sigma^2 < 1).
enum class Variant { Standard, Relaxed };

struct HpeConfig {
  double alpha = 0.0;  // upper bound for the inertial coefficients
  double sigma = 0.0;  // relative-error tolerance
  double c = 1.0;      // constant step size, unless c_schedule overrides it
  double c_lower = 1e-12;
  std::function<double(int)> c_schedule;      // k >= 1; optional
  std::function<double(int)> alpha_schedule;  // k >= 1; optional, must be nondecreasing
  Variant variant = Variant::Standard;
  int max_iters = 50000;
  double residual_tol = 1e-9;
  bool enforce_step_inequality = true;
  bool record_iterates = false;

  double c_at(int k) const { return c_schedule ? c_schedule(k) : c; }
  double alpha_at(int k) const { return alpha_schedule ? alpha_schedule(k) : alpha; }
};

/// Constant-schedule config with c_lower pinned to c.
HpeConfig make_config(double alpha, double sigma, double c, Variant variant = Variant::Standard);

struct ValidationIssue {
  std::string constraint;  // the failed inequality, spelled out
  double value = 0.0;      // its evaluated left-hand side
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

/// Checks the parameter condition of the selected variant
/// (alpha(5 + 4 sigma^2) + sigma^2 < 1, or 5 alpha + sigma^2 < 1) together
/// with the scalar field invariants.
ValidationReport validate_config(const HpeConfig& cfg);

/// Rolling state consumed by oracles: the three most recent iterates plus the
/// previous certificate, step data and residual.
struct IterationState {
  int k = 2;
  Vector x_prev2, x_prev, x_curr;  // x^{k-2}, x^{k-1}, x^k
  Vector y_prev, v_prev;           // y^{k-1}, v^{k-1}
  double c_prev = 0.0, alpha_prev = 0.0;
  Vector r_prev;  // c_{k-1} v^{k-1} + y^{k-1} - x^{k-1} - alpha_{k-1}(x^{k-1} - x^{k-2})
};

/// r^k = c_k v^k + y^k - x^k - alpha_k (x^k - x^{k-1}).
Vector residual_r(const IterationState& state, const Certificate& cert, double c_k,
                  double alpha_k);

/// Right-hand side of the relative-error test:
///   Standard: sigma^2 ||y^k - x^k||^2 + 4 alpha_k sigma^2 ||y^{k-1} - x^{k-1}||^2
///   Relaxed:  sigma^2 ||y^k - x^k||^2
double step_inequality_rhs(const IterationState& state, const Certificate& cert, double c_k,
                           double alpha_k, double sigma, Variant variant);

/// RHS - LHS of the relative-error test, where
///   LHS = 2 c_k eps_k + ||r^k||^2 + 4 alpha_k ||r^{k-1}||^2.
/// Nonnegative iff the certificate satisfies the test.
double step_inequality_slack(const IterationState& state, const Certificate& cert, double c_k,
                             double alpha_k, double sigma, Variant variant);

/// x^{k+1} = x^k + alpha_k (x^k - x^{k-1}) - c_k v^k. Asserts the identity
/// r^k = y^k - x^{k+1} to 1e-12.
Vector extragradient_update(const IterationState& state, const Certificate& cert, double c_k,
                            double alpha_k);

/// Produces the certificate (y^k, v^k, eps_k) for iteration k.
using CertificateOracle =
    std::function<Certificate(const IterationState& state, double c_k, double alpha_k)>;

/// The six free starting points. from_start gives the default seeding
/// x0 = x1 = x2 = x, y0 = x0, y1 = x1, v1 = 0, which zeroes the initial
/// history residual and satisfies the x1 = x0 hypothesis for any alpha_1.
struct InitPoints {
  Vector x0, x1, x2, y0, y1, v1;
  static InitPoints from_start(const Vector& x);
};

enum class StopReason { Converged, MaxIterations };

struct SolveResult {
  Vector x;  // last iterate x^{k+1}
  StopReason reason = StopReason::MaxIterations;
  int iterations = 0;  // number of trace records
  std::vector<TraceRecord> trace;
  std::vector<Vector> iterates;  // x^3, x^4, ... when cfg.record_iterates
};

/// Runs the inertial hybrid proximal-extragradient loop from k = 2 until
/// ||v^k|| and eps_k fall below residual_tol or max_iters is reached. When a
/// reference zero is supplied, phi/mu diagnostics are recorded.
SolveResult run(const CertificateOracle& oracle, const HpeConfig& cfg, const InitPoints& init,
                const std::optional<Vector>& reference_zero = std::nullopt);

}  // namespace hpe
