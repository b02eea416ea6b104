#include "hpe/hpe_core.hpp"

#include <cmath>
#include <sstream>

namespace hpe {

HpeConfig make_config(double alpha, double sigma, double c, Variant variant) {
  HpeConfig cfg;
  cfg.alpha = alpha;
  cfg.sigma = sigma;
  cfg.c = c;
  cfg.c_lower = c;
  cfg.variant = variant;
  return cfg;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].constraint << " (got " << issues[i].value << ")";
  }
  return os.str();
}

ValidationReport validate_config(const HpeConfig& cfg) {
  ValidationReport rep;
  auto fail = [&rep](std::string constraint, double value) {
    rep.issues.push_back({std::move(constraint), value});
  };

  if (cfg.alpha < 0.0) fail("alpha >= 0", cfg.alpha);
  if (cfg.sigma < 0.0) fail("sigma >= 0", cfg.sigma);
  if (!(cfg.c_lower > 0.0)) fail("c_lower > 0", cfg.c_lower);
  if (cfg.max_iters < 1) fail("max_iters >= 1", static_cast<double>(cfg.max_iters));
  if (!(cfg.residual_tol > 0.0)) fail("residual_tol > 0", cfg.residual_tol);

  const double s2 = cfg.sigma * cfg.sigma;
  if (cfg.variant == Variant::Standard) {
    const double lhs = cfg.alpha * (5.0 + 4.0 * s2) + s2;
    if (!(lhs < 1.0)) fail("alpha*(5 + 4*sigma^2) + sigma^2 < 1", lhs);
  } else {
    const double lhs = 5.0 * cfg.alpha + s2;
    if (!(lhs < 1.0)) fail("5*alpha + sigma^2 < 1", lhs);
  }

  // Schedules are enforced per iteration; spot-check the first term here.
  if (cfg.c_at(1) < cfg.c_lower) fail("c_1 >= c_lower", cfg.c_at(1));
  const double a1 = cfg.alpha_at(1);
  if (a1 < 0.0 || a1 > cfg.alpha) fail("0 <= alpha_1 <= alpha", a1);
  return rep;
}

Vector residual_r(const IterationState& state, const Certificate& cert, double c_k,
                  double alpha_k) {
  return c_k * cert.v + cert.y - state.x_curr - alpha_k * (state.x_curr - state.x_prev);
}

double step_inequality_rhs(const IterationState& state, const Certificate& cert, double c_k,
                           double alpha_k, double sigma, Variant variant) {
  (void)c_k;
  const double s2 = sigma * sigma;
  double rhs = s2 * (cert.y - state.x_curr).squaredNorm();
  if (variant == Variant::Standard) {
    rhs += 4.0 * alpha_k * s2 * (state.y_prev - state.x_prev).squaredNorm();
  }
  return rhs;
}

double step_inequality_slack(const IterationState& state, const Certificate& cert, double c_k,
                             double alpha_k, double sigma, Variant variant) {
  const double lhs = 2.0 * c_k * cert.eps + residual_r(state, cert, c_k, alpha_k).squaredNorm() +
                     4.0 * alpha_k * state.r_prev.squaredNorm();
  return step_inequality_rhs(state, cert, c_k, alpha_k, sigma, variant) - lhs;
}

Vector extragradient_update(const IterationState& state, const Certificate& cert, double c_k,
                            double alpha_k) {
  Vector x_next = state.x_curr + alpha_k * (state.x_curr - state.x_prev) - c_k * cert.v;
  // The update makes r^k and y^k - x^{k+1} the same vector up to rounding.
  const Vector r = residual_r(state, cert, c_k, alpha_k);
  const double drift = (r - (cert.y - x_next)).cwiseAbs().maxCoeff();
  if (drift > 1e-12 * (1.0 + x_next.cwiseAbs().maxCoeff())) {
    throw NumericalError("extragradient_update: r^k = y^k - x^{k+1} drifted by " +
                         std::to_string(drift));
  }
  return x_next;
}

InitPoints InitPoints::from_start(const Vector& x) {
  InitPoints init;
  init.x0 = init.x1 = init.x2 = x;
  init.y0 = x;
  init.y1 = x;
  init.v1 = Vector::Zero(x.size());
  return init;
}

namespace {

void require_dim(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) throw UsageError(std::string("run: ") + what + " has wrong dimension");
  if (!is_finite(v)) throw UsageError(std::string("run: ") + what + " has non-finite entries");
}

}  // namespace

SolveResult run(const CertificateOracle& oracle, const HpeConfig& cfg, const InitPoints& init,
                const std::optional<Vector>& reference_zero) {
  const ValidationReport report = validate_config(cfg);
  if (!report.ok()) throw ConfigError("run: invalid config: " + report.summary());

  const Eigen::Index n = init.x0.size();
  if (n < 1) throw UsageError("run: dimension must be >= 1");
  require_dim(init.x1, n, "x1");
  require_dim(init.x2, n, "x2");
  require_dim(init.y0, n, "y0");
  require_dim(init.y1, n, "y1");
  require_dim(init.v1, n, "v1");
  if (reference_zero) require_dim(*reference_zero, n, "reference zero");

  const double alpha1 = cfg.alpha_at(1);
  if (alpha1 != 0.0 && (init.x1 - init.x0).norm() != 0.0) {
    throw UsageError("run: initialization requires alpha_1 = 0 or x1 = x0");
  }

  IterationState state;
  state.k = 2;
  state.x_prev2 = init.x0;
  state.x_prev = init.x1;
  state.x_curr = init.x2;
  state.y_prev = init.y1;
  state.v_prev = init.v1;
  state.c_prev = cfg.c_at(1);
  state.alpha_prev = alpha1;
  state.r_prev = state.c_prev * init.v1 + init.y1 - init.x1 - alpha1 * (init.x1 - init.x0);

  SolveResult result;
  result.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iters, 4096)));

  for (int k = 2; k <= cfg.max_iters; ++k) {
    const double c_k = cfg.c_at(k);
    if (c_k < cfg.c_lower) {
      throw ConfigError("run: c_k fell below c_lower at k=" + std::to_string(k));
    }
    const double alpha_k = cfg.alpha_at(k);
    if (alpha_k < 0.0 || alpha_k > cfg.alpha) {
      throw ConfigError("run: alpha_k outside [0, alpha] at k=" + std::to_string(k));
    }
    if (alpha_k < state.alpha_prev) {
      throw ConfigError("run: alpha schedule must be nondecreasing (k=" + std::to_string(k) + ")");
    }

    const Certificate cert = oracle(state, c_k, alpha_k);
    require_dim(cert.y, n, "certificate y");
    require_dim(cert.v, n, "certificate v");
    if (cert.eps < 0.0) throw UsageError("run: certificate eps must be >= 0");

    const Vector r = residual_r(state, cert, c_k, alpha_k);
    const double rhs = step_inequality_rhs(state, cert, c_k, alpha_k, cfg.sigma, cfg.variant);
    const double lhs = 2.0 * c_k * cert.eps + r.squaredNorm() +
                       4.0 * alpha_k * state.r_prev.squaredNorm();
    const double slack = rhs - lhs;
    if (cfg.enforce_step_inequality && slack < -1e-9 * (1.0 + rhs)) {
      throw StepViolationError("run: relative-error inequality violated at k=" +
                               std::to_string(k) + " (slack " + std::to_string(slack) + ")");
    }

    const Vector x_next = extragradient_update(state, cert, c_k, alpha_k);
    if (!is_finite(x_next)) {
      throw NumericalError("run: non-finite iterate at k=" + std::to_string(k));
    }

    TraceRecord rec;
    rec.k = k;
    rec.step_sq = (x_next - state.x_curr).squaredNorm();
    rec.gap_sq = (state.x_curr - cert.y).squaredNorm();
    rec.v_sq = cert.v.squaredNorm();
    rec.eps = cert.eps;
    rec.r_norm = r.norm();
    rec.slack = slack;
    if (reference_zero) {
      const double phi_k = 0.5 * (state.x_curr - *reference_zero).squaredNorm();
      const double phi_prev = 0.5 * (state.x_prev - *reference_zero).squaredNorm();
      const double gap_prev_sq = (state.x_prev - state.y_prev).squaredNorm();
      rec.phi = phi_k;
      rec.mu = compute_mu(phi_k, phi_prev, alpha_k, cfg.sigma, gap_prev_sq);
    }
    result.trace.push_back(rec);
    if (cfg.record_iterates) result.iterates.push_back(x_next);

    const bool converged = cert.v.norm() <= cfg.residual_tol && cert.eps <= cfg.residual_tol;

    state.k = k + 1;
    state.x_prev2 = std::move(state.x_prev);
    state.x_prev = std::move(state.x_curr);
    state.x_curr = x_next;
    state.y_prev = cert.y;
    state.v_prev = cert.v;
    state.c_prev = c_k;
    state.alpha_prev = alpha_k;
    state.r_prev = r;

    if (converged) {
      result.x = x_next;
      result.reason = StopReason::Converged;
      result.iterations = static_cast<int>(result.trace.size());
      return result;
    }
  }

  result.x = state.x_curr;
  result.reason = StopReason::MaxIterations;
  result.iterations = static_cast<int>(result.trace.size());
  return result;
}

}  // namespace hpe
