#include "hpe/oracles.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hpe {

namespace {

void check_step_bound(double c_k, double c_max, const char* oracle) {
  if (std::isfinite(c_max) && c_k > c_max * (1.0 + 1e-12)) {
    throw ConfigError(std::string(oracle) + ": c_k = " + std::to_string(c_k) +
                      " exceeds the step bound " + std::to_string(c_max));
  }
}

}  // namespace

FbParams derive_fb_params(double alpha, double sigma, double gamma) {
  if (!(gamma > 0.0)) throw UsageError("derive_fb_params: gamma must be > 0");
  HpeConfig probe = make_config(alpha, sigma, 1.0);
  const ValidationReport rep = validate_config(probe);
  if (!rep.ok()) throw ConfigError("derive_fb_params: " + rep.summary());
  FbParams p;
  p.gamma = gamma;
  p.sigma = sigma;
  p.alpha = alpha;
  p.c_max = 2.0 * gamma * sigma * sigma;
  return p;
}

FbfParams derive_fbf_params(double alpha, double beta, std::optional<double> sigma_bar) {
  if (alpha < 0.0) throw UsageError("derive_fbf_params: alpha must be >= 0");
  if (beta < 0.0) throw UsageError("derive_fbf_params: beta must be >= 0");
  const double upper = (1.0 - 5.0 * alpha) / 2.0;
  if (!(upper > 0.0)) {
    throw ConfigError("derive_fbf_params: infeasible parameters, 5*alpha >= 1 (window empty)");
  }
  // The coupled lower edge of the window is met with equality by the induced
  // sigma, so the free range for sigma_bar is the open interval (0, upper);
  // its midpoint is the default.
  const double sb = sigma_bar.value_or(upper / 2.0);
  if (!(sb > 0.0) || !(sb < upper)) {
    throw ConfigError("derive_fbf_params: sigma_bar = " + std::to_string(sb) +
                      " outside the window (0, " + std::to_string(upper) + ")");
  }
  FbfParams p;
  p.beta = beta;
  p.alpha = alpha;
  p.sigma_bar = sb;
  p.sigma = std::sqrt((1.0 - 5.0 * alpha - 2.0 * sb) / (4.0 * alpha + 2.0 * sb + 1.0));
  p.c_max = beta > 0.0 ? p.sigma / beta : std::numeric_limits<double>::infinity();

  const double s2 = p.sigma * p.sigma;
  const double lower_edge = (1.0 - 5.0 * alpha - s2 * (4.0 * alpha + 1.0)) / (2.0 * (s2 + 1.0));
  if (std::abs(lower_edge - sb) > 1e-9 * (1.0 + sb)) {
    throw NumericalError("derive_fbf_params: window lower edge drifted from sigma_bar");
  }
  HpeConfig probe = make_config(alpha, p.sigma, 1.0);
  const ValidationReport rep = validate_config(probe);
  if (!rep.ok()) throw ConfigError("derive_fbf_params: induced sigma infeasible: " + rep.summary());
  return p;
}

CertificateOracle make_ipp_oracle(Operator t) {
  return [op = std::move(t)](const IterationState& state, double c_k,
                             double alpha_k) -> Certificate {
    const Vector w = state.x_curr + alpha_k * (state.x_curr - state.x_prev);
    Certificate cert;
    cert.y = op.resolvent(c_k, w);
    cert.v = (w - cert.y) / c_k;
    cert.eps = 0.0;
    cert.provenance = Provenance::ExactGraph;
    return cert;
  };
}

CertificateOracle make_fb_oracle(Operator a, Operator b, const FbParams& params,
                                 bool relaxed_eps2) {
  if (!a.single_valued()) throw UsageError("make_fb_oracle: A must be single-valued");
  if (!a.gamma()) throw UsageError("make_fb_oracle: A has no declared gamma");
  const double gamma = *a.gamma();
  if (!(gamma > 0.0)) throw UsageError("make_fb_oracle: gamma must be > 0");

  return [a = std::move(a), b = std::move(b), gamma, c_max = params.c_max, relaxed_eps2](
             const IterationState& state, double c_k, double alpha_k) -> Certificate {
    check_step_bound(c_k, c_max, "fb_oracle");
    const Vector inertial = alpha_k * (state.x_curr - state.x_prev);
    const Vector x_next = b.resolvent(c_k, state.x_curr - c_k * a.apply(state.x_curr) + inertial);
    Certificate cert;
    cert.y = x_next;
    cert.v = (state.x_curr - x_next) / c_k + inertial / c_k;
    const double eps1 = (x_next - state.x_curr).squaredNorm() / (4.0 * gamma);
    const double eps2 = (alpha_k / gamma) * (state.x_curr - state.x_prev).squaredNorm();
    cert.eps = relaxed_eps2 ? eps1 : eps1 + eps2;
    cert.provenance = Provenance::Composite;
    return cert;
  };
}

CertificateOracle make_fbf_oracle(Operator a, Operator b, const FbfParams& params) {
  if (!a.single_valued()) throw UsageError("make_fbf_oracle: A must be single-valued");
  if (!a.beta()) throw UsageError("make_fbf_oracle: A has no declared beta");

  return [a = std::move(a), b = std::move(b), c_max = params.c_max](
             const IterationState& state, double c_k, double alpha_k) -> Certificate {
    check_step_bound(c_k, c_max, "fbf_oracle");
    const Vector inertial = alpha_k * (state.x_curr - state.x_prev);
    const Vector ax = a.apply(state.x_curr);
    const Vector y = b.resolvent(c_k, state.x_curr - c_k * ax + inertial);
    const Vector ay = a.apply(y);
    Certificate cert;
    cert.y = y;
    cert.v = ay + (state.x_curr - y) / c_k - ax + inertial / c_k;
    cert.eps = 0.0;
    cert.provenance = Provenance::Composite;

    const Vector r = residual_r(state, cert, c_k, alpha_k);
    const double drift = (r - c_k * (ay - ax)).norm();
    if (drift > 1e-12 * (1.0 + state.x_curr.cwiseAbs().maxCoeff())) {
      throw NumericalError("fbf_oracle: r^k = c_k(Ay^k - Ax^k) drifted by " +
                           std::to_string(drift));
    }
    return cert;
  };
}

}  // namespace hpe
