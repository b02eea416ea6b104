#pragma once

#include <optional>

#include "hpe/hpe_core.hpp"
#include "hpe/operators.hpp"

namespace hpe {

/// Step-size data for the forward-backward oracle: c_k must stay within
/// (0, 2*gamma*sigma^2].
struct FbParams {
  double gamma = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  double c_max = 0.0;  // 2*gamma*sigma^2
};

FbParams derive_fb_params(double alpha, double sigma, double gamma);

/// Step-size data for the forward-backward-forward oracle. sigma_bar selects a
/// point of the window (0, (1-5*alpha)/2); the induced relative-error
/// tolerance is sigma = sqrt((1-5*alpha-2*sigma_bar)/(4*alpha+2*sigma_bar+1))
/// and the step bound is c_max = sigma / beta (unbounded when beta = 0).
struct FbfParams {
  double beta = 0.0;
  double alpha = 0.0;
  double sigma_bar = 0.0;
  double sigma = 0.0;
  double c_max = 0.0;
};

/// When sigma_bar is absent the window midpoint (1-5*alpha)/4 is used.
/// Requires 5*alpha < 1; a supplied sigma_bar outside the window is rejected.
FbfParams derive_fbf_params(double alpha, double beta,
                            std::optional<double> sigma_bar = std::nullopt);

/// Exact proximal-point oracle: y = J_{c_k T}(x^k + alpha_k (x^k - x^{k-1})),
/// v = (w - y)/c_k, eps = 0. Meant for sigma = 0 configurations.
CertificateOracle make_ipp_oracle(Operator t);

/// Forward-backward oracle for zeros of A + B with A gamma-cocoercive:
///   x^{k+1} = J_{c_k B}(x^k - c_k A x^k + alpha_k (x^k - x^{k-1}))
/// certified by y = x^{k+1}, v = (x^k - x^{k+1})/c_k + (alpha_k/c_k)(x^k - x^{k-1}),
/// eps = ||x^{k+1}-x^k||^2/(4 gamma) + (alpha_k/gamma)||x^k-x^{k-1}||^2.
/// relaxed_eps2 drops the second eps term (the Relaxed-variant embedding).
CertificateOracle make_fb_oracle(Operator a, Operator b, const FbParams& params,
                                 bool relaxed_eps2 = false);

/// Forward-backward-forward oracle for zeros of A + B with A monotone and
/// beta-Lipschitz:
///   y^k = J_{c_k B}(x^k - c_k A x^k + alpha_k (x^k - x^{k-1}))
///   v^k = A y^k + (x^k - y^k)/c_k - A x^k + (alpha_k/c_k)(x^k - x^{k-1}),  eps = 0.
/// The driver update then lands on x^{k+1} = y^k + c_k (A x^k - A y^k).
/// Verifies r^k = c_k (A y^k - A x^k) to 1e-12 at every call.
CertificateOracle make_fbf_oracle(Operator a, Operator b, const FbfParams& params);

}  // namespace hpe
