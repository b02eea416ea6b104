#pragma once

#include <vector>

#include "hpe/operators.hpp"
#include "hpe/space.hpp"

namespace hpe::testing {

/// Dedicated textbook recursions, written directly from the update formulas
/// with their own state handling. They provide the independent route for the
/// embedding-equivalence checks against the certificate-driven solver.

/// x^{k+1} = J_{c T}(x^k + alpha (x^k - x^{k-1})); returns x^3, x^4, ...
inline std::vector<Vector> inertial_proximal_point(const Operator& t, const Vector& x_start,
                                                   double alpha, double c, int iterations) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(iterations));
  Vector x_prev = x_start, x = x_start;
  for (int k = 0; k < iterations; ++k) {
    Vector x_next = t.resolvent(c, x + alpha * (x - x_prev));
    out.push_back(x_next);
    x_prev = std::move(x);
    x = std::move(x_next);
  }
  return out;
}

/// x^{k+1} = J_{c B}(x^k - c A x^k + alpha (x^k - x^{k-1})).
inline std::vector<Vector> inertial_forward_backward(const Operator& a, const Operator& b,
                                                     const Vector& x_start, double alpha,
                                                     double c, int iterations) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(iterations));
  Vector x_prev = x_start, x = x_start;
  for (int k = 0; k < iterations; ++k) {
    Vector x_next = b.resolvent(c, x - c * a.apply(x) + alpha * (x - x_prev));
    out.push_back(x_next);
    x_prev = std::move(x);
    x = std::move(x_next);
  }
  return out;
}

/// y^k = J_{c B}(x^k - c A x^k + alpha (x^k - x^{k-1})),
/// x^{k+1} = y^k + c (A x^k - A y^k).
inline std::vector<Vector> inertial_forward_backward_forward(const Operator& a, const Operator& b,
                                                             const Vector& x_start, double alpha,
                                                             double c, int iterations) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(iterations));
  Vector x_prev = x_start, x = x_start;
  for (int k = 0; k < iterations; ++k) {
    const Vector ax = a.apply(x);
    const Vector y = b.resolvent(c, x - c * ax + alpha * (x - x_prev));
    Vector x_next = y + c * (ax - a.apply(y));
    out.push_back(x_next);
    x_prev = std::move(x);
    x = std::move(x_next);
  }
  return out;
}

}  // namespace hpe::testing
