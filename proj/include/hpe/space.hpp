#pragma once

#include <Eigen/Core>

#include "hpe/errors.hpp"

namespace hpe {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void require_same_dim(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size()) {
    throw UsageError(std::string(where) + ": dimension mismatch (" +
                     std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

/// Euclidean inner product <a, b>.
inline double inner(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "inner");
  return a.dot(b);
}

/// Norm induced by the inner product.
inline double norm(const Vector& a) { return a.norm(); }

/// alpha*a + beta*b.
inline Vector axpby(double alpha, const Vector& a, double beta, const Vector& b) {
  require_same_dim(a, b, "axpby");
  return alpha * a + beta * b;
}

}  // namespace hpe
