#pragma once

#include <cstdint>
#include <random>

#include "hpe/space.hpp"

namespace hpe::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector random_vector(Eigen::Index n, std::mt19937_64& gen, double radius = 10.0) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(gen);
  return v;
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen,
                            double radius = 1.0) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = unif(gen);
  }
  return m;
}

/// Random symmetric positive semidefinite matrix G^T G (plus optional ridge).
inline Matrix random_psd(Eigen::Index n, std::mt19937_64& gen, double ridge = 0.0) {
  const Matrix g = random_matrix(n, n, gen);
  Matrix m = g.transpose() * g;
  m += ridge * Matrix::Identity(n, n);
  return 0.5 * (m + m.transpose());
}

/// Random antisymmetric matrix (G - G^T)/2: exact in floating point.
inline Matrix random_skew(Eigen::Index n, std::mt19937_64& gen) {
  const Matrix g = random_matrix(n, n, gen);
  return 0.5 * (g - g.transpose());
}

}  // namespace hpe::testing
