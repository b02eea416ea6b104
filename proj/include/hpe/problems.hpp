#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hpe/operators.hpp"

namespace hpe {

struct ProblemMetadata {
  std::string name;
  Eigen::Index dimension = 0;
  std::uint64_t seed = 0;
  // Conditioning knobs recorded for reproducibility (ordered for stable output).
  std::map<std::string, double> params;
};

/// A test inclusion 0 in T(x), optionally split as T = A + B for the
/// forward-backward oracles. T is always present (the fused operator); A and B
/// are present only for splitting instances. known_solution carries a point of
/// zer T verified at generation time.
struct ProblemInstance {
  std::optional<Operator> T;
  std::optional<Operator> A;
  std::optional<Operator> B;
  std::optional<Vector> known_solution;
  ProblemMetadata meta;

  bool split() const { return A.has_value() && B.has_value(); }
  const Operator& monolithic() const;
};

/// Distance of 0 to T(x): the natural residual of the inclusion 0 in T(x).
double zero_inclusion_residual(const ProblemInstance& problem, const Vector& x);

/// Looks for a sampled pair with <x - y, Ax - Ay> < gamma ||Ax - Ay||^2.
/// Returns true when one is found, i.e. A is provably not gamma-cocoercive.
bool cocoercivity_refuted(const Operator& a, double gamma, int samples, std::uint64_t seed);

/// T = gradient of a strongly convex quadratic; solution from a dense solve.
ProblemInstance make_quadratic_instance(Matrix q, Vector b);

/// Q = U diag(lambda) U^T with log-spaced spectrum in [1/condition_number, 1]
/// and a seeded random orthogonal basis U; b = Q x* for a random x*.
ProblemInstance gen_quadratic(int n, double condition_number, std::uint64_t seed);

/// A = gradient of 0.5 ||Mx - d||^2 (cocoercive with gamma = 1/lambda_max),
/// B = weight * l1 subdifferential; solution from a plain proximal-gradient
/// reference run driven to inclusion residual <= 1e-12.
ProblemInstance make_composite_instance(Matrix m, Vector d, double weight);

/// M is 2n-by-n Gaussian scaled by 1/sqrt(2n); the l1 weight is
/// sparsity * ||M^T d||_inf, so sparsity = 1 zeroes the solution out.
ProblemInstance gen_composite(int n, double sparsity, std::uint64_t seed);

/// A = Skew(S) (monotone, Lipschitz, not cocoercive), B = tikhonov * I - rhs;
/// the fused system (S + tikhonov I) x = rhs is solved densely.
ProblemInstance make_saddle_instance(Matrix s, double tikhonov, Vector rhs);

/// S is an antisymmetrized seeded Gaussian rescaled to spectral norm
/// `coupling` (the declared Lipschitz modulus of A).
ProblemInstance gen_saddle(int n, std::uint64_t seed, double coupling = 2.0,
                           double tikhonov = 1.0);

}  // namespace hpe
