#include "hpe/problems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "hpe/errors.hpp"

namespace hpe {

namespace {

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                       double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * normal(rng);
  }
  return m;
}

Vector random_gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

/// Orthogonal factor of a QR decomposition with the column signs pinned to the
/// signs of R's diagonal, so the basis is a deterministic function of the input.
Matrix orthogonal_from(const Matrix& g) {
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ();
  const Vector diag = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < diag.size(); ++j) {
    if (diag[j] < 0.0) u.col(j) = -u.col(j);
  }
  return u;
}

double spectral_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.transpose() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

void verify_solution(ProblemInstance& problem, double tol) {
  const double res = zero_inclusion_residual(problem, *problem.known_solution);
  if (!(res <= tol)) {
    throw NumericalError(problem.meta.name + ": generated solution has inclusion residual " +
                         std::to_string(res));
  }
}

}  // namespace

const Operator& ProblemInstance::monolithic() const {
  if (!T) throw UsageError("ProblemInstance: no fused operator available");
  return *T;
}

double zero_inclusion_residual(const ProblemInstance& problem, const Vector& x) {
  return problem.monolithic().graph_distance(x, Vector::Zero(x.size()));
}

bool cocoercivity_refuted(const Operator& a, double gamma, int samples, std::uint64_t seed) {
  if (a.dim() <= 0) throw UsageError("cocoercivity_refuted: operator needs a dimension");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  for (int t = 0; t < samples; ++t) {
    Vector x(a.dim()), y(a.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
      x[i] = unif(rng);
      y[i] = unif(rng);
    }
    const Vector da = a.apply(x) - a.apply(y);
    if ((x - y).dot(da) < gamma * da.squaredNorm()) return true;
  }
  return false;
}

ProblemInstance make_quadratic_instance(Matrix q, Vector b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  if (!(lmin > 0.0)) throw UsageError("make_quadratic_instance: Q must be positive definite");

  ProblemInstance problem;
  problem.known_solution = q.ldlt().solve(b);
  problem.T = Operator::quadratic_gradient(std::move(q), std::move(b))
                  .with_gamma(1.0 / lmax)
                  .with_beta(lmax);
  problem.meta.name = "quadratic";
  problem.meta.dimension = problem.T->dim();
  problem.meta.params["condition_number"] = lmax / lmin;
  verify_solution(problem, 1e-8);
  return problem;
}

ProblemInstance gen_quadratic(int n, double condition_number, std::uint64_t seed) {
  if (n < 1) throw UsageError("gen_quadratic: n must be >= 1");
  if (!(condition_number >= 1.0)) throw UsageError("gen_quadratic: condition number must be >= 1");
  std::mt19937_64 rng(seed);
  const Matrix u = orthogonal_from(random_gaussian(n, n, rng));
  Vector spectrum(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
    spectrum[i] = std::pow(condition_number, t - 1.0);  // log-spaced in [1/cond, 1]
  }
  Matrix q = u * spectrum.asDiagonal() * u.transpose();
  q = 0.5 * (q + q.transpose());
  const Vector xstar = random_gaussian_vector(n, rng);

  ProblemInstance problem = make_quadratic_instance(q, q * xstar);
  problem.meta.seed = seed;
  problem.meta.params["condition_number"] = condition_number;
  return problem;
}

ProblemInstance make_composite_instance(Matrix m, Vector d, double weight) {
  if (m.rows() != d.size()) throw UsageError("make_composite_instance: d dimension mismatch");
  if (weight < 0.0) throw UsageError("make_composite_instance: weight must be >= 0");
  const Matrix gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmax > 0.0)) throw UsageError("make_composite_instance: M must be nonzero");
  const double gamma = 1.0 / lmax;

  ProblemInstance problem;
  problem.A = Operator::quadratic_gradient(gram, m.transpose() * d).with_gamma(gamma);
  problem.B = Operator::abs_subdifferential(weight);
  problem.T = Operator::sum(*problem.A, *problem.B);
  problem.meta.name = "composite";
  problem.meta.dimension = m.cols();
  problem.meta.params["weight"] = weight;

  // Plain (non-inertial) proximal gradient with step gamma; the Gram matrix is
  // positive definite for the generated instances, so this converges linearly.
  Vector x = Vector::Zero(m.cols());
  bool solved = false;
  for (int it = 0; it < 500000; ++it) {
    x = problem.B->resolvent(gamma, x - gamma * problem.A->apply(x));
    if (problem.T->graph_distance(x, Vector::Zero(x.size())) <= 1e-12) {
      solved = true;
      break;
    }
  }
  if (!solved) {
    throw NumericalError("make_composite_instance: reference run did not reach 1e-12");
  }
  problem.known_solution = std::move(x);
  verify_solution(problem, 1e-8);
  return problem;
}

ProblemInstance gen_composite(int n, double sparsity, std::uint64_t seed) {
  if (n < 1) throw UsageError("gen_composite: n must be >= 1");
  if (!(sparsity >= 0.0 && sparsity <= 1.0)) {
    throw UsageError("gen_composite: sparsity must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(n);
  const Matrix m = random_gaussian(rows, n, rng, 1.0 / std::sqrt(static_cast<double>(rows)));
  const Vector d = random_gaussian_vector(rows, rng);
  const double weight = sparsity * (m.transpose() * d).cwiseAbs().maxCoeff();

  ProblemInstance problem = make_composite_instance(m, d, weight);
  problem.meta.seed = seed;
  problem.meta.params["sparsity"] = sparsity;
  return problem;
}

ProblemInstance make_saddle_instance(Matrix s, double tikhonov, Vector rhs) {
  if (s.rows() != rhs.size()) throw UsageError("make_saddle_instance: rhs dimension mismatch");
  if (!(tikhonov > 0.0)) throw UsageError("make_saddle_instance: tikhonov must be > 0");
  const double beta = spectral_norm(s);
  const Eigen::Index n = s.rows();
  const Matrix reg = tikhonov * Matrix::Identity(n, n);

  ProblemInstance problem;
  problem.A = Operator::skew(s).with_beta(beta);
  problem.B = Operator::affine_monotone(reg, -rhs);
  problem.T = Operator::affine_monotone(s + reg, -rhs);
  problem.known_solution = (s + reg).partialPivLu().solve(rhs);
  problem.meta.name = "saddle";
  problem.meta.dimension = n;
  problem.meta.params["coupling"] = beta;
  problem.meta.params["tikhonov"] = tikhonov;
  verify_solution(problem, 1e-8);
  return problem;
}

ProblemInstance gen_saddle(int n, std::uint64_t seed, double coupling, double tikhonov) {
  if (n < 2 || n % 2 != 0) throw UsageError("gen_saddle: n must be even and >= 2");
  if (coupling < 0.0) throw UsageError("gen_saddle: coupling must be >= 0");
  std::mt19937_64 rng(seed);
  const Matrix g = random_gaussian(n, n, rng);
  Matrix s = 0.5 * (g - g.transpose());
  const double norm = spectral_norm(s);
  if (norm > 0.0 && coupling > 0.0) {
    s *= coupling / norm;
  } else {
    s.setZero();
  }
  const Vector rhs = random_gaussian_vector(n, rng);

  ProblemInstance problem = make_saddle_instance(std::move(s), tikhonov, rhs);
  problem.meta.seed = seed;
  return problem;
}

}  // namespace hpe
