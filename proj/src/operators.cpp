#include "hpe/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

namespace hpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

Vector solve_shifted(const Matrix& m, double c, const Vector& rhs) {
  Matrix a = Matrix::Identity(m.rows(), m.cols());
  a += c * m;
  return a.partialPivLu().solve(rhs);
}

double min_symmetric_eigenvalue(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_symmetric_eigenvalue(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw UsageError(std::string(what) + ": expected a nonempty square matrix");
  }
}

}  // namespace

Operator Operator::linear_psd(Matrix m) {
  require_square(m, "linear_psd");
  if (min_symmetric_eigenvalue(m + m.transpose()) < -1e-10) {
    throw UsageError("linear_psd: M + M^T has an eigenvalue below -1e-10");
  }
  Operator op;
  op.kind_ = OperatorKind::LinearPSD;
  op.dim_ = m.rows();
  op.mat_ = std::move(m);
  return op;
}

Operator Operator::skew(Matrix s) {
  require_square(s, "skew");
  if ((s + s.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw UsageError("skew: S + S^T exceeds 1e-12");
  }
  Operator op;
  op.kind_ = OperatorKind::Skew;
  op.dim_ = s.rows();
  op.mat_ = std::move(s);
  return op;
}

Operator Operator::scaled_identity(double lambda) {
  if (lambda < 0.0) throw UsageError("scaled_identity: lambda must be >= 0");
  Operator op;
  op.kind_ = OperatorKind::ScaledIdentity;
  op.lambda_ = lambda;
  return op;
}

Operator Operator::abs_subdifferential(double weight) {
  if (weight < 0.0) throw UsageError("abs_subdifferential: weight must be >= 0");
  Operator op;
  op.kind_ = OperatorKind::AbsSubdifferential;
  op.weight_ = weight;
  return op;
}

Operator Operator::box_normal_cone(Vector lower, Vector upper) {
  require_same_dim(lower, upper, "box_normal_cone");
  if (lower.size() == 0) throw UsageError("box_normal_cone: empty bounds");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw UsageError("box_normal_cone: lower > upper at component " + std::to_string(i));
    }
  }
  Operator op;
  op.kind_ = OperatorKind::BoxNormalCone;
  op.dim_ = lower.size();
  op.lower_ = std::move(lower);
  op.upper_ = std::move(upper);
  return op;
}

Operator Operator::affine_monotone(Matrix m, Vector shift) {
  require_square(m, "affine_monotone");
  if (m.rows() != shift.size()) throw UsageError("affine_monotone: shift dimension mismatch");
  if (min_symmetric_eigenvalue(m + m.transpose()) < -1e-10) {
    throw UsageError("affine_monotone: M + M^T has an eigenvalue below -1e-10");
  }
  Operator op;
  op.kind_ = OperatorKind::AffineMonotone;
  op.dim_ = m.rows();
  op.mat_ = std::move(m);
  op.shift_ = std::move(shift);
  return op;
}

Operator Operator::quadratic_gradient(Matrix q, Vector b) {
  require_square(q, "quadratic_gradient");
  if (q.rows() != b.size()) throw UsageError("quadratic_gradient: shift dimension mismatch");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + q.cwiseAbs().maxCoeff())) {
    throw UsageError("quadratic_gradient: Q must be symmetric");
  }
  if (min_symmetric_eigenvalue(q) < -1e-10) {
    throw UsageError("quadratic_gradient: Q has an eigenvalue below -1e-10");
  }
  Operator op;
  op.kind_ = OperatorKind::QuadraticGradient;
  op.dim_ = q.rows();
  op.mat_ = std::move(q);
  op.shift_ = std::move(b);
  return op;
}

Operator Operator::sum(Operator left, Operator right) {
  if (left.dim_ > 0 && right.dim_ > 0 && left.dim_ != right.dim_) {
    throw UsageError("sum: component dimensions differ");
  }
  Operator op;
  op.kind_ = OperatorKind::Sum;
  op.dim_ = left.dim_ > 0 ? left.dim_ : right.dim_;
  op.left_ = std::make_shared<const Operator>(std::move(left));
  op.right_ = std::make_shared<const Operator>(std::move(right));
  return op;
}

Operator Operator::with_gamma(double gamma) const {
  if (!(gamma > 0.0)) throw UsageError("with_gamma: gamma must be > 0");
  Operator op = *this;
  op.gamma_ = gamma;
  op.validate_moduli();
  return op;
}

Operator Operator::with_beta(double beta) const {
  if (beta < 0.0) throw UsageError("with_beta: beta must be >= 0");
  Operator op = *this;
  op.beta_ = beta;
  op.validate_moduli();
  return op;
}

void Operator::validate_moduli() const {
  if (!gamma_ && !beta_) return;
  if (!single_valued()) {
    throw UsageError("analytic moduli apply to single-valued operators only");
  }
  if (kind_ == OperatorKind::ScaledIdentity) {
    if (gamma_ && lambda_ > 0.0 && *gamma_ > (1.0 / lambda_) * (1.0 + 1e-12)) {
      throw UsageError("with_gamma: scaled identity is at most 1/lambda-cocoercive");
    }
    if (beta_ && *beta_ < lambda_ * (1.0 - 1e-12)) {
      throw UsageError("with_beta: scaled identity has Lipschitz modulus lambda");
    }
    return;
  }
  if (kind_ == OperatorKind::QuadraticGradient && gamma_) {
    // Baillon-Haddad is tight for quadratic gradients: gamma = 1/lambda_max(Q).
    const double lmax = max_symmetric_eigenvalue(mat_);
    if (lmax > 0.0 && std::abs(*gamma_ * lmax - 1.0) > 1e-8) {
      throw UsageError("with_gamma: quadratic gradient requires gamma = 1/lambda_max(Q)");
    }
  }
  if (dim_ <= 0) {
    throw UsageError("analytic moduli need an operator with intrinsic dimension");
  }
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  for (int t = 0; t < 100; ++t) {
    Vector x(dim_), y(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      x[i] = unif(rng);
      y[i] = unif(rng);
    }
    const Vector dx = x - y;
    const Vector da = apply(x) - apply(y);
    if (beta_ && da.norm() > *beta_ * dx.norm() * (1.0 + 1e-10) + 1e-12) {
      throw UsageError("with_beta: sampled pair violates the Lipschitz bound");
    }
    if (gamma_ && kind_ != OperatorKind::QuadraticGradient &&
        dx.dot(da) < *gamma_ * da.squaredNorm() * (1.0 - 1e-10) - 1e-12) {
      throw UsageError("with_gamma: sampled pair violates cocoercivity");
    }
  }
}

bool Operator::single_valued() const {
  switch (kind_) {
    case OperatorKind::AbsSubdifferential:
    case OperatorKind::BoxNormalCone:
      return false;
    case OperatorKind::Sum:
      return left_->single_valued() && right_->single_valued();
    default:
      return true;
  }
}

bool Operator::separable() const {
  switch (kind_) {
    case OperatorKind::ScaledIdentity:
    case OperatorKind::AbsSubdifferential:
    case OperatorKind::BoxNormalCone:
      return true;
    case OperatorKind::Sum:
      return left_->separable() && right_->separable();
    default:
      return false;
  }
}

Vector Operator::apply(const Vector& x) const {
  if (dim_ > 0 && x.size() != dim_) throw UsageError("apply: dimension mismatch");
  switch (kind_) {
    case OperatorKind::LinearPSD:
    case OperatorKind::Skew:
      return mat_ * x;
    case OperatorKind::ScaledIdentity:
      return lambda_ * x;
    case OperatorKind::AffineMonotone:
      return mat_ * x + shift_;
    case OperatorKind::QuadraticGradient:
      return mat_ * x - shift_;
    case OperatorKind::Sum:
      if (!single_valued()) break;
      return left_->apply(x) + right_->apply(x);
    default:
      break;
  }
  throw UsageError("apply: operator kind is set-valued");
}

Vector Operator::resolvent(double c, const Vector& x) const {
  if (!(c > 0.0)) throw UsageError("resolvent: c must be > 0");
  if (dim_ > 0 && x.size() != dim_) throw UsageError("resolvent: dimension mismatch");
  switch (kind_) {
    case OperatorKind::LinearPSD:
    case OperatorKind::Skew:
      return solve_shifted(mat_, c, x);
    case OperatorKind::ScaledIdentity:
      return x / (1.0 + c * lambda_);
    case OperatorKind::AffineMonotone:
      return solve_shifted(mat_, c, x - c * shift_);
    case OperatorKind::QuadraticGradient:
      return solve_shifted(mat_, c, x + c * shift_);
    case OperatorKind::AbsSubdifferential: {
      Vector p(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) p[i] = soft_threshold(x[i], c * weight_);
      return p;
    }
    case OperatorKind::BoxNormalCone: {
      Vector p(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        p[i] = std::min(std::max(x[i], lower_[i]), upper_[i]);
      }
      return p;
    }
    case OperatorKind::Sum:
      break;
  }

  // Sum: a scaled-identity summand folds into the step size; the remaining
  // separable pairs have componentwise closed forms.
  const Operator& l = *left_;
  const Operator& r = *right_;
  if (l.kind_ == OperatorKind::ScaledIdentity || r.kind_ == OperatorKind::ScaledIdentity) {
    const Operator& id = l.kind_ == OperatorKind::ScaledIdentity ? l : r;
    const Operator& other = l.kind_ == OperatorKind::ScaledIdentity ? r : l;
    const double scale = 1.0 + c * id.lambda_;
    return other.resolvent(c / scale, x / scale);
  }
  if (l.kind_ == OperatorKind::AbsSubdifferential && r.kind_ == OperatorKind::AbsSubdifferential) {
    return Operator::abs_subdifferential(l.weight_ + r.weight_).resolvent(c, x);
  }
  if (l.kind_ == OperatorKind::BoxNormalCone && r.kind_ == OperatorKind::BoxNormalCone) {
    Vector lo = l.lower_.cwiseMax(r.lower_);
    Vector hi = l.upper_.cwiseMin(r.upper_);
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      if (lo[i] > hi[i]) throw UnsupportedOperatorError("resolvent: empty box intersection");
    }
    return Operator::box_normal_cone(lo, hi).resolvent(c, x);
  }
  const bool abs_box = (l.kind_ == OperatorKind::AbsSubdifferential &&
                        r.kind_ == OperatorKind::BoxNormalCone) ||
                       (l.kind_ == OperatorKind::BoxNormalCone &&
                        r.kind_ == OperatorKind::AbsSubdifferential);
  if (abs_box) {
    const Operator& abs = l.kind_ == OperatorKind::AbsSubdifferential ? l : r;
    const Operator& box = l.kind_ == OperatorKind::AbsSubdifferential ? r : l;
    // 1-D prox of a sum with an interval indicator: clamp after thresholding.
    return box.resolvent(c, abs.resolvent(c, x));
  }
  throw UnsupportedOperatorError("resolvent: unsupported Sum composition");
}

double Operator::resolvent_residual(double c, const Vector& x, const Vector& p) const {
  require_same_dim(x, p, "resolvent_residual");
  if (single_valued()) return (x - p - c * apply(p)).norm();
  return graph_distance(p, (x - p) / c);
}

SetDecomposition Operator::decompose(const Vector& p) const {
  if (dim_ > 0 && p.size() != dim_) throw UsageError("decompose: dimension mismatch");
  SetDecomposition d;
  d.base = Vector::Zero(p.size());
  d.spread.assign(static_cast<std::size_t>(p.size()), Interval{0.0, 0.0});
  switch (kind_) {
    case OperatorKind::AbsSubdifferential:
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
          d.spread[i] = {weight_, weight_};
        } else if (p[i] < 0.0) {
          d.spread[i] = {-weight_, -weight_};
        } else {
          d.spread[i] = {-weight_, weight_};
        }
      }
      return d;
    case OperatorKind::BoxNormalCone:
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < lower_[i] || p[i] > upper_[i]) {
          d.in_domain = false;
          return d;
        }
        const bool at_lo = p[i] == lower_[i];
        const bool at_hi = p[i] == upper_[i];
        if (at_lo && at_hi) {
          d.spread[i] = {-kInf, kInf};
        } else if (at_lo) {
          d.spread[i] = {-kInf, 0.0};
        } else if (at_hi) {
          d.spread[i] = {0.0, kInf};
        }
      }
      return d;
    case OperatorKind::Sum: {
      SetDecomposition a = left_->decompose(p);
      SetDecomposition b = right_->decompose(p);
      d.in_domain = a.in_domain && b.in_domain;
      if (!d.in_domain) return d;
      d.base = a.base + b.base;
      for (std::size_t i = 0; i < d.spread.size(); ++i) d.spread[i] = a.spread[i] + b.spread[i];
      return d;
    }
    default:
      d.base = apply(p);
      return d;
  }
}

double Operator::graph_distance(const Vector& p, const Vector& v) const {
  require_same_dim(p, v, "graph_distance");
  const SetDecomposition d = decompose(p);
  if (!d.in_domain) return kInf;
  double sq = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double di = d.spread[i].distance(v[i] - d.base[i]);
    sq += di * di;
  }
  return std::sqrt(sq);
}

Vector Operator::domain_project(const Vector& w) const {
  switch (kind_) {
    case OperatorKind::BoxNormalCone:
      return resolvent(1.0, w);  // clamp
    case OperatorKind::Sum:
      return right_->domain_project(left_->domain_project(w));
    default:
      return w;
  }
}

std::vector<GraphPair> sample_graph(const Operator& op, const Vector& center, int count,
                                    std::uint64_t seed, double radius) {
  const Eigen::Index n = op.dim() > 0 ? op.dim() : center.size();
  if (center.size() != n) throw UsageError("sample_graph: center dimension mismatch");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const bool set_valued = !op.single_valued();

  std::vector<GraphPair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = center[i] + unif(rng);
    if (set_valued) {
      // Snap some coordinates to 0 so l1-type kinds get exercised at kinks.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (coin(rng) < 0.25) w[i] = 0.0;
      }
    }
    w = op.domain_project(w);
    Vector u(n);
    if (set_valued) {
      const SetDecomposition d = op.decompose(w);
      for (Eigen::Index i = 0; i < n; ++i) u[i] = d.base[i] + d.spread[i].clamp(unif(rng));
    } else {
      u = op.apply(w);
    }
    out.push_back({std::move(w), std::move(u)});
  }
  return out;
}

bool enlargement_membership(const Operator& op, const Certificate& cert,
                            const std::vector<GraphPair>& samples) {
  (void)op;
  for (const GraphPair& s : samples) {
    require_same_dim(cert.y, s.w, "enlargement_membership");
    require_same_dim(cert.v, s.u, "enlargement_membership");
    if (inner(cert.y - s.w, cert.v - s.u) < -cert.eps - 1e-10) return false;
  }
  return true;
}

Certificate cocoercive_certificate(const Operator& op, const Vector& x, const Vector& z) {
  if (!op.gamma()) throw UsageError("cocoercive_certificate: operator has no declared gamma");
  require_same_dim(x, z, "cocoercive_certificate");
  Certificate cert;
  cert.y = x;
  cert.v = op.apply(z);
  cert.eps = (x - z).squaredNorm() / (4.0 * *op.gamma());
  cert.provenance = Provenance::CocoerciveRule;
  return cert;
}

Certificate sum_certificate(const Certificate& c1, const Certificate& c2) {
  require_same_dim(c1.y, c2.y, "sum_certificate");
  if ((c1.y - c2.y).norm() != 0.0) {
    throw UsageError("sum_certificate: certificates have different base points");
  }
  Certificate cert;
  cert.y = c1.y;
  cert.v = c1.v + c2.v;
  cert.eps = c1.eps + c2.eps;
  cert.provenance = Provenance::SumRule;
  return cert;
}

}  // namespace hpe
