#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hpe/space.hpp"

namespace hpe {

enum class OperatorKind {
  LinearPSD,           // x -> M x, M + M^T positive semidefinite
  Skew,                // x -> S x, S = -S^T
  ScaledIdentity,      // x -> lambda x, lambda >= 0
  AbsSubdifferential,  // weight * subdifferential of the l1 norm, componentwise
  BoxNormalCone,       // normal cone of [lower, upper]
  AffineMonotone,      // x -> M x + b, M PSD or skew
  QuadraticGradient,   // x -> Q x - b, Q PSD (gradient of a convex quadratic)
  Sum,                 // left + right
};

/// Closed real interval, possibly unbounded on either side.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double distance(double v) const {
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return 0.0;
  }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
};

/// The set T(p) of every catalog operator splits into a single-valued part plus
/// a componentwise interval: T(p) = base + prod_i spread[i].
struct SetDecomposition {
  bool in_domain = true;
  Vector base;
  std::vector<Interval> spread;
};

/// A maximally monotone operator from a closed catalog of kinds, each with an
/// exact resolvent. Instances are immutable after construction; declared
/// analytic moduli (cocoercivity gamma, Lipschitz beta) are validated when set.
class Operator {
 public:
  static Operator linear_psd(Matrix m);
  static Operator skew(Matrix s);
  static Operator scaled_identity(double lambda);
  static Operator abs_subdifferential(double weight = 1.0);
  static Operator box_normal_cone(Vector lower, Vector upper);
  static Operator affine_monotone(Matrix m, Vector shift);
  static Operator quadratic_gradient(Matrix q, Vector b);
  static Operator sum(Operator left, Operator right);

  /// Declares a cocoercivity modulus gamma > 0; validated at construction
  /// (exactly 1/lambda_max(Q) for quadratic gradients, sampled otherwise).
  Operator with_gamma(double gamma) const;
  /// Declares a Lipschitz modulus beta >= 0; validated on 100 sampled pairs.
  Operator with_beta(double beta) const;

  OperatorKind kind() const { return kind_; }
  /// Intrinsic dimension; 0 for dimension-agnostic kinds (scaled identity, l1).
  Eigen::Index dim() const { return dim_; }
  bool single_valued() const;
  /// True when T(p) decomposes componentwise (no cross-coordinate coupling).
  bool separable() const;
  std::optional<double> gamma() const { return gamma_; }
  std::optional<double> beta() const { return beta_; }
  double lambda() const { return lambda_; }
  double weight() const { return weight_; }
  const Matrix& matrix() const { return mat_; }
  const Vector& shift() const { return shift_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Operator& left() const { return *left_; }
  const Operator& right() const { return *right_; }

  /// Evaluates a single-valued operator. Throws UsageError on set-valued kinds.
  Vector apply(const Vector& x) const;

  /// The resolvent J_{cT}: the unique p with x - p in c T(p). c > 0.
  Vector resolvent(double c, const Vector& x) const;

  /// Residual of the resolvent inclusion at a candidate p: for single-valued
  /// kinds ||x - p - c T(p)||, otherwise the distance of (x-p)/c to T(p).
  double resolvent_residual(double c, const Vector& x, const Vector& p) const;

  /// Componentwise description of T(p). in_domain is false when p lies outside
  /// dom T (box kinds only).
  SetDecomposition decompose(const Vector& p) const;

  /// Euclidean distance of v to the set T(p); +inf when p is outside dom T.
  double graph_distance(const Vector& p, const Vector& v) const;

  /// Nearest point of dom T (componentwise clamp into any box constraints).
  Vector domain_project(const Vector& w) const;

 private:
  Operator() = default;
  void validate_moduli() const;

  OperatorKind kind_ = OperatorKind::ScaledIdentity;
  Eigen::Index dim_ = 0;
  Matrix mat_;
  Vector shift_, lower_, upper_;
  double lambda_ = 0.0;
  double weight_ = 1.0;
  std::shared_ptr<const Operator> left_, right_;
  std::optional<double> gamma_, beta_;
};

/// Which enlargement rule produced a certificate.
enum class Provenance { ExactGraph, CocoerciveRule, SumRule, Composite };

/// A triple (y, v, eps) with v in the eps-enlargement of the operator at y.
struct Certificate {
  Vector y;
  Vector v;
  double eps = 0.0;
  Provenance provenance = Provenance::ExactGraph;
};

struct GraphPair {
  Vector w;
  Vector u;  // u in T(w)
};

/// Draws `count` points of gr T near `center` (box of the given radius,
/// seeded). Set-valued kinds get one element per base point by projecting a
/// random candidate onto the componentwise set.
std::vector<GraphPair> sample_graph(const Operator& op, const Vector& center, int count,
                                    std::uint64_t seed, double radius = 10.0);

/// Necessary-condition test for v in T^{[eps]}(y): checks
/// <y - w, v - u> >= -eps - 1e-10 over the sampled graph points. A false
/// return refutes membership; a true return is evidence only.
bool enlargement_membership(const Operator& op, const Certificate& cert,
                            const std::vector<GraphPair>& samples);

/// For a gamma-cocoercive operator, A z belongs to the enlargement of A at x
/// with eps = ||x - z||^2 / (4 gamma).
Certificate cocoercive_certificate(const Operator& op, const Vector& x, const Vector& z);

/// Combines certificates for T1 and T2 at the same base point into one for
/// T1 + T2: values add, enlargements add.
Certificate sum_certificate(const Certificate& c1, const Certificate& c2);

}  // namespace hpe
