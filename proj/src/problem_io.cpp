#include "hpe/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "hpe/errors.hpp"

namespace hpe {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw ConfigError("problem file: matrix payload size mismatch");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jj = 0; jj < cols; ++jj) m(i, jj) = data[k++].get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

// Box bounds admit infinities, spelled as strings in the file.
json bound_to_json(double b) {
  if (std::isinf(b)) return b > 0 ? json("inf") : json("-inf");
  return json(b);
}

double bound_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("problem file: unrecognized bound '" + s + "'");
  }
  return j.get<double>();
}

json bounds_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(bound_to_json(v[i]));
  return a;
}

Vector bounds_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = bound_from_json(j[i]);
  return v;
}

const char* kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::LinearPSD: return "linear_psd";
    case OperatorKind::Skew: return "skew";
    case OperatorKind::ScaledIdentity: return "scaled_identity";
    case OperatorKind::AbsSubdifferential: return "abs_subdifferential";
    case OperatorKind::BoxNormalCone: return "box_normal_cone";
    case OperatorKind::AffineMonotone: return "affine_monotone";
    case OperatorKind::QuadraticGradient: return "quadratic_gradient";
    case OperatorKind::Sum: return "sum";
  }
  throw UsageError("kind_name: unknown operator kind");
}

}  // namespace

json operator_to_json(const Operator& op) {
  json j{{"kind", kind_name(op.kind())}};
  switch (op.kind()) {
    case OperatorKind::LinearPSD:
    case OperatorKind::Skew:
      j["matrix"] = matrix_to_json(op.matrix());
      break;
    case OperatorKind::ScaledIdentity:
      j["lambda"] = op.lambda();
      break;
    case OperatorKind::AbsSubdifferential:
      j["weight"] = op.weight();
      break;
    case OperatorKind::BoxNormalCone:
      j["lower"] = bounds_to_json(op.lower());
      j["upper"] = bounds_to_json(op.upper());
      break;
    case OperatorKind::AffineMonotone:
    case OperatorKind::QuadraticGradient:
      j["matrix"] = matrix_to_json(op.matrix());
      j["shift"] = vector_to_json(op.shift());
      break;
    case OperatorKind::Sum:
      j["left"] = operator_to_json(op.left());
      j["right"] = operator_to_json(op.right());
      break;
  }
  if (op.gamma()) j["gamma"] = *op.gamma();
  if (op.beta()) j["beta"] = *op.beta();
  return j;
}

Operator operator_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Operator op = [&]() -> Operator {
    if (kind == "linear_psd") return Operator::linear_psd(matrix_from_json(j.at("matrix")));
    if (kind == "skew") return Operator::skew(matrix_from_json(j.at("matrix")));
    if (kind == "scaled_identity") {
      return Operator::scaled_identity(j.at("lambda").get<double>());
    }
    if (kind == "abs_subdifferential") {
      return Operator::abs_subdifferential(j.at("weight").get<double>());
    }
    if (kind == "box_normal_cone") {
      return Operator::box_normal_cone(bounds_from_json(j.at("lower")),
                                       bounds_from_json(j.at("upper")));
    }
    if (kind == "affine_monotone") {
      return Operator::affine_monotone(matrix_from_json(j.at("matrix")),
                                       vector_from_json(j.at("shift")));
    }
    if (kind == "quadratic_gradient") {
      return Operator::quadratic_gradient(matrix_from_json(j.at("matrix")),
                                          vector_from_json(j.at("shift")));
    }
    if (kind == "sum") {
      return Operator::sum(operator_from_json(j.at("left")), operator_from_json(j.at("right")));
    }
    throw ConfigError("problem file: unknown operator kind '" + kind + "'");
  }();
  if (j.contains("gamma")) op = op.with_gamma(j.at("gamma").get<double>());
  if (j.contains("beta")) op = op.with_beta(j.at("beta").get<double>());
  return op;
}

json problem_to_json(const ProblemInstance& problem) {
  json j{{"format", "hpe-problem/1"}};
  json meta{{"name", problem.meta.name},
            {"dimension", problem.meta.dimension},
            {"seed", problem.meta.seed}};
  meta["params"] = json::object();
  for (const auto& [key, value] : problem.meta.params) meta["params"][key] = value;
  j["meta"] = std::move(meta);
  if (problem.T) j["T"] = operator_to_json(*problem.T);
  if (problem.A) j["A"] = operator_to_json(*problem.A);
  if (problem.B) j["B"] = operator_to_json(*problem.B);
  if (problem.known_solution) j["known_solution"] = vector_to_json(*problem.known_solution);
  return j;
}

ProblemInstance problem_from_json(const json& j) {
  if (j.value("format", "") != "hpe-problem/1") {
    throw ConfigError("problem file: missing or unsupported format tag");
  }
  ProblemInstance problem;
  const json& meta = j.at("meta");
  problem.meta.name = meta.at("name").get<std::string>();
  problem.meta.dimension = meta.at("dimension").get<Eigen::Index>();
  problem.meta.seed = meta.at("seed").get<std::uint64_t>();
  if (meta.contains("params")) {
    for (const auto& [key, value] : meta.at("params").items()) {
      problem.meta.params[key] = value.get<double>();
    }
  }
  if (j.contains("T")) problem.T = operator_from_json(j.at("T"));
  if (j.contains("A")) problem.A = operator_from_json(j.at("A"));
  if (j.contains("B")) problem.B = operator_from_json(j.at("B"));
  if (j.contains("known_solution")) problem.known_solution = vector_from_json(j.at("known_solution"));
  if (!problem.T && !problem.split()) {
    throw ConfigError("problem file: needs either T or the pair (A, B)");
  }
  if (problem.known_solution && problem.T) {
    const double res = zero_inclusion_residual(problem, *problem.known_solution);
    if (!(res <= 1e-8)) {
      throw ConfigError("problem file: stored solution has inclusion residual " +
                        std::to_string(res));
    }
  }
  return problem;
}

void save_problem(const ProblemInstance& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("save_problem: cannot open '" + path + "'");
  out << problem_to_json(problem).dump(2) << '\n';
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("load_problem: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("load_problem: parse error in '" + path + "': " + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError("load_problem: schema error in '" + path + "': " + e.what());
  }
}

}  // namespace hpe
