#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "hpe/oracles.hpp"
#include "hpe/problem_io.hpp"
#include "hpe/problems.hpp"
#include "hpe/trace_io.hpp"
#include "support/util.hpp"

using namespace hpe;
namespace ht = hpe::testing;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("operator JSON round-trips preserve payloads exactly") {
  std::mt19937_64 gen = ht::rng(31);

  SUBCASE("linear_psd") {
    const Matrix p = ht::random_psd(3, gen);
    const Operator back = operator_from_json(operator_to_json(Operator::linear_psd(p)));
    CHECK(back.kind() == OperatorKind::LinearPSD);
    CHECK((back.matrix() - p).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("skew with a declared Lipschitz modulus") {
    const Matrix s = ht::random_skew(3, gen);
    const double beta = s.norm();  // Frobenius dominates the spectral norm
    const Operator op = Operator::skew(s).with_beta(beta);
    const Operator back = operator_from_json(operator_to_json(op));
    CHECK((back.matrix() - s).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.beta().has_value());
    CHECK(*back.beta() == beta);
    const Vector x = ht::random_vector(3, gen);
    CHECK((back.apply(x) - op.apply(x)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("scaled_identity with both moduli") {
    const Operator op = Operator::scaled_identity(2.0).with_gamma(0.5).with_beta(2.0);
    const Operator back = operator_from_json(operator_to_json(op));
    CHECK(back.lambda() == 2.0);
    CHECK(*back.gamma() == 0.5);
    CHECK(*back.beta() == 2.0);
  }

  SUBCASE("abs_subdifferential") {
    const Operator back =
        operator_from_json(operator_to_json(Operator::abs_subdifferential(0.7)));
    CHECK(back.kind() == OperatorKind::AbsSubdifferential);
    CHECK(back.weight() == 0.7);
  }

  SUBCASE("box_normal_cone spells infinities as strings") {
    Vector lo(2), hi(2);
    lo << -kInf, 0.0;
    hi << 3.0, kInf;
    const Operator op = Operator::box_normal_cone(lo, hi);
    const json j = operator_to_json(op);
    CHECK(j.at("lower")[0] == "-inf");
    CHECK(j.at("lower")[1] == 0.0);
    CHECK(j.at("upper")[0] == 3.0);
    CHECK(j.at("upper")[1] == "inf");

    const Operator back = operator_from_json(j);
    CHECK(std::isinf(back.lower()[0]));
    CHECK(back.lower()[0] < 0);
    CHECK(back.upper()[0] == 3.0);
    CHECK(std::isinf(back.upper()[1]));
    CHECK(back.upper()[1] > 0);
  }

  SUBCASE("affine_monotone keeps matrix and shift") {
    const Matrix m = ht::random_psd(3, gen) + ht::random_skew(3, gen);
    const Vector b = ht::random_vector(3, gen);
    const Operator op = Operator::affine_monotone(m, b);
    const Operator back = operator_from_json(operator_to_json(op));
    CHECK((back.matrix() - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.shift() - b).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("quadratic_gradient with its tight cocoercivity modulus") {
    const Matrix q = ht::random_psd(4, gen);
    Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
    const Vector b = ht::random_vector(4, gen);
    const Operator op =
        Operator::quadratic_gradient(q, b).with_gamma(1.0 / es.eigenvalues().maxCoeff());
    const Operator back = operator_from_json(operator_to_json(op));
    CHECK((back.matrix() - q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.shift() - b).cwiseAbs().maxCoeff() == 0.0);
    CHECK(*back.gamma() == *op.gamma());
  }

  SUBCASE("sum nests its branches") {
    const Operator op =
        Operator::sum(Operator::abs_subdifferential(0.7), Operator::scaled_identity(2.0));
    const json j = operator_to_json(op);
    CHECK(j.at("left").at("kind") == "abs_subdifferential");
    CHECK(j.at("right").at("kind") == "scaled_identity");
    const Operator back = operator_from_json(j);
    CHECK(back.kind() == OperatorKind::Sum);
    Vector x(1);
    x << 4.0;
    CHECK(back.resolvent(1.0, x)[0] == op.resolvent(1.0, x)[0]);
  }
}

TEST_CASE("problem files round-trip through disk") {
  const std::string path = "io_roundtrip_quadratic.json";
  const ProblemInstance p = gen_quadratic(5, 20.0, 42);
  save_problem(p, path);
  const ProblemInstance q = load_problem(path);

  CHECK(q.meta.name == "quadratic");
  CHECK(q.meta.dimension == 5);
  CHECK(q.meta.seed == 42);
  CHECK(q.meta.params.at("condition_number") == 20.0);
  REQUIRE(q.T.has_value());
  CHECK((q.T->matrix() - p.T->matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((q.T->shift() - p.T->shift()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(*q.T->gamma() == *p.T->gamma());
  REQUIRE(q.known_solution.has_value());
  CHECK((*q.known_solution - *p.known_solution).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("composite problems keep their split structure on disk") {
  const std::string path = "io_roundtrip_composite.json";
  const ProblemInstance p = gen_composite(6, 0.4, 7);
  save_problem(p, path);
  const ProblemInstance q = load_problem(path);

  REQUIRE(q.split());
  CHECK(q.A->kind() == OperatorKind::QuadraticGradient);
  CHECK(*q.A->gamma() == *p.A->gamma());
  CHECK(q.B->weight() == p.B->weight());
  CHECK(q.T->kind() == OperatorKind::Sum);
  CHECK((*q.known_solution - *p.known_solution).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("malformed problem files raise ConfigError") {
  CHECK_THROWS_AS(load_problem("no_such_directory/missing.json"), ConfigError);

  const std::string path = "io_malformed.json";

  write_text(path, "{ this is not json");
  CHECK_THROWS_AS(load_problem(path), ConfigError);

  write_text(path, R"({"format": "something-else"})");
  CHECK_THROWS_AS(load_problem(path), ConfigError);

  write_text(path, R"({"format": "hpe-problem/1",
                       "meta": {"name": "x", "dimension": 1, "seed": 0}})");
  CHECK_THROWS_AS(load_problem(path), ConfigError);  // no operators at all

  // A stored solution that is not a zero to within 1e-8 is rejected on load.
  write_text(path, R"({"format": "hpe-problem/1",
                       "meta": {"name": "x", "dimension": 1, "seed": 0},
                       "T": {"kind": "scaled_identity", "lambda": 1.0},
                       "known_solution": [5.0]})");
  CHECK_THROWS_AS(load_problem(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("malformed operator payloads raise ConfigError") {
  CHECK_THROWS_AS(operator_from_json(json{{"kind", "mystery"}}), ConfigError);
  CHECK_THROWS_AS(
      operator_from_json(json::parse(
          R"({"kind": "linear_psd", "matrix": {"rows": 2, "cols": 2, "data": [1, 0, 0]}})")),
      ConfigError);
  CHECK_THROWS_AS(
      operator_from_json(json::parse(
          R"({"kind": "box_normal_cone", "lower": ["-infinity"], "upper": [1.0]})")),
      ConfigError);
}

TEST_CASE("trace CSV matches the pinned byte layout") {
  std::vector<TraceRecord> trace(2);
  trace[0] = TraceRecord{2, 0.25, 0.5, 1.0, 0.0, 0.5, 0.125, 2.0, 0.1};
  trace[1] = TraceRecord{3, 0.0625, 0.25, 0.5, 0.0, 0.25, 0.0625, std::nullopt, std::nullopt};

  const std::string expected =
      "k,step_sq,gap_sq,v_sq,eps,r_norm,slack,phi,mu\n"
      "2,0.25,0.5,1,0,0.5,0.125,2,0.10000000000000001\n"
      "3,0.0625,0.25,0.5,0,0.25,0.0625,,\n";

  std::ostringstream out;
  write_trace_csv(trace, out);
  CHECK(out.str() == expected);

  // Writing through the file front end is byte-identical and repeatable.
  const std::string p1 = "io_trace_a.csv", p2 = "io_trace_b.csv";
  write_trace_csv(trace, p1);
  write_trace_csv(trace, p2);
  CHECK(slurp(p1) == expected);
  CHECK(slurp(p2) == expected);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("run summaries carry stop reason, tails and the decrease report") {
  Vector start(3);
  start << 4.0, -2.0, 1.0;
  const CertificateOracle oracle = make_ipp_oracle(Operator::scaled_identity(1.0));

  HpeConfig cfg = make_config(0.05, 0.0, 1.0);
  cfg.residual_tol = 1e-10;
  const SolveResult res =
      run(oracle, cfg, InitPoints::from_start(start), Vector::Zero(3));
  REQUIRE(res.reason == StopReason::Converged);

  const json summary = summarize_run(res, cfg);
  CHECK(summary.at("stop_reason") == "converged");
  CHECK(summary.at("iterations").get<int>() == res.iterations);
  CHECK(summary.at("final").at("k").get<int>() == res.trace.back().k);
  CHECK(summary.at("final").at("v_norm").get<double>() ==
        doctest::Approx(std::sqrt(res.trace.back().v_sq)));
  CHECK(summary.at("summability").at("all_pass").get<bool>());
  REQUIRE(summary.contains("mu_decrease"));
  CHECK(summary.at("mu_decrease").at("violations").get<int>() == 0);
  CHECK(summary.at("mu_decrease").at("kappa").get<double>() ==
        doctest::Approx((1.0 - 0.05 * 5.0) / 2.0));

  // The decrease constant belongs to the Standard analysis; Relaxed runs and
  // runs without a reference zero do not report it.
  HpeConfig relaxed = make_config(0.05, 0.0, 1.0, Variant::Relaxed);
  relaxed.residual_tol = 1e-10;
  const SolveResult res2 =
      run(oracle, relaxed, InitPoints::from_start(start), Vector::Zero(3));
  CHECK_FALSE(summarize_run(res2, relaxed).contains("mu_decrease"));

  const SolveResult res3 = run(oracle, cfg, InitPoints::from_start(start));
  CHECK_FALSE(res3.trace.front().phi.has_value());
  CHECK_FALSE(summarize_run(res3, cfg).contains("mu_decrease"));

  HpeConfig capped = cfg;
  capped.max_iters = 3;
  capped.residual_tol = 1e-300;
  const SolveResult res4 =
      run(oracle, capped, InitPoints::from_start(start), Vector::Zero(3));
  CHECK(summarize_run(res4, capped).at("stop_reason") == "max_iterations");

  // Summary files parse back to the same JSON document.
  const std::string path = "io_summary.json";
  write_summary(summary, path);
  CHECK(json::parse(slurp(path)) == summary);
  std::remove(path.c_str());
}
