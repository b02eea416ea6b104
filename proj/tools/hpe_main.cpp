#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hpe/hpe_core.hpp"
#include "hpe/oracles.hpp"
#include "hpe/problem_io.hpp"
#include "hpe/problems.hpp"
#include "hpe/trace_io.hpp"

namespace {

using namespace hpe;

enum class OracleKind { Ipp, Fb, Fbf };

struct RunSpec {
  std::optional<std::string> problem_path;
  std::optional<std::string> generate;
  std::string oracle = "ipp";
  std::optional<double> alpha, sigma, c;
  std::string variant = "standard";
  int max_iters = 50000;
  double tol = 1e-9;
  std::string trace_path, summary_path;
  std::string enforce = "on";
};

OracleKind oracle_kind(const std::string& name) {
  if (name == "ipp") return OracleKind::Ipp;
  if (name == "fb") return OracleKind::Fb;
  if (name == "fbf") return OracleKind::Fbf;
  throw ConfigError("unknown oracle '" + name + "'");
}

Variant variant_kind(const std::string& name) {
  if (name == "standard") return Variant::Standard;
  if (name == "relaxed") return Variant::Relaxed;
  throw ConfigError("unknown variant '" + name + "'");
}

/// --generate spec: "name,key=value,...". Unknown keys are rejected; the seed
/// key is overridden by the HPE_SEED environment variable when set.
ProblemInstance generate_problem(const std::string& spec) {
  std::vector<std::string> tokens;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  if (tokens.empty()) throw ConfigError("--generate: empty spec");
  const std::string name = tokens.front();

  std::map<std::string, double> kv;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::size_t eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--generate: expected key=value, got '" + tokens[i] + "'");
    }
    try {
      kv[tokens[i].substr(0, eq)] = std::stod(tokens[i].substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--generate: bad value in '" + tokens[i] + "'");
    }
  }
  if (const char* env = std::getenv("HPE_SEED")) {
    try {
      kv["seed"] = static_cast<double>(std::stoull(env));
    } catch (const std::exception&) {
      throw ConfigError("HPE_SEED: not an unsigned integer");
    }
  }

  auto take = [&kv](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  const auto seed = static_cast<std::uint64_t>(take("seed", 0.0));

  ProblemInstance problem;
  if (name == "quadratic") {
    problem = gen_quadratic(static_cast<int>(take("n", 10.0)), take("cond", 100.0), seed);
  } else if (name == "composite") {
    problem = gen_composite(static_cast<int>(take("n", 20.0)), take("sparsity", 0.5), seed);
  } else if (name == "saddle") {
    problem = gen_saddle(static_cast<int>(take("n", 4.0)), seed, take("coupling", 2.0),
                         take("tikhonov", 1.0));
  } else {
    throw ConfigError("--generate: unknown generator '" + name + "'");
  }
  if (!kv.empty()) {
    throw ConfigError("--generate: unknown key '" + kv.begin()->first + "' for " + name);
  }
  return problem;
}

ProblemInstance resolve_problem(const RunSpec& spec) {
  if (spec.problem_path && spec.generate) {
    throw ConfigError("pass either --problem or --generate, not both");
  }
  if (spec.problem_path) return load_problem(*spec.problem_path);
  if (spec.generate) return generate_problem(*spec.generate);
  throw ConfigError("no problem given: pass --problem <file> or --generate <spec>");
}

struct OracleSetup {
  CertificateOracle oracle;
  HpeConfig config;
};

OracleSetup build_oracle(const RunSpec& spec, const ProblemInstance& problem) {
  const OracleKind kind = oracle_kind(spec.oracle);
  const Variant variant = variant_kind(spec.variant);
  const double alpha = spec.alpha.value_or(0.05);

  OracleSetup setup;
  switch (kind) {
    case OracleKind::Ipp: {
      const double sigma = spec.sigma.value_or(0.0);
      if (sigma != 0.0) throw ConfigError("ipp: exact certificates need sigma = 0");
      setup.config = make_config(alpha, sigma, spec.c.value_or(10.0), variant);
      setup.oracle = make_ipp_oracle(problem.monolithic());
      break;
    }
    case OracleKind::Fb: {
      if (!problem.split()) throw ConfigError("fb: problem has no (A, B) splitting");
      if (!problem.A->gamma()) throw ConfigError("fb: operator A has no declared gamma");
      const double sigma = spec.sigma.value_or(0.6);
      const FbParams params = derive_fb_params(alpha, sigma, *problem.A->gamma());
      setup.config = make_config(alpha, sigma, spec.c.value_or(params.c_max), variant);
      setup.oracle =
          make_fb_oracle(*problem.A, *problem.B, params, variant == Variant::Relaxed);
      break;
    }
    case OracleKind::Fbf: {
      if (spec.sigma) throw ConfigError("fbf: sigma is induced by alpha; omit --sigma");
      if (variant == Variant::Relaxed) {
        throw ConfigError("fbf: embeds in the standard variant only");
      }
      if (!problem.split()) throw ConfigError("fbf: problem has no (A, B) splitting");
      if (!problem.A->beta()) throw ConfigError("fbf: operator A has no declared beta");
      const FbfParams params = derive_fbf_params(alpha, *problem.A->beta());
      const double c_default = std::isfinite(params.c_max) ? 0.99 * params.c_max : 1.0;
      setup.config = make_config(alpha, params.sigma, spec.c.value_or(c_default), variant);
      setup.oracle = make_fbf_oracle(*problem.A, *problem.B, params);
      break;
    }
  }
  setup.config.max_iters = spec.max_iters;
  setup.config.residual_tol = spec.tol;
  setup.config.enforce_step_inequality = spec.enforce == "on";
  return setup;
}

Eigen::Index problem_dim(const ProblemInstance& problem) {
  if (problem.T && problem.T->dim() > 0) return problem.T->dim();
  if (problem.A && problem.A->dim() > 0) return problem.A->dim();
  if (problem.B && problem.B->dim() > 0) return problem.B->dim();
  if (problem.meta.dimension > 0) return problem.meta.dimension;
  throw ConfigError("cannot infer the problem dimension");
}

int cmd_solve(const RunSpec& spec) {
  const ProblemInstance problem = resolve_problem(spec);
  const OracleSetup setup = build_oracle(spec, problem);

  const ValidationReport report = validate_config(setup.config);
  if (!report.ok()) throw ConfigError(report.summary());

  const InitPoints init = InitPoints::from_start(Vector::Zero(problem_dim(problem)));
  SolveResult result;
  try {
    result = run(setup.oracle, setup.config, init, problem.known_solution);
  } catch (const StepViolationError& e) {
    std::cerr << "step violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return 3;
  }

  if (!spec.trace_path.empty()) write_trace_csv(result.trace, spec.trace_path);
  nlohmann::json summary = summarize_run(result, setup.config);
  if (problem.known_solution) {
    summary["distance_to_solution"] = (result.x - *problem.known_solution).norm();
  }
  if (!spec.summary_path.empty()) write_summary(summary, spec.summary_path);

  const bool converged = result.reason == StopReason::Converged;
  std::cout << problem.meta.name << " n=" << problem_dim(problem) << " oracle=" << spec.oracle
            << ": " << (converged ? "converged" : "hit max_iters") << " after "
            << result.iterations << " iterations";
  if (problem.known_solution) {
    std::cout << ", distance to solution "
              << (result.x - *problem.known_solution).norm();
  }
  std::cout << "\n";
  return converged ? 0 : 2;
}

int cmd_check(const RunSpec& spec) {
  const Variant variant = variant_kind(spec.variant);
  const double alpha = spec.alpha.value_or(0.05);
  bool feasible = true;

  std::optional<double> beta, gamma;
  if (spec.problem_path || spec.generate) {
    const ProblemInstance problem = resolve_problem(spec);
    const Operator& a = problem.split() ? *problem.A : problem.monolithic();
    beta = a.beta();
    gamma = a.gamma();
  }

  double sigma = spec.sigma.value_or(0.0);
  const bool fbf = spec.oracle == "fbf";
  const double window_hi = (1.0 - 5.0 * alpha) / 2.0;
  if (fbf) {
    if (spec.sigma) {
      std::cout << "fbf: sigma is induced by alpha; omit --sigma\n";
      feasible = false;
    } else if (window_hi > 0.0) {
      const FbfParams params = derive_fbf_params(alpha, beta.value_or(1.0));
      sigma = params.sigma;
      std::cout << "fbf sigma_bar window: (0, " << window_hi << "), midpoint "
                << params.sigma_bar << " inducing sigma = " << sigma << "\n";
      if (beta) {
        std::cout << "fbf step bound: c <= " << params.c_max << " (beta = " << *beta << ")\n";
      } else {
        std::cout << "fbf step bound: c <= " << sigma << " / beta\n";
      }
    }
    if (variant == Variant::Relaxed) {
      std::cout << "fbf embeds in the standard variant only\n";
      feasible = false;
    }
  } else {
    std::cout << "fbf sigma_bar window for this alpha: "
              << (window_hi > 0.0 ? "(0, " + std::to_string(window_hi) + ")" : "empty (5 alpha >= 1)")
              << "\n";
  }
  if (window_hi <= 0.0 && fbf) feasible = false;

  const double standard_lhs = alpha * (5.0 + 4.0 * sigma * sigma) + sigma * sigma;
  const double relaxed_lhs = 5.0 * alpha + sigma * sigma;
  if (variant == Variant::Standard) {
    std::cout << "standard condition: alpha(5 + 4 sigma^2) + sigma^2 = " << standard_lhs
              << " (< 1 required)\n";
  } else {
    std::cout << "relaxed condition: 5 alpha + sigma^2 = " << relaxed_lhs
              << " (< 1 required)\n";
  }

  const ValidationReport report = validate_config(make_config(alpha, sigma, 1.0, variant));
  if (!report.ok()) {
    std::cout << report.summary() << "\n";
    feasible = false;
  }

  if (spec.oracle == "fb") {
    const double coeff = 2.0 * sigma * sigma;
    if (gamma) {
      std::cout << "fb step bound: c <= " << coeff * *gamma << " (gamma = " << *gamma << ")\n";
    } else {
      std::cout << "fb step bound: c <= " << coeff << " * gamma\n";
    }
  }

  std::cout << (feasible ? "feasible\n" : "infeasible\n");
  return feasible ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inertial hybrid proximal-extragradient solver"};
  app.require_subcommand(1);
  RunSpec spec;

  CLI::App* solve = app.add_subcommand("solve", "run the solver and emit trace/summary files");
  CLI::App* check = app.add_subcommand("check", "validate parameters and report step bounds");
  for (CLI::App* sub : {solve, check}) {
    sub->add_option("--problem", spec.problem_path, "problem file (JSON)");
    sub->add_option("--generate", spec.generate,
                    "generator spec: quadratic|composite|saddle,key=value,...");
    sub->add_option("--oracle", spec.oracle, "certificate oracle")
        ->check(CLI::IsMember({"ipp", "fb", "fbf"}));
    sub->add_option("--alpha", spec.alpha, "inertial coefficient bound");
    sub->add_option("--sigma", spec.sigma, "relative-error tolerance");
    sub->add_option("--c", spec.c, "constant step size");
    sub->add_option("--variant", spec.variant, "parameter condition variant")
        ->check(CLI::IsMember({"standard", "relaxed"}));
    sub->add_option("--max-iters", spec.max_iters, "iteration cap");
    sub->add_option("--tol", spec.tol, "residual tolerance on (||v||, eps)");
    sub->add_option("--trace", spec.trace_path, "write per-iteration CSV here");
    sub->add_option("--summary", spec.summary_path, "write run summary JSON here");
    sub->add_option("--enforce-step-inequality", spec.enforce,
                    "abort when a certificate fails the step test")
        ->check(CLI::IsMember({"on", "off"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    return solve->parsed() ? cmd_solve(spec) : cmd_check(spec);
  } catch (const StepViolationError& e) {
    std::cerr << "step violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
