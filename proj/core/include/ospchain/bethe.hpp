#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ospchain/bethe_config.hpp"
#include "ospchain/report.hpp"
#include "ospchain/spectrum.hpp"

namespace ospchain {

/// e_x(lambda) = (lambda + i x/2) / (lambda - i x/2).
Complex e_factor(double x, Complex lambda);

/// Throws DomainError for ranks where the equation families overlap (n <= 1 or m = 0).
void require_bethe_rank(const EigenvalueModel& model);

/// One coupling factor e_x(lambda_i - eps*lambda_j) entering the equation of a root.
struct BetheCoupling {
  double x = 0.0;
  int level = 0;      // level of lambda_j
  bool skip_self = false;
};

/// Driving exponent (2L at level 1, otherwise 0) and couplings of a level's equation.
struct BetheEquation {
  int driving = 0;
  std::vector<BetheCoupling> couplings;
};
BetheEquation bethe_equation(const EigenvalueModel& model, int L, int level);

/// One residual per root, level by level: log(LHS) - log(RHS) wrapped to the principal branch.
std::vector<Complex> bethe_residuals(const EigenvalueModel& model, int L, const BetheConfiguration& cfg);

/// Analytic Jacobian of the unwrapped log residuals with respect to the flattened roots.
std::vector<std::vector<Complex>> bethe_jacobian(const EigenvalueModel& model, int L, const BetheConfiguration& cfg);

double max_abs(const std::vector<Complex>& v);

struct SolverOptions {
  std::uint64_t seed = 1;
  int starts = 64;
  int max_iterations = 200;
  double tolerance = 1e-12;
  double dedup_tolerance = 1e-9;
  double pole_distance = 1e-6;
  int occupancy_cap = 4;

  Json to_json() const;
};

struct BetheSolution {
  BetheConfiguration config;
  double max_residual = 0.0;
  int start = 0;
  int iterations = 0;
};

struct StartOutcome {
  int start = 0;
  std::string status;  // converged, duplicate, rejected, failed
  std::string detail;
  double residual = 0.0;
};

struct BetheSolveResult {
  int M = 0;
  int n = 0;
  int L = 0;
  std::vector<int> occupancies;
  SolverOptions options;
  std::vector<BetheSolution> solutions;
  std::vector<StartOutcome> outcomes;

  Json to_json() const;
};

/// Roots mapped to Re >= 0 (Im > 0 on the imaginary axis) and sorted within each level.
BetheConfiguration canonical(const BetheConfiguration& cfg);
double configuration_distance(const BetheConfiguration& a, const BetheConfiguration& b);

/// Multi-start damped Newton on the log residuals. Deterministic for a given seed.
BetheSolveResult solve_bethe(const EigenvalueModel& model, int L, const std::vector<int>& occupancies,
                             const SolverOptions& options = {});

}  // namespace ospchain
