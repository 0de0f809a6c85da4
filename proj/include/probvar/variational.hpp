// The quadratic energy J(X) = 1/2 E(X^2) - E(X * target), its Gateaux
// derivatives, a finite-difference derivative check, and minimizers over the
// span of block indicators. The unique minimizer is the conditional
// expectation of the target, which the solvers recover without referencing
// the closed form.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "probvar/lp.hpp"
#include "probvar/sigma.hpp"

namespace probvar {

/// Minimize J over variables measurable with respect to the partition.
struct EnergyProblem {
  EnergyProblem(Partition partition_in, RandomVariable target_in);

  ProbabilitySpace space;
  Partition partition;
  RandomVariable target;
};

enum class SolveMethod {
  exact,             // diagonal normal equations, zero iterations
  gradient_descent,  // fixed step, default 1 / max_j P(Bj)
  preconditioned,    // per-coordinate step 1 / P(Bj); converges in one step
};

struct SolverConfig {
  SolveMethod method = SolveMethod::exact;
  std::optional<double> step;    // gradient_descent only; default 1/max P(Bj)
  double tol = 1e-10;            // infinity-norm threshold on the gradient
  std::size_t max_iters = 1000000;
  bool record_trace = false;
};

struct TracePoint {
  double energy = 0.0;
  double grad_inf_norm = 0.0;
};

struct SolverResult {
  std::vector<double> coefficients;
  double energy = 0.0;
  double grad_inf_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Set when max_j P(Bj) / min_j P(Bj) > 1e6; plain gradient descent
  /// iteration counts scale with that ratio.
  bool ill_conditioned = false;
  std::vector<TracePoint> trace;
};

/// J(x) = 1/2 E(x^2) - E(x * target).
double energy(const EnergyProblem& problem, const RandomVariable& x);

/// J'(x)y = E(x y) - E(target y); linear in y.
double gateaux_first(const EnergyProblem& problem, const RandomVariable& x,
                     const RandomVariable& y);

/// J''(x)(y,z) = E(y z); symmetric, positive on variables nonzero on
/// positive-mass outcomes.
double gateaux_second(const EnergyProblem& problem, const RandomVariable& y,
                      const RandomVariable& z);

/// Relative error between J'(x)y and the central difference
/// (J(x+hy) - J(x-hy)) / 2h, scaled by max(1, |analytic|, |numeric|).
double fd_check(const EnergyProblem& problem, const RandomVariable& x,
                const RandomVariable& y, double h);

/// Gradient of the reduced function alpha -> J(sum_j alpha_j 1_Bj):
/// g_j = alpha_j P(Bj) - E(target 1_Bj). Diagonal because blocks are
/// disjoint.
std::vector<double> coefficient_gradient(const EnergyProblem& problem,
                                         const std::vector<double>& alpha);

SolverResult minimize(const EnergyProblem& problem, const SolverConfig& config);

/// max_j |J'(x)(1_Bj)|; vanishes exactly when x minimizes J over the
/// measurable variables, since block indicators span that subspace.
double critical_residual(const EnergyProblem& problem, const RandomVariable& x);

}  // namespace probvar
