#include "probvar/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace probvar {

EnergyProblem::EnergyProblem(Partition partition_in, RandomVariable target_in)
    : space(partition_in.space()),
      partition(std::move(partition_in)),
      target(std::move(target_in)) {
  require_same_space(space, target.space(), "EnergyProblem");
}

double energy(const EnergyProblem& problem, const RandomVariable& x) {
  require_same_space(problem.space, x.space(), "energy");
  return 0.5 * inner_product(x, x) - inner_product(x, problem.target);
}

double gateaux_first(const EnergyProblem& problem, const RandomVariable& x,
                     const RandomVariable& y) {
  require_same_space(problem.space, x.space(), "gateaux_first");
  return inner_product(x, y) - inner_product(problem.target, y);
}

double gateaux_second(const EnergyProblem& problem, const RandomVariable& y,
                      const RandomVariable& z) {
  require_same_space(problem.space, y.space(), "gateaux_second");
  return inner_product(y, z);
}

double fd_check(const EnergyProblem& problem, const RandomVariable& x,
                const RandomVariable& y, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream msg;
    msg << "h = " << h << "; the difference step needs h > 0";
    throw BadStep(msg.str());
  }
  const double analytic = gateaux_first(problem, x, y);
  const double numeric =
      (energy(problem, x + h * y) - energy(problem, x - (h * y))) / (2.0 * h);
  const double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
  return std::abs(analytic - numeric) / scale;
}

std::vector<double> coefficient_gradient(const EnergyProblem& problem,
                                         const std::vector<double>& alpha) {
  const std::size_t n_blocks = problem.partition.block_count();
  if (alpha.size() != n_blocks) {
    throw LengthMismatch("got " + std::to_string(alpha.size()) +
                         " coefficients for " + std::to_string(n_blocks) +
                         " blocks");
  }
  std::vector<double> grad(n_blocks);
  for (std::size_t j = 0; j < n_blocks; ++j) {
    grad[j] = alpha[j] * problem.partition.block_prob(j) -
              integral_over(problem.target, problem.partition.block(j));
  }
  return grad;
}

namespace {

double inf_norm(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

// J restricted to coefficient space; used for the iteration trace only, the
// reported energy is recomputed from the full variable.
double reduced_energy(const std::vector<double>& alpha,
                      const std::vector<double>& block_probs,
                      const std::vector<double>& target_integrals) {
  double out = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    out += 0.5 * alpha[j] * alpha[j] * block_probs[j] -
           alpha[j] * target_integrals[j];
  }
  return out;
}

}  // namespace

SolverResult minimize(const EnergyProblem& problem, const SolverConfig& config) {
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
    throw BadConfig("tol must be positive");
  }
  if (config.max_iters == 0) {
    throw BadConfig("max_iters must be positive");
  }
  if (config.step && (!(*config.step > 0.0) || !std::isfinite(*config.step))) {
    throw BadConfig("step must be positive when given");
  }

  const Partition& partition = problem.partition;
  const std::size_t n_blocks = partition.block_count();
  const std::vector<double>& block_probs = partition.block_probs();

  std::vector<double> target_integrals(n_blocks);
  for (std::size_t j = 0; j < n_blocks; ++j) {
    target_integrals[j] = integral_over(problem.target, partition.block(j));
  }

  const double max_prob = *std::max_element(block_probs.begin(), block_probs.end());
  const double min_prob = *std::min_element(block_probs.begin(), block_probs.end());

  SolverResult result;
  result.ill_conditioned = max_prob / min_prob > 1e6;

  if (config.method == SolveMethod::exact) {
    result.coefficients.resize(n_blocks);
    for (std::size_t j = 0; j < n_blocks; ++j) {
      result.coefficients[j] = target_integrals[j] / block_probs[j];
    }
    result.iterations = 0;
    result.converged = true;
  } else {
    // Gradient descent on the reduced problem from alpha = 0. The reduced
    // Hessian is diagonal with entries P(Bj), so the uniform step
    // 1 / max_j P(Bj) is stable and the per-coordinate step 1 / P(Bj)
    // (method preconditioned) lands on the minimizer in one update.
    std::vector<double> steps(n_blocks);
    if (config.method == SolveMethod::preconditioned) {
      for (std::size_t j = 0; j < n_blocks; ++j) steps[j] = 1.0 / block_probs[j];
    } else {
      const double step = config.step ? *config.step : 1.0 / max_prob;
      std::fill(steps.begin(), steps.end(), step);
    }

    std::vector<double> alpha(n_blocks, 0.0);
    std::vector<double> grad = coefficient_gradient(problem, alpha);
    double grad_norm = inf_norm(grad);
    std::size_t iters = 0;
    if (config.record_trace) {
      result.trace.push_back(
          {reduced_energy(alpha, block_probs, target_integrals), grad_norm});
    }
    while (grad_norm > config.tol && iters < config.max_iters) {
      for (std::size_t j = 0; j < n_blocks; ++j) alpha[j] -= steps[j] * grad[j];
      ++iters;
      grad = coefficient_gradient(problem, alpha);
      grad_norm = inf_norm(grad);
      if (config.record_trace) {
        result.trace.push_back(
            {reduced_energy(alpha, block_probs, target_integrals), grad_norm});
      }
    }
    result.coefficients = std::move(alpha);
    result.iterations = iters;
    result.converged = grad_norm <= config.tol;
  }

  const RandomVariable minimizer =
      simple_combination(result.coefficients, partition.blocks());
  result.energy = energy(problem, minimizer);
  result.grad_inf_norm = inf_norm(coefficient_gradient(problem, result.coefficients));
  return result;
}

double critical_residual(const EnergyProblem& problem, const RandomVariable& x) {
  require_same_space(problem.space, x.space(), "critical_residual");
  double out = 0.0;
  for (std::size_t j = 0; j < problem.partition.block_count(); ++j) {
    const double directional =
        gateaux_first(problem, x, indicator(problem.partition.block(j)));
    out = std::max(out, std::abs(directional));
  }
  return out;
}

}  // namespace probvar
