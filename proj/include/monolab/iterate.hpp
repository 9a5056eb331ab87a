#pragma once

#include "monolab/operators.hpp"

#include <optional>
#include <vector>

namespace monolab {

inline constexpr std::size_t kDefaultMaxSteps = 100000;
inline constexpr double kDefaultStopTol = 1e-12;
/// Below this norm, consecutive-norm ratios are no longer recorded.
inline constexpr double kUnderflowNorm = 1e-300;

/// Resolvent iterates x_{n+1} = T_e x_n.
///
/// thetas[n] is the angle between x_n and e in [0, pi], absent when e = 0 or
/// x_n = 0. ratios[n] = |x_{n+1}| / |x_n|, truncated once |x_n| underflows.
struct IterationTrace
{
  std::vector<Vector> iterates;
  std::vector<double> norms;
  std::vector<std::optional<double>> thetas;
  std::vector<double> ratios;
  bool converged = false;
  std::size_t n_steps = 0;
};

/// Iterates until |x_{n+1} - x_n| <= stop_tol (1 + |x_n|) or max_steps
/// applications of T_e. stop_tol = 0 runs exactly max_steps steps (unless an
/// exact fixed point is hit).
IterationTrace run_iteration(const OperatorFamily& fam, const Vector& x0,
                             std::size_t max_steps = kDefaultMaxSteps,
                             double stop_tol = kDefaultStopTol);

/// Angle in [0, pi] between x and the nonzero vector e.
double angle_to(const Vector& x, const Vector& e);

/// Unit regime, x0 != 0: the angle theta0 with cos(theta0) |x0| = <x0, e>.
double theta0(const OperatorFamily& fam, const Vector& x0);

/// Unnormalized cardinal sine, sinc(0) = 1.
double sinc(double t);

/// Limit of the resolvent iteration: 0 for |e| < 1, |x0| sinc(theta0) e for |e| = 1.
Vector predicted_limit(const OperatorFamily& fam, const Vector& x0);

/// Mean of the last quartile of consecutive-norm ratios. Needs >= 10 ratios.
double estimate_rate(const IterationTrace& trace);

/// Linear rate (1 + |e|)/2 of the sub-unit iteration.
double claimed_rate(const OperatorFamily& fam);

/// prod_{k=1}^{n_terms} cos(theta / 2^k); tends to sinc(theta).
double kac_product(double theta, std::size_t n_terms);

} // namespace monolab
