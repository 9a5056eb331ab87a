#include "monolab/iterate.hpp"

#include <cmath>
#include <numeric>

namespace monolab {

double angle_to(const Vector& x, const Vector& e)
{
  // atan2 of the (perp, parallel) components stays accurate near 0 and pi,
  // where arccos of the cosine loses about half the digits.
  const Vector ehat = e / norm(e);
  const double along = inner(x, ehat);
  const double across = norm(x - along * ehat);
  return std::atan2(across, along);
}

IterationTrace run_iteration(const OperatorFamily& fam, const Vector& x0, std::size_t max_steps,
                             double stop_tol)
{
  if (max_steps < 1) {
    throw InvalidInput("max_steps must be >= 1");
  }
  require_same_dim(fam.e(), x0);

  IterationTrace trace;
  auto record = [&](Vector x) {
    const double n = norm(x);
    trace.norms.push_back(n);
    if (!fam.direction().is_zero() && n > 0.0) {
      trace.thetas.emplace_back(angle_to(x, fam.e()));
    } else {
      trace.thetas.emplace_back(std::nullopt);
    }
    trace.iterates.push_back(std::move(x));
  };

  record(x0);
  bool ratios_live = true;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const Vector& x = trace.iterates.back();
    const double nx = trace.norms.back();
    Vector next = fam.resolve(x);
    const double moved = distance(next, x);
    record(std::move(next));
    ++trace.n_steps;

    if (ratios_live && nx >= kUnderflowNorm) {
      trace.ratios.push_back(trace.norms.back() / nx);
    } else {
      ratios_live = false;
    }
    if (moved <= stop_tol * (1.0 + nx)) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

double theta0(const OperatorFamily& fam, const Vector& x0)
{
  if (fam.regime() != Regime::Unit) {
    throw RegimeMismatch("the sinc limit formula applies only for |e| = 1");
  }
  require_same_dim(fam.e(), x0);
  if (x0.is_zero()) {
    throw InvalidInput("theta0 is undefined for x0 = 0");
  }
  return angle_to(x0, fam.e());
}

double sinc(double t)
{
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

Vector predicted_limit(const OperatorFamily& fam, const Vector& x0)
{
  require_same_dim(fam.e(), x0);
  if (fam.regime() == Regime::SubUnit || x0.is_zero()) {
    return Vector::zeros(fam.dim());
  }
  return (norm(x0) * sinc(theta0(fam, x0))) * fam.e();
}

double estimate_rate(const IterationTrace& trace)
{
  const auto& r = trace.ratios;
  if (r.size() < 10) {
    throw InvalidInput("rate estimation needs at least 10 consecutive-norm ratios");
  }
  const std::size_t tail = r.size() / 4;
  const auto first = r.end() - static_cast<std::ptrdiff_t>(tail);
  return std::accumulate(first, r.end(), 0.0) / static_cast<double>(tail);
}

double claimed_rate(const OperatorFamily& fam) { return (1.0 + fam.e_norm()) / 2.0; }

double kac_product(double theta, std::size_t n_terms)
{
  if (n_terms < 1) {
    throw InvalidInput("kac_product needs n_terms >= 1");
  }
  double prod = 1.0;
  double half = theta;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    half *= 0.5;
    prod *= std::cos(half);
  }
  return prod;
}

} // namespace monolab
