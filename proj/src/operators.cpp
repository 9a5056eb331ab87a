#include "monolab/operators.hpp"

#include <cmath>
#include <sstream>

namespace monolab {

OperatorFamily::OperatorFamily(Direction dir)
  : dir_(std::move(dir))
{
}

OperatorFamily::OperatorFamily(Vector e)
  : dir_(std::move(e))
{
}

void OperatorFamily::check_dim(const Vector& x) const { require_same_dim(dir_.e(), x); }

Vector OperatorFamily::retract(const Vector& x) const
{
  check_dim(x);
  return norm(x) * dir_.e();
}

Vector OperatorFamily::resolve(const Vector& y) const { return resolve_oriented(y, 1.0); }

Vector OperatorFamily::resolve_oriented(const Vector& y_in, double sign) const
{
  check_dim(y_in);
  if (dir_.is_zero()) {
    return 0.5 * y_in;
  }
  // Positively homogeneous: work at unit scale so squared norms cannot underflow.
  const int exp = norm_exponent(y_in);
  const Vector y = ldexp(y_in, -exp);
  // Work in the split y = s*ehat + y_perp. The ehat-component of 2 T_e y is
  // s + |y||e|, which cancels badly when y points almost along -e; the
  // conjugate form below avoids that.
  const Vector ehat = sign * dir_.unit_direction();
  const double n = dir_.norm();
  const double s = inner(y, ehat);
  const double ny = norm(y);
  Vector y_perp = y - s * ehat;
  // Second projection pass: the first leaves an O(eps |y|) component along
  // ehat, which would swamp c when y is nearly antiparallel to e.
  y_perp = y_perp - inner(y_perp, ehat) * ehat;
  double c;
  if (s >= 0.0) {
    c = s + ny * n;
  } else {
    const double k = (1.0 - n) * (1.0 + n);
    c = (n * n * norm_sq(y_perp) - k * s * s) / (ny * n - s);
  }
  return ldexp(combine(0.5, y_perp, 0.5 * c, ehat), exp);
}

double OperatorFamily::ray_coefficient(const Vector& x_in) const
{
  check_dim(x_in);
  if (regime() == Regime::Unit) {
    throw RegimeMismatch("ray coefficient is defined only for |e| < 1");
  }
  const int exp = norm_exponent(x_in);
  const Vector x = ldexp(x_in, -exp);
  const double n = dir_.norm();
  const double k = (1.0 - n) * (1.0 + n);
  const double a = inner(dir_.e(), x);
  const double q = norm_sq(x);
  const double disc = std::sqrt(k * q + a * a);
  if (a > 0.0) {
    // Same root as (2a - 2 disc)/k, without the cancellation.
    return std::ldexp(-4.0 * q / (2.0 * a + 2.0 * disc), exp);
  }
  return std::ldexp((2.0 * a - 2.0 * disc) / k, exp);
}

SetValue OperatorFamily::evaluate(const Vector& x_in) const
{
  check_dim(x_in);
  if (x_in.is_zero() && regime() == Regime::Unit) {
    return SetValue::ray(-dir_.e());
  }
  const int exp = norm_exponent(x_in);
  const Vector x = ldexp(x_in, -exp);
  if (regime() == Regime::SubUnit) {
    return SetValue::singleton(ldexp(combine(1.0, x, ray_coefficient(x), dir_.e()), exp));
  }
  const double q = norm_sq(x);
  const double a = inner(dir_.e(), x);
  if (a > kDomTol * std::sqrt(q)) {
    return SetValue::singleton(ldexp(combine(1.0, x, -q / a, dir_.e()), exp));
  }
  return SetValue::empty();
}

GraphPoint OperatorFamily::minty_point(const Vector& y) const
{
  // u = y - T_e y, evaluated as T_{-e} y so that it keeps full relative
  // accuracy when y is nearly parallel to e.
  return {resolve_oriented(y, 1.0), resolve_oriented(y, -1.0)};
}

OperatorFamily OperatorFamily::dual() const { return OperatorFamily(Direction(-dir_.e())); }

namespace {

void validate_weights(std::span<const Direction> dirs, std::span<const double> weights)
{
  if (dirs.empty()) {
    throw InvalidInput("resolvent average needs at least one direction");
  }
  if (dirs.size() != weights.size()) {
    std::ostringstream msg;
    msg << dirs.size() << " directions but " << weights.size() << " weights";
    throw InvalidInput(msg.str());
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw InvalidInput("weights must lie in [0, 1]");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights sum to " << total << ", expected 1";
    throw InvalidInput(msg.str());
  }
  for (const auto& d : dirs) {
    if (d.dim() != dirs.front().dim()) {
      throw DimensionMismatch("directions of differing dimension");
    }
  }
}

} // namespace

Direction resolvent_average(std::span<const Direction> dirs, std::span<const double> weights)
{
  validate_weights(dirs, weights);
  Vector avg = Vector::zeros(dirs.front().dim());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    avg = combine(1.0, avg, weights[i], dirs[i].e());
  }
  return Direction(std::move(avg));
}

Vector weighted_retraction(std::span<const Direction> dirs, std::span<const double> weights,
                           const Vector& x)
{
  validate_weights(dirs, weights);
  require_same_dim(dirs.front().e(), x);
  const double nx = norm(x);
  Vector sum = Vector::zeros(x.dim());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    sum = combine(1.0, sum, weights[i] * nx, dirs[i].e());
  }
  return sum;
}

} // namespace monolab
