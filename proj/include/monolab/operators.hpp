#pragma once

#include "monolab/core.hpp"

#include <span>
#include <vector>

namespace monolab {

/// Relative tolerance for the unit-regime domain test <e,x> > kDomTol * |x|.
inline constexpr double kDomTol = 1e-12;

/// A pair (x, u) with u in A_e(x).
struct GraphPoint
{
  Vector x;
  Vector u;
};

/// The operator family generated by a direction e with |e| <= 1:
///
///   retraction     R_e x = |x| e
///   resolvent      T_e x = (x + R_e x) / 2          (firmly nonexpansive)
///   operator       A_e   = T_e^{-1} - Id            (maximally monotone)
///
/// A_e is evaluated in closed form. In the unit regime it is set-valued
/// (singleton on the open half-space <e,x> > 0, the ray R_- e at the origin,
/// empty elsewhere); in the sub-unit regime it is single-valued everywhere.
class OperatorFamily
{
public:
  explicit OperatorFamily(Direction dir);
  explicit OperatorFamily(Vector e);

  const Direction& direction() const noexcept { return dir_; }
  const Vector& e() const noexcept { return dir_.e(); }
  Regime regime() const noexcept { return dir_.regime(); }
  double e_norm() const noexcept { return dir_.norm(); }
  std::size_t dim() const noexcept { return dir_.dim(); }

  Vector retract(const Vector& x) const;
  Vector resolve(const Vector& x) const;

  /// The nonpositive root of (1-|e|^2) r^2 - 4<e,x> r - 4|x|^2 = 0, so that
  /// A_e x = x + r e. Sub-unit regime only; throws RegimeMismatch otherwise.
  double ray_coefficient(const Vector& x) const;

  SetValue evaluate(const Vector& x) const;

  /// (T_e y, y - T_e y); every point of the graph arises this way.
  GraphPoint minty_point(const Vector& y) const;

  /// Family for -e. Its resolvent is Id - T_e and its operator is the inverse of A_e.
  OperatorFamily dual() const;

private:
  /// T_{sign*e} y for sign = +-1.
  Vector resolve_oriented(const Vector& y, double sign) const;
  void check_dim(const Vector& x) const;

  Direction dir_;
};

/// Direction of the weighted average sum_i w_i e_i. Weights must be nonnegative
/// and sum to 1 within 1e-12.
Direction resolvent_average(std::span<const Direction> dirs, std::span<const double> weights);

/// sum_i w_i R_{e_i} x, evaluated term by term.
Vector weighted_retraction(std::span<const Direction> dirs, std::span<const double> weights,
                           const Vector& x);

} // namespace monolab
