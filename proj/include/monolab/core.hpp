#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace monolab {

// Error hierarchy. The CLI maps each class onto a distinct exit code.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (non-finite coordinates, bad weights, ...).
class InvalidInput : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

/// An operation was requested in a norm regime (or dimension) where it is not defined.
class RegimeMismatch : public Error
{
public:
  using Error::Error;
};

/// Dense, immutable real vector of fixed dimension d >= 1 with finite coordinates.
class Vector
{
public:
  explicit Vector(std::vector<double> coords);
  Vector(std::initializer_list<double> coords);

  static Vector zeros(std::size_t dim);
  static Vector unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

private:
  std::vector<double> coords_;
};

void require_same_dim(const Vector& x, const Vector& y);

double inner(const Vector& x, const Vector& y);
/// Euclidean norm; safe against under- and overflow of the squares.
double norm(const Vector& x);
double norm_sq(const Vector& x);
double distance(const Vector& x, const Vector& y);

Vector operator+(const Vector& x, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);
Vector operator-(const Vector& x);
Vector operator*(double a, const Vector& x);
Vector operator*(const Vector& x, double a);
Vector operator/(const Vector& x, double a);

/// x * 2^exp, exact barring subnormals.
Vector ldexp(const Vector& x, int exp);
/// exp with |x| * 2^-exp in [0.5, 1); 0 for x = 0.
int norm_exponent(const Vector& x);

/// a*x + b*y
Vector combine(double a, const Vector& x, double b, const Vector& y);

/// Unit vector orthogonal to v (v nonzero, dim >= 2). Throws RegimeMismatch in dimension 1.
Vector orthonormal_to(const Vector& v);

/// Value of a set-valued operator at a point: empty, a single vector, or the
/// closed ray { t * direction : t >= 0 }.
class SetValue
{
public:
  enum class Kind { Empty, Singleton, Ray };

  static SetValue empty();
  static SetValue singleton(Vector v);
  /// Throws InvalidInput when direction is zero.
  static SetValue ray(Vector direction);

  Kind kind() const noexcept;
  bool is_empty() const noexcept { return kind() == Kind::Empty; }

  /// Singleton element or ray direction; throws std::logic_error for Empty.
  const Vector& vector() const;

  /// Membership within tolerance. Distances are measured relative to 1 + |w|.
  bool contains(const Vector& w, double tol) const;

  /// Set-level equality: same kind, and element / ray direction agree to tol.
  bool approx_equal(const SetValue& other, double tol) const;

  /// { a * s : s in this } for a > 0.
  SetValue scaled(double a) const;

private:
  struct EmptyTag
  {};
  struct RayTag
  {
    Vector direction;
  };
  using Storage = std::variant<EmptyTag, Vector, RayTag>;

  explicit SetValue(Storage s)
    : value_(std::move(s))
  {
  }

  Storage value_;
};

std::string to_string(SetValue::Kind kind);

/// Direction classification tolerance: |‖e‖ - 1| <= kUnitTol counts as unit norm.
inline constexpr double kUnitTol = 1e-9;

enum class Regime { Unit, SubUnit };

std::string to_string(Regime regime);

/// The vector e with ‖e‖ <= 1 together with its classified norm regime.
/// Unit-regime directions are renormalized to exact unit length at construction.
class Direction
{
public:
  explicit Direction(Vector e);

  const Vector& e() const noexcept { return e_; }
  Regime regime() const noexcept { return regime_; }
  double norm() const noexcept { return norm_; }
  std::size_t dim() const noexcept { return e_.dim(); }
  bool is_zero() const noexcept { return norm_ == 0.0; }

  /// e / ‖e‖; zero vector when e = 0.
  const Vector& unit_direction() const noexcept { return unit_; }

private:
  struct Classified
  {
    Vector e;
    Vector unit;
    Regime regime;
    double norm;
  };
  static Classified classify(const Vector& e);
  explicit Direction(Classified c);

  Vector e_;
  Vector unit_;
  Regime regime_;
  double norm_;
};

} // namespace monolab
