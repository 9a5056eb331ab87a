#include "monolab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace monolab {

namespace {

void require_finite(std::span<const double> coords)
{
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      std::ostringstream msg;
      msg << "non-finite coordinate at index " << i;
      throw InvalidInput(msg.str());
    }
  }
}

} // namespace

Vector::Vector(std::vector<double> coords)
  : coords_(std::move(coords))
{
  if (coords_.empty()) {
    throw InvalidInput("vectors must have dimension >= 1");
  }
  require_finite(coords_);
}

Vector::Vector(std::initializer_list<double> coords)
  : Vector(std::vector<double>(coords))
{
}

Vector Vector::zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

Vector Vector::unit(std::size_t dim, std::size_t axis)
{
  if (axis >= dim) {
    throw InvalidInput("axis out of range");
  }
  std::vector<double> c(dim, 0.0);
  c[axis] = 1.0;
  return Vector(std::move(c));
}

bool Vector::is_zero() const noexcept
{
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

void require_same_dim(const Vector& x, const Vector& y)
{
  if (x.dim() != y.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << x.dim() << " vs " << y.dim();
    throw DimensionMismatch(msg.str());
  }
}

double inner(const Vector& x, const Vector& y)
{
  require_same_dim(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    s += x[i] * y[i];
  }
  return s;
}

double norm_sq(const Vector& x)
{
  double s = 0.0;
  for (double c : x.coords()) {
    s += c * c;
  }
  return s;
}

double norm(const Vector& x)
{
  const double s = norm_sq(x);
  if (s > 1e-280 && s < 1e280) {
    return std::sqrt(s);
  }
  // Squares under- or overflow: rescale by a power of two (exact) first.
  double m = 0.0;
  for (double c : x.coords()) {
    m = std::max(m, std::abs(c));
  }
  if (m == 0.0) {
    return 0.0;
  }
  int exp = 0;
  std::frexp(m, &exp);
  double t = 0.0;
  for (double c : x.coords()) {
    const double r = std::ldexp(c, -exp);
    t += r * r;
  }
  return std::ldexp(std::sqrt(t), exp);
}

Vector ldexp(const Vector& x, int exp)
{
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = std::ldexp(x[i], exp);
  }
  return Vector(std::move(out));
}

int norm_exponent(const Vector& x)
{
  int exp = 0;
  std::frexp(norm(x), &exp);
  return exp;
}

double distance(const Vector& x, const Vector& y) { return norm(x - y); }

Vector combine(double a, const Vector& x, double b, const Vector& y)
{
  require_same_dim(x, y);
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = a * x[i] + b * y[i];
  }
  return Vector(std::move(out));
}

Vector operator+(const Vector& x, const Vector& y)
{
  require_same_dim(x, y);
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = x[i] + y[i];
  }
  return Vector(std::move(out));
}

Vector operator-(const Vector& x, const Vector& y)
{
  require_same_dim(x, y);
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = x[i] - y[i];
  }
  return Vector(std::move(out));
}

Vector operator-(const Vector& x)
{
  // 0 - c rather than -1 * c: no negative zeros in serialized output.
  std::vector<double> out(x.coords().begin(), x.coords().end());
  for (double& c : out) {
    c = 0.0 - c;
  }
  return Vector(std::move(out));
}

Vector operator*(double a, const Vector& x)
{
  std::vector<double> out(x.coords().begin(), x.coords().end());
  for (double& c : out) {
    c *= a;
  }
  return Vector(std::move(out));
}

Vector operator*(const Vector& x, double a) { return a * x; }

Vector operator/(const Vector& x, double a)
{
  std::vector<double> out(x.coords().begin(), x.coords().end());
  for (double& c : out) {
    c /= a;
  }
  return Vector(std::move(out));
}

Vector orthonormal_to(const Vector& v)
{
  if (v.dim() < 2) {
    throw RegimeMismatch("no unit vector orthogonal to e exists in dimension 1");
  }
  const double n = norm(v);
  if (n == 0.0) {
    throw InvalidInput("orthonormal_to: zero vector");
  }
  const Vector vhat = v / n;
  // The axis least aligned with v gives the best-conditioned Gram-Schmidt step.
  std::size_t axis = 0;
  for (std::size_t i = 1; i < v.dim(); ++i) {
    if (std::abs(vhat[i]) < std::abs(vhat[axis])) {
      axis = i;
    }
  }
  const Vector ax = Vector::unit(v.dim(), axis);
  Vector f = ax - inner(ax, vhat) * vhat;
  f = f - inner(f, vhat) * vhat;
  return f / norm(f);
}

// ---------------------------------------------------------------------------
// SetValue

SetValue SetValue::empty() { return SetValue(EmptyTag{}); }

SetValue SetValue::singleton(Vector v) { return SetValue(std::move(v)); }

SetValue SetValue::ray(Vector direction)
{
  if (direction.is_zero()) {
    throw InvalidInput("ray direction must be nonzero");
  }
  return SetValue(RayTag{std::move(direction)});
}

SetValue::Kind SetValue::kind() const noexcept
{
  switch (value_.index()) {
  case 0:
    return Kind::Empty;
  case 1:
    return Kind::Singleton;
  default:
    return Kind::Ray;
  }
}

const Vector& SetValue::vector() const
{
  if (const auto* v = std::get_if<Vector>(&value_)) {
    return *v;
  }
  if (const auto* r = std::get_if<RayTag>(&value_)) {
    return r->direction;
  }
  throw std::logic_error("empty set has no representative vector");
}

bool SetValue::contains(const Vector& w, double tol) const
{
  if (const auto* v = std::get_if<Vector>(&value_)) {
    require_same_dim(*v, w);
    return distance(*v, w) <= tol * (1.0 + std::max(norm(w), norm(*v)));
  }
  if (const auto* r = std::get_if<RayTag>(&value_)) {
    require_same_dim(r->direction, w);
    const Vector dhat = r->direction / norm(r->direction);
    const double scale = 1.0 + norm(w);
    const double t = inner(w, dhat);
    if (t < -tol * scale) {
      return false;
    }
    return norm(w - t * dhat) <= tol * scale;
  }
  return false;
}

bool SetValue::approx_equal(const SetValue& other, double tol) const
{
  if (kind() != other.kind()) {
    return false;
  }
  switch (kind()) {
  case Kind::Empty:
    return true;
  case Kind::Singleton:
    return other.contains(vector(), tol);
  case Kind::Ray: {
    const Vector a = vector() / norm(vector());
    const Vector b = other.vector() / norm(other.vector());
    return distance(a, b) <= tol;
  }
  }
  return false;
}

SetValue SetValue::scaled(double a) const
{
  if (!(a > 0.0)) {
    throw InvalidInput("SetValue::scaled requires a positive factor");
  }
  switch (kind()) {
  case Kind::Singleton:
    return singleton(a * vector());
  case Kind::Ray:
  case Kind::Empty:
    return *this;
  }
  return *this;
}

std::string to_string(SetValue::Kind kind)
{
  switch (kind) {
  case SetValue::Kind::Empty:
    return "empty";
  case SetValue::Kind::Singleton:
    return "singleton";
  case SetValue::Kind::Ray:
    return "ray";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Direction

Direction::Classified Direction::classify(const Vector& e)
{
  const double measured = monolab::norm(e);
  if (measured > 1.0 + kUnitTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "direction norm " << measured << " exceeds 1";
    throw InvalidInput(msg.str());
  }
  if (std::abs(measured - 1.0) <= kUnitTol) {
    const Vector unit = e / measured;
    return {unit, unit, Regime::Unit, 1.0};
  }
  if (measured == 0.0) {
    return {e, e, Regime::SubUnit, 0.0};
  }
  return {e, e / measured, Regime::SubUnit, measured};
}

Direction::Direction(Vector e)
  : Direction(classify(e))
{
}

Direction::Direction(Classified c)
  : e_(std::move(c.e))
  , unit_(std::move(c.unit))
  , regime_(c.regime)
  , norm_(c.norm)
{
}

std::string to_string(Regime regime) { return regime == Regime::Unit ? "unit" : "subunit"; }

} // namespace monolab
