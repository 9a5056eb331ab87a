#include "monolab/certify.hpp"

#include "monolab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace monolab {

namespace {

constexpr double kSlack = 1e-10;
constexpr double kConstantSlack = 1e-9;

// Lanes keep the streams of unrelated certifiers apart under a shared seed.
constexpr std::uint64_t kPairLane = 1;
constexpr std::uint64_t kParamonotoneLane = 2;
constexpr std::uint64_t kCycleLane = 3;
constexpr std::uint64_t kPlainPairLane = 4;

struct GraphPair
{
  GraphPoint p;
  GraphPoint q;
};

GraphPair sample_graph_pair(const OperatorFamily& fam, std::uint64_t seed, std::size_t i)
{
  SampleStream rng(seed, i, kPairLane);
  Vector y1 = rng.gaussian(fam.dim());
  Vector y2 = rng.gaussian(fam.dim());
  return {fam.minty_point(y1), fam.minty_point(y2)};
}

void require_subunit(const OperatorFamily& fam, const char* what)
{
  if (fam.regime() != Regime::SubUnit) {
    throw RegimeMismatch(std::string(what) +
                         " holds only for |e| < 1; with |e| = 1 the operator is not "
                         "paramonotone, hence neither strongly monotone nor cocoercive");
  }
}

void require_unit_plane(const OperatorFamily& fam, const char* what)
{
  if (fam.regime() != Regime::Unit) {
    throw RegimeMismatch(std::string(what) +
                         " exists only for |e| = 1; for |e| < 1 the operator is "
                         "paramonotone and 3* monotone");
  }
  if (fam.dim() < 2) {
    throw RegimeMismatch(std::string(what) +
                         " needs dimension >= 2; in dimension 1 the operator is a normal cone");
  }
}

void require_orthonormal(const OperatorFamily& fam, const Vector& f)
{
  require_same_dim(fam.e(), f);
  if (std::abs(norm(f) - 1.0) > 1e-10) {
    throw InvalidInput("f must be a unit vector");
  }
  if (std::abs(inner(f, fam.e())) > 1e-10) {
    throw InvalidInput("f must be orthogonal to e");
  }
}

} // namespace

std::string to_string(Property p)
{
  switch (p) {
  case Property::Monotone:
    return "monotone";
  case Property::FirmlyNonexpansive:
    return "firmly_nonexpansive";
  case Property::StrongMonotonicity:
    return "strong_mono";
  case Property::Cocoercivity:
    return "cocoercive";
  case Property::ParamonotoneViolation:
    return "paramonotone_violation";
  case Property::ThreeStarViolation:
    return "three_star_violation";
  case Property::DisplacementMap:
    return "displacement_map";
  case Property::Lipschitz:
    return "lipschitz";
  case Property::CyclicMonotonicity:
    return "cyclic_n";
  case Property::SunnyViolation:
    return "sunny_violation";
  case Property::NormalCone1D:
    return "normal_cone_1d";
  }
  return "unknown";
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::Pass:
    return "pass";
  case Verdict::Fail:
    return "fail";
  case Verdict::WitnessFound:
    return "witness-found";
  }
  return "unknown";
}

double sharp_constant(double e_norm) { return (1.0 - e_norm) / (1.0 + e_norm); }

Certificate check_monotone(const OperatorFamily& fam, std::size_t n_pairs, std::uint64_t seed)
{
  Certificate cert{.property = Property::Monotone, .samples = n_pairs, .seed = seed, .tol = kSlack};
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto [p, q] = sample_graph_pair(fam, seed, i);
    const Vector dx = p.x - q.x;
    const Vector du = p.u - q.u;
    const double pairing = inner(dx, du);
    const double scale = 1.0 + norm(dx) * norm(du);
    worst = std::min(worst, pairing);
    if (pairing < -kSlack * scale) {
      ok = false;
      if (cert.witness.empty()) {
        cert.witness = {p.x, p.u, q.x, q.u};
      }
    }
  }
  cert.estimate = worst;
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

namespace {

enum class RatioKind { StrongMonotone, Cocoercive };

Certificate estimate_ratio(const OperatorFamily& fam, std::size_t n_pairs, std::uint64_t seed,
                           RatioKind kind)
{
  Certificate cert{.property = kind == RatioKind::StrongMonotone ? Property::StrongMonotonicity
                                                                 : Property::Cocoercivity,
                   .samples = n_pairs,
                   .seed = seed,
                   .tol = kConstantSlack};
  const double claimed = sharp_constant(fam.e_norm());
  auto ratio = [kind](const Vector& dx, const Vector& du) -> std::optional<double> {
    const double denom = kind == RatioKind::StrongMonotone ? norm_sq(dx) : norm_sq(du);
    if (denom == 0.0) {
      return std::nullopt;
    }
    return inner(dx, du) / denom;
  };

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto [p, q] = sample_graph_pair(fam, seed, i);
    if (const auto r = ratio(p.x - q.x, p.u - q.u); r && *r < best) {
      best = *r;
      cert.witness = {p.x, q.x};
    }
  }

  // Sharpness pair (e, 0); degenerate for e = 0.
  if (!fam.direction().is_zero()) {
    const Vector origin = Vector::zeros(fam.dim());
    const Vector ue = fam.evaluate(fam.e()).vector();
    if (const auto r = ratio(fam.e() - origin, ue - origin)) {
      cert.details["sharpness_ratio"] = *r;
    }
  }

  cert.estimate = best;
  cert.claimed = claimed;
  cert.verdict = best >= claimed - kConstantSlack ? Verdict::Pass : Verdict::Fail;
  return cert;
}

} // namespace

Certificate estimate_strong_monotonicity(const OperatorFamily& fam, std::size_t n_pairs,
                                         std::uint64_t seed)
{
  require_subunit(fam, "strong monotonicity");
  return estimate_ratio(fam, n_pairs, seed, RatioKind::StrongMonotone);
}

Certificate estimate_cocoercivity(const OperatorFamily& fam, std::size_t n_pairs,
                                  std::uint64_t seed)
{
  require_subunit(fam, "cocoercivity");
  return estimate_ratio(fam, n_pairs, seed, RatioKind::Cocoercive);
}

Certificate check_firm_nonexpansiveness(const OperatorFamily& fam, std::size_t n_pairs,
                                        std::uint64_t seed)
{
  Certificate cert{
    .property = Property::FirmlyNonexpansive, .samples = n_pairs, .seed = seed, .tol = kSlack};
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    SampleStream rng(seed, i, kPlainPairLane);
    const Vector x = rng.gaussian(fam.dim());
    const Vector y = rng.gaussian(fam.dim());
    const Vector dx = x - y;
    const Vector dt = fam.resolve(x) - fam.resolve(y);
    const double slack = inner(dx, dt) - norm_sq(dt);
    worst = std::min(worst, slack);
    if (slack < -kSlack * (1.0 + norm(dx) * norm(dt))) {
      ok = false;
      if (cert.witness.empty()) {
        cert.witness = {x, y};
      }
    }
  }
  cert.estimate = worst;
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate estimate_lipschitz_retraction(const OperatorFamily& fam, std::size_t n_pairs,
                                          std::uint64_t seed)
{
  constexpr double tol = 1e-12;
  Certificate cert{.property = Property::Lipschitz, .samples = n_pairs, .seed = seed, .tol = tol};
  const double claimed = fam.e_norm();
  double best = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    SampleStream rng(seed, i, kPlainPairLane);
    const Vector x = rng.gaussian(fam.dim());
    const Vector y = rng.gaussian(fam.dim());
    const double d = distance(x, y);
    if (d > 0.0) {
      best = std::max(best, distance(fam.retract(x), fam.retract(y)) / d);
    }
  }

  bool attained = true;
  if (!fam.direction().is_zero()) {
    const Vector& e = fam.e();
    const Vector e2 = 2.0 * e;
    const double on_ray = distance(fam.retract(e), fam.retract(e2)) / distance(e, e2);
    cert.details["on_ray_ratio"] = on_ray;
    cert.witness = {e, e2};
    best = std::max(best, on_ray);
    attained = std::abs(on_ray - claimed) <= tol;
  }

  cert.estimate = best;
  cert.claimed = claimed;
  cert.verdict = (best <= claimed + tol && attained) ? Verdict::Pass : Verdict::Fail;
  if (fam.regime() == Regime::Unit) {
    cert.note = "not a Banach contraction: optimal Lipschitz constant is 1 (nonexpansive retraction "
                "onto R_+ e)";
  } else if (fam.direction().is_zero()) {
    cert.note = "constant map: Lipschitz constant 0";
  } else {
    cert.note = "Banach contraction with optimal Lipschitz constant |e|; Fix R_e = {0}";
  }
  return cert;
}

Certificate sunny_witness(const OperatorFamily& fam, const Vector& f)
{
  if (fam.direction().is_zero()) {
    throw RegimeMismatch("sunny witness requires e != 0");
  }
  if (fam.dim() < 2) {
    throw RegimeMismatch("sunny witness needs dimension >= 2: no unit vector orthogonal to e");
  }
  require_orthonormal(fam, f);

  const double n = fam.e_norm();
  const Vector x = combine(1.0 / n, fam.e(), std::sqrt(3.0), f);
  const Vector rx = fam.retract(x);
  const Vector y = 0.5 * (x + rx);
  const Vector ry = fam.retract(y);

  Certificate cert{.property = Property::SunnyViolation, .samples = 1, .tol = 0.0};
  cert.details["norm_x_sq"] = norm_sq(x);
  cert.details["norm_y_sq"] = norm_sq(y);
  cert.details["expected_norm_y_sq"] = 1.0 + n + n * n;
  cert.details["retraction_gap"] = distance(rx, ry);
  cert.witness = {x, y};
  cert.verdict = norm(y) < norm(x) ? Verdict::WitnessFound : Verdict::Fail;
  return cert;
}

Certificate sunny_witness(const OperatorFamily& fam)
{
  if (fam.dim() < 2) {
    throw RegimeMismatch("sunny witness needs dimension >= 2: no unit vector orthogonal to e");
  }
  if (fam.direction().is_zero()) {
    throw RegimeMismatch("sunny witness requires e != 0");
  }
  return sunny_witness(fam, orthonormal_to(fam.e()));
}

Certificate paramonotone_witness_at(const OperatorFamily& fam, const Vector& x, double alpha)
{
  require_unit_plane(fam, "a paramonotonicity counterexample");
  require_same_dim(fam.e(), x);
  if (!(alpha > 1.0)) {
    throw InvalidInput("alpha must exceed 1");
  }
  const SetValue ax = fam.evaluate(x);
  if (ax.kind() != SetValue::Kind::Singleton) {
    throw InvalidInput("x must satisfy <e,x> > 0");
  }
  const Vector off_ray = x - inner(x, fam.e()) * fam.e();
  if (norm(off_ray) <= 1e-8 * norm(x)) {
    throw InvalidInput("x must lie off the ray R_+ e");
  }

  const Vector y = alpha * x;
  const Vector ay = fam.evaluate(y).vector();
  const Vector dx = x - y;
  const Vector du = ax.vector() - ay;
  const double pairing = inner(dx, du);
  const bool zero_pairing = std::abs(pairing) <= kSlack * (1.0 + norm(dx) * norm(du));
  const bool outside_graph = !ax.contains(ay, kSlack);

  Certificate cert{.property = Property::ParamonotoneViolation, .samples = 1, .tol = kSlack};
  cert.details["pairing"] = pairing;
  cert.details["gap"] = norm(du);
  cert.details["alpha"] = alpha;
  cert.witness = {x, y};
  cert.verdict = (zero_pairing && outside_graph) ? Verdict::WitnessFound : Verdict::Fail;
  return cert;
}

Certificate paramonotone_witness(const OperatorFamily& fam, double alpha, std::uint64_t seed)
{
  require_unit_plane(fam, "a paramonotonicity counterexample");
  const Vector& e = fam.e();
  for (std::uint64_t i = 0;; ++i) {
    SampleStream rng(seed, i, kParamonotoneLane);
    const Vector g = rng.gaussian(fam.dim());
    const double s = inner(g, e);
    const Vector perp = g - s * e;
    if (norm(perp) < 1e-3) {
      continue;
    }
    Certificate cert = paramonotone_witness_at(fam, combine(std::abs(s) + 0.5, e, 1.0, perp), alpha);
    cert.seed = seed;
    return cert;
  }
}

Certificate check_paramonotone(const OperatorFamily& fam, std::size_t n_pairs, std::uint64_t seed)
{
  Certificate cert{
    .property = Property::ParamonotoneViolation, .samples = 2 * n_pairs, .seed = seed, .tol = kSlack};
  double margin = std::numeric_limits<double>::infinity();
  bool violated = false;

  auto examine = [&](const GraphPoint& p, const GraphPoint& q) {
    const Vector dx = p.x - q.x;
    const Vector du = p.u - q.u;
    const double pairing = inner(dx, du);
    if (const double d = norm_sq(du); d > 0.0) {
      margin = std::min(margin, pairing / d);
    }
    if (std::abs(pairing) > kSlack * (1.0 + norm(dx) * norm(du))) {
      return;
    }
    // Vanishing pairing: paramonotonicity demands the crossed pairs in the graph.
    if (!fam.evaluate(p.x).contains(q.u, kSlack) || !fam.evaluate(q.x).contains(p.u, kSlack)) {
      if (!violated) {
        cert.witness = {p.x, p.u, q.x, q.u};
      }
      violated = true;
    }
  };

  for (std::size_t i = 0; i < n_pairs && !violated; ++i) {
    SampleStream rng(seed, i, kParamonotoneLane);
    const Vector y1 = rng.gaussian(fam.dim());
    const Vector y2 = rng.gaussian(fam.dim());
    const double lambda = rng.uniform(1.5, 4.0);
    const GraphPoint p = fam.minty_point(y1);
    examine(p, fam.minty_point(y2));
    examine(p, fam.minty_point(lambda * y1));
  }

  cert.estimate = margin;
  cert.verdict = violated ? Verdict::WitnessFound : Verdict::Pass;
  return cert;
}

double three_star_pairing(const OperatorFamily& fam, const Vector& f, double alpha)
{
  const Vector& e = fam.e();
  const Vector x = 2.0 * (f - e);
  const Vector y = Vector::zeros(fam.dim());
  const Vector z = (2.0 * alpha) * f;
  const Vector tz = fam.resolve(z);
  const Vector reflected_y = y - fam.resolve(y);
  const Vector reflected_z = z - tz;
  return inner(fam.resolve(x) - tz, reflected_y - reflected_z);
}

Certificate three_star_witness(const OperatorFamily& fam, const Vector& f, double alpha)
{
  require_unit_plane(fam, "a 3* monotonicity counterexample");
  require_orthonormal(fam, f);
  if (!(alpha > 0.0)) {
    throw InvalidInput("alpha must be positive");
  }
  const double q = three_star_pairing(fam, f, alpha);
  const double expected = -alpha * (2.0 - std::numbers::sqrt2);
  const double tol = kSlack * (1.0 + alpha);

  Certificate cert{.property = Property::ThreeStarViolation, .samples = 1, .tol = tol};
  cert.estimate = q;
  cert.claimed = expected;
  cert.details["alpha"] = alpha;
  cert.details["q_over_alpha"] = q / alpha;
  cert.details["q_at_10_alpha"] = three_star_pairing(fam, f, 10.0 * alpha);
  cert.witness = {2.0 * (f - fam.e()), Vector::zeros(fam.dim()), (2.0 * alpha) * f};
  cert.verdict = (std::abs(q - expected) <= tol && q < 0.0) ? Verdict::WitnessFound : Verdict::Fail;
  cert.note = "q(alpha) decreases linearly without bound, so inf over z is -infinity";
  return cert;
}

Certificate three_star_witness(const OperatorFamily& fam, double alpha)
{
  require_unit_plane(fam, "a 3* monotonicity counterexample");
  return three_star_witness(fam, orthonormal_to(fam.e()), alpha);
}

Certificate displacement_map_predicate(const OperatorFamily& fam)
{
  require_subunit(fam, "the displacement-map characterization");
  constexpr double tol = 1e-12;
  const double n = fam.e_norm();
  const double c = sharp_constant(n);
  Certificate cert{.property = Property::DisplacementMap, .samples = 0, .tol = tol};
  cert.claimed = c;
  cert.estimate = n;
  cert.details["norm_threshold"] = 1.0 / 3.0;
  cert.details["cocoercivity_at_least_half"] = c >= 0.5 - tol ? 1.0 : 0.0;
  cert.verdict = n <= 1.0 / 3.0 + tol ? Verdict::Pass : Verdict::Fail;
  cert.note = "A_e = Id - N with N nonexpansive iff A_e is 1/2-cocoercive iff |e| <= 1/3";
  return cert;
}

namespace {

// sum_i <x_{i+1} - x_i, u_i> normalized by the mean squared size of the
// generating y's; positively 2-homogeneous numerator, so the ratio is scale free.
double cycle_gain(const OperatorFamily& fam, const std::vector<Vector>& ys,
                  std::vector<GraphPoint>* points = nullptr)
{
  std::vector<GraphPoint> pts;
  pts.reserve(ys.size());
  double size = 0.0;
  for (const auto& y : ys) {
    pts.push_back(fam.minty_point(y));
    size += norm_sq(y);
  }
  if (size == 0.0) {
    return 0.0;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& next = pts[(i + 1) % pts.size()];
    s += inner(next.x - pts[i].x, pts[i].u);
  }
  if (points != nullptr) {
    *points = std::move(pts);
  }
  return s * static_cast<double>(ys.size()) / size;
}

} // namespace

Certificate cyclic_violation_search(const OperatorFamily& fam, std::size_t cycle_length,
                                    std::size_t n_restarts, std::uint64_t seed)
{
  if (cycle_length < 3) {
    throw InvalidInput("cycle length must be >= 3 (2-cycles are plain monotonicity)");
  }
  constexpr double kViolation = 1e-8;
  constexpr int kSweeps = 40;
  const std::size_t d = fam.dim();

  Certificate cert{.property = Property::CyclicMonotonicity,
                   .samples = n_restarts,
                   .seed = seed,
                   .tol = kViolation};
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Vector> best_ys;

  for (std::size_t r = 0; r < n_restarts; ++r) {
    SampleStream rng(seed, r, kCycleLane);
    std::vector<Vector> ys;
    for (std::size_t i = 0; i < cycle_length; ++i) {
      ys.push_back(rng.gaussian(d));
    }
    double gain = cycle_gain(fam, ys);

    // Coordinate hill climbing on the generating points.
    double step = 0.5;
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < cycle_length; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          for (double sign : {1.0, -1.0}) {
            std::vector<Vector> trial = ys;
            trial[i] = trial[i] + (sign * step) * Vector::unit(d, j);
            const double g = cycle_gain(fam, trial);
            if (g > gain) {
              gain = g;
              ys = std::move(trial);
              improved = true;
            }
          }
        }
      }
      if (!improved) {
        step *= 0.5;
      }
    }

    if (gain > best) {
      best = gain;
      best_ys = ys;
    }
  }

  std::vector<GraphPoint> pts;
  if (!best_ys.empty()) {
    cycle_gain(fam, best_ys, &pts);
  }
  for (const auto& p : pts) {
    cert.witness.push_back(p.x);
  }
  for (const auto& p : pts) {
    cert.witness.push_back(p.u);
  }
  cert.estimate = best;
  cert.details["cycle_length"] = static_cast<double>(cycle_length);
  cert.verdict = best > kViolation ? Verdict::WitnessFound : Verdict::Pass;
  cert.note = cert.verdict == Verdict::WitnessFound
                ? "cycle with positive sum found: not n-cyclically monotone"
                : "no violating cycle found; this is not a proof of n-cyclic monotonicity";
  return cert;
}

Certificate check_one_dim_normal_cone(const OperatorFamily& fam)
{
  if (fam.dim() != 1 || fam.regime() != Regime::Unit) {
    throw RegimeMismatch("the normal-cone identity is stated for dimension 1 with e = +-1");
  }
  constexpr double tol = 1e-12;
  constexpr int kPoints = 101;
  const double e = fam.e()[0];
  Certificate cert{.property = Property::NormalCone1D, .samples = kPoints, .tol = tol};

  std::size_t mismatches = 0;
  for (int k = 0; k < kPoints; ++k) {
    const double t = 2.0 * static_cast<double>(k - kPoints / 2) / (kPoints / 2);
    const Vector x{t};
    const SetValue got = fam.evaluate(x);
    bool ok;
    if (t * e > 0.0) {
      // Interior of the ray: the normal cone is {0}.
      ok = got.kind() == SetValue::Kind::Singleton &&
           std::abs(got.vector()[0]) <= tol * (1.0 + std::abs(t));
    } else if (t == 0.0) {
      ok = got.kind() == SetValue::Kind::Ray && got.vector()[0] * e < 0.0;
    } else {
      ok = got.is_empty();
    }
    if (!ok) {
      ++mismatches;
      cert.witness.push_back(x);
    }
  }
  cert.details["mismatches"] = static_cast<double>(mismatches);
  cert.verdict = mismatches == 0 ? Verdict::Pass : Verdict::Fail;
  return cert;
}

} // namespace monolab
