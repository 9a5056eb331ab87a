#pragma once

#include "monolab/operators.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace monolab {

enum class Property {
  Monotone,
  FirmlyNonexpansive,
  StrongMonotonicity,
  Cocoercivity,
  ParamonotoneViolation,
  ThreeStarViolation,
  DisplacementMap,
  Lipschitz,
  CyclicMonotonicity,
  SunnyViolation,
  NormalCone1D,
};

enum class Verdict { Pass, Fail, WitnessFound };

std::string to_string(Property p);
std::string to_string(Verdict v);

/// Outcome of a property check.
///
/// Constant-estimation checks fill `estimate` and `claimed` together;
/// violation searches fill `witness`. `details` carries named auxiliary
/// numbers (sharpness ratios, pairings, squared norms, ...).
struct Certificate
{
  Property property;
  Verdict verdict = Verdict::Fail;
  std::optional<double> estimate;
  std::optional<double> claimed;
  std::vector<Vector> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::map<std::string, double> details;
  std::string note;
};

/// (1 - |e|) / (1 + |e|): the sharp strong monotonicity and cocoercivity constant
/// of A_e for |e| < 1.
double sharp_constant(double e_norm);

/// Pairs sampled from the graph through the Minty map of Gaussian y's.
/// Pass iff <x-y, u-v> >= -1e-10 (1 + |x-y||u-v|) everywhere; estimate is the
/// smallest pairing seen.
Certificate check_monotone(const OperatorFamily& fam, std::size_t n_pairs, std::uint64_t seed);

/// Sub-unit regime only. Minimum of <x-y,u-v>/|x-y|^2 over sampled graph pairs,
/// compared against sharp_constant. details["sharpness_ratio"] is the ratio at
/// the pair (e, 0), which attains the constant.
Certificate estimate_strong_monotonicity(const OperatorFamily& fam, std::size_t n_pairs,
                                         std::uint64_t seed);

/// Sub-unit regime only. Minimum of <x-y,u-v>/|u-v|^2. Uses the same sample
/// streams as estimate_strong_monotonicity, so running it on fam.dual() sees
/// the mirrored graph pairs.
Certificate estimate_cocoercivity(const OperatorFamily& fam, std::size_t n_pairs,
                                  std::uint64_t seed);

Certificate check_firm_nonexpansiveness(const OperatorFamily& fam, std::size_t n_pairs,
                                        std::uint64_t seed);

/// Largest observed |R_e x - R_e y| / |x - y|, including the on-ray pair (e, 2e)
/// that attains |e|.
Certificate estimate_lipschitz_retraction(const OperatorFamily& fam, std::size_t n_pairs,
                                          std::uint64_t seed);

/// Builds x = e/|e| + sqrt(3) f and y = (x + R_e x)/2 on the segment [x, R_e x],
/// and reports R_e y != R_e x. Requires e != 0 and f a unit vector orthogonal to e.
Certificate sunny_witness(const OperatorFamily& fam, const Vector& f);
Certificate sunny_witness(const OperatorFamily& fam);

/// Unit regime, dim >= 2, alpha > 1. Uses x in dom A_e off the ray R_+ e and
/// y = alpha x: the pairing vanishes but A_e(y) is not in A_e(x).
Certificate paramonotone_witness_at(const OperatorFamily& fam, const Vector& x, double alpha);
Certificate paramonotone_witness(const OperatorFamily& fam, double alpha, std::uint64_t seed);

/// Spot check of paramonotonicity on random graph pairs plus scaled pairs
/// (y, lambda y). Verdict WitnessFound when a pair with vanishing pairing and
/// failed cross-membership turns up, Pass otherwise.
Certificate check_paramonotone(const OperatorFamily& fam, std::size_t n_pairs, std::uint64_t seed);

/// q(alpha) = <T x - T z, (Id-T) y - (Id-T) z> at x = 2(f-e), y = 0, z = 2 alpha f.
double three_star_pairing(const OperatorFamily& fam, const Vector& f, double alpha);

/// Unit regime only. Certifies q(alpha) = -alpha (2 - sqrt 2), which is
/// unbounded below in alpha.
Certificate three_star_witness(const OperatorFamily& fam, const Vector& f, double alpha);
Certificate three_star_witness(const OperatorFamily& fam, double alpha);

/// Sub-unit regime only. Pass iff |e| <= 1/3.
Certificate displacement_map_predicate(const OperatorFamily& fam);

/// Exploratory search for an n-cycle (x_i, u_i) in the graph with
/// sum_i <x_{i+1} - x_i, u_i> > 1e-8. A Pass verdict only means none was found.
Certificate cyclic_violation_search(const OperatorFamily& fam, std::size_t cycle_length,
                                    std::size_t n_restarts, std::uint64_t seed);

/// Dimension 1 with e = +-1: compares A_e with the normal cone of R_+ e on a
/// 101-point grid.
Certificate check_one_dim_normal_cone(const OperatorFamily& fam);

} // namespace monolab
