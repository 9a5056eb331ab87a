#pragma once

#include "monolab/core.hpp"

#include <cstdint>
#include <random>

namespace monolab {

/// Seed for the pseudo-random stream of one sample. Derived only from
/// (seed, index, lane), so a sample's draws do not depend on how many other
/// samples were drawn before it or on which thread draws it.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t lane = 0);

class SampleStream
{
public:
  SampleStream(std::uint64_t seed, std::uint64_t index, std::uint64_t lane = 0)
    : engine_(stream_seed(seed, index, lane))
  {
  }

  /// Componentwise standard Gaussian vector.
  Vector gaussian(std::size_t dim);
  double uniform(double lo, double hi);

private:
  std::mt19937_64 engine_;
};

/// Gaussian direction normalized to length e_norm (uniform on that sphere).
Vector random_direction(std::size_t dim, double e_norm, std::uint64_t seed);

} // namespace monolab
