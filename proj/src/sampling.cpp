#include "monolab/sampling.hpp"

#include <cmath>

namespace monolab {

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t lane)
{
  return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (lane * 0xd1b54a32d192ed03ULL));
}

Vector SampleStream::gaussian(std::size_t dim)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(dim);
  for (double& v : c) {
    v = normal(engine_);
  }
  return Vector(std::move(c));
}

double SampleStream::uniform(double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Vector random_direction(std::size_t dim, double e_norm, std::uint64_t seed)
{
  if (dim == 0) {
    throw InvalidInput("dimension must be >= 1");
  }
  if (!(e_norm >= 0.0 && e_norm <= 1.0)) {
    throw InvalidInput("direction norm must lie in [0, 1]");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    SampleStream rng(seed, attempt, 0xd1);
    const Vector g = rng.gaussian(dim);
    const double n = norm(g);
    if (n > 1e-8) {
      return (e_norm / n) * g;
    }
  }
}

} // namespace monolab
