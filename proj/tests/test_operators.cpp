#include "monolab/operators.hpp"
#include "monolab/sampling.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace monolab;

namespace {

const std::vector<double> kNorms{0.0, 0.3, 1.0 / 3.0, 0.7, 1.0 - 1e-10, 1.0};

double residual(const OperatorFamily& fam, const Vector& x, double r)
{
  const double n = fam.e_norm();
  return (1.0 - n * n) * r * r - 4.0 * inner(fam.e(), x) * r - 4.0 * norm_sq(x);
}

bool contains_all(const SetValue& s, const Vector& w) { return s.contains(w, 1e-10); }

} // namespace

TEST_SUITE("operators")
{
  TEST_CASE("retraction and resolvent examples")
  {
    const OperatorFamily unit(Vector{1, 0});
    CHECK(unit.retract(Vector{3, 4}) == Vector{5, 0});
    CHECK(unit.resolve(Vector{3, 4}) == Vector{4, 2});
    CHECK(unit.retract(Vector{0, 0}) == Vector{0, 0});
    CHECK(unit.resolve(Vector{0, 0}) == Vector{0, 0});

    const OperatorFamily half(Vector{0.5, 0});
    CHECK(half.retract(Vector{0, 2}) == Vector{1, 0});
    CHECK(half.resolve(Vector{0, 2}) == Vector{0.5, 1.0});

    const OperatorFamily zero(Vector{0, 0});
    CHECK(zero.resolve(Vector{2, 2}) == Vector{1, 1});
    CHECK_THROWS_AS(unit.resolve(Vector{1, 2, 3}), DimensionMismatch);
  }

  TEST_CASE("ray coefficient examples")
  {
    const OperatorFamily half(Vector{0.5, 0});
    const double r1 = half.ray_coefficient(Vector{0, 1});
    CHECK(r1 == doctest::Approx(-4.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::abs(residual(half, Vector{0, 1}, r1)) <= 1e-13);

    const double r2 = half.ray_coefficient(Vector{1, 0});
    CHECK(r2 == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(residual(half, Vector{1, 0}, r2)) <= 1e-13);
    // the other root of 0.75 r^2 - 2 r - 4 is 4
    const auto [lo, hi] = oracle::textbook_roots(0.75, -2.0, -4.0);
    CHECK(hi == doctest::Approx(4.0));
    CHECK(lo == doctest::Approx(r2));

    CHECK(half.ray_coefficient(Vector{0, 0}) == 0.0);
    CHECK(OperatorFamily(Vector{0, 0}).ray_coefficient(Vector{3, 4}) == doctest::Approx(-10.0));
    CHECK_THROWS_AS(OperatorFamily(Vector{1, 0}).ray_coefficient(Vector{1, 1}), RegimeMismatch);
  }

  TEST_CASE("operator examples")
  {
    const OperatorFamily unit(Vector{1, 0});
    const SetValue a = unit.evaluate(Vector{1, 1});
    REQUIRE(a.kind() == SetValue::Kind::Singleton);
    CHECK(a.vector() == Vector{-1, 1});

    const SetValue r = unit.evaluate(Vector{0, 0});
    REQUIRE(r.kind() == SetValue::Kind::Ray);
    CHECK(r.vector() == Vector{-1, 0});

    CHECK(unit.evaluate(Vector{-1, 1}).is_empty());
    CHECK(unit.evaluate(Vector{0, 1}).is_empty());

    const OperatorFamily half(Vector{0.5, 0});
    const SetValue h = half.evaluate(Vector{0.5, 0});
    REQUIRE(h.kind() == SetValue::Kind::Singleton);
    CHECK(h.vector()[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(h.vector()[1] == 0.0);

    const SetValue z = OperatorFamily(Vector{0, 0}).evaluate(Vector{0, 0});
    CHECK(z.kind() == SetValue::Kind::Singleton);
    CHECK(half.evaluate(Vector{0, 0}).kind() == SetValue::Kind::Singleton);
  }

  TEST_CASE("Minty examples")
  {
    const OperatorFamily unit(Vector{1, 0});
    const GraphPoint p = unit.minty_point(Vector{0, 2});
    CHECK(p.x == Vector{1, 1});
    CHECK(p.u == Vector{-1, 1});
    CHECK(contains_all(unit.evaluate(p.x), p.u));

    const GraphPoint o = unit.minty_point(Vector{0, 0});
    CHECK(o.x == Vector{0, 0});
    CHECK(o.u == Vector{0, 0});

    const GraphPoint q = unit.minty_point(Vector{-3, 0});
    CHECK(q.x == Vector{0, 0});
    CHECK(q.u == Vector{-3, 0});
    CHECK(contains_all(unit.evaluate(q.x), q.u));
  }

  TEST_CASE("dual family")
  {
    CHECK(OperatorFamily(Vector{1, 0}).dual().e() == Vector{-1, 0});
    CHECK(OperatorFamily(Vector{0, 0}).dual().e() == Vector{0, 0});
  }

  TEST_CASE("resolvent average examples and errors")
  {
    const std::vector<Direction> opp{Direction(Vector{1, 0}), Direction(Vector{-1, 0})};
    const std::vector<double> halves{0.5, 0.5};
    const Direction bar = resolvent_average(opp, halves);
    CHECK(bar.is_zero());
    CHECK(weighted_retraction(opp, halves, Vector{3, -7}) == Vector{0, 0});

    const std::vector<Direction> one{Direction(Vector{0.2, 0.3})};
    const std::vector<double> w1{1.0};
    CHECK(resolvent_average(one, w1).e() == Vector{0.2, 0.3});

    const std::vector<Direction> axes{Direction(Vector{1, 0}), Direction(Vector{0, 1})};
    const Direction mid = resolvent_average(axes, halves);
    CHECK(mid.e() == Vector{0.5, 0.5});
    CHECK(mid.norm() == doctest::Approx(std::sqrt(2.0) / 2.0));
    const OperatorFamily mf(mid);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const Vector x(oracle::gaussian(rng, 2));
      // the term-by-term sum computed here from scratch
      const double nx = std::sqrt(oracle::dot(oracle::raw(x), oracle::raw(x)));
      const Vector lhs{0.5 * nx, 0.5 * nx};
      CHECK(distance(lhs, mf.retract(x)) <= 1e-12 * (1.0 + nx));
    }

    const std::vector<double> bad_sum{0.5, 0.6};
    CHECK_THROWS_AS(resolvent_average(axes, bad_sum), InvalidInput);
    const std::vector<double> negative{1.5, -0.5};
    CHECK_THROWS_AS(resolvent_average(axes, negative), InvalidInput);
    const std::vector<double> short_w{1.0};
    CHECK_THROWS_AS(resolvent_average(axes, short_w), InvalidInput);
    const std::vector<Direction> mixed{Direction(Vector{1, 0}), Direction(Vector{0, 0, 1})};
    CHECK_THROWS_AS(resolvent_average(mixed, halves), DimensionMismatch);
  }

  TEST_CASE("closed form agrees with the numerical resolvent inverse")
  {
    for (const double n : kNorms) {
      for (const std::size_t d : {1u, 2u, 3u, 8u}) {
        const OperatorFamily fam(random_direction(d, n, 1000 + d));
        const auto e = oracle::raw(fam.e());
        for (std::uint64_t i = 0; i < 300; ++i) {
          SampleStream s(17, i);
          const Vector x = s.gaussian(d) * s.uniform(0.1, 10.0);
          const SetValue got = fam.evaluate(x);
          const auto u = oracle::inverse_resolvent(e, oracle::raw(x));
          const double a = inner(fam.e(), x);
          const bool interior = fam.regime() == Regime::SubUnit || a > 1e-6 * norm(x);
          const bool outside = fam.regime() == Regime::Unit && a < -1e-6 * norm(x);
          if (interior) {
            REQUIRE(u.has_value());
            REQUIRE(got.kind() == SetValue::Kind::Singleton);
            const Vector want(*u);
            CHECK(distance(got.vector(), want) <= 1e-9 * (1.0 + norm(want)));
          }
          if (outside) {
            CHECK_FALSE(u.has_value());
            CHECK(got.is_empty());
          }
        }
      }
    }
  }

  TEST_CASE("ray coefficient solves its quadratic and is the nonpositive root")
  {
    for (const double n : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999}) {
      const OperatorFamily fam(random_direction(3, n, 77));
      for (std::uint64_t i = 0; i < 500; ++i) {
        SampleStream s(3, i);
        const Vector x = s.gaussian(3) * std::pow(10.0, s.uniform(-3, 3));
        const double r = fam.ray_coefficient(x);
        CHECK(r <= 0.0);
        const double a = inner(fam.e(), x);
        const double scale = (1 - n * n) * r * r + 4 * std::abs(a * r) + 4 * norm_sq(x);
        CHECK(std::abs(residual(fam, x, r)) <= 1e-12 * scale);
        const auto u = oracle::inverse_resolvent(oracle::raw(fam.e()), oracle::raw(x));
        REQUIRE(u.has_value());
        CHECK(distance(x + r * fam.e(), Vector(*u)) <= 1e-9 * (1.0 + norm(x)));
      }
    }
  }

  TEST_CASE("Minty roundtrip and unit-regime orthogonality")
  {
    for (const double n : kNorms) {
      for (const std::size_t d : {1u, 2u, 5u}) {
        const OperatorFamily fam(random_direction(d, n, 9 + d));
        for (std::uint64_t i = 0; i < 2000; ++i) {
          const Vector y = SampleStream(23, i).gaussian(d);
          const GraphPoint p = fam.minty_point(y);
          CHECK(contains_all(fam.evaluate(p.x), p.u));
          CHECK(distance(p.x + p.u, y) <= 1e-14 * (1.0 + norm(y)));
          if (fam.regime() == Regime::Unit) {
            CHECK(std::abs(inner(p.x, p.u)) <= 1e-10 * (1.0 + norm(p.x) * norm(p.u)));
          }
        }
      }
    }
  }

  TEST_CASE("resolvent identity and graph inversion under duality")
  {
    for (const double n : kNorms) {
      const OperatorFamily fam(random_direction(3, n, 4));
      const OperatorFamily dual = fam.dual();
      for (std::uint64_t i = 0; i < 1000; ++i) {
        const Vector x = SampleStream(31, i).gaussian(3);
        CHECK(norm(fam.resolve(x) + dual.resolve(x) - x) <= 1e-12 * (1.0 + norm(x)));
        const GraphPoint p = fam.minty_point(x);
        CHECK(contains_all(dual.evaluate(p.u), p.x));
      }
    }
  }

  TEST_CASE("tiny and huge inputs keep relative accuracy")
  {
    for (const double n : {0.0, 0.5, 1.0}) {
      const OperatorFamily fam(random_direction(3, n, 21));
      const Vector y = SampleStream(2, 2).gaussian(3);
      const Vector x = fam.resolve(y);
      const SetValue a = fam.evaluate(x);
      for (const int k : {-700, -400, 400, 700}) {
        const double s = std::ldexp(1.0, k);
        CHECK(distance(fam.resolve(s * y), s * x) <= 1e-15 * s * norm(x));
        CHECK(fam.evaluate(s * x).approx_equal(a.scaled(s), 1e-12));
      }
    }
  }

  TEST_CASE("positive homogeneity in the set sense")
  {
    for (const double n : {0.0, 0.5, 1.0}) {
      const OperatorFamily fam(random_direction(2, n, 8));
      for (std::uint64_t i = 0; i < 500; ++i) {
        SampleStream s(41, i);
        const Vector x = s.gaussian(2);
        const double lambda = std::pow(10.0, s.uniform(-3, 3));
        const SetValue lhs = fam.evaluate(lambda * x);
        const SetValue rhs = fam.evaluate(x).scaled(lambda);
        CHECK(lhs.approx_equal(rhs, 1e-10));
      }
      CHECK(fam.evaluate(Vector{0, 0}).approx_equal(fam.evaluate(Vector{0, 0}).scaled(3.0), 0.0));
    }
  }

  TEST_CASE("zeros of the operator")
  {
    const OperatorFamily unit(random_direction(3, 1.0, 12));
    for (const double rho : {0.0, 1e-6, 1.0, 42.0}) {
      CHECK(unit.evaluate(rho * unit.e()).contains(Vector::zeros(3), 1e-10));
    }
    const OperatorFamily sub(random_direction(3, 0.6, 12));
    CHECK(sub.evaluate(Vector::zeros(3)).approx_equal(SetValue::singleton(Vector::zeros(3)), 0.0));
    for (std::uint64_t i = 0; i < 500; ++i) {
      const Vector x = SampleStream(51, i).gaussian(3);
      CHECK_FALSE(unit.evaluate(x).contains(Vector::zeros(3), 1e-10));
      CHECK_FALSE(sub.evaluate(x).contains(Vector::zeros(3), 1e-10));
    }
  }

  TEST_CASE("firm nonexpansiveness, Lipschitz bound and fixed points")
  {
    for (const double n : kNorms) {
      const OperatorFamily fam(random_direction(4, n, 61));
      for (std::uint64_t i = 0; i < 1000; ++i) {
        SampleStream s(71, i);
        const Vector x = s.gaussian(4);
        const Vector y = s.gaussian(4);
        const Vector dt = fam.resolve(x) - fam.resolve(y);
        const double scale = 1.0 + norm(x - y) * norm(dt);
        CHECK(norm_sq(dt) <= inner(x - y, dt) + 1e-10 * scale);
        CHECK(distance(fam.retract(x), fam.retract(y)) <= fam.e_norm() * distance(x, y) * (1 + 1e-14) + 1e-15);
        const bool fixed = distance(fam.retract(x), x) <= 1e-12 * norm(x);
        CHECK_FALSE(fixed);
      }
      if (!fam.direction().is_zero()) {
        const Vector a = fam.direction().unit_direction();
        CHECK(distance(fam.retract(a), fam.retract(2.0 * a)) == doctest::Approx(fam.e_norm()).epsilon(1e-14));
      }
      CHECK(fam.retract(Vector::zeros(4)) == Vector::zeros(4));
    }
    const OperatorFamily unit(random_direction(4, 1.0, 62));
    for (const double t : {0.5, 1.0, 7.0}) {
      const Vector x = t * unit.e();
      CHECK(distance(unit.retract(x), x) <= 1e-15 * t);
      CHECK(distance(unit.resolve(x), x) <= 1e-15 * t);
    }
  }
}
