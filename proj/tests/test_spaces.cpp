// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hardy/spaces.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

SupOptions numeric() {
  SupOptions o;
  o.force_numeric = true;
  return o;
}

}  // namespace

TEST_CASE("exponent configuration derives p, lambda and balance") {
  const ExponentConfig c = ExponentConfig::make(1, {4.0, 4.0});
  CHECK(c.p == doctest::Approx(2.0));
  CHECK(c.lambda == doctest::Approx(-0.5));
  CHECK(c.balanced);
  const ExponentConfig d = ExponentConfig::make(1, {4.0, 2.0}, {-0.125, -0.25});
  CHECK(d.p == doctest::Approx(4.0 / 3.0));
  CHECK(d.lambda == doctest::Approx(-0.375));
  CHECK(d.balanced);
  const ExponentConfig e = ExponentConfig::make(1, {4.0, 4.0}, {-0.125, -0.2});
  CHECK_FALSE(e.balanced);
  const ExponentConfig q = ExponentConfig::make(2, {6.0, 6.0}, {-0.1, -0.1}, {6.0, 6.0});
  CHECK(q.p == doctest::Approx(1.5));
  CHECK(q.commutator());
  q.require_strict_regime();
  CHECK_THROWS_AS(ExponentConfig::make(1, {4.0}, {-0.25}).require_strict_regime(), std::invalid_argument);
  ExponentConfig::make(1, {4.0}, {-0.25}).require_hardy_regime();
  CHECK_THROWS_AS(ExponentConfig::make(1, {4.0}, {-0.3}).require_hardy_regime(), std::invalid_argument);
  CHECK_THROWS_AS(ExponentConfig::make(1, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentConfig::make(0, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentConfig::make(1, {2.0}, {-0.1, -0.1}), std::invalid_argument);
  const ExponentConfig inf = ExponentConfig::make(1, {INFINITY});
  CHECK(std::isinf(inf.p));
  CHECK_THROWS_AS(inf.require_finite(), std::invalid_argument);
}

TEST_CASE("unit sphere volume") {
  CHECK(unit_sphere_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_sphere_volume(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_volume(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_volume(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("descriptors agree with evaluation") {
  for (const RadialFunction& f : {cutoff_power(-0.3, 0.5), cutoff_power(1.5, 0.0, 2.0, -3.0), power_function(-0.25)}) {
    const PowerDescriptor d = f.descriptor().value();
    for (double r : {0.1, 0.5, 0.50001, 0.9, 1.7, 3.0, 40.0}) {
      const double expect = (r > d.lower && r < d.upper) ? d.coef * std::pow(r, d.exponent) : 0.0;
      CHECK(std::abs(f(r) - expect) <= 1e-14 * std::abs(expect));
    }
  }
}

TEST_CASE("Lebesgue norm examples") {
  SUBCASE("extremal family member") {
    const double eps = 0.01;
    const RadialFunction f = cutoff_power(-0.25 - eps, std::sqrt(2.0) / 2.0);
    const double oracle = 50.0 * std::pow(std::sqrt(2.0) / 2.0, -4.0 * eps);
    const NormResult r = lebesgue_norm(f, 4.0, 1);
    CHECK(r.exact);
    CHECK(std::pow(r.value, 4.0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::pow(r.value, 4.0) == doctest::Approx(50.0 * std::pow(2.0, 0.02)).epsilon(1e-12));
    // Same function without its descriptor goes through half-line quadrature.
    const RadialFunction g =
        custom_function([f](double x) { return f(x); }, "copy")
            .with_support(std::sqrt(2.0) / 2.0, INFINITY)
            .with_breakpoints({std::sqrt(2.0) / 2.0})
            .with_infinity_behavior(-0.25 - eps);
    const NormResult q = lebesgue_norm(g, 4.0, 1);
    CHECK_FALSE(q.exact);
    CHECK(std::pow(q.value, 4.0) == doctest::Approx(oracle).epsilon(1e-8));
  }
  SUBCASE("zero") { CHECK(lebesgue_norm(constant_function(0.0), 2.0, 3).value == 0.0); }
  SUBCASE("cut-off inverse square") {
    CHECK(lebesgue_norm(cutoff_power(-2.0, 1.0), 1.0, 1).value == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("divergent") {
    CHECK_FALSE(lebesgue_norm(power_function(-0.5), 2.0, 1).finite);
    CHECK_FALSE(lebesgue_norm(cutoff_power(-0.5, 1.0), 2.0, 1).finite);
    CHECK_FALSE(lebesgue_norm(oscillatory_cutoff(1.0, 2.0), 2.0, 1).finite);
    CHECK(std::isinf(lebesgue_norm(power_function(-0.5), 2.0, 1).value));
  }
  SUBCASE("gaussian through quadrature") {
    // int_{R^2} e^{-|x|^2} = pi.
    const RadialFunction g = custom_function([](double r) { return std::exp(-r * r); }, "gauss");
    CHECK(lebesgue_norm(g, 1.0, 2).value == doctest::Approx(kPi).epsilon(1e-9));
  }
}

TEST_CASE("norms are absolutely homogeneous") {
  const RadialFunction f = cutoff_power(-0.75, 1.0, 5.0);
  const RadialFunction b = oscillatory_cutoff(2.0, 1.0).truncated_above(10.0);
  for (double c : {-2.0, 0.5}) {
    CHECK(lebesgue_norm(f.scaled(c), 2.0, 1).value == doctest::Approx(std::abs(c) * lebesgue_norm(f, 2.0, 1).value));
    CHECK(central_morrey_norm(f.scaled(c), 2.0, -0.25, 1, numeric()).value ==
          doctest::Approx(std::abs(c) * central_morrey_norm(f, 2.0, -0.25, 1, numeric()).value).epsilon(1e-9));
    CHECK(cmo_norm(log_function().scaled(c), 2.0, 1).value == doctest::Approx(std::abs(c)).epsilon(1e-10));
    CHECK(cmo_norm(b.scaled(c), 2.0, 1).value ==
          doctest::Approx(std::abs(c) * cmo_norm(b, 2.0, 1).value).epsilon(1e-9));
  }
}

TEST_CASE("Morrey norm of a pure power") {
  SUBCASE("closed form example") {
    // At R = 1: |B| = 2, int_{-1}^{1} |x|^{-1/2} dx = 4, bracket = (4 / 2^{1/2})^{1/2} = 2^{3/4}.
    const NormResult r = central_morrey_norm(power_function(-0.25), 2.0, -0.25, 1);
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
  }
  SUBCASE("grid supremum agrees with the closed form") {
    for (int n : {1, 2, 3}) {
      for (double lambda : {-0.4, -0.25, -0.1}) {
        const double p = 2.0;
        const RadialFunction f = power_function(n * lambda);
        const double exact = std::pow(unit_sphere_volume(n) / n, -lambda) * std::pow(1.0 + lambda * p, -1.0 / p);
        const NormResult r = central_morrey_norm(f, p, lambda, n, numeric());
        CHECK(r.converged);
        CHECK(r.lower_bound);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
      }
    }
  }
  SUBCASE("bracket does not depend on the radius") {
    const RadialFunction f = power_function(-0.25);
    const double ref = morrey_bracket(f, 2.0, -0.25, 1, 1.0, {1e-15, 1e-13}, true).value;
    for (double R : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
      CHECK(std::abs(morrey_bracket(f, 2.0, -0.25, 1, R, {1e-15, 1e-13}, true).value - ref) <= 1e-9 * ref);
    }
  }
  SUBCASE("zero and mismatched powers") {
    CHECK(central_morrey_norm(constant_function(0.0), 2.0, -0.25, 1).value == 0.0);
    CHECK_FALSE(central_morrey_norm(power_function(-0.3), 2.0, -0.25, 1).finite);
    CHECK_THROWS_AS(central_morrey_norm(power_function(-0.3), 2.0, -0.75, 1), std::invalid_argument);
    CHECK_THROWS_AS(central_morrey_norm(power_function(-0.3), 2.0, 0.1, 1), std::invalid_argument);
  }
}

TEST_CASE("Morrey norm at lambda = -1/q is the Lebesgue norm") {
  for (double q : {1.0, 2.0, 3.0}) {
    for (int n : {1, 2}) {
      const RadialFunction f = cutoff_power(-1.5 * n / q, 1.0);
      const double lp = lebesgue_norm(f, q, n).value;
      CHECK(central_morrey_norm(f, q, -1.0 / q, n).value == doctest::Approx(lp).epsilon(1e-6));
      CHECK(central_morrey_norm(f, q, -1.0 / q, n, numeric()).value == doctest::Approx(lp).epsilon(1e-6));
    }
  }
}

TEST_CASE("CMO norm examples") {
  CHECK(cmo_norm(constant_function(3.0), 2.0, 1).value == 0.0);
  CHECK(cmo_norm(log_function(), 2.0, 1).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cmo_norm(log_function(), 2.0, 2).value == doctest::Approx(0.5).epsilon(1e-10));
  // s = -log u: int_0^inf |1 - s|^3 e^{-s} ds = 12/e - 2.
  CHECK(cmo_norm(log_function(), 3.0, 1).value == doctest::Approx(std::cbrt(12.0 / std::exp(1.0) - 2.0)).epsilon(1e-10));
  SUBCASE("quadrature path for log is R-invariant") {
    for (double R : {1e-2, 1.0, 1e2}) {
      CHECK(cmo_bracket(log_function(), 2.0, 2, R).value == doctest::Approx(0.5).epsilon(1e-9));
    }
    CHECK(cmo_norm(log_function(), 2.0, 1, numeric()).value == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("mean minimises the quadratic oscillation") {
    const RadialFunction b = oscillatory_cutoff(1.0, 1.0);
    const double R = 3.0;
    const double with_mean = cmo_bracket(b, 2.0, 1, R).value;
    for (double c : {-0.5, 0.0, 0.1, 0.5}) {
      const QuadratureResult other = integrate_unit_interval([&](double t) { return std::pow(b(R * t) - c, 2); });
      CHECK(with_mean <= std::sqrt(other.value) + 1e-12);
    }
  }
}

TEST_CASE("dilation rescales the Lebesgue norm") {
  const RadialFunction f = cutoff_power(-0.8, 0.5, 4.0, 2.0);
  for (double s : {0.1, 3.0}) {
    CHECK(lebesgue_norm(f.dilated(s), 2.0, 2).value ==
          doctest::Approx(std::pow(s, -1.0) * lebesgue_norm(f, 2.0, 2).value).epsilon(1e-12));
  }
}

TEST_CASE("function spec grammar") {
  CHECK(parse_function("power:-0.25")(16.0) == doctest::Approx(0.5));
  CHECK(parse_function("cutpow:-1:2")(1.0) == 0.0);
  CHECK(parse_function("cutpow:-1:2")(4.0) == doctest::Approx(0.25));
  CHECK(parse_function("cutpow:1:1:2")(3.0) == 0.0);
  CHECK(parse_function("chi")(0.5) == 1.0);
  CHECK(parse_function("chi")(1.5) == 0.0);
  CHECK(parse_function("chi:2")(1.5) == 1.0);
  CHECK(parse_function("const:2.5")(7.0) == 2.5);
  CHECK(parse_function("log")(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(parse_function("osccut:1:2")(0.5) == 0.0);
  CHECK(parse_function("osccut:1:2")(1.5) == doctest::Approx(-1.0));
  const RadialFunction chi = parse_function("cutpow:0:0@chi");
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(2.0) == 0.0);
  CHECK(chi.support_upper() == 1.0);
  CHECK(parse_function("power:1@chi:3*2")(2.0) == doctest::Approx(4.0));
  CHECK(parse_function("power:1@chi:3*2")(4.0) == 0.0);
  for (const char* bad : {"", "power", "power:x", "cutpow:1", "osccut:1", "foo", "log:1", "chi@foo", "power:1*"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_function(bad), std::invalid_argument);
  }
}
