// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hardy/numerics.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

void check_sound(const QuadratureResult& r, double truth) {
  CHECK(r.converged);
  CHECK(r.evaluations >= 1);
  CHECK(r.abs_error_estimate >= 0.0);
  CHECK(std::abs(r.value - truth) <= 10.0 * r.abs_error_estimate);
}

}  // namespace

TEST_CASE("gamma matches factorials and the half-integer value") {
  CHECK(hardy::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hardy::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(hardy::gamma(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("gamma relative error on [0.1, 30]") {
  double worst = 0.0;
  for (int i = 0; i <= 2990; ++i) {
    const double x = 0.1 + 0.01 * i;
    const double ref = std::tgamma(x);
    worst = std::max(worst, std::abs(hardy::gamma(x) - ref) / ref);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma rejects the non-positive axis") {
  CHECK_THROWS_AS(hardy::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(hardy::gamma(-1.5), std::domain_error);
}

TEST_CASE("Kronrod panel is exact for polynomials up to its degree") {
  for (int d = 0; d <= kKronrodDegree; ++d) {
    const PanelEstimate p = gauss_kronrod21([d](double x) { return std::pow(x, d); }, 0.0, 1.0);
    CHECK(std::abs(p.kronrod - 1.0 / (d + 1)) <= 1e-14);
  }
  // The embedded Gauss rule is exact to degree 19 only.
  const PanelEstimate p20 = gauss_kronrod21([](double x) { return std::pow(x, 20); }, 0.0, 1.0);
  CHECK(std::abs(p20.gauss - 1.0 / 21.0) > 1e-12);
}

TEST_CASE("unit interval examples") {
  SUBCASE("constant") {
    const QuadratureResult r = integrate_unit_interval([](double) { return 1.0; });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    check_sound(r, 1.0);
  }
  SUBCASE("inverse square root") {
    const QuadratureResult r =
        integrate_unit_interval([](double t) { return 1.0 / std::sqrt(t); }, EndpointBehavior::power(-0.5));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    check_sound(r, 2.0);
  }
  SUBCASE("arcsine density") {
    // t = sin^2(theta) turns the integrand into the constant 2 on (0, pi/2).
    const double oracle = 2.0 * (kPi / 2.0);
    const QuadratureResult r = integrate_unit_interval(
        [](double t) { return 1.0 / std::sqrt(t * (1.0 - t)); }, EndpointBehavior::power(-0.5, -0.5));
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-12));
    check_sound(r, oracle);
  }
}

TEST_CASE("power substitution integrates t^b exactly") {
  for (double b : {-0.9, -0.5, -0.1}) {
    const QuadratureResult r =
        integrate_unit_interval([b](double t) { return std::pow(t, b); }, EndpointBehavior::power(b));
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0 / (1.0 + b)) <= 1e-10);
  }
}

TEST_CASE("borderline t^-1 times a log power uses the logarithmic map") {
  // s = log(2/t) turns the integral into int_{log 2}^inf s^-2 ds.
  EndpointBehavior b;
  b.exponent_at_zero = -1.0;
  b.log_exponent_at_zero = -2.0;
  const QuadratureResult r =
      integrate_unit_interval([](double t) { return 1.0 / (t * std::pow(std::log(2.0 / t), 2)); }, b, {1e-13, 1e-12});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("log moments near the singular end") {
  // int t^a log(1/t) dt = (1 + a)^-2.
  for (double a : {-0.75, -0.25, 0.5}) {
    const EndpointBehavior b = EndpointBehavior{}.times_power(a).times_log(1.0);
    const QuadratureResult r = integrate_unit_interval(
        [a](double t) { return std::pow(t, a) * std::log(1.0 / t); }, b, {1e-14, 1e-12});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / ((1.0 + a) * (1.0 + a))).epsilon(1e-11));
  }
}

TEST_CASE("truncated interval near a singular end") {
  const double delta = 1e-8;
  const QuadratureResult r = integrate_interval([](double t) { return 1.0 / t; }, AxisDomain{delta, 1.0, {}},
                                                EndpointBehavior{-1.0, 0.0, 0.0, 0.0}, {1e-13, 1e-12});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::log(1.0 / delta)).epsilon(1e-11));
}

TEST_CASE("breakpoints split a discontinuous integrand") {
  AxisDomain d;
  d.breakpoints = {0.3};
  const QuadratureResult r = integrate_interval([](double t) { return t < 0.3 ? 1.0 : 2.0; }, d);
  CHECK(r.value == doctest::Approx(0.3 + 1.4).epsilon(1e-13));
}

TEST_CASE("non-integrable endpoint is reported as non-converged") {
  const QuadratureResult r = integrate_unit_interval([](double t) { return 1.0 / t; }, EndpointBehavior{-1.0, 0.0, 0.0, 0.0});
  CHECK_FALSE(r.converged);
  CHECK(std::isinf(r.value));
}

TEST_CASE("non-finite interior sample raises an evaluation error") {
  CHECK_THROWS_AS(integrate_unit_interval([](double t) { return t > 0.4 && t < 0.6 ? std::nan("") : 1.0; }),
                  EvaluationError);
}

TEST_CASE("unit cube examples") {
  const std::vector<EndpointBehavior> flat(2);
  SUBCASE("constant") {
    const QuadratureResult r = integrate_unit_cube([](std::span<const double>) { return 1.0; }, flat);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    check_sound(r, 1.0);
  }
  SUBCASE("separable power") {
    const std::vector<EndpointBehavior> b(2, EndpointBehavior::power(-0.25));
    const QuadratureResult r = integrate_unit_cube(
        [](std::span<const double> t) { return std::pow(t[0], -0.25) * std::pow(t[1], -0.25); }, b);
    CHECK(r.value == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
    check_sound(r, 16.0 / 9.0);
  }
  SUBCASE("corner singularity, iterated") {
    const double oracle = (4.0 / 3.0) * (2.0 * std::sqrt(2.0) - 2.0);
    const QuadratureResult r =
        integrate_unit_cube([](std::span<const double> t) { return 1.0 / std::sqrt(2.0 - t[0] - t[1]); }, flat);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-9));
    check_sound(r, oracle);
  }
  SUBCASE("corner singularity, pyramid substitution") {
    const double oracle = (4.0 / 3.0) * (2.0 * std::sqrt(2.0) - 2.0);
    CubeOptions o;
    o.corner_exponent = -0.5;
    const QuadratureResult r =
        integrate_unit_cube([](std::span<const double> t) { return 1.0 / std::sqrt(2.0 - t[0] - t[1]); }, flat, o);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-10));
    check_sound(r, oracle);
  }
}

TEST_CASE("Euclidean corner singularity matches the polar-coordinate value") {
  // int_{[0,1]^2} |u|^{-1} du = 2 int_0^{pi/4} sec(theta) d theta = 2 log(1 + sqrt 2).
  const double oracle = 2.0 * std::log(1.0 + std::sqrt(2.0));
  CubeOptions o;
  o.corner_exponent = -1.0;
  o.tol = {1e-12, 1e-11};
  const std::vector<EndpointBehavior> flat(2);
  const QuadratureResult r = integrate_unit_cube(
      [](std::span<const double> t) { return 1.0 / std::hypot(1.0 - t[0], 1.0 - t[1]); }, flat, o);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("three-dimensional tensor rule") {
  const std::vector<EndpointBehavior> b(3, EndpointBehavior::power(-0.5));
  const QuadratureResult r = integrate_unit_cube(
      [](std::span<const double> t) { return 1.0 / std::sqrt(t[0] * t[1] * t[2]); }, b, CubeOptions{});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("Monte Carlo regime is deterministic and unbiased") {
  const std::vector<EndpointBehavior> b(4, EndpointBehavior::power(-0.25));
  auto f = [](std::span<const double> t) {
    double v = 1.0;
    for (double x : t) v *= std::pow(x, -0.25);
    return v;
  };
  CubeOptions o;
  o.budget = 1 << 16;
  o.seed = 7;
  o.tol = {1e-3, 1e-3};
  const QuadratureResult a = integrate_unit_cube(f, b, o);
  const QuadratureResult c = integrate_unit_cube(f, b, o);
  CHECK(a.value == c.value);
  CHECK(a.abs_error_estimate == c.abs_error_estimate);
  const double truth = std::pow(4.0 / 3.0, 4);
  CHECK(a.abs_error_estimate > 0.0);
  CHECK(std::abs(a.value - truth) <= 5.0 * a.abs_error_estimate + 1e-12);
  o.seed = 8;
  CHECK(integrate_unit_cube(f, b, o).value != a.value);
}

TEST_CASE("cube rejects unsupported requests") {
  const std::vector<EndpointBehavior> flat(2);
  CubeOptions o;
  o.interior_singularity = true;
  CHECK_THROWS_AS(integrate_unit_cube([](std::span<const double>) { return 1.0; }, flat, o), std::invalid_argument);
  CHECK_THROWS_AS(integrate_unit_cube([](std::span<const double>) { return 1.0; }, std::vector<EndpointBehavior>{}),
                  std::invalid_argument);
}

TEST_CASE("half-line examples") {
  SUBCASE("exponential") {
    const QuadratureResult r = integrate_halfline([](double x) { return std::exp(-x); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    check_sound(r, 1.0);
  }
  SUBCASE("cut-off inverse square") {
    HalfLineOptions o;
    o.breakpoints = {1.0};
    o.decay_exponent = 2.0;
    const QuadratureResult r = integrate_halfline([](double x) { return x > 1.0 ? 1.0 / (x * x) : 0.0; }, o);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    check_sound(r, 1.0);
  }
  SUBCASE("gaussian moment") {
    const QuadratureResult r = integrate_halfline([](double x) { return 2.0 * x * std::exp(-x * x); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    check_sound(r, 1.0);
  }
}

TEST_CASE("compensated sum recovers cancelled terms") {
  CompensatedSum s;
  s.add(1e30);
  s.add(1e-30);
  s.add(-1e30);
  CHECK(s.value() == 1e-30);
}

TEST_CASE("slowly decaying logarithmic endpoint keeps its tail") {
  // s = log(e/t) gives int_1^inf s^-1.5 ds = 2; most of the mass sits far out.
  EndpointBehavior b;
  b.exponent_at_zero = -1.0;
  b.log_exponent_at_zero = -1.5;
  const QuadratureResult r = integrate_unit_interval(
      [](double t) { return 1.0 / (t * std::pow(1.0 - std::log(t), 1.5)); }, b, {1e-11, 1e-10});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}
