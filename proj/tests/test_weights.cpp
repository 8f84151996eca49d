// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hardy/weights.hpp"

using namespace hardy;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

double at(const Weight& w, std::vector<double> t) { return w(std::span<const double>(t)); }

std::vector<Weight> catalogue() {
  std::vector<Weight> ws;
  ws.push_back(constant_weight(1.0, 1));
  ws.push_back(constant_weight(2.5, 3));
  ws.push_back(riemann_liouville_weight(0.5));
  ws.push_back(riemann_liouville_weight(0.25));
  ws.push_back(multilinear_riesz_weight(1.0, 2));
  ws.push_back(multilinear_riesz_weight(1.5, 2));
  ws.push_back(multilinear_riesz_weight(0.5, 1));
  ws.push_back(weyl_weight(0.5));
  ws.push_back(weyl_weight(0.75));
  ws.push_back(multilinear_cesaro_weight(1.0, 2));
  ws.push_back(counterexample_weight(0.5, 1, 2.0));
  ws.push_back(counterexample_weight(0.25, 2, 3.0));
  return ws;
}

// Log-log slope of t -> w near an endpoint, other coordinates at 1/2.
double probe_slope(const Weight& w, std::size_t axis, bool at_zero, double d1, double d2) {
  std::vector<double> t(w.arity(), 0.5);
  auto value = [&](double d) {
    t[axis] = at_zero ? d : 1.0 - d;
    return std::log(w(std::span<const double>(t)));
  };
  return (value(d1) - value(d2)) / (std::log(d1) - std::log(d2));
}

}  // namespace

TEST_CASE("constant weight examples") {
  CHECK(constant_weight(1.0, 1)(0.3) == 1.0);
  CHECK(at(constant_weight(0.0, 2), {0.4, 0.7}) == 0.0);
  CHECK(at(constant_weight(2.5, 3), {0.1, 0.2, 0.9}) == 2.5);
  CHECK(constant_weight(0.0, 2).identically_zero());
  CHECK_THROWS_AS(constant_weight(-1.0, 1), std::invalid_argument);
}

TEST_CASE("Riemann-Liouville weight examples") {
  const Weight w = riemann_liouville_weight(0.5);
  CHECK(w(0.75) == doctest::Approx(2.0 / kSqrtPi).epsilon(1e-14));
  for (double a : {0.2, 0.5, 0.8}) {
    CHECK(riemann_liouville_weight(a)(0.0) == doctest::Approx(1.0 / std::tgamma(a)).epsilon(1e-12));
  }
  // int t^{-1/2} w(t) dt = Beta(1/2, 1/2) / Gamma(1/2) = sqrt(pi).
  const QuadratureResult r = integrate_unit_interval(
      [&](double t) { return std::pow(t, -0.5) * w(t); }, w.behaviors()[0].times_power(-0.5));
  CHECK(r.value == doctest::Approx(kSqrtPi).epsilon(1e-9));
  CHECK(w.closed_form("lebesgue", 1, 2.0).value() == doctest::Approx(kSqrtPi).epsilon(1e-12));
  CHECK_THROWS_AS(riemann_liouville_weight(1.0), std::invalid_argument);
  CHECK_THROWS_AS(riemann_liouville_weight(0.0), std::invalid_argument);
}

TEST_CASE("weight masses match Beta-function oracles") {
  // int (1-t)^{a-1} / Gamma(a) = 1 / Gamma(a + 1).
  CHECK(riemann_liouville_weight(0.3).mass().value == doctest::Approx(1.0 / std::tgamma(1.3)).epsilon(1e-6));
  // int t^{1-a} (1-t)^{a-1} / Gamma(a) = Gamma(2 - a).
  CHECK(weyl_weight(0.4).mass().value == doctest::Approx(std::tgamma(1.6)).epsilon(1e-6));
  // Polar coordinates about the corner: 2 log(1 + sqrt 2).
  CHECK(multilinear_riesz_weight(1.0, 2).mass().value ==
        doctest::Approx(2.0 * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-6));
  CHECK(constant_weight(2.5, 3).mass().value == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("multilinear Riesz weight examples") {
  CHECK(at(multilinear_riesz_weight(1.0, 2), {0.0, 0.0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  const Weight flat = multilinear_riesz_weight(2.0, 2);
  CHECK(at(flat, {0.1, 0.9}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at(flat, {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-14));
  const Weight w = multilinear_riesz_weight(1.0, 2);
  CHECK(w.corner_exponent().value() == doctest::Approx(-1.0));
  CHECK(w.norm() == "euclidean");
  CHECK_THROWS_AS(multilinear_riesz_weight(2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(multilinear_riesz_weight(0.0, 2), std::invalid_argument);
}

TEST_CASE("Weyl and multilinear Cesaro weight examples") {
  const Weight w = weyl_weight(0.5);
  CHECK(w(0.5) == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-14));
  CHECK(probe_slope(w, 0, true, 1e-7, 1e-8) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(w(1e-12) < 1e-5);
  CHECK(at(multilinear_cesaro_weight(2.0, 2), {0.3, 0.8}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(weyl_weight(1.5), std::invalid_argument);
}

TEST_CASE("counterexample weight examples") {
  const Weight w = counterexample_weight(0.5, 1, 2.0);
  CHECK(w(std::exp(-1.0)) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(w.closed_form("lebesgue", 1, 2.0).value() == 4.0);
  // s = log(1/t): int_0^1 s^{a-1} ds + int_1^inf s^{-1-a} ds = 2/a.
  for (double a : {0.25, 0.5, 0.75}) {
    const Weight c = counterexample_weight(a, 1, 2.0);
    const QuadratureResult r = integrate_interval([&](double t) { return std::pow(t, -0.5) * c(t); },
                                                  AxisDomain{0.0, 1.0, c.breakpoints()[0]},
                                                  c.behaviors()[0].times_power(-0.5), {1e-11, 1e-10});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0 / a).epsilon(1e-8));
  }
  // Truncated log moment: 1/(1+a) + ((log 1/d)^{1-a} - 1)/(1-a).
  const double delta = 1e-4;
  const QuadratureResult b = integrate_interval(
      [&](double t) { return std::pow(t, -0.5) * w(t) * std::log(1.0 / t); },
      AxisDomain{delta, 1.0, w.breakpoints()[0]}, w.behaviors()[0].times_power(-0.5).times_log(1.0), {1e-12, 1e-11});
  const double oracle = 1.0 / 1.5 + (std::pow(std::log(1.0 / delta), 0.5) - 1.0) / 0.5;
  CHECK(b.value == doctest::Approx(oracle).epsilon(1e-9));
  CHECK_THROWS_AS(counterexample_weight(0.5, 1, 1.0), std::invalid_argument);
}

TEST_CASE("weights are nonnegative on a sample grid") {
  for (const Weight& w : catalogue()) {
    CAPTURE(w.label());
    const std::size_t m = w.arity();
    const int per_axis = m == 1 ? 1000 : (m == 2 ? 32 : 10);
    std::vector<double> t(m);
    std::vector<int> idx(m, 0);
    bool ok = true;
    while (true) {
      for (std::size_t i = 0; i < m; ++i) t[i] = (idx[i] + 0.5) / per_axis;
      const double v = w(std::span<const double>(t));
      ok = ok && std::isfinite(v) && v >= 0.0;
      std::size_t k = 0;
      while (k < m && ++idx[k] == per_axis) idx[k++] = 0;
      if (k == m) break;
    }
    CHECK(ok);
  }
}

TEST_CASE("declared endpoint exponents match log-log probes") {
  for (const Weight& w : catalogue()) {
    CAPTURE(w.label());
    for (std::size_t i = 0; i < w.arity(); ++i) {
      const EndpointBehavior& b = w.behaviors()[i];
      const double d1 = 1e-7;
      const double d2 = 1e-8;
      // Slope of d^b (log 1/d)^g between d1 and d2.
      const double log_ratio = (std::log(std::log(1.0 / d1)) - std::log(std::log(1.0 / d2))) /
                               (std::log(d1) - std::log(d2));
      const double expect0 = b.exponent_at_zero + b.log_exponent_at_zero * log_ratio;
      const double expect1 = b.exponent_at_one + b.log_exponent_at_one * log_ratio;
      CHECK(std::abs(probe_slope(w, i, true, d1, d2) - expect0) <= 0.05);
      CHECK(std::abs(probe_slope(w, i, false, d1, d2) - expect1) <= 0.05);
    }
  }
}

TEST_CASE("unary and multilinear constructors agree at m = 1") {
  const Weight rl = riemann_liouville_weight(0.5);
  const Weight riesz = multilinear_riesz_weight(0.5, 1);
  const Weight weyl = weyl_weight(0.3);
  const Weight ces = multilinear_cesaro_weight(0.3, 1);
  for (int k = 1; k < 100; ++k) {
    const double t = k / 100.0;
    CHECK(std::abs(riesz(t) - rl(t)) <= 1e-14 * rl(t));
    CHECK(std::abs(ces(t) - weyl(t)) <= 1e-14 * weyl(t));
  }
}

TEST_CASE("weight spec grammar") {
  CHECK(parse_weight("const:1").arity() == 1);
  CHECK(parse_weight("const:2", 3).arity() == 3);
  CHECK(parse_weight("const:2:2").arity() == 2);
  CHECK(parse_weight("rl:0.5")(0.75) == doctest::Approx(2.0 / kSqrtPi));
  CHECK(parse_weight("riesz:1:2").arity() == 2);
  CHECK(parse_weight("weyl:0.5")(0.5) == doctest::Approx(1.0 / kSqrtPi));
  CHECK(parse_weight("cesaro:1.5:2").arity() == 2);
  CHECK(parse_weight("counter:0.5:1:2")(std::exp(-1.0)) == doctest::Approx(std::exp(0.5)));
  for (const char* bad : {"", "rl", "rl:x", "rl:0.5:1", "riesz:1", "foo:1", "const:-1", "riesz:1:0", "counter:0.5:1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_weight(bad), std::invalid_argument);
  }
}
