// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hardy/constants.hpp"

using namespace hardy;

namespace {

const double kLog2 = std::log(2.0);
const double kSqrtPi = std::sqrt(std::numbers::pi);

// Counterexample weight, alpha in (0,1), cut at log(1/t) = S:
// A(S) = 1/alpha + (1 - S^{-alpha})/alpha, B(S) = 1/(1+alpha) + (S^{1-alpha} - 1)/(1-alpha).
double counter_A(double alpha, double S) { return 1.0 / alpha + (1.0 - std::pow(S, -alpha)) / alpha; }
double counter_B(double alpha, double S) {
  return 1.0 / (1.0 + alpha) + (std::pow(S, 1.0 - alpha) - 1.0) / (1.0 - alpha);
}

}  // namespace

TEST_CASE("Lebesgue constants") {
  const Weight one = constant_weight(1.0);
  CHECK(lebesgue_constant(one, ExponentConfig::make(1, {2.0})).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lebesgue_constant(one, ExponentConfig::make(2, {4.0})).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lebesgue_constant(constant_weight(1.0, 2), ExponentConfig::make(1, {4.0, 4.0})).value ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  CHECK(lebesgue_constant(riemann_liouville_weight(0.5), ExponentConfig::make(1, {2.0})).value ==
        doctest::Approx(kSqrtPi).epsilon(1e-9));
  for (auto [p, a] : {std::pair{2.0, 0.5}, {3.0, 0.25}, {4.0, 0.75}}) {
    const ConstantResult r = lebesgue_constant(riemann_liouville_weight(a), ExponentConfig::make(1, {p}));
    CHECK(r.finite);
    CHECK(r.value == doctest::Approx(closed_form("riemann_liouville", {p, a})).epsilon(1e-9));
  }
  SUBCASE("divergence is diagnosed by truncation growth") {
    const ConstantResult r = lebesgue_constant(one, ExponentConfig::make(2, {2.0}));
    CHECK_FALSE(r.finite);
    CHECK(std::isinf(r.value));
    CHECK(r.diagnosis.find("growing") != std::string::npos);
  }
  CHECK_THROWS_AS(lebesgue_constant(one, ExponentConfig::make(1, {2.0, 2.0})), std::invalid_argument);
}

TEST_CASE("Morrey and log-moment constants") {
  const Weight one2 = constant_weight(1.0, 2);
  const ExponentConfig c = ExponentConfig::make(1, {4.0, 4.0}, {-0.25, -0.25});
  CHECK(morrey_constant(one2, c).value == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  CHECK(morrey_constant(constant_weight(0.0, 2), c).value == 0.0);

  const Weight riesz = multilinear_riesz_weight(1.0, 2);
  const ExponentConfig leb = ExponentConfig::make(1, {3.0, 6.0});
  CHECK(morrey_constant(riesz, leb).value == doctest::Approx(lebesgue_constant(riesz, leb).value).epsilon(1e-12));

  const ExponentConfig u = ExponentConfig::make(1, {4.0}, {-0.25});
  CHECK(log_moment_constant(constant_weight(1.0), u, {0}, 1.0).value == doctest::Approx(16.0 / 9.0).epsilon(1e-11));
  CHECK(log_moment_constant(riesz, leb, {}, 1.0).value ==
        doctest::Approx(morrey_constant(riesz, leb).value).epsilon(1e-12));
  CHECK_THROWS_AS(log_moment_constant(one2, c, {2}, 1.0), std::invalid_argument);
}

TEST_CASE("counterexample log moments") {
  const double alpha = 0.5;
  const Weight w = counterexample_weight(alpha, 1, 2.0);
  const ExponentConfig cfg = ExponentConfig::make(1, {2.0});
  SUBCASE("A finite, C infinite") {
    CHECK(lebesgue_constant(w, cfg).value == doctest::Approx(4.0).epsilon(1e-8));
    const ConstantResult C = log_moment_constant(w, cfg, {0}, 2.0);
    CHECK_FALSE(C.finite);
  }
  SUBCASE("log-truncated C matches A log 2 + B(delta)") {
    for (double delta : {1e-4, 1e-8}) {
      ConstantOptions o;
      o.log_cutoff = delta;
      const double S = std::log(1.0 / delta);
      const double expected = 4.0 * kLog2 + 2.0 * (std::sqrt(S) - 1.0) + 2.0 / 3.0;
      CHECK(log_moment_constant(w, cfg, {0}, 2.0, o).value == doctest::Approx(expected).epsilon(1e-8));
    }
  }
  SUBCASE("fully truncated weight") {
    ConstantOptions o;
    o.domain_cutoff = 1e-6;
    const double S = std::log(1e6);
    CHECK(lebesgue_constant(w, cfg, o).value == doctest::Approx(counter_A(alpha, S)).epsilon(1e-8));
    CHECK(log_moment_constant(w, cfg, {0}, 1.0, o).value == doctest::Approx(counter_B(alpha, S)).epsilon(1e-8));
  }
}

TEST_CASE("C = A log 2 + B") {
  const ExponentConfig cfg = ExponentConfig::make(1, {2.0});
  ConstantOptions truncated;
  truncated.domain_cutoff = 1e-6;
  const std::vector<std::pair<Weight, ConstantOptions>> cases = {
      {constant_weight(1.0), {}}, {riemann_liouville_weight(0.5), {}}, {counterexample_weight(0.5, 1, 2.0), truncated}};
  for (const auto& [w, o] : cases) {
    const double A = lebesgue_constant(w, cfg, o).value;
    const double B = log_moment_constant(w, cfg, {0}, 1.0, o).value;
    const double C = log_moment_constant(w, cfg, {0}, 2.0, o).value;
    CHECK(C == doctest::Approx(A * kLog2 + B).epsilon(1e-8));
    CHECK(C >= A * kLog2);
  }
}

TEST_CASE("bilinear log expansion") {
  const ExponentConfig c = ExponentConfig::make(1, {4.0, 4.0}, {-0.125, -0.125});
  for (const Weight& w : {constant_weight(1.0, 2), multilinear_riesz_weight(1.0, 2)}) {
    const double A = morrey_constant(w, c).value;
    const double D = log_moment_constant(w, c, {0}, 1.0).value;
    const double E = log_moment_constant(w, c, {1}, 1.0).value;
    const double B2 = log_moment_constant(w, c, {0, 1}, 1.0).value;
    const double C2 = log_moment_constant(w, c, {0, 1}, 2.0).value;
    CHECK(C2 == doctest::Approx(kLog2 * kLog2 * A + kLog2 * (D + E) + B2).epsilon(1e-8));
    CHECK(C2 >= A * kLog2 * kLog2);
  }
  const double a = 1.0 - 0.125;
  const double one_axis = kLog2 / a + 1.0 / (a * a);
  CHECK(log_moment_constant(constant_weight(1.0, 2), c, {0, 1}, 2.0).value ==
        doctest::Approx(one_axis * one_axis).epsilon(1e-11));
  CHECK(log_moment_constant(constant_weight(1.0, 2), c, {0, 1}, 1.0).value ==
        doctest::Approx(std::pow(64.0 / 49.0, 2)).epsilon(1e-11));
}

TEST_CASE("Cesaro constants") {
  CHECK(cesaro_lebesgue_constant(constant_weight(1.0, 2), ExponentConfig::make(1, {4.0, 4.0})).value ==
        doctest::Approx(16.0).epsilon(1e-11));
  const ConstantResult inf =
      cesaro_lebesgue_constant(constant_weight(1.0), ExponentConfig::make(1, {std::numeric_limits<double>::infinity()}));
  CHECK_FALSE(inf.finite);
  // Weyl weight: B(1, 1/2) / Gamma(1/2) = 2 / sqrt(pi).
  CHECK(cesaro_lebesgue_constant(weyl_weight(0.5), ExponentConfig::make(1, {2.0})).value ==
        doctest::Approx(2.0 / kSqrtPi).epsilon(1e-9));

  const ExponentConfig u = ExponentConfig::make(1, {4.0 / 3.0}, {-0.75});
  CHECK(cesaro_log_constant(constant_weight(1.0), u).value ==
        doctest::Approx(4.0 / 3.0 * kLog2 + 16.0 / 9.0).epsilon(1e-11));
  CHECK(cesaro_log_constant(constant_weight(0.0), u).value == 0.0);
  const Weight rl = riemann_liouville_weight(0.3);
  CHECK(cesaro_log_constant(rl, u).value ==
        doctest::Approx(weighted_moment(rl, {-u.n * u.lambda_i[0] - u.n}, {0}, 2.0).value).epsilon(1e-10));
}

TEST_CASE("closed forms") {
  CHECK(closed_form("hardy", {2.0}) == 2.0);
  CHECK(closed_form("riemann_liouville", {2.0, 0.5}) == doctest::Approx(kSqrtPi).epsilon(1e-13));
  CHECK(closed_form("counterexample_A", {2.0, 0.5}) == 4.0);
  CHECK_THROWS_AS(closed_form("hardy", {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form("riemann_liouville", {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form("nope", {}), std::invalid_argument);
  CHECK(parse_constant_family("cesaro-log") == ConstantFamily::cesaro_log);
  CHECK(to_string(ConstantFamily::log_moment) == "log-moment");
  CHECK_THROWS_AS(parse_constant_family("x"), std::invalid_argument);
}
