// SPDX-License-Identifier: Apache-2.0

/// \file
/// Exponent tuples, radial functions on R^n and their Lebesgue, central
/// Morrey and central BMO norms.

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hardy/numerics.hpp"

namespace hardy {

/// Exponents (n, p, p_i, q_i, lambda, lambda_i) with the derived p and lambda.
///
/// When no lambda_i are given they default to -1/p_i, the Lebesgue endpoint
/// of the central Morrey scale.
struct ExponentConfig {
  int n = 1;
  std::vector<double> p_i;
  std::vector<double> q_i;
  std::vector<double> lambda_i;
  double p = 0.0;
  double lambda = 0.0;
  bool balanced = false;

  [[nodiscard]] std::size_t m() const { return p_i.size(); }
  [[nodiscard]] bool commutator() const { return !q_i.empty(); }

  /// Validates the basic shape (n >= 1, p_i in (1, inf], q_i in (1, inf),
  /// matching lengths) and fills p, lambda and balanced. Throws
  /// std::invalid_argument.
  static ExponentConfig make(int n, std::vector<double> p_i, std::vector<double> lambda_i = {},
                             std::vector<double> q_i = {});

  /// -1/p_i <= lambda_i <= 0 for every i.
  void require_hardy_regime() const;
  /// -1/p_i < lambda_i < 0 for every i.
  void require_strict_regime() const;
  /// Finite p_i with 1 < p_i.
  void require_finite() const;
};

/// Piecewise power c * r^a on (r0, r1), zero elsewhere.
struct PowerDescriptor {
  double coef = 1.0;
  double exponent = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

enum class RadialKind { power, cutoff_power, log, oscillatory_cutoff, custom };

/// A radial function r -> f(r) on (0, inf).
///
/// Besides the callable it records where it vanishes, where it has kinks and
/// how it behaves as r -> 0 and r -> inf, which the quadrature layers use to
/// choose substitutions.
class RadialFunction {
 public:
  using Fn = std::function<double(double)>;

  RadialFunction(RadialKind kind, Fn fn, std::string label);

  [[nodiscard]] double operator()(double r) const { return fn_(r); }
  [[nodiscard]] RadialKind kind() const { return kind_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::optional<PowerDescriptor>& descriptor() const { return descriptor_; }
  /// f vanishes outside [support_lower, support_upper].
  [[nodiscard]] double support_lower() const { return support_lower_; }
  [[nodiscard]] double support_upper() const { return support_upper_; }
  [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// |f(r)| ~ r^a (log 1/r)^g as r -> 0.
  [[nodiscard]] double exponent_at_zero() const { return zero_exponent_; }
  [[nodiscard]] double log_exponent_at_zero() const { return zero_log_exponent_; }
  /// |f(r)| ~ r^a (log r)^g as r -> inf; nullopt when unknown (custom)
  /// or bounded without decay (oscillatory).
  [[nodiscard]] const std::optional<double>& exponent_at_infinity() const { return infinity_exponent_; }
  [[nodiscard]] double log_exponent_at_infinity() const { return infinity_log_exponent_; }
  /// Half-period of an oscillating factor, 0 when none.
  [[nodiscard]] double half_period() const { return half_period_; }
  [[nodiscard]] bool identically_zero() const { return zero_; }

  /// c * f.
  [[nodiscard]] RadialFunction scaled(double c) const;
  /// r -> f(s r), s > 0.
  [[nodiscard]] RadialFunction dilated(double s) const;
  /// f * 1_{(0, R)}.
  [[nodiscard]] RadialFunction truncated_above(double R) const;

  RadialFunction& with_descriptor(PowerDescriptor d);
  RadialFunction& with_support(double lower, double upper);
  RadialFunction& with_breakpoints(std::vector<double> points);
  RadialFunction& with_zero_behavior(double exponent, double log_exponent = 0.0);
  RadialFunction& with_infinity_behavior(std::optional<double> exponent, double log_exponent = 0.0);
  RadialFunction& with_half_period(double h);

 private:
  RadialKind kind_;
  Fn fn_;
  std::string label_;
  std::optional<PowerDescriptor> descriptor_;
  double support_lower_ = 0.0;
  double support_upper_ = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints_;
  double zero_exponent_ = 0.0;
  double zero_log_exponent_ = 0.0;
  std::optional<double> infinity_exponent_;
  double infinity_log_exponent_ = 0.0;
  double half_period_ = 0.0;
  bool zero_ = false;
};

/// c r^a on (0, inf).
RadialFunction power_function(double a, double c = 1.0);
/// c r^a on (r0, r1), zero elsewhere.
RadialFunction cutoff_power(double a, double r0, double r1 = std::numeric_limits<double>::infinity(),
                            double c = 1.0);
/// Indicator of (0, R).
RadialFunction indicator(double R = 1.0);
/// Constant c.
RadialFunction constant_function(double c);
/// c log r.
RadialFunction log_function(double c = 1.0);
/// 1_{r > R/2} sin(pi k r).
RadialFunction oscillatory_cutoff(double k, double R);
/// Arbitrary callable, assumed bounded near 0 unless told otherwise.
RadialFunction custom_function(RadialFunction::Fn fn, std::string label);

/// Parses `power:a`, `cutpow:a:r0[:r1]`, `chi[:R]`, `const:c`, `log`,
/// `osccut:k:R`, each optionally followed by `@chi[:R]` (multiply by the
/// indicator of (0, R), R = 1 by default) and/or `*c` (scale by c).
RadialFunction parse_function(const std::string& spec);

/// Surface measure of the unit sphere in R^n: n pi^{n/2} / Gamma(1 + n/2).
double unit_sphere_volume(int n);

/// Value of a norm together with how it was obtained.
struct NormResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool finite = true;
  bool exact = false;        // closed form
  bool lower_bound = false;  // numeric supremum over a radius grid
  bool converged = true;
  double argmax = std::numeric_limits<double>::quiet_NaN();
};

NormResult lebesgue_norm(const RadialFunction& f, double p, int n, Tolerance tol = {1e-13, 1e-11});

struct SupOptions {
  Tolerance tol{1e-14, 1e-12};
  double r_min = 1e-3;
  double r_max = 1e3;
  std::size_t grid_points = 61;
  /// Skip closed forms and always use quadrature plus the grid supremum.
  bool force_numeric = false;
};

/// (|B(0,R)|^{-(1 + lambda p)} int_{B(0,R)} |f|^p)^{1/p}.
QuadratureResult morrey_bracket(const RadialFunction& f, double p, double lambda, int n, double R,
                                Tolerance tol = {1e-14, 1e-12}, bool force_numeric = false);

/// sup over R of morrey_bracket; -1/p <= lambda <= 0.
NormResult central_morrey_norm(const RadialFunction& f, double p, double lambda, int n, const SupOptions& options = {});

/// (|B(0,R)|^{-1} int_{B(0,R)} |b - b_B|^q)^{1/q}.
QuadratureResult cmo_bracket(const RadialFunction& b, double q, int n, double R, Tolerance tol = {1e-13, 1e-11});

/// sup over R of cmo_bracket; q > 1.
NormResult cmo_norm(const RadialFunction& b, double q, int n, const SupOptions& options = {});

}  // namespace hardy
