// SPDX-License-Identifier: Apache-2.0

/// \file
/// Quadrature on (0,1), (0,1)^m and (0,inf) for integrands with power or
/// power-log singularities at the endpoints, plus the gamma function.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

/// Value, error estimate and cost of one numerical integration.
///
/// When `converged` is false the value must be treated as unreliable.
struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 1;
  bool converged = true;
};

/// Absolute / relative stopping tolerance. A result is accepted once
/// error <= max(abs, rel * |value|).
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;

  [[nodiscard]] double target(double value) const;
  [[nodiscard]] Tolerance tightened(double factor) const { return {abs * factor, rel * factor}; }
};

/// Thrown when an integrand produces NaN or infinity at an interior point.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model of an integrand near the endpoints of (0,1):
///   t^{b0} (log 1/t)^{g0}        as t -> 0
///   (1-t)^{b1} (log 1/(1-t))^{g1} as t -> 1
///
/// The log exponents are only needed for borderline cases (b = -1) and for
/// log moments; they default to zero.
struct EndpointBehavior {
  double exponent_at_zero = 0.0;
  double exponent_at_one = 0.0;
  double log_exponent_at_zero = 0.0;
  double log_exponent_at_one = 0.0;

  /// Pure power model t^{b0}(1-t)^{b1}; throws unless both exponents > -1.
  static EndpointBehavior power(double at_zero, double at_one = 0.0);

  [[nodiscard]] bool integrable_at_zero() const;
  [[nodiscard]] bool integrable_at_one() const;
  [[nodiscard]] bool integrable() const { return integrable_at_zero() && integrable_at_one(); }
  [[nodiscard]] bool singular_at_zero() const;
  [[nodiscard]] bool singular_at_one() const;

  /// Behavior of the integrand multiplied by t^e.
  [[nodiscard]] EndpointBehavior times_power(double e) const;
  /// Behavior of the integrand multiplied by log(c/t), c >= 1.
  [[nodiscard]] EndpointBehavior times_log(double c) const;
  /// Behavior of the product of two integrands.
  [[nodiscard]] EndpointBehavior times(const EndpointBehavior& other) const;
};

/// Sub-interval [lower, upper] of [0,1] plus points where the integrand is
/// discontinuous or has a kink.
struct AxisDomain {
  double lower = 0.0;
  double upper = 1.0;
  std::vector<double> breakpoints;
};

/// One Gauss-Kronrod (10/21 point) panel.
struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_error = 0.0;
  double abs_integral = 0.0;
};

/// Applies the 21-point Kronrod rule (and its embedded 10-point Gauss rule)
/// on [a, b]. The Kronrod rule is exact for polynomials of degree <= 31.
PanelEstimate gauss_kronrod21(const std::function<double(double)>& f, double a, double b);

inline constexpr int kKronrodDegree = 31;

/// Gamma function for x > 0 (Lanczos approximation, g = 607/128, 15 terms).
/// Throws std::domain_error for x <= 0.
double gamma(double x);

inline constexpr std::size_t kDefaultMaxPanels = 4000;

/// Integral of f over (0,1) using endpoint substitutions chosen from
/// `behavior` followed by globally adaptive Gauss-Kronrod panels.
QuadratureResult integrate_unit_interval(const std::function<double(double)>& f,
                                         const EndpointBehavior& behavior = {},
                                         Tolerance tol = {});

/// Integral of f over `domain` (a sub-interval of [0,1]). `behavior` models
/// the integrand near t = 0 and t = 1 even when those points lie outside the
/// domain, which lets near-singular ends use a logarithmic map.
QuadratureResult integrate_interval(const std::function<double(double)>& f, const AxisDomain& domain,
                                    const EndpointBehavior& behavior = {}, Tolerance tol = {},
                                    std::size_t max_panels = kDefaultMaxPanels);

using CubeIntegrand = std::function<double(std::span<const double>)>;

/// Exact complements 1 - t_i of the point the corner (Duffy) rules are
/// evaluating on this thread, or an empty span. Corner weights read it to
/// avoid cancellation in 1 - t near (1,...,1).
std::span<const double> exact_complement();

/// Publishes `u` through exact_complement() for its lifetime.
class ComplementScope {
 public:
  explicit ComplementScope(std::span<const double> u);
  ~ComplementScope();
  ComplementScope(const ComplementScope&) = delete;
  ComplementScope& operator=(const ComplementScope&) = delete;

 private:
  std::span<const double> previous_;
};

struct CubeOptions {
  Tolerance tol{};
  /// Monte Carlo sample budget (m >= 4).
  std::size_t budget = std::size_t{1} << 20;
  std::uint64_t seed = 0;
  /// Per-axis domains; empty means the full cube.
  std::vector<AxisDomain> domains;
  /// Exponent c of a singularity |1 - t|^c concentrated at the corner
  /// (1,...,1); requires c > -m. Handled by a Duffy (pyramid) substitution.
  std::optional<double> corner_exponent;
  /// Set by callers whose integrand is unbounded on an interior manifold.
  /// Such integrands are not supported and are rejected.
  bool interior_singularity = false;
  std::size_t max_panels = kDefaultMaxPanels;
};

/// Integral over (0,1)^m. Iterated adaptive tensor rule for m <= 3,
/// stratified Monte Carlo (deterministic given the seed) for m >= 4.
QuadratureResult integrate_unit_cube(const CubeIntegrand& f,
                                     std::span<const EndpointBehavior> behaviors,
                                     const CubeOptions& options = {});

struct HalfLineOptions {
  Tolerance tol{};
  /// g(r) ~ r^{a0} as r -> 0.
  double exponent_at_zero = 0.0;
  /// |g(r)| ~ r^{-c} as r -> inf; nullopt for faster-than-power decay.
  std::optional<double> decay_exponent;
  std::vector<double> breakpoints;
  std::size_t max_panels = kDefaultMaxPanels;
};

/// Integral of g over (0, inf) through the substitution r = u / (1 - u).
QuadratureResult integrate_halfline(const std::function<double(double)>& g,
                                    const HalfLineOptions& options = {});

/// Neumaier-compensated sum, used wherever a deterministic summation order
/// matters.
class CompensatedSum {
 public:
  void add(double x);
  [[nodiscard]] double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace hardy
