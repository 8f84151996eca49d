// SPDX-License-Identifier: Apache-2.0

/// \file
/// Weights omega on (0,1)^m together with their endpoint singularity model.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/numerics.hpp"

namespace hardy {

/// Closed-form constant of a weight as a function of (n, p).
using ClosedForm = std::function<double(int n, double p)>;

/// Immutable nonnegative weight on (0,1)^m.
///
/// `behaviors[i]` models t_i -> 0 and t_i -> 1 with the other coordinates
/// held away from the boundary. A singularity that only appears when all
/// coordinates approach 1 together is described by `corner_exponent`.
class Weight {
 public:
  using Function = std::function<double(std::span<const double>)>;

  Weight(std::size_t arity, Function eval, std::vector<EndpointBehavior> behaviors, std::string label);

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] double operator()(std::span<const double> t) const { return eval_(t); }
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] const Function& function() const { return eval_; }
  [[nodiscard]] const std::vector<EndpointBehavior>& behaviors() const { return behaviors_; }
  [[nodiscard]] const std::optional<double>& corner_exponent() const { return corner_exponent_; }
  /// Points in (0,1) where the weight has a kink, per axis.
  [[nodiscard]] const std::vector<std::vector<double>>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  /// Vector norm used inside the weight ("euclidean"), empty when none.
  [[nodiscard]] const std::string& norm() const { return norm_; }
  [[nodiscard]] bool identically_zero() const { return zero_; }
  [[nodiscard]] const std::map<std::string, ClosedForm>& closed_forms() const { return closed_forms_; }
  [[nodiscard]] std::optional<double> closed_form(const std::string& name, int n, double p) const;

  /// Integral of the weight over (0,1)^m, computed once at construction.
  [[nodiscard]] const QuadratureResult& mass() const { return mass_; }

  Weight with_corner(double exponent) &&;
  Weight with_breakpoints(std::size_t axis, std::vector<double> points) &&;
  Weight with_norm(std::string norm) &&;
  Weight with_closed_form(std::string name, ClosedForm f) &&;
  Weight with_zero_flag() &&;
  /// Coarse integrability check; throws std::invalid_argument on failure.
  Weight checked() &&;

 private:
  std::size_t arity_;
  Function eval_;
  std::vector<EndpointBehavior> behaviors_;
  std::optional<double> corner_exponent_;
  std::vector<std::vector<double>> breakpoints_;
  std::string label_;
  std::string norm_;
  bool zero_ = false;
  std::map<std::string, ClosedForm> closed_forms_;
  QuadratureResult mass_;
};

Weight constant_weight(double c, std::size_t m = 1);
/// 1 / (Gamma(alpha) (1-t)^{1-alpha}), 0 < alpha < 1.
Weight riemann_liouville_weight(double alpha);
/// 1 / (Gamma(alpha) |1 - t|^{m-alpha}) with the Euclidean norm, 0 < alpha <= m.
Weight multilinear_riesz_weight(double alpha, std::size_t m);
/// 1 / (Gamma(alpha) (1/t - 1)^{1-alpha}), 0 < alpha < 1.
Weight weyl_weight(double alpha);
/// 1 / (Gamma(alpha) |1/t - 1|^{m-alpha}) with the Euclidean norm, 0 < alpha <= m.
Weight multilinear_cesaro_weight(double alpha, std::size_t m);
/// omega(t) = w(log 1/t), w(s) = e^{-s(n/p-1)} s^{alpha-1} on (0,1] and
/// e^{-s(n/p-1)} s^{-1-alpha} on (1,inf).
Weight counterexample_weight(double alpha, int n, double p);

/// Parses `const:c[:m]`, `rl:alpha`, `riesz:alpha:m`, `weyl:alpha`,
/// `cesaro:alpha:m`, `counter:alpha:n:p`. `default_arity` applies to `const`
/// when no arity is given. Throws std::invalid_argument on malformed input.
Weight parse_weight(const std::string& spec, std::size_t default_arity = 1);

}  // namespace hardy
