// SPDX-License-Identifier: Apache-2.0

/// \file
/// Pointwise evaluation of the weighted multilinear Hardy and Cesaro
/// operators, their commutators, and the Riemann-Liouville / Weyl integrals
/// on radial inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hardy/numerics.hpp"
#include "hardy/spaces.hpp"
#include "hardy/weights.hpp"

namespace hardy {

struct OperatorRequest {
  Weight weight;
  std::vector<RadialFunction> f;
  /// Symbols b_i; required by the commutators, rejected otherwise.
  std::optional<std::vector<RadialFunction>> b;
  /// |x|.
  double r = 1.0;
  int n = 1;
  Tolerance tol{1e-12, 1e-10};
  std::uint64_t seed = 0;
  std::size_t budget = std::size_t{1} << 20;
};

/// int_{(0,1)^m} prod f_i(t_i r) omega(t) dt.
QuadratureResult hardy_apply(const OperatorRequest& req);
/// int_{(0,1)^m} prod f_i(r / t_i) t_i^{-n} omega(t) dt.
QuadratureResult cesaro_apply(const OperatorRequest& req);
/// int prod f_i(t_i r) prod (b_i(r) - b_i(t_i r)) omega(t) dt.
QuadratureResult hardy_commutator_apply(const OperatorRequest& req);
/// int prod f_i(r / t_i) t_i^{-n} prod (b_i(r) - b_i(r / t_i)) omega(t) dt.
QuadratureResult cesaro_commutator_apply(const OperatorRequest& req);

/// (1 / Gamma(alpha)) int_0^x f(t) (x - t)^{alpha - 1} dt, 0 < alpha < 1.
QuadratureResult riemann_liouville_apply(double alpha, const RadialFunction& f, double x,
                                         Tolerance tol = {1e-12, 1e-10});
/// (1 / Gamma(alpha)) int_x^inf f(t) (t - x)^{alpha - 1} dt / t, 0 < alpha < 1.
QuadratureResult weyl_apply(double alpha, const RadialFunction& f, double x, Tolerance tol = {1e-12, 1e-10});

}  // namespace hardy
