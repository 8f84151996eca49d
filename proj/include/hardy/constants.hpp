// SPDX-License-Identifier: Apache-2.0

/// \file
/// Sharp operator-norm constants as integrals over (0,1)^m.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardy/numerics.hpp"
#include "hardy/spaces.hpp"
#include "hardy/weights.hpp"

namespace hardy {

enum class ConstantFamily { lebesgue, morrey, log_moment, cesaro_lebesgue, cesaro_log };

struct ConstantOptions {
  Tolerance tol{1e-12, 1e-10};
  std::uint64_t seed = 0;
  std::size_t budget = std::size_t{1} << 20;
  /// Restrict every axis to (delta, 1).
  std::optional<double> domain_cutoff;
  /// Replace log(1/t_i) by log(1/t_i) 1_{t_i > delta} in the log factors,
  /// leaving the log(c) part untouched.
  std::optional<double> log_cutoff;
};

/// A constant together with its finiteness verdict.
struct ConstantResult : QuadratureResult {
  bool finite = true;
  /// Human-readable account of how a divergence was detected.
  std::string diagnosis;
};

/// int prod t_i^{e_i} omega(t) prod_{i in E} log(c / t_i) dt. Axes in E are
/// zero-based.
ConstantResult weighted_moment(const Weight& w, const std::vector<double>& exponents, const std::vector<std::size_t>& E,
                               double c, const ConstantOptions& options = {});

/// int prod t_i^{-n/p_i} omega dt.
ConstantResult lebesgue_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options = {});
/// int prod t_i^{n lambda_i} omega dt.
ConstantResult morrey_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options = {});
/// int prod t_i^{n lambda_i} omega prod_{i in E} log(c / t_i) dt, c in {1, 2}.
ConstantResult log_moment_constant(const Weight& w, const ExponentConfig& config, const std::vector<std::size_t>& E,
                                   double c, const ConstantOptions& options = {});
/// int prod t_i^{-n(1 - 1/p_i)} omega dt.
ConstantResult cesaro_lebesgue_constant(const Weight& w, const ExponentConfig& config,
                                        const ConstantOptions& options = {});
/// int prod t_i^{-n lambda_i - n} omega prod log(2 / t_i) dt.
ConstantResult cesaro_log_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options = {});

ConstantResult constant(ConstantFamily family, const Weight& w, const ExponentConfig& config,
                        const std::vector<std::size_t>& E = {}, double c = 1.0, const ConstantOptions& options = {});

ConstantFamily parse_constant_family(const std::string& name);
std::string to_string(ConstantFamily family);

/// Exact formulas: "hardy" p/(p-1), "riemann_liouville"
/// Gamma(1-1/p)/Gamma(1+alpha-1/p), "counterexample_A" 2/alpha.
struct ClosedFormParams {
  double p = 2.0;
  double alpha = 0.5;
};
double closed_form(const std::string& kind, const ClosedFormParams& params);

}  // namespace hardy
