// SPDX-License-Identifier: Apache-2.0

/// \file
/// Sharpness, necessity, counterexample and oscillation experiments.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hardy/constants.hpp"
#include "hardy/operators.hpp"

namespace hardy {

enum class Verdict { sharp_confirmed, inconclusive, violated };

std::string to_string(Verdict v);

struct SweepEntry {
  double parameter = 0.0;
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = true;
};

struct Estimate {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

struct SharpnessReport {
  std::string experiment;
  double target = 0.0;
  double target_error = 0.0;
  std::vector<SweepEntry> sweep;
  double extrapolated = 0.0;
  double extrapolated_error = 0.0;
  double relative_gap = 0.0;
  /// Gap accepted for sharp-confirmed.
  double tolerance = 0.0;
  Verdict verdict = Verdict::inconclusive;
  /// Secondary quantities, by name.
  std::map<std::string, Estimate> extras;
  std::vector<std::string> notes;
};

struct ExperimentOptions {
  Tolerance tol{1e-12, 1e-10};
  std::uint64_t seed = 0;
  std::size_t budget = std::size_t{1} << 20;
};

inline const std::vector<double> kDefaultEpsilons = {1e-1, 1e-2, 1e-3, 1e-4};
inline const std::vector<double> kDefaultRadii = {10.0, 100.0, 1000.0};

/// Extremal family f_i(r) = r^{-n/p_i - eps_i} 1_{r > sqrt2/2}, eps_i = (p_m/p_i) eps.
/// Entries hold the lower bound (sqrt2 eps/2)^{p_m eps/p} int_{t_i > sqrt2 eps/2} prod t_i^{-n/p_i - eps_i} omega.
SharpnessReport lebesgue_sharpness_sweep(const Weight& w, const ExponentConfig& config,
                                         const std::vector<double>& epsilons = kDefaultEpsilons,
                                         double tolerance = 0.02, const ExperimentOptions& options = {});

/// Mirrored family f_i(r) = r^{-n/p_i + eps_i} 1_{r < sqrt2/2} against the
/// Cesaro constant; same prefactor, integrand prod t_i^{-n(1-1/p_i) - eps_i} omega.
SharpnessReport cesaro_sharpness_sweep(const Weight& w, const ExponentConfig& config,
                                       const std::vector<double>& epsilons = kDefaultEpsilons,
                                       double tolerance = 0.02, const ExperimentOptions& options = {});

/// Morrey ratio of f_i(r) = r^{n lambda_i} under balanced exponents.
SharpnessReport morrey_sharpness_check(const Weight& w, const ExponentConfig& config, double tolerance = 1e-6,
                                       const ExperimentOptions& options = {});

/// b_i = c log r, f_i = r^{n lambda_i}: commutator equals c^m r^{n lambda} B_m.
SharpnessReport commutator_pointwise_check(const Weight& w, const ExponentConfig& config,
                                           const std::vector<double>& radii = {0.1, 1.0, 10.0},
                                           double symbol_scale = 1.0, double tolerance = 1e-6,
                                           const ExperimentOptions& options = {});

/// A = 2/alpha and the growth of C(delta) = A log 2 + B(delta).
SharpnessReport counterexample_report(double alpha, int n, double p,
                                      const std::vector<double>& deltas = {1e-2, 1e-4, 1e-6},
                                      const ExperimentOptions& options = {});

/// I(r) = int omega prod_{i in E} sin(pi r t_i) dt along radii (E zero-based, nonempty).
SharpnessReport oscillation_decay_check(const Weight& w, const std::vector<std::size_t>& E,
                                        const std::vector<double>& radii = kDefaultRadii, double threshold = 1e-3,
                                        const ExperimentOptions& options = {});

/// r -> H f(r) (or G f(r)) as a radial function with support, kinks and decay declared.
RadialFunction hardy_image(const Weight& w, const std::vector<RadialFunction>& f, int n,
                           const ExperimentOptions& options = {});
RadialFunction cesaro_image(const Weight& w, const std::vector<RadialFunction>& f, int n,
                            const ExperimentOptions& options = {});

/// omega_n int_0^inf u(r) v(r) r^{n-1} dr; u must have bounded support.
QuadratureResult radial_pairing(const RadialFunction& u, const RadialFunction& v, int n, Tolerance tol = {1e-12, 1e-9});

struct DualityResult {
  QuadratureResult hardy_side;   // <g, H f>
  QuadratureResult cesaro_side;  // <f, G g>
  double relative_gap = 0.0;
};

/// m = 1 adjointness of H and G for radial f, g with bounded support.
DualityResult duality_check(const Weight& w, const RadialFunction& f, const RadialFunction& g, int n,
                            const ExperimentOptions& options = {});

}  // namespace hardy
