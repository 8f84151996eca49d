// SPDX-License-Identifier: Apache-2.0

#include "hardy/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbeCutoff = 1e-6;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

ConstantResult from(const QuadratureResult& q) {
  ConstantResult r;
  static_cast<QuadratureResult&>(r) = q;
  return r;
}

double inverse(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

std::vector<std::size_t> all_axes(std::size_t m) {
  std::vector<std::size_t> E(m);
  for (std::size_t i = 0; i < m; ++i) E[i] = i;
  return E;
}

void check_arity(const Weight& w, const ExponentConfig& config) {
  require(w.arity() == config.m(), "weight arity must match the number of exponents");
}

// Truncated values at delta and delta / 100; the constant is infinite when
// they keep growing.
ConstantResult diagnose_divergence(const Weight& w, const std::vector<double>& exponents,
                                   const std::vector<std::size_t>& E, double c, const ConstantOptions& options,
                                   std::size_t axis) {
  ConstantOptions probe = options;
  probe.domain_cutoff = kProbeCutoff;
  const ConstantResult a = weighted_moment(w, exponents, E, c, probe);
  probe.domain_cutoff = kProbeCutoff / 100.0;
  const ConstantResult b = weighted_moment(w, exponents, E, c, probe);
  const double growth = b.value - a.value;
  std::ostringstream msg;
  msg << "axis " << axis + 1 << " not integrable at t=0; truncated value " << a.value << " at delta=" << kProbeCutoff
      << ", " << b.value << " at delta=" << kProbeCutoff / 100.0;
  ConstantResult r;
  r.evaluations = a.evaluations + b.evaluations;
  if (std::abs(growth) > 10.0 * options.tol.target(b.value) + a.abs_error_estimate + b.abs_error_estimate) {
    r.value = growth > 0.0 ? kInf : -kInf;
    r.abs_error_estimate = kInf;
    r.converged = true;
    r.finite = false;
    msg << " (growing)";
  } else {
    r.value = b.value;
    r.abs_error_estimate = std::max(b.abs_error_estimate, std::abs(growth));
    r.converged = false;
    msg << " (no growth detected; inconclusive)";
  }
  r.diagnosis = msg.str();
  return r;
}

}  // namespace

ConstantResult weighted_moment(const Weight& w, const std::vector<double>& exponents, const std::vector<std::size_t>& E,
                               double c, const ConstantOptions& options) {
  const std::size_t m = w.arity();
  require(exponents.size() == m, "one exponent per weight axis is required");
  for (double e : exponents) require(std::isfinite(e), "exponents must be finite");
  require(c >= 1.0 && std::isfinite(c), "log shift c must be at least 1");
  std::vector<bool> in_E(m, false);
  for (std::size_t i : E) {
    require(i < m, "log axis out of range");
    in_E[i] = true;
  }
  const double lo_all = options.domain_cutoff.value_or(0.0);
  require(lo_all >= 0.0 && lo_all < 1.0, "domain cutoff must lie in [0, 1)");
  if (options.log_cutoff) require(*options.log_cutoff > 0.0 && *options.log_cutoff < 1.0, "log cutoff must lie in (0, 1)");
  if (w.identically_zero()) return from({0.0, 0.0, 1, true});

  const double log_c = std::log(c);
  std::vector<EndpointBehavior> behaviors;
  CubeOptions cube;
  cube.tol = options.tol;
  cube.seed = options.seed;
  cube.budget = options.budget;
  cube.corner_exponent = w.corner_exponent();
  for (std::size_t i = 0; i < m; ++i) {
    EndpointBehavior b = w.behaviors()[i];
    b.exponent_at_zero += exponents[i];
    AxisDomain d;
    d.lower = lo_all;
    if (in_E[i]) {
      if (!options.log_cutoff) {
        b.log_exponent_at_zero += 1.0;
      } else if (c == 1.0) {
        d.lower = std::max(d.lower, *options.log_cutoff);
      }
      if (c == 1.0) b.exponent_at_one += 1.0;
    }
    for (double x : w.breakpoints()[i]) {
      if (x > d.lower && x < 1.0) d.breakpoints.push_back(x);
    }
    if (in_E[i] && options.log_cutoff && *options.log_cutoff > d.lower) d.breakpoints.push_back(*options.log_cutoff);
    std::sort(d.breakpoints.begin(), d.breakpoints.end());
    d.breakpoints.erase(std::unique(d.breakpoints.begin(), d.breakpoints.end()), d.breakpoints.end());
    behaviors.push_back(b);
    cube.domains.push_back(d);
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (!behaviors[i].integrable_at_one()) {
      ConstantResult r = from({kInf, kInf, 1, true});
      r.finite = false;
      r.diagnosis = "weight not integrable at t=1 on axis " + std::to_string(i + 1);
      return r;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (cube.domains[i].lower == 0.0 && !behaviors[i].integrable_at_zero()) {
      return diagnose_divergence(w, exponents, E, c, options, i);
    }
  }

  const std::optional<double> log_cut = options.log_cutoff;
  CubeIntegrand integrand = [&](std::span<const double> t) {
    double v = w(t);
    if (v == 0.0) return 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (exponents[i] != 0.0) v *= std::pow(t[i], exponents[i]);
      if (in_E[i]) {
        const double tail = (!log_cut || t[i] > *log_cut) ? -std::log(t[i]) : 0.0;
        v *= log_c + tail;
      }
    }
    return v;
  };
  return from(integrate_unit_cube(integrand, behaviors, cube));
}

ConstantResult lebesgue_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options) {
  check_arity(w, config);
  std::vector<double> e;
  for (double p : config.p_i) e.push_back(-config.n * inverse(p));
  return weighted_moment(w, e, {}, 1.0, options);
}

ConstantResult morrey_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options) {
  check_arity(w, config);
  std::vector<double> e;
  for (double l : config.lambda_i) e.push_back(config.n * l);
  return weighted_moment(w, e, {}, 1.0, options);
}

ConstantResult log_moment_constant(const Weight& w, const ExponentConfig& config, const std::vector<std::size_t>& E,
                                   double c, const ConstantOptions& options) {
  check_arity(w, config);
  std::vector<double> e;
  for (double l : config.lambda_i) e.push_back(config.n * l);
  return weighted_moment(w, e, E, c, options);
}

ConstantResult cesaro_lebesgue_constant(const Weight& w, const ExponentConfig& config,
                                        const ConstantOptions& options) {
  check_arity(w, config);
  std::vector<double> e;
  for (double p : config.p_i) e.push_back(-config.n * (1.0 - inverse(p)));
  return weighted_moment(w, e, {}, 1.0, options);
}

ConstantResult cesaro_log_constant(const Weight& w, const ExponentConfig& config, const ConstantOptions& options) {
  check_arity(w, config);
  std::vector<double> e;
  for (double l : config.lambda_i) e.push_back(-config.n * l - config.n);
  return weighted_moment(w, e, all_axes(w.arity()), 2.0, options);
}

ConstantResult constant(ConstantFamily family, const Weight& w, const ExponentConfig& config,
                        const std::vector<std::size_t>& E, double c, const ConstantOptions& options) {
  switch (family) {
    case ConstantFamily::lebesgue:
      return lebesgue_constant(w, config, options);
    case ConstantFamily::morrey:
      return morrey_constant(w, config, options);
    case ConstantFamily::log_moment:
      return log_moment_constant(w, config, E, c, options);
    case ConstantFamily::cesaro_lebesgue:
      return cesaro_lebesgue_constant(w, config, options);
    case ConstantFamily::cesaro_log:
      return cesaro_log_constant(w, config, options);
  }
  throw std::invalid_argument("unknown constant family");
}

ConstantFamily parse_constant_family(const std::string& name) {
  if (name == "lebesgue") return ConstantFamily::lebesgue;
  if (name == "morrey") return ConstantFamily::morrey;
  if (name == "log-moment" || name == "log_moment") return ConstantFamily::log_moment;
  if (name == "cesaro-lebesgue" || name == "cesaro_lebesgue") return ConstantFamily::cesaro_lebesgue;
  if (name == "cesaro-log" || name == "cesaro_log") return ConstantFamily::cesaro_log;
  throw std::invalid_argument("unknown constant family '" + name + "'");
}

std::string to_string(ConstantFamily family) {
  switch (family) {
    case ConstantFamily::lebesgue:
      return "lebesgue";
    case ConstantFamily::morrey:
      return "morrey";
    case ConstantFamily::log_moment:
      return "log-moment";
    case ConstantFamily::cesaro_lebesgue:
      return "cesaro-lebesgue";
    case ConstantFamily::cesaro_log:
      return "cesaro-log";
  }
  return "unknown";
}

double closed_form(const std::string& kind, const ClosedFormParams& params) {
  const double p = params.p;
  const double a = params.alpha;
  if (kind == "hardy") {
    require(p > 1.0, "hardy closed form needs p > 1");
    return std::isinf(p) ? 1.0 : p / (p - 1.0);
  }
  if (kind == "riemann_liouville") {
    require(p > 1.0 && std::isfinite(p), "riemann_liouville closed form needs 1 < p < inf");
    require(a > 0.0 && a < 1.0, "riemann_liouville closed form needs 0 < alpha < 1");
    return gamma(1.0 - 1.0 / p) / gamma(1.0 + a - 1.0 / p);
  }
  if (kind == "counterexample_A") {
    require(a > 0.0 && a < 1.0, "counterexample_A closed form needs 0 < alpha < 1");
    return 2.0 / a;
  }
  throw std::invalid_argument("unknown closed form '" + kind + "'");
}

}  // namespace hardy
