// SPDX-License-Identifier: Apache-2.0

#include "hardy/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxAxisBreakpoints = 2000;

enum class Family { hardy, cesaro };

void validate(const OperatorRequest& req, bool commutator) {
  const std::size_t m = req.weight.arity();
  if (req.f.size() != m) throw std::invalid_argument("need one function per weight axis");
  if (commutator) {
    if (!req.b || req.b->size() != m) throw std::invalid_argument("commutator needs one symbol per weight axis");
  } else if (req.b) {
    throw std::invalid_argument("symbols are only accepted by the commutators");
  }
  if (!(req.r > 0.0) || !std::isfinite(req.r)) throw std::invalid_argument("radius must be positive");
  if (req.n < 1) throw std::invalid_argument("dimension must be at least 1");
}

QuadratureResult divergent() {
  return {kInf, kInf, 1, false};
}

void add_breakpoint(std::vector<double>& out, double t, const AxisDomain& d) {
  if (t > d.lower && t < d.upper && std::isfinite(t)) out.push_back(t);
}

// Domain, breakpoints and endpoint model for axis i.
struct Axis {
  AxisDomain domain;
  EndpointBehavior behavior;
};

Axis hardy_axis(const RadialFunction& f, const RadialFunction* b, const EndpointBehavior& w,
                const std::vector<double>& w_breaks, double r) {
  Axis a;
  a.domain.lower = std::clamp(f.support_lower() / r, 0.0, 1.0);
  a.domain.upper = std::clamp(f.support_upper() / r, 0.0, 1.0);
  std::vector<double>& bp = a.domain.breakpoints;
  for (double x : w_breaks) add_breakpoint(bp, x, a.domain);
  for (double x : f.breakpoints()) add_breakpoint(bp, x / r, a.domain);
  if (f.half_period() > 0.0) {
    const double h = f.half_period() / r;
    for (double k = 1.0; k * h < a.domain.upper && bp.size() < kMaxAxisBreakpoints; k += 1.0) {
      add_breakpoint(bp, k * h, a.domain);
    }
  }
  a.behavior = w;
  a.behavior.exponent_at_zero += f.exponent_at_zero();
  a.behavior.log_exponent_at_zero += f.log_exponent_at_zero();
  if (b) {
    for (double x : b->breakpoints()) add_breakpoint(bp, x / r, a.domain);
    if (b->half_period() > 0.0) {
      const double h = b->half_period() / r;
      for (double k = 1.0; k * h < a.domain.upper && bp.size() < kMaxAxisBreakpoints; k += 1.0) {
        add_breakpoint(bp, k * h, a.domain);
      }
    }
    a.behavior.exponent_at_zero += std::min(b->exponent_at_zero(), 0.0);
    a.behavior.log_exponent_at_zero += b->log_exponent_at_zero();
  }
  std::sort(bp.begin(), bp.end());
  return a;
}

Axis cesaro_axis(const RadialFunction& f, const RadialFunction* b, const EndpointBehavior& w,
                 const std::vector<double>& w_breaks, double r, int n) {
  Axis a;
  a.domain.lower = std::isinf(f.support_upper()) ? 0.0 : std::clamp(r / f.support_upper(), 0.0, 1.0);
  a.domain.upper = f.support_lower() > 0.0 ? std::clamp(r / f.support_lower(), 0.0, 1.0) : 1.0;
  std::vector<double>& bp = a.domain.breakpoints;
  for (double x : w_breaks) add_breakpoint(bp, x, a.domain);
  for (double x : f.breakpoints()) add_breakpoint(bp, r / x, a.domain);
  auto oscillation = [&](double half_period) {
    // Zeros of sin(pi r / (h t)) inside the domain.
    const double lo = std::max(a.domain.lower, 1e-300);
    const double k_max = r / (half_period * lo);
    const double k_min = r / (half_period * a.domain.upper);
    for (double k = std::ceil(k_min); k <= k_max && bp.size() < kMaxAxisBreakpoints; k += 1.0) {
      if (k > 0.0) add_breakpoint(bp, r / (half_period * k), a.domain);
    }
  };
  if (f.half_period() > 0.0) oscillation(f.half_period());
  const double inf_exp = f.exponent_at_infinity().value_or(0.0);
  a.behavior = w;
  a.behavior.exponent_at_zero += -inf_exp - n;
  a.behavior.log_exponent_at_zero += f.log_exponent_at_infinity();
  if (b) {
    for (double x : b->breakpoints()) add_breakpoint(bp, r / x, a.domain);
    if (b->half_period() > 0.0) oscillation(b->half_period());
    a.behavior.exponent_at_zero += -std::max(b->exponent_at_infinity().value_or(0.0), 0.0);
    a.behavior.log_exponent_at_zero += b->log_exponent_at_infinity();
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return a;
}

QuadratureResult apply(const OperatorRequest& req, Family family, bool commutator) {
  validate(req, commutator);
  const Weight& w = req.weight;
  const std::size_t m = w.arity();
  if (w.identically_zero()) return {0.0, 0.0, 1, true};
  for (const auto& f : req.f) {
    if (f.identically_zero()) return {0.0, 0.0, 1, true};
  }
  if (commutator) {
    for (const auto& b : *req.b) {
      if (b.identically_zero() || (b.descriptor() && b.descriptor()->exponent == 0.0 &&
                                   b.descriptor()->lower == 0.0 && std::isinf(b.descriptor()->upper))) {
        return {0.0, 0.0, 1, true};
      }
    }
  }

  std::vector<Axis> axes;
  for (std::size_t i = 0; i < m; ++i) {
    const RadialFunction* b = commutator ? &(*req.b)[i] : nullptr;
    axes.push_back(family == Family::hardy
                       ? hardy_axis(req.f[i], b, w.behaviors()[i], w.breakpoints()[i], req.r)
                       : cesaro_axis(req.f[i], b, w.behaviors()[i], w.breakpoints()[i], req.r, req.n));
    if (!(axes.back().domain.lower < axes.back().domain.upper)) return {0.0, 0.0, 1, true};
  }

  std::vector<double> b_at_r;
  if (commutator) {
    for (const auto& b : *req.b) b_at_r.push_back(b(req.r));
  }
  const double r = req.r;
  const int n = req.n;
  CubeIntegrand integrand = [&](std::span<const double> t) {
    double v = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double arg = family == Family::hardy ? t[i] * r : r / t[i];
      double fi = req.f[i](arg);
      if (fi == 0.0) return 0.0;
      if (family == Family::cesaro) fi *= std::pow(t[i], -n);
      if (commutator) fi *= b_at_r[i] - (*req.b)[i](arg);
      v *= fi;
    }
    return v == 0.0 ? 0.0 : v * w(t);
  };

  std::vector<EndpointBehavior> behaviors;
  CubeOptions options;
  options.tol = req.tol;
  options.seed = req.seed;
  options.budget = req.budget;
  bool corner_reachable = true;
  for (const Axis& a : axes) {
    behaviors.push_back(a.behavior);
    options.domains.push_back(a.domain);
    corner_reachable = corner_reachable && a.domain.upper == 1.0;
  }
  if (corner_reachable) options.corner_exponent = w.corner_exponent();
  for (std::size_t i = 0; i < m; ++i) {
    if (axes[i].domain.lower == 0.0 && !behaviors[i].integrable_at_zero()) return divergent();
  }
  return integrate_unit_cube(integrand, behaviors, options);
}

}  // namespace

QuadratureResult hardy_apply(const OperatorRequest& req) { return apply(req, Family::hardy, false); }
QuadratureResult cesaro_apply(const OperatorRequest& req) { return apply(req, Family::cesaro, false); }
QuadratureResult hardy_commutator_apply(const OperatorRequest& req) { return apply(req, Family::hardy, true); }
QuadratureResult cesaro_commutator_apply(const OperatorRequest& req) { return apply(req, Family::cesaro, true); }

QuadratureResult riemann_liouville_apply(double alpha, const RadialFunction& f, double x, Tolerance tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("need 0 < alpha < 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("need x > 0");
  if (f.identically_zero()) return {0.0, 0.0, 1, true};
  // Distance to x as the variable: t = x (1 - v), so the kernel sits at v = 0.
  AxisDomain d;
  d.lower = std::clamp(1.0 - f.support_upper() / x, 0.0, 1.0);
  d.upper = std::clamp(1.0 - f.support_lower() / x, 0.0, 1.0);
  if (!(d.lower < d.upper)) return {0.0, 0.0, 1, true};
  for (double b : f.breakpoints()) add_breakpoint(d.breakpoints, 1.0 - b / x, d);
  if (f.half_period() > 0.0) {
    const double h = f.half_period() / x;
    for (double k = 1.0; k * h < 1.0 && d.breakpoints.size() < kMaxAxisBreakpoints; k += 1.0) {
      add_breakpoint(d.breakpoints, 1.0 - k * h, d);
    }
  }
  std::sort(d.breakpoints.begin(), d.breakpoints.end());
  EndpointBehavior beh;
  beh.exponent_at_zero = alpha - 1.0;
  beh.exponent_at_one = f.exponent_at_zero();
  beh.log_exponent_at_one = f.log_exponent_at_zero();
  if (d.upper == 1.0 && !beh.integrable_at_one()) return divergent();
  const double scale = std::pow(x, alpha) / gamma(alpha);
  QuadratureResult q = integrate_interval(
      [&](double v) {
        const double fv = f(x * (1.0 - v));
        return fv == 0.0 ? 0.0 : fv * std::pow(v, alpha - 1.0);
      },
      d, beh, tol);
  q.value *= scale;
  q.abs_error_estimate *= scale;
  return q;
}

QuadratureResult weyl_apply(double alpha, const RadialFunction& f, double x, Tolerance tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("need 0 < alpha < 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("need x > 0");
  if (f.identically_zero() || f.support_upper() <= x) return {0.0, 0.0, 1, true};
  // y = t - x on (0, inf).
  HalfLineOptions o;
  o.tol = tol;
  o.exponent_at_zero = f.support_lower() > x ? 0.0 : alpha - 1.0;
  for (double b : f.breakpoints()) {
    if (b > x) o.breakpoints.push_back(b - x);
  }
  if (std::isinf(f.support_upper())) {
    const auto& e = f.exponent_at_infinity();
    const double decay = 2.0 - alpha - e.value_or(0.0);
    if (decay <= 1.0) return divergent();
    o.decay_exponent = decay;
  }
  QuadratureResult q = integrate_halfline(
      [&](double y) {
        const double fv = f(x + y);
        return fv == 0.0 ? 0.0 : fv * std::pow(y, alpha - 1.0) / (x + y);
      },
      o);
  const double scale = 1.0 / gamma(alpha);
  q.value *= scale;
  q.abs_error_estimate *= scale;
  return q;
}

}  // namespace hardy
