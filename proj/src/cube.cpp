// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "hardy/numerics.hpp"

namespace hardy {

namespace {

thread_local std::span<const double> tls_complement;

}  // namespace

std::span<const double> exact_complement() { return tls_complement; }

ComplementScope::ComplementScope(std::span<const double> u) : previous_(tls_complement) { tls_complement = u; }

ComplementScope::~ComplementScope() { tls_complement = previous_; }

namespace {

struct AxisSetup {
  AxisDomain domain;
  EndpointBehavior behavior;
};

using SetupFn = std::function<AxisSetup(std::size_t level, std::span<const double> outer)>;
using LeafFn = std::function<double(std::span<const double> coords)>;

// Iterated adaptive integration: axis 0 outermost. Inner integrals are solved
// to a tenth of the outer tolerance, and their error estimates are folded
// into the outer one.
class IteratedIntegrator {
 public:
  IteratedIntegrator(std::size_t dims, SetupFn setup, LeafFn leaf, std::size_t max_panels)
      : dims_(dims), setup_(std::move(setup)), leaf_(std::move(leaf)), max_panels_(max_panels),
        coords_(dims, 0.0) {}

  QuadratureResult run(Tolerance tol) {
    QuadratureResult r = level(0, tol);
    r.evaluations = std::max<std::size_t>(leaf_evaluations_, 1);
    r.converged = r.converged && all_converged_;
    return r;
  }

 private:
  QuadratureResult level(std::size_t k, Tolerance tol) {
    const AxisSetup setup = setup_(k, std::span<const double>(coords_.data(), k));
    if (k + 1 == dims_) {
      return integrate_interval(
          [&](double x) {
            coords_[k] = x;
            ++leaf_evaluations_;
            return leaf_(coords_);
          },
          setup.domain, setup.behavior, tol, max_panels_);
    }
    // Inner errors are bounded by abs_part + rel_part |inner|, folded in as
    // abs_part * width + rel_part * int |inner|.
    const Tolerance inner_tol = tol.tightened(0.1);
    double abs_part = 0.0;
    double rel_part = 0.0;
    bool sign_change = false;
    int sign = 0;
    QuadratureResult outer = integrate_interval(
        [&](double x) {
          coords_[k] = x;
          const QuadratureResult inner = level(k + 1, inner_tol);
          if (!inner.converged) all_converged_ = false;
          const double mag = std::abs(inner.value);
          if (inner.abs_error_estimate <= 10.0 * inner_tol.abs || mag == 0.0) {
            abs_part = std::max(abs_part, inner.abs_error_estimate);
          } else {
            rel_part = std::max(rel_part, inner.abs_error_estimate / mag);
          }
          const int s = (inner.value > 0.0) - (inner.value < 0.0);
          if (s != 0) {
            if (sign != 0 && s != sign) sign_change = true;
            sign = s;
          }
          return inner.value;
        },
        setup.domain, setup.behavior, tol, max_panels_);
    const double width = std::max(0.0, setup.domain.upper - setup.domain.lower);
    double l1 = std::abs(outer.value);
    if (sign_change && rel_part > 0.0) {
      const QuadratureResult magnitude = integrate_interval(
          [&](double x) {
            coords_[k] = x;
            return std::abs(level(k + 1, {inner_tol.abs, 1e-4}).value);
          },
          setup.domain, setup.behavior, {tol.abs, 1e-4}, max_panels_);
      l1 = magnitude.value + magnitude.abs_error_estimate;
    }
    outer.abs_error_estimate += abs_part * width + rel_part * l1;
    return outer;
  }

  std::size_t dims_;
  SetupFn setup_;
  LeafFn leaf_;
  std::size_t max_panels_;
  std::vector<double> coords_;
  std::size_t leaf_evaluations_ = 0;
  bool all_converged_ = true;
};

AxisDomain full_domain(const CubeOptions& o, std::size_t i) {
  return o.domains.empty() ? AxisDomain{} : o.domains[i];
}

void push_if_inside(std::vector<double>& out, double x, double lo, double hi) {
  if (x > lo && x < hi) out.push_back(x);
}

// Duffy pyramid k in the complement variables u = 1 - t: u_k = s,
// u_j = s v_j (j != k), jacobian s^{m-1}. The corner singularity
// |u|^c turns into s^{c + m - 1}, an endpoint singularity of the s axis.
struct Pyramid {
  std::size_t m;
  std::size_t k;
  const CubeOptions* options;
  std::span<const EndpointBehavior> behaviors;
  double corner;

  std::size_t axis_of_level(std::size_t level) const {
    if (level == 0) return k;
    const std::size_t j = level - 1;
    return j < k ? j : j + 1;
  }

  AxisSetup setup(std::size_t level, std::span<const double> outer) const {
    AxisSetup out;
    if (level == 0) {
      const AxisDomain d = full_domain(*options, k);
      out.domain.lower = 1.0 - d.upper;
      out.domain.upper = 1.0 - d.lower;
      for (double b : d.breakpoints) push_if_inside(out.domain.breakpoints, 1.0 - b, out.domain.lower, out.domain.upper);
      double at_zero = corner + static_cast<double>(m) - 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        at_zero += behaviors[i].exponent_at_one;
        if (i == k) continue;
        const AxisDomain dj = full_domain(*options, i);
        push_if_inside(out.domain.breakpoints, 1.0 - dj.upper, out.domain.lower, out.domain.upper);
        push_if_inside(out.domain.breakpoints, 1.0 - dj.lower, out.domain.lower, out.domain.upper);
      }
      out.behavior.exponent_at_zero = at_zero;
      out.behavior.exponent_at_one = behaviors[k].exponent_at_zero;
      out.behavior.log_exponent_at_one = behaviors[k].log_exponent_at_zero;
      return out;
    }
    const std::size_t axis = axis_of_level(level);
    const double s = outer[0];
    const AxisDomain d = full_domain(*options, axis);
    out.domain.lower = std::clamp((1.0 - d.upper) / s, 0.0, 1.0);
    out.domain.upper = std::clamp((1.0 - d.lower) / s, 0.0, 1.0);
    for (double b : d.breakpoints) push_if_inside(out.domain.breakpoints, (1.0 - b) / s, out.domain.lower, out.domain.upper);
    out.behavior.exponent_at_zero = behaviors[axis].exponent_at_one;
    return out;
  }

  double leaf(const CubeIntegrand& f, std::span<const double> y, std::vector<double>& t, std::vector<double>& u) const {
    const double s = y[0];
    u[k] = s;
    for (std::size_t level = 1; level < m; ++level) u[axis_of_level(level)] = s * y[level];
    for (std::size_t i = 0; i < m; ++i) t[i] = 1.0 - u[i];
    const ComplementScope scope(u);
    return f(t) * std::pow(s, static_cast<double>(m) - 1.0);
  }
};

QuadratureResult tensor_iterated(const CubeIntegrand& f, std::span<const EndpointBehavior> behaviors,
                                 const CubeOptions& options) {
  const std::size_t m = behaviors.size();
  IteratedIntegrator integrator(
      m,
      [&](std::size_t level, std::span<const double>) {
        return AxisSetup{full_domain(options, level), behaviors[level]};
      },
      [&](std::span<const double> coords) {
        const ComplementScope none({});
        return f(coords);
      },
      options.max_panels);
  return integrator.run(options.tol);
}

QuadratureResult duffy_iterated(const CubeIntegrand& f, std::span<const EndpointBehavior> behaviors,
                                const CubeOptions& options) {
  const std::size_t m = behaviors.size();
  QuadratureResult total{0.0, 0.0, 0, true};
  CompensatedSum value;
  std::vector<double> t(m, 0.0);
  std::vector<double> u(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    Pyramid pyramid{m, k, &options, behaviors, *options.corner_exponent};
    IteratedIntegrator integrator(
        m, [&](std::size_t level, std::span<const double> outer) { return pyramid.setup(level, outer); },
        [&](std::span<const double> y) { return pyramid.leaf(f, y, t, u); }, options.max_panels);
    const QuadratureResult r = integrator.run(options.tol.tightened(1.0 / static_cast<double>(m)));
    value.add(r.value);
    total.abs_error_estimate += r.abs_error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  total.value = value.value();
  return total;
}

// Importance map for one axis of the Monte Carlo rule: the lower half of u
// feeds the left-singular map, the upper half the right-singular one.
struct AxisSampler {
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  double k_left = 1.0;
  double k_right = 1.0;

  AxisSampler(const AxisDomain& d, const EndpointBehavior& b) : lo(d.lower), hi(d.upper) {
    mid = 0.5 * (lo + hi);
    if (lo == 0.0 && b.exponent_at_zero != 0.0) {
      k_left = std::clamp(2.0 / (1.0 + std::max(b.exponent_at_zero, -0.999)), 1.0, 64.0);
    }
    if (hi == 1.0 && b.exponent_at_one != 0.0) {
      k_right = std::clamp(2.0 / (1.0 + std::max(b.exponent_at_one, -0.999)), 1.0, 64.0);
    }
  }

  // Returns (t, jacobian).
  std::pair<double, double> map(double u) const {
    if (u < 0.5) {
      const double w = 2.0 * u;
      const double len = mid - lo;
      const double t = lo + len * std::pow(w, k_left);
      return {t, 2.0 * len * k_left * std::pow(w, k_left - 1.0)};
    }
    const double w = 2.0 * (1.0 - u);
    const double len = hi - mid;
    const double t = hi - len * std::pow(w, k_right);
    return {t, 2.0 * len * k_right * std::pow(w, k_right - 1.0)};
  }
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

QuadratureResult monte_carlo(const CubeIntegrand& f, std::span<const EndpointBehavior> behaviors,
                             const CubeOptions& options) {
  const std::size_t m = behaviors.size();
  constexpr std::size_t kReplicates = 16;
  const std::size_t per_rep = std::max<std::size_t>(options.budget / kReplicates, 1);
  const bool corner = options.corner_exponent.has_value();

  // In corner mode the sampled variables are the Duffy coordinates (s, v).
  std::vector<AxisSampler> samplers;
  if (corner) {
    double at_zero = *options.corner_exponent + static_cast<double>(m) - 1.0;
    double worst_zero = 0.0;
    double worst_one = 0.0;
    for (const auto& b : behaviors) {
      at_zero += b.exponent_at_one;
      worst_zero = std::min(worst_zero, b.exponent_at_zero);
      worst_one = std::min(worst_one, b.exponent_at_one);
    }
    samplers.emplace_back(AxisDomain{}, EndpointBehavior{at_zero, worst_zero, 0.0, 0.0});
    for (std::size_t j = 1; j < m; ++j) samplers.emplace_back(AxisDomain{}, EndpointBehavior{worst_one, 0.0, 0.0, 0.0});
  } else {
    for (std::size_t i = 0; i < m; ++i) samplers.emplace_back(full_domain(options, i), behaviors[i]);
  }

  auto inside = [&](std::span<const double> t) {
    for (std::size_t i = 0; i < m; ++i) {
      const AxisDomain d = full_domain(options, i);
      if (t[i] < d.lower || t[i] > d.upper) return false;
    }
    return true;
  };

  std::vector<double> rep_means;
  std::vector<double> y(m);
  std::vector<double> t(m);
  std::vector<double> u(m);
  std::vector<std::vector<std::size_t>> perms(m, std::vector<std::size_t>(per_rep));
  std::size_t evaluations = 0;
  for (std::size_t rep = 0; rep < kReplicates; ++rep) {
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + rep + 1);
    for (auto& perm : perms) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = per_rep; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    }
    CompensatedSum sum;
    for (std::size_t n = 0; n < per_rep; ++n) {
      double jac = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double u = (static_cast<double>(perms[i][n]) + uniform01(rng)) / static_cast<double>(per_rep);
        const auto [x, dx] = samplers[i].map(u);
        y[i] = x;
        jac *= (x > samplers[i].lo && x < samplers[i].hi) ? dx : 0.0;
      }
      if (jac == 0.0) continue;
      double v = 0.0;
      if (corner) {
        const double s = y[0];
        const double js = std::pow(s, static_cast<double>(m) - 1.0);
        for (std::size_t k = 0; k < m; ++k) {
          u[k] = s;
          std::size_t level = 1;
          for (std::size_t i = 0; i < m; ++i) {
            if (i != k) u[i] = s * y[level++];
          }
          for (std::size_t i = 0; i < m; ++i) t[i] = 1.0 - u[i];
          const bool on_edge = std::any_of(t.begin(), t.end(), [](double x) { return x <= 0.0; });
          if (!on_edge && inside(t)) {
            const ComplementScope scope(u);
            v += f(t) * js;
          }
          ++evaluations;
        }
      } else {
        v = f(y);
        ++evaluations;
      }
      if (!std::isfinite(v)) throw EvaluationError("Monte Carlo integrand is not finite");
      sum.add(v * jac);
    }
    rep_means.push_back(sum.value() / static_cast<double>(per_rep));
  }

  CompensatedSum mean_sum;
  for (double v : rep_means) mean_sum.add(v);
  const double mean = mean_sum.value() / static_cast<double>(kReplicates);
  CompensatedSum var_sum;
  for (double v : rep_means) var_sum.add((v - mean) * (v - mean));
  const double variance = var_sum.value() / static_cast<double>(kReplicates - 1);
  const double standard_error = std::sqrt(variance / static_cast<double>(kReplicates));

  QuadratureResult r;
  r.value = mean;
  r.abs_error_estimate = standard_error;
  r.evaluations = std::max<std::size_t>(evaluations, 1);
  r.converged = standard_error <= options.tol.target(mean);
  return r;
}

QuadratureResult divergent() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf, 1, false};
}

}  // namespace

QuadratureResult integrate_unit_cube(const CubeIntegrand& f, std::span<const EndpointBehavior> behaviors,
                                     const CubeOptions& options) {
  const std::size_t m = behaviors.size();
  if (m == 0) throw std::invalid_argument("integrate_unit_cube: dimension must be at least 1");
  if (options.budget == 0) throw std::invalid_argument("integrate_unit_cube: budget must be at least 1");
  if (!options.domains.empty() && options.domains.size() != m) {
    throw std::invalid_argument("integrate_unit_cube: one domain per axis required");
  }
  if (options.interior_singularity) {
    throw std::invalid_argument(
        "integrate_unit_cube: integrands unbounded on an interior manifold are not supported");
  }

  if (options.corner_exponent) {
    const double c = *options.corner_exponent;
    if (!(c > -static_cast<double>(m))) return divergent();
    if (m == 1) {
      std::vector<EndpointBehavior> b(behaviors.begin(), behaviors.end());
      b[0].exponent_at_one += c;
      CubeOptions plain = options;
      plain.corner_exponent.reset();
      return integrate_unit_cube(f, b, plain);
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const AxisDomain d = full_domain(options, i);
    if (d.lower == 0.0 && !behaviors[i].integrable_at_zero()) return divergent();
    if (!options.corner_exponent && d.upper == 1.0 && !behaviors[i].integrable_at_one()) return divergent();
  }

  if (m >= 4) return monte_carlo(f, behaviors, options);
  return options.corner_exponent ? duffy_iterated(f, behaviors, options) : tensor_iterated(f, behaviors, options);
}

}  // namespace hardy
