// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hardy/numerics.hpp"

namespace hardy {

double Tolerance::target(double value) const { return std::max(abs, rel * std::abs(value)); }

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

constexpr double kExponentEps = 1e-12;

bool integrable_end(double exponent, double log_exponent) {
  if (exponent > -1.0 + kExponentEps) return true;
  return std::abs(exponent + 1.0) <= kExponentEps && log_exponent < -1.0;
}

}  // namespace

EndpointBehavior EndpointBehavior::power(double at_zero, double at_one) {
  if (!(at_zero > -1.0) || !(at_one > -1.0)) {
    throw std::invalid_argument("EndpointBehavior: exponents must exceed -1");
  }
  return {at_zero, at_one, 0.0, 0.0};
}

bool EndpointBehavior::integrable_at_zero() const {
  return integrable_end(exponent_at_zero, log_exponent_at_zero);
}

bool EndpointBehavior::integrable_at_one() const {
  return integrable_end(exponent_at_one, log_exponent_at_one);
}

bool EndpointBehavior::singular_at_zero() const {
  return exponent_at_zero != 0.0 || log_exponent_at_zero != 0.0;
}

bool EndpointBehavior::singular_at_one() const {
  return exponent_at_one != 0.0 || log_exponent_at_one != 0.0;
}

EndpointBehavior EndpointBehavior::times_power(double e) const {
  EndpointBehavior out = *this;
  out.exponent_at_zero += e;
  return out;
}

EndpointBehavior EndpointBehavior::times_log(double c) const {
  EndpointBehavior out = *this;
  out.log_exponent_at_zero += 1.0;
  // log(1/t) vanishes linearly at t = 1; log(c/t) with c > 1 does not.
  if (c == 1.0) out.exponent_at_one += 1.0;
  return out;
}

EndpointBehavior EndpointBehavior::times(const EndpointBehavior& other) const {
  return {exponent_at_zero + other.exponent_at_zero, exponent_at_one + other.exponent_at_one,
          log_exponent_at_zero + other.log_exponent_at_zero,
          log_exponent_at_one + other.log_exponent_at_one};
}

// QUADPACK qk21 nodes and weights.
namespace {

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208814566312, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace

PanelEstimate gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 21> values{};
  values[20] = f(center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    values[2 * j] = f(center - dx);
    values[2 * j + 1] = f(center + dx);
  }

  double kronrod = kWgk[10] * values[20];
  double gauss = 0.0;
  double abs_sum = kWgk[10] * std::abs(values[20]);
  for (std::size_t j = 0; j < 10; ++j) {
    const double pair = values[2 * j] + values[2 * j + 1];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(values[2 * j]) + std::abs(values[2 * j + 1]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(values[20] - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    asc += kWgk[j] * (std::abs(values[2 * j] - mean) + std::abs(values[2 * j + 1] - mean));
  }

  PanelEstimate out;
  out.kronrod = kronrod * half;
  out.gauss = gauss * half;
  out.abs_integral = abs_sum * abs_half;
  const double resasc = asc * abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (out.abs_integral > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * out.abs_integral, err);
  }
  out.abs_error = err;
  return out;
}

namespace {

enum class MapKind { linear, power_left, power_right, log_left, log_right, exp_left, exp_right };

// A piece [a, b] of the domain together with the map u in (0,1) -> t.
struct Segment {
  MapKind kind = MapKind::linear;
  double a = 0.0;
  double b = 1.0;
  double k = 1.0;  // power for power/log maps, log ratio for exp maps
  double u_begin = 0.0;
  double u_end = 1.0;
};

// Power maps stop at these distances from the singular end (below them t or
// 1 - t loses relative accuracy); the remainder is added from the model.
constexpr double kPowerLeftFloor = 1e-100;
constexpr double kPowerRightFloor = 0x1p-30;  // 1 - x and 1 - 4x are exact

// Log maps stop where t (or 1 - t) stops being representable; the rest is
// added in closed form from the log-power model.
constexpr double kLogLeftDepth = 300.0;
constexpr double kLogRightDepth = 20.0;

struct MappedPoint {
  double t;
  double jacobian;
  bool degenerate;  // t collapsed onto a singular endpoint
};

MappedPoint map_point(const Segment& s, double u) {
  switch (s.kind) {
    case MapKind::linear:
      return {s.a + (s.b - s.a) * u, s.b - s.a, false};
    case MapKind::power_left: {
      const double t = s.b * std::pow(u, s.k);
      const double jac = s.b * s.k * std::pow(u, s.k - 1.0);
      return {t, jac, t <= 0.0};
    }
    case MapKind::power_right: {
      const double w = 1.0 - u;
      const double d = (1.0 - s.a) * std::pow(w, s.k);
      const double jac = (1.0 - s.a) * s.k * std::pow(w, s.k - 1.0);
      const double t = 1.0 - d;
      return {t, jac, d <= 0.0 || t >= 1.0};
    }
    case MapKind::log_left: {
      const double w = std::pow(1.0 - u, s.k);
      if (w <= 0.0) return {0.0, 0.0, true};
      const double t = s.b * std::exp(1.0 - 1.0 / w);
      const double jac = t * s.k / std::pow(1.0 - u, s.k + 1.0);
      return {t, jac, t <= 0.0 || !std::isfinite(jac)};
    }
    case MapKind::log_right: {
      const double w = std::pow(1.0 - u, s.k);
      if (w <= 0.0) return {1.0, 0.0, true};
      const double d = (1.0 - s.a) * std::exp(1.0 - 1.0 / w);
      const double jac = d * s.k / std::pow(1.0 - u, s.k + 1.0);
      const double t = 1.0 - d;
      return {t, jac, d <= 0.0 || t >= 1.0 || !std::isfinite(jac)};
    }
    case MapKind::exp_left: {
      const double t = s.a * std::exp(u * s.k);
      return {t, t * s.k, false};
    }
    case MapKind::exp_right: {
      const double d = (1.0 - s.a) * std::exp(-u * s.k);
      return {1.0 - d, d * s.k, false};
    }
  }
  return {0.0, 0.0, true};
}

double power_map_order(double exponent) { return std::clamp(2.0 / (1.0 + exponent), 1.0, 64.0); }

double log_map_order(double log_exponent) {
  // After t = b e^{-s} and s = 1/w - 1 the integrand behaves like w^{-g-2}.
  return power_map_order(-log_exponent - 2.0);
}

double log_u_end(double k, double depth) { return 1.0 - std::pow(1.0 / (1.0 + depth), 1.0 / k); }

Segment choose_segment(double a, double b, const EndpointBehavior& beh) {
  constexpr double kNearRatio = 4.0;
  if (a == 0.0 && beh.singular_at_zero()) {
    if (std::abs(beh.exponent_at_zero + 1.0) <= kExponentEps) {
      const double k = log_map_order(beh.log_exponent_at_zero);
      return {MapKind::log_left, a, b, k, 0.0, log_u_end(k, kLogLeftDepth)};
    }
    const double k = power_map_order(beh.exponent_at_zero);
    return {MapKind::power_left, a, b, k, std::pow(kPowerLeftFloor / b, 1.0 / k), 1.0};
  }
  if (b == 1.0 && beh.singular_at_one()) {
    if (std::abs(beh.exponent_at_one + 1.0) <= kExponentEps) {
      const double k = log_map_order(beh.log_exponent_at_one);
      return {MapKind::log_right, a, b, k, 0.0, log_u_end(k, kLogRightDepth)};
    }
    const double k = power_map_order(beh.exponent_at_one);
    return {MapKind::power_right, a, b, k, 0.0, 1.0 - std::pow(kPowerRightFloor / (1.0 - a), 1.0 / k)};
  }
  const bool strong_zero = beh.exponent_at_zero < 0.0 || beh.log_exponent_at_zero != 0.0;
  if (a > 0.0 && strong_zero && b <= 0.5 && b / a >= kNearRatio) {
    return {MapKind::exp_left, a, b, std::log(b / a), 0.0, 1.0};
  }
  const bool strong_one = beh.exponent_at_one < 0.0 || beh.log_exponent_at_one != 0.0;
  if (b < 1.0 && strong_one && a >= 0.5 && (1.0 - a) / (1.0 - b) >= kNearRatio) {
    return {MapKind::exp_right, a, b, std::log((1.0 - a) / (1.0 - b)), 0.0, 1.0};
  }
  return {MapKind::linear, a, b, 1.0, 0.0, 1.0};
}

// Integral of h(s) = C (s + s0)^g over (S, inf), with s0 fitted from h at
// S and S/2; a second fit from S/2 and S/4 gives the error estimate.
double shifted_tail(double h_far, double h_near, double far, double near, double g) {
  const double plain = h_far * far / (-g - 1.0);
  if (h_far == 0.0 || h_near == 0.0 || (h_far > 0.0) != (h_near > 0.0)) return plain;
  const double q = std::pow(h_far / h_near, 1.0 / g);
  if (!(q > 1.0)) return plain;
  const double s0 = (far - q * near) / (q - 1.0);
  if (!(far + s0 > 0.0)) return plain;
  return h_far * (far + s0) / (-g - 1.0);
}

QuadratureResult log_tail(const std::function<double(double)>& h, double depth, double g) {
  const double h1 = h(depth);
  const double h2 = h(0.5 * depth);
  const double h4 = h(0.25 * depth);
  const double fine = shifted_tail(h1, h2, depth, 0.5 * depth, g);
  // Same fit one octave closer, transported to S through the model.
  const double q = std::pow(h2 / h4, 1.0 / g);
  double coarse = h1 * depth / (-g - 1.0);
  if (std::isfinite(q) && q > 1.0) {
    const double s0 = (0.5 * depth - q * 0.25 * depth) / (q - 1.0);
    if (0.5 * depth + s0 > 0.0) {
      const double c = h2 / std::pow(0.5 * depth + s0, g);
      coarse = c * std::pow(depth + s0, g + 1.0) / (-g - 1.0);
    }
  }
  QuadratureResult r;
  r.value = std::isfinite(fine) ? fine : coarse;
  r.abs_error_estimate = std::abs(fine - coarse) + 1e-15 * std::abs(r.value);
  r.evaluations = 3;
  return r;
}

// Integral of h over (0, x) for h(y) ~ C y^b (log 1/y)^g, from the
// integration-by-parts series; h4 = h(4x) checks the model.
QuadratureResult power_tail(double h1, double h4, double x, double b, double g) {
  QuadratureResult r;
  r.evaluations = 2;
  if (h1 == 0.0) {
    r.value = 0.0;
    r.abs_error_estimate = std::abs(h4) * 4.0 * x;
    return r;
  }
  const double L = std::log(1.0 / x);
  const double z = g / ((1.0 + b) * L);
  const double series = 1.0 + z + z * (g - 1.0) / ((1.0 + b) * L);
  r.value = h1 * x / (1.0 + b) * series;
  const double next = std::abs(r.value * z * (g - 1.0) * (g - 2.0) / ((1.0 + b) * (1.0 + b) * L * L));
  const double predicted = std::pow(4.0, b) * std::pow(std::log(1.0 / (4.0 * x)) / L, g);
  double drift = 0.0;
  if (h4 != 0.0 && (h4 > 0.0) == (h1 > 0.0)) {
    drift = std::abs(std::log((h4 / h1) / predicted) / std::log(4.0)) / (1.0 + b);
  } else {
    drift = 1.0;
  }
  r.abs_error_estimate = next + std::abs(r.value) * drift + 1e-15 * std::abs(r.value);
  return r;
}

// A failed probe yields a non-finite tail, which makes the caller fall back
// to the untruncated map.
template <class Fn>
QuadratureResult guarded_tail(Fn&& fn) {
  try {
    return fn();
  } catch (const EvaluationError&) {
    QuadratureResult r;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.evaluations = 2;
    return r;
  }
}

struct Panel {
  std::size_t segment;
  double u0;
  double u1;
  double value;
  double error;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    if (x.segment != y.segment) return x.segment > y.segment;
    return x.u0 > y.u0;
  }
};

QuadratureResult divergent_result() {
  QuadratureResult r;
  r.value = std::numeric_limits<double>::infinity();
  r.abs_error_estimate = std::numeric_limits<double>::infinity();
  r.evaluations = 1;
  r.converged = false;
  return r;
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, const AxisDomain& domain,
                                    const EndpointBehavior& behavior, Tolerance tol,
                                    std::size_t max_panels) {
  const double lo = domain.lower;
  const double hi = domain.upper;
  if (!(lo >= 0.0) || !(hi <= 1.0)) {
    throw std::invalid_argument("integrate_interval: domain must lie in [0,1]");
  }
  if (!(lo < hi)) return {0.0, 0.0, 1, true};
  if ((lo == 0.0 && !behavior.integrable_at_zero()) || (hi == 1.0 && !behavior.integrable_at_one())) {
    return divergent_result();
  }

  std::vector<double> cuts{lo, hi};
  for (double bp : domain.breakpoints) {
    if (bp > lo && bp < hi) cuts.push_back(bp);
  }
  if (lo < 0.5 && hi > 0.5) cuts.push_back(0.5);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) segments.push_back(choose_segment(cuts[i], cuts[i + 1], behavior));
  }

  std::size_t evaluations = 0;
  auto panel_of = [&](std::size_t seg, double u0, double u1) {
    const Segment& s = segments[seg];
    auto g = [&](double u) {
      const MappedPoint p = map_point(s, u);
      if (p.degenerate || p.jacobian == 0.0) return 0.0;
      const double v = f(p.t);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "integrand is not finite at t = " << p.t;
        throw EvaluationError(msg.str());
      }
      const double out = v * p.jacobian;
      if (!std::isfinite(out)) {
        // The jacobian only blows up where the mapped point collapses.
        return 0.0;
      }
      return out;
    };
    const PanelEstimate est = gauss_kronrod21(g, u0, u1);
    evaluations += 21;
    return Panel{seg, u0, u1, est.kronrod, est.abs_error};
  };

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  std::vector<Panel> finished;
  double total_value = 0.0;
  double total_error = 0.0;
  CompensatedSum tail_value;
  double tail_error = 0.0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    if (seg.kind == MapKind::log_left || seg.kind == MapKind::log_right) {
      const bool left = seg.kind == MapKind::log_left;
      auto h = [&](double depth) {
        if (left) {
          const double t = seg.b * std::exp(-depth);
          return f(t) * t;
        }
        const double t = 1.0 - (1.0 - seg.a) * std::exp(-depth);
        return f(t) * (1.0 - t);
      };
      const double g = left ? behavior.log_exponent_at_zero : behavior.log_exponent_at_one;
      const QuadratureResult tail = log_tail(h, left ? kLogLeftDepth : kLogRightDepth, g);
      if (!std::isfinite(tail.value)) throw EvaluationError("integrand is not finite near a logarithmic endpoint");
      tail_value.add(tail.value);
      tail_error += tail.abs_error_estimate;
      evaluations += tail.evaluations;
    }
    if (seg.kind == MapKind::power_left && seg.u_begin > 0.0) {
      const double x = kPowerLeftFloor;
      const QuadratureResult tail = guarded_tail(
          [&] { return power_tail(f(x), f(4.0 * x), x, behavior.exponent_at_zero, behavior.log_exponent_at_zero); });
      if (std::isfinite(tail.value) && std::isfinite(tail.abs_error_estimate)) {
        tail_value.add(tail.value);
        tail_error += tail.abs_error_estimate;
      } else {
        segments[s].u_begin = 0.0;
      }
      evaluations += tail.evaluations;
    }
    if (seg.kind == MapKind::power_right && seg.u_end < 1.0) {
      const double x = kPowerRightFloor;
      const QuadratureResult tail = guarded_tail([&] {
        return power_tail(f(1.0 - x), f(1.0 - 4.0 * x), x, behavior.exponent_at_one, behavior.log_exponent_at_one);
      });
      if (std::isfinite(tail.value) && std::isfinite(tail.abs_error_estimate)) {
        tail_value.add(tail.value);
        tail_error += tail.abs_error_estimate;
      } else {
        segments[s].u_end = 1.0;
      }
      evaluations += tail.evaluations;
    }
    Panel p = panel_of(s, seg.u_begin, seg.u_end);
    total_value += p.value;
    total_error += p.error;
    queue.push(p);
  }

  total_value += tail_value.value();
  total_error += tail_error;
  std::size_t panels = queue.size();
  bool converged = false;
  while (true) {
    if (total_error <= tol.target(total_value)) {
      converged = true;
      break;
    }
    if (queue.empty() || panels >= max_panels) break;
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.u0 + worst.u1);
    if (!(mid > worst.u0 && mid < worst.u1) || (worst.u1 - worst.u0) < 1e-15) {
      finished.push_back(worst);
      continue;
    }
    Panel left = panel_of(worst.segment, worst.u0, mid);
    Panel right = panel_of(worst.segment, mid, worst.u1);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  while (!queue.empty()) {
    finished.push_back(queue.top());
    queue.pop();
  }
  std::sort(finished.begin(), finished.end(), [](const Panel& x, const Panel& y) {
    return x.segment != y.segment ? x.segment < y.segment : x.u0 < y.u0;
  });
  CompensatedSum value;
  CompensatedSum error;
  value.add(tail_value.value());
  error.add(tail_error);
  for (const Panel& p : finished) {
    value.add(p.value);
    error.add(p.error);
  }

  QuadratureResult result;
  result.value = value.value();
  result.abs_error_estimate = error.value();
  result.evaluations = std::max<std::size_t>(evaluations, 1);
  result.converged = converged || result.abs_error_estimate <= tol.target(result.value);
  return result;
}

QuadratureResult integrate_unit_interval(const std::function<double(double)>& f,
                                         const EndpointBehavior& behavior, Tolerance tol) {
  return integrate_interval(f, AxisDomain{}, behavior, tol);
}

QuadratureResult integrate_halfline(const std::function<double(double)>& g,
                                    const HalfLineOptions& options) {
  EndpointBehavior behavior;
  behavior.exponent_at_zero = options.exponent_at_zero;
  if (options.decay_exponent) behavior.exponent_at_one = *options.decay_exponent - 2.0;

  AxisDomain domain;
  for (double r : options.breakpoints) {
    if (r > 0.0 && std::isfinite(r)) domain.breakpoints.push_back(r / (1.0 + r));
  }
  auto integrand = [&](double u) {
    const double w = 1.0 - u;
    if (w <= 0.0) return 0.0;
    const double r = u / w;
    const double v = g(r);
    if (v == 0.0) return 0.0;
    return v / (w * w);
  };
  return integrate_interval(integrand, domain, behavior, options.tol, options.max_panels);
}

}  // namespace hardy
