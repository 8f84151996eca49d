// SPDX-License-Identifier: Apache-2.0

#include "hardy/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxOscillationBreakpoints = 4000;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

double reciprocal(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

// ---------------------------------------------------------------- exponents

ExponentConfig ExponentConfig::make(int n, std::vector<double> p_i, std::vector<double> lambda_i,
                                    std::vector<double> q_i) {
  require(n >= 1, "dimension n must be at least 1");
  require(!p_i.empty(), "at least one exponent p_i is required");
  for (double p : p_i) require(p > 1.0, "every p_i must exceed 1");
  for (double q : q_i) require(q > 1.0 && std::isfinite(q), "every q_i must be finite and exceed 1");
  require(q_i.empty() || q_i.size() == p_i.size(), "q_i must have one entry per p_i");
  if (lambda_i.empty()) {
    for (double p : p_i) lambda_i.push_back(-reciprocal(p));
  }
  require(lambda_i.size() == p_i.size(), "lambda_i must have one entry per p_i");
  for (double l : lambda_i) require(std::isfinite(l), "lambda_i must be finite");

  ExponentConfig c;
  c.n = n;
  c.p_i = std::move(p_i);
  c.q_i = std::move(q_i);
  c.lambda_i = std::move(lambda_i);
  double inv = 0.0;
  for (double p : c.p_i) inv += reciprocal(p);
  for (double q : c.q_i) inv += 1.0 / q;
  c.p = inv > 0.0 ? 1.0 / inv : kInf;
  c.lambda = 0.0;
  for (double l : c.lambda_i) c.lambda += l;
  c.balanced = true;
  const double ref = c.lambda_i[0] * c.p_i[0];
  for (std::size_t i = 0; i < c.m(); ++i) {
    const double v = c.lambda_i[i] * c.p_i[i];
    if (!std::isfinite(v) || std::abs(v - ref) > 1e-12 * std::max(1.0, std::abs(ref))) c.balanced = false;
  }
  if (c.m() == 1) c.balanced = true;
  return c;
}

void ExponentConfig::require_hardy_regime() const {
  for (std::size_t i = 0; i < m(); ++i) {
    const double lo = -reciprocal(p_i[i]);
    require(lambda_i[i] >= lo - 1e-15 && lambda_i[i] <= 0.0, "need -1/p_i <= lambda_i <= 0");
  }
}

void ExponentConfig::require_strict_regime() const {
  for (std::size_t i = 0; i < m(); ++i) {
    const double lo = -reciprocal(p_i[i]);
    require(lambda_i[i] > lo && lambda_i[i] < 0.0, "need -1/p_i < lambda_i < 0");
  }
}

void ExponentConfig::require_finite() const {
  for (double p : p_i) require(std::isfinite(p), "p_i must be finite here");
}

// ----------------------------------------------------------- radial functions

RadialFunction::RadialFunction(RadialKind kind, Fn fn, std::string label)
    : kind_(kind), fn_(std::move(fn)), label_(std::move(label)) {}

RadialFunction& RadialFunction::with_descriptor(PowerDescriptor d) {
  descriptor_ = d;
  if (d.coef == 0.0 || !(d.lower < d.upper)) zero_ = true;
  return *this;
}

RadialFunction& RadialFunction::with_support(double lower, double upper) {
  support_lower_ = lower;
  support_upper_ = upper;
  if (!(lower < upper)) zero_ = true;
  return *this;
}

RadialFunction& RadialFunction::with_breakpoints(std::vector<double> points) {
  breakpoints_ = std::move(points);
  return *this;
}

RadialFunction& RadialFunction::with_zero_behavior(double exponent, double log_exponent) {
  zero_exponent_ = exponent;
  zero_log_exponent_ = log_exponent;
  return *this;
}

RadialFunction& RadialFunction::with_infinity_behavior(std::optional<double> exponent, double log_exponent) {
  infinity_exponent_ = exponent;
  infinity_log_exponent_ = log_exponent;
  return *this;
}

RadialFunction& RadialFunction::with_half_period(double h) {
  half_period_ = h;
  return *this;
}

RadialFunction RadialFunction::scaled(double c) const {
  RadialFunction out = *this;
  Fn inner = fn_;
  out.fn_ = [inner, c](double r) { return c * inner(r); };
  out.label_ = label_ + "*" + fmt(c);
  if (out.descriptor_) out.descriptor_->coef *= c;
  if (c == 0.0) out.zero_ = true;
  return out;
}

RadialFunction RadialFunction::dilated(double s) const {
  require(s > 0.0 && std::isfinite(s), "dilation factor must be positive");
  RadialFunction out = *this;
  Fn inner = fn_;
  out.fn_ = [inner, s](double r) { return inner(s * r); };
  out.label_ = label_ + "(" + fmt(s) + "r)";
  out.support_lower_ = support_lower_ / s;
  out.support_upper_ = support_upper_ / s;
  for (double& b : out.breakpoints_) b /= s;
  out.half_period_ = half_period_ / s;
  if (out.descriptor_) {
    out.descriptor_->coef *= std::pow(s, descriptor_->exponent);
    out.descriptor_->lower /= s;
    out.descriptor_->upper /= s;
  }
  return out;
}

RadialFunction RadialFunction::truncated_above(double R) const {
  require(R > 0.0, "truncation radius must be positive");
  RadialFunction out = *this;
  Fn inner = fn_;
  out.fn_ = [inner, R](double r) { return r < R ? inner(r) : 0.0; };
  out.label_ = label_ + "@chi:" + fmt(R);
  out.support_upper_ = std::min(support_upper_, R);
  if (R < support_upper_) out.breakpoints_.push_back(R);
  if (out.descriptor_) out.descriptor_->upper = std::min(out.descriptor_->upper, R);
  if (out.kind_ == RadialKind::power) out.kind_ = RadialKind::cutoff_power;
  if (out.kind_ == RadialKind::log) out.kind_ = RadialKind::custom;
  if (!(out.support_lower_ < out.support_upper_)) out.zero_ = true;
  return out;
}

RadialFunction power_function(double a, double c) {
  require(std::isfinite(a) && std::isfinite(c), "power function needs finite parameters");
  RadialFunction f(RadialKind::power, [a, c](double r) { return c * std::pow(r, a); },
                   c == 1.0 ? "power:" + fmt(a) : "power:" + fmt(a) + "*" + fmt(c));
  f.with_descriptor({c, a, 0.0, kInf}).with_zero_behavior(a).with_infinity_behavior(a);
  return f;
}

RadialFunction cutoff_power(double a, double r0, double r1, double c) {
  require(std::isfinite(a) && std::isfinite(c), "cutoff power needs finite parameters");
  require(r0 >= 0.0 && std::isfinite(r0) && r1 > 0.0, "cutoff power needs 0 <= r0 and r1 > 0");
  std::string label = "cutpow:" + fmt(a) + ":" + fmt(r0);
  if (std::isfinite(r1)) label += ":" + fmt(r1);
  if (c != 1.0) label += "*" + fmt(c);
  RadialFunction f(RadialKind::cutoff_power,
                   [a, r0, r1, c](double r) { return r > r0 && r < r1 ? c * std::pow(r, a) : 0.0; }, label);
  std::vector<double> bps;
  if (r0 > 0.0) bps.push_back(r0);
  if (std::isfinite(r1)) bps.push_back(r1);
  f.with_descriptor({c, a, r0, r1})
      .with_support(r0, r1)
      .with_breakpoints(bps)
      .with_zero_behavior(a)
      .with_infinity_behavior(a);
  return f;
}

RadialFunction indicator(double R) { return cutoff_power(0.0, 0.0, R); }

RadialFunction constant_function(double c) {
  RadialFunction f(RadialKind::power, [c](double) { return c; }, "const:" + fmt(c));
  f.with_descriptor({c, 0.0, 0.0, kInf}).with_zero_behavior(0.0).with_infinity_behavior(0.0);
  return f;
}

RadialFunction log_function(double c) {
  RadialFunction f(RadialKind::log, [c](double r) { return c * std::log(r); },
                   c == 1.0 ? "log" : "log*" + fmt(c));
  f.with_zero_behavior(0.0, 1.0).with_infinity_behavior(0.0, 1.0).with_breakpoints({1.0});
  if (c == 0.0) f = f.scaled(0.0);
  return f;
}

RadialFunction oscillatory_cutoff(double k, double R) {
  require(k > 0.0 && std::isfinite(k), "oscillation frequency must be positive");
  require(R >= 0.0 && std::isfinite(R), "cutoff radius must be nonnegative");
  const double edge = 0.5 * R;
  RadialFunction f(RadialKind::oscillatory_cutoff,
                   [k, edge](double r) { return r > edge ? std::sin(std::numbers::pi * k * r) : 0.0; },
                   "osccut:" + fmt(k) + ":" + fmt(R));
  f.with_support(edge, kInf).with_half_period(1.0 / k).with_zero_behavior(0.0);
  if (edge > 0.0) f.with_breakpoints({edge});
  return f;
}

RadialFunction custom_function(RadialFunction::Fn fn, std::string label) {
  return RadialFunction(RadialKind::custom, std::move(fn), std::move(label));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_real(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used > 0 && used == s.size(), "malformed number '" + s + "' in function spec '" + spec + "'");
  return v;
}

RadialFunction parse_base(const std::string& base, const std::string& spec) {
  const std::vector<std::string> parts = split(base, ':');
  const std::string& kind = parts[0];
  const std::size_t argc = parts.size() - 1;
  if (kind == "power") {
    require(argc == 1, "usage: power:a");
    return power_function(to_real(parts[1], spec));
  }
  if (kind == "cutpow") {
    require(argc == 2 || argc == 3, "usage: cutpow:a:r0[:r1]");
    return cutoff_power(to_real(parts[1], spec), to_real(parts[2], spec),
                        argc == 3 ? to_real(parts[3], spec) : kInf);
  }
  if (kind == "chi") {
    require(argc <= 1, "usage: chi[:R]");
    return indicator(argc == 1 ? to_real(parts[1], spec) : 1.0);
  }
  if (kind == "const") {
    require(argc == 1, "usage: const:c");
    return constant_function(to_real(parts[1], spec));
  }
  if (kind == "log") {
    require(argc == 0, "usage: log");
    return log_function();
  }
  if (kind == "osccut") {
    require(argc == 2, "usage: osccut:k:R");
    return oscillatory_cutoff(to_real(parts[1], spec), to_real(parts[2], spec));
  }
  throw std::invalid_argument("unknown function kind '" + kind + "' in '" + spec + "'");
}

}  // namespace

RadialFunction parse_function(const std::string& spec) {
  require(!spec.empty(), "empty function spec");
  std::string rest = spec;
  std::optional<double> scale;
  if (const std::size_t star = rest.rfind('*'); star != std::string::npos) {
    scale = to_real(rest.substr(star + 1), spec);
    rest = rest.substr(0, star);
  }
  std::optional<double> cut;
  if (const std::size_t at = rest.find('@'); at != std::string::npos) {
    const std::vector<std::string> mod = split(rest.substr(at + 1), ':');
    require(mod[0] == "chi" && mod.size() <= 2, "usage: <spec>@chi[:R]");
    cut = mod.size() == 2 ? to_real(mod[1], spec) : 1.0;
    rest = rest.substr(0, at);
  }
  RadialFunction f = parse_base(rest, spec);
  if (cut) f = f.truncated_above(*cut);
  if (scale) f = f.scaled(*scale);
  return f;
}

double unit_sphere_volume(int n) {
  require(n >= 1, "dimension must be at least 1");
  const double h = 0.5 * n;
  return n * std::pow(std::numbers::pi, h) / gamma(1.0 + h);
}

// -------------------------------------------------------------------- norms

namespace {

// int_{lo}^{hi} r^{e-1} dr for 0 <= lo < hi <= inf.
double power_moment(double e, double lo, double hi) {
  if (!(lo < hi)) return 0.0;
  if (e == 0.0) return (lo == 0.0 || std::isinf(hi)) ? kInf : std::log(hi / lo);
  if (e < 0.0 && lo == 0.0) return kInf;
  if (e > 0.0 && std::isinf(hi)) return kInf;
  const double a = lo == 0.0 ? 0.0 : std::pow(lo, e);
  const double b = std::isinf(hi) ? 0.0 : std::pow(hi, e);
  return (b - a) / e;
}

std::vector<double> scaled_breakpoints(const RadialFunction& f, double R, double lo, double hi) {
  std::vector<double> out;
  for (double b : f.breakpoints()) {
    const double t = b / R;
    if (t > lo && t < hi) out.push_back(t);
  }
  if (f.half_period() > 0.0) {
    const double h = f.half_period() / R;
    const double first = std::ceil(std::max(lo, 0.0) / h);
    for (double k = std::max(first, 1.0); k * h < hi && out.size() < kMaxOscillationBreakpoints; k += 1.0) {
      if (k * h > lo) out.push_back(k * h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// R^n int_0^1 |f(R t)|^p t^{n-1} dt, i.e. int_0^R |f|^p r^{n-1} dr.
QuadratureResult ball_power_integral(const RadialFunction& f, double p, int n, double R, Tolerance tol) {
  if (f.identically_zero() || R <= f.support_lower()) return {0.0, 0.0, 1, true};
  AxisDomain d;
  d.lower = std::clamp(f.support_lower() / R, 0.0, 1.0);
  d.upper = std::clamp(f.support_upper() / R, 0.0, 1.0);
  d.breakpoints = scaled_breakpoints(f, R, d.lower, d.upper);
  EndpointBehavior b;
  b.exponent_at_zero = p * f.exponent_at_zero() + n - 1.0;
  b.log_exponent_at_zero = p * f.log_exponent_at_zero();
  if (d.lower == 0.0 && !b.integrable_at_zero()) {
    return {kInf, kInf, 1, false};
  }
  const double scale = std::pow(R, n);
  QuadratureResult r = integrate_interval(
      [&](double t) {
        const double v = f(R * t);
        return v == 0.0 ? 0.0 : std::pow(std::abs(v), p) * std::pow(t, n - 1);
      },
      d, b, tol);
  r.value *= scale;
  r.abs_error_estimate *= scale;
  return r;
}

NormResult infinite_norm() {
  NormResult r;
  r.value = kInf;
  r.abs_error_estimate = 0.0;
  r.finite = false;
  return r;
}

// Supremum over R > 0 of a bracket evaluated on a log grid with golden
// refinement and decade extension past the grid ends.
NormResult grid_sup(const std::function<QuadratureResult(double)>& bracket, const SupOptions& o) {
  const std::size_t N = std::max<std::size_t>(o.grid_points, 3);
  const double l0 = std::log(o.r_min);
  const double l1 = std::log(o.r_max);
  std::vector<double> logs(N);
  std::vector<QuadratureResult> vals(N);
  bool converged = true;
  for (std::size_t i = 0; i < N; ++i) {
    logs[i] = l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(N - 1);
    vals[i] = bracket(std::exp(logs[i]));
    if (!std::isfinite(vals[i].value)) return infinite_norm();
    converged = converged && vals[i].converged;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i) {
    if (vals[i].value > vals[best].value) best = i;
  }
  NormResult out;
  out.lower_bound = true;
  out.value = vals[best].value;
  out.abs_error_estimate = vals[best].abs_error_estimate;
  out.argmax = std::exp(logs[best]);

  auto extend = [&](double direction) -> bool {
    // Walk decades outward; geometric increments are summed by Aitken's rule.
    const double step = direction * std::log(10.0);
    double log_r = direction > 0 ? l1 : l0;
    std::vector<double> seq{out.value};
    for (int k = 1; k <= 40; ++k) {
      log_r += step;
      const QuadratureResult v = bracket(std::exp(log_r));
      if (!std::isfinite(v.value)) return false;
      converged = converged && v.converged;
      seq.push_back(std::max(v.value, seq.back()));
      out.abs_error_estimate = std::max(out.abs_error_estimate, v.abs_error_estimate);
      const std::size_t s = seq.size();
      const double d1 = seq[s - 1] - seq[s - 2];
      if (d1 <= o.tol.target(seq.back())) {
        out.value = seq.back();
        out.argmax = std::exp(log_r);
        return true;
      }
      if (s >= 3) {
        const double d0 = seq[s - 2] - seq[s - 3];
        const double rho = d0 > 0.0 ? d1 / d0 : 1.0;
        if (rho < 0.5) {
          const double tail = d1 * rho / (1.0 - rho);
          if (tail <= o.tol.target(seq.back())) {
            out.value = seq.back() + tail;
            out.abs_error_estimate += tail;
            out.argmax = std::exp(log_r);
            return true;
          }
        }
        if (k >= 6 && rho >= 0.95) return false;
      }
    }
    out.value = seq.back();
    converged = false;
    return true;
  };

  if (best == N - 1 || best == 0) {
    if (!extend(best == 0 ? -1.0 : 1.0)) return infinite_norm();
  } else {
    // Golden-section search on log R between the neighbours of the argmax.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = logs[best - 1];
    double b = logs[best + 1];
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    QuadratureResult fc = bracket(std::exp(c));
    QuadratureResult fd = bracket(std::exp(d));
    for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
      if (fc.value > fd.value) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = bracket(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = bracket(std::exp(d));
      }
    }
    const QuadratureResult& top = fc.value > fd.value ? fc : fd;
    if (top.value > out.value) {
      out.value = top.value;
      out.abs_error_estimate = top.abs_error_estimate;
      out.argmax = std::exp(fc.value > fd.value ? c : d);
    }
  }
  out.converged = converged;
  return out;
}

}  // namespace

NormResult lebesgue_norm(const RadialFunction& f, double p, int n, Tolerance tol) {
  require(p > 0.0 && std::isfinite(p), "Lebesgue exponent must be positive and finite");
  require(n >= 1, "dimension must be at least 1");
  const double wn = unit_sphere_volume(n);
  NormResult out;
  if (f.identically_zero()) {
    out.exact = true;
    return out;
  }
  if (const auto& d = f.descriptor()) {
    const double m = power_moment(p * d->exponent + n, d->lower, d->upper);
    if (std::isinf(m)) return infinite_norm();
    out.value = std::abs(d->coef) * std::pow(wn * m, 1.0 / p);
    out.exact = true;
    return out;
  }
  EndpointBehavior at_zero;
  at_zero.exponent_at_zero = p * f.exponent_at_zero() + n - 1.0;
  at_zero.log_exponent_at_zero = p * f.log_exponent_at_zero();
  if (f.support_lower() == 0.0 && !at_zero.integrable_at_zero()) return infinite_norm();
  auto integrand = [&](double r) {
    const double v = f(r);
    return v == 0.0 ? 0.0 : std::pow(std::abs(v), p) * std::pow(r, n - 1);
  };
  QuadratureResult q;
  if (std::isfinite(f.support_upper())) {
    q = ball_power_integral(f, p, n, f.support_upper(), tol);
  } else {
    const auto& e = f.exponent_at_infinity();
    if (!e && f.kind() != RadialKind::custom) return infinite_norm();
    HalfLineOptions h;
    h.tol = tol;
    h.exponent_at_zero = f.support_lower() > 0.0 ? 0.0 : at_zero.exponent_at_zero;
    if (e) {
      const double decay = -(p * *e + n - 1.0);
      if (decay < 1.0 || (decay == 1.0 && p * f.log_exponent_at_infinity() >= -1.0)) return infinite_norm();
      h.decay_exponent = decay;
    }
    h.breakpoints = f.breakpoints();
    q = integrate_halfline(integrand, h);
  }
  if (!std::isfinite(q.value)) return infinite_norm();
  out.value = std::pow(wn * q.value, 1.0 / p);
  out.abs_error_estimate = q.value > 0.0 ? out.value * (q.abs_error_estimate / q.value) / p : 0.0;
  out.converged = q.converged;
  return out;
}

QuadratureResult morrey_bracket(const RadialFunction& f, double p, double lambda, int n, double R, Tolerance tol,
                                bool force_numeric) {
  require(R > 0.0, "radius must be positive");
  const double wn = unit_sphere_volume(n);
  const double ball = wn * std::pow(R, n) / n;
  const double norm_power = std::pow(ball, -(1.0 + lambda * p));
  QuadratureResult J;
  if (f.identically_zero()) {
    J = {0.0, 0.0, 1, true};
  } else if (f.descriptor() && !force_numeric) {
    const PowerDescriptor& d = *f.descriptor();
    const double m = power_moment(p * d.exponent + n, d.lower, std::min(d.upper, R));
    J = {std::pow(std::abs(d.coef), p) * m, 0.0, 1, std::isfinite(m)};
  } else {
    J = ball_power_integral(f, p, n, R, tol);
  }
  if (!std::isfinite(J.value)) return {kInf, kInf, J.evaluations, false};
  QuadratureResult out = J;
  out.value = std::pow(wn * J.value * norm_power, 1.0 / p);
  out.abs_error_estimate = J.value > 0.0 ? out.value * (J.abs_error_estimate / J.value) / p : 0.0;
  return out;
}

NormResult central_morrey_norm(const RadialFunction& f, double p, double lambda, int n, const SupOptions& options) {
  require(p > 0.0 && std::isfinite(p), "Morrey exponent p must be positive and finite");
  require(n >= 1, "dimension must be at least 1");
  require(lambda >= -1.0 / p - 1e-15 && lambda <= 0.0, "need -1/p <= lambda <= 0");
  NormResult out;
  if (f.identically_zero()) {
    out.exact = true;
    return out;
  }
  if (!options.force_numeric && f.descriptor() && f.descriptor()->lower == 0.0 && std::isinf(f.descriptor()->upper)) {
    const PowerDescriptor& d = *f.descriptor();
    const double shift = 1.0 + lambda * p;
    if (std::abs(d.exponent - n * lambda) > 1e-12 || shift <= 0.0) return infinite_norm();
    out.value = std::abs(d.coef) * std::pow(unit_sphere_volume(n) / n, -lambda) * std::pow(shift, -1.0 / p);
    out.exact = true;
    return out;
  }
  return grid_sup(
      [&](double R) { return morrey_bracket(f, p, lambda, n, R, options.tol, options.force_numeric); }, options);
}

QuadratureResult cmo_bracket(const RadialFunction& b, double q, int n, double R, Tolerance tol) {
  require(R > 0.0, "radius must be positive");
  if (b.identically_zero()) return {0.0, 0.0, 1, true};
  AxisDomain d;
  d.breakpoints = scaled_breakpoints(b, R, 0.0, 1.0);
  EndpointBehavior mean_beh;
  mean_beh.exponent_at_zero = std::min(b.exponent_at_zero(), 0.0) + n - 1.0;
  mean_beh.log_exponent_at_zero = b.log_exponent_at_zero();
  if (!mean_beh.integrable_at_zero()) return {kInf, kInf, 1, false};
  const QuadratureResult mean = integrate_interval(
      [&](double t) { return n * b(R * t) * std::pow(t, n - 1); }, d, mean_beh, tol.tightened(0.1));
  const double mu = mean.value;
  EndpointBehavior dev_beh;
  dev_beh.exponent_at_zero = q * std::min(b.exponent_at_zero(), 0.0) + n - 1.0;
  dev_beh.log_exponent_at_zero = q * b.log_exponent_at_zero();
  if (!dev_beh.integrable_at_zero()) return {kInf, kInf, 1, false};
  QuadratureResult dev = integrate_interval(
      [&](double t) { return n * std::pow(std::abs(b(R * t) - mu), q) * std::pow(t, n - 1); }, d, dev_beh, tol);
  QuadratureResult out = dev;
  out.value = std::pow(std::max(dev.value, 0.0), 1.0 / q);
  out.abs_error_estimate = dev.value > 0.0 ? out.value * (dev.abs_error_estimate / dev.value) / q : 0.0;
  out.evaluations += mean.evaluations;
  out.converged = dev.converged && mean.converged;
  return out;
}

NormResult cmo_norm(const RadialFunction& b, double q, int n, const SupOptions& options) {
  require(q > 1.0 && std::isfinite(q), "CMO exponent q must exceed 1");
  require(n >= 1, "dimension must be at least 1");
  NormResult out;
  const auto& d = b.descriptor();
  const bool constant = d && d->exponent == 0.0 && d->lower == 0.0 && std::isinf(d->upper);
  if (b.identically_zero() || (constant && !options.force_numeric)) {
    out.exact = true;
    return out;
  }
  if (b.kind() == RadialKind::log && !options.force_numeric) {
    // b - b_B = c (log(r/R) + 1/n) on B(0,R); the average does not depend on R.
    const double c = b(std::exp(1.0)) - b(1.0);
    EndpointBehavior beh;
    beh.exponent_at_zero = n - 1.0;
    beh.log_exponent_at_zero = q;
    const QuadratureResult r = integrate_interval(
        [&](double u) { return n * std::pow(u, n - 1) * std::pow(std::abs(std::log(u) + 1.0 / n), q); },
        AxisDomain{0.0, 1.0, {std::exp(-1.0 / n)}}, beh, options.tol);
    out.value = std::abs(c) * std::pow(r.value, 1.0 / q);
    out.abs_error_estimate = r.value > 0.0 ? out.value * (r.abs_error_estimate / r.value) / q : 0.0;
    out.exact = true;
    out.converged = r.converged;
    return out;
  }
  return grid_sup([&](double R) { return cmo_bracket(b, q, n, R, options.tol); }, options);
}

}  // namespace hardy
