// SPDX-License-Identifier: Apache-2.0

#include "hardy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUpperGuard = 1e-6;
constexpr std::size_t kMaxOscillationBreakpoints = 4000;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

std::size_t thread_count() {
  if (const char* env = std::getenv("HARDY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(0..count-1) in batches; results keep index order.
template <class F>
auto parallel_map(std::size_t count, F fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out;
  out.reserve(count);
  const std::size_t threads = thread_count();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  for (std::size_t start = 0; start < count; start += threads) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < std::min(count, start + threads); ++i) {
      batch.push_back(std::async(std::launch::async, fn, i));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

double relative(double value, double target) {
  return target == 0.0 ? std::abs(value) : std::abs(value - target) / std::abs(target);
}

ConstantOptions constant_options(const ExperimentOptions& o) {
  ConstantOptions c;
  c.tol = o.tol;
  c.seed = o.seed;
  c.budget = o.budget;
  return c;
}

// Solves A x = b in place (k <= 4), partial pivoting.
std::optional<std::vector<double>> solve(std::vector<std::vector<double>> A, std::vector<double> b) {
  const std::size_t k = b.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    }
    if (A[piv][c] == 0.0) return std::nullopt;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = A[r][c] / A[c][c];
      for (std::size_t j = c; j < k; ++j) A[r][j] -= f * A[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(k);
  for (std::size_t c = k; c-- > 0;) {
    double s = b[c];
    for (std::size_t j = c + 1; j < k; ++j) s -= A[c][j] * x[j];
    x[c] = s / A[c][c];
  }
  return x;
}

// Limit of value(eps) fitted on 1, eps^kappa, eps log eps, eps through the
// smallest-eps points. `entries` is ordered by decreasing eps.
Estimate extrapolate(const std::vector<SweepEntry>& entries, double kappa) {
  std::vector<std::function<double(double)>> basis = {[](double) { return 1.0; }};
  if (kappa < 1.0 - 1e-6) basis.push_back([kappa](double e) { return std::pow(e, kappa); });
  basis.push_back([](double e) { return e * std::log(e); });
  basis.push_back([](double e) { return e; });
  auto fit = [&](std::size_t k) {
    std::vector<std::vector<double>> A(k, std::vector<double>(k));
    std::vector<double> b(k);
    for (std::size_t r = 0; r < k; ++r) {
      const SweepEntry& e = entries[entries.size() - k + r];
      for (std::size_t c = 0; c < k; ++c) A[r][c] = basis[c](e.parameter);
      b[r] = e.value;
    }
    const auto x = solve(A, b);
    return x ? (*x)[0] : entries.back().value;
  };
  const std::size_t k = std::min(basis.size(), entries.size());
  if (k == 0) return {};
  const double best = fit(k);
  // Spread against the fit with one basis function fewer.
  const double error = k > 1 ? std::abs(best - fit(k - 1)) : std::abs(best) + entries.back().abs_error_estimate;
  return {best, error};
}

bool nondecreasing(const std::vector<SweepEntry>& entries) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const double slack = entries[i].abs_error_estimate + entries[i - 1].abs_error_estimate;
    if (entries[i].value < entries[i - 1].value - slack) return false;
  }
  return true;
}

enum class SweepKind { lebesgue, cesaro };

SharpnessReport sharpness_sweep(SweepKind kind, const Weight& w, const ExponentConfig& config,
                                const std::vector<double>& epsilons, double tolerance, const ExperimentOptions& options) {
  require(w.arity() == config.m(), "weight arity must match the number of exponents");
  config.require_finite();
  require(!config.commutator(), "sharpness sweeps take no q_i");
  require(!epsilons.empty(), "at least one eps is required");
  for (double e : epsilons) require(e > 0.0 && e < 0.5, "eps must lie in (0, 1/2)");
  const std::size_t m = config.m();
  const int n = config.n;
  const ConstantOptions copt = constant_options(options);

  SharpnessReport report;
  report.experiment = kind == SweepKind::lebesgue ? "lebesgue-sharpness" : "cesaro-sharpness";
  report.tolerance = tolerance;
  const ConstantResult target =
      kind == SweepKind::lebesgue ? lebesgue_constant(w, config, copt) : cesaro_lebesgue_constant(w, config, copt);
  require(target.finite, "the constant is infinite for this weight and exponent tuple");
  report.target = target.value;
  report.target_error = target.abs_error_estimate;
  if (kind == SweepKind::cesaro) {
    report.notes.push_back("mirrored extremal family r^{-n/p_i+eps_i} 1_{r<sqrt2/2} (reconstruction)");
  }

  std::vector<double> base(m);
  double kappa = kInf;
  for (std::size_t i = 0; i < m; ++i) {
    base[i] = kind == SweepKind::lebesgue ? -n / config.p_i[i] : -n * (1.0 - 1.0 / config.p_i[i]);
    kappa = std::min(kappa, 1.0 + w.behaviors()[i].exponent_at_zero + base[i]);
  }
  report.extras["kappa"] = {kappa, 0.0};

  std::vector<double> eps = epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  const double pm = config.p_i.back();
  report.sweep = parallel_map(eps.size(), [&](std::size_t k) {
    const double e = eps[k];
    const double a = std::numbers::sqrt2 * e / 2.0;
    std::vector<double> exps(m);
    for (std::size_t i = 0; i < m; ++i) exps[i] = base[i] - (pm / config.p_i[i]) * e;
    ConstantOptions o = copt;
    o.domain_cutoff = a;
    const ConstantResult q = weighted_moment(w, exps, {}, 1.0, o);
    const double prefactor = std::pow(a, pm * e / config.p);
    return SweepEntry{e, prefactor * q.value, prefactor * q.abs_error_estimate, q.converged};
  });

  const Estimate limit = extrapolate(report.sweep, kappa);
  report.extrapolated = limit.value;
  report.extrapolated_error = limit.abs_error_estimate;
  report.relative_gap = relative(report.extrapolated, report.target);
  bool converged = target.converged;
  bool exceeded = false;
  for (const SweepEntry& e : report.sweep) {
    converged = converged && e.converged;
    if (e.value > report.target * (1.0 + kUpperGuard) + e.abs_error_estimate + report.target_error) exceeded = true;
  }
  const bool monotone = nondecreasing(report.sweep);
  if (exceeded) {
    report.verdict = Verdict::violated;
    report.notes.push_back("a lower bound exceeds the target constant");
  } else if (converged && monotone && report.relative_gap <= tolerance) {
    report.verdict = Verdict::sharp_confirmed;
  } else {
    report.verdict = Verdict::inconclusive;
    if (!monotone) report.notes.push_back("sweep is not monotone in eps");
  }
  return report;
}

OperatorRequest make_request(const Weight& w, std::vector<RadialFunction> f, double r, int n,
                             const ExperimentOptions& o) {
  OperatorRequest q{w, std::move(f), std::nullopt};
  q.r = r;
  q.n = n;
  q.tol = o.tol;
  q.seed = o.seed;
  q.budget = o.budget;
  return q;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::sharp_confirmed:
      return "sharp-confirmed";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::violated:
      return "violated";
  }
  return "inconclusive";
}

SharpnessReport lebesgue_sharpness_sweep(const Weight& w, const ExponentConfig& config,
                                         const std::vector<double>& epsilons, double tolerance,
                                         const ExperimentOptions& options) {
  return sharpness_sweep(SweepKind::lebesgue, w, config, epsilons, tolerance, options);
}

SharpnessReport cesaro_sharpness_sweep(const Weight& w, const ExponentConfig& config,
                                       const std::vector<double>& epsilons, double tolerance,
                                       const ExperimentOptions& options) {
  return sharpness_sweep(SweepKind::cesaro, w, config, epsilons, tolerance, options);
}

SharpnessReport morrey_sharpness_check(const Weight& w, const ExponentConfig& config, double tolerance,
                                       const ExperimentOptions& options) {
  require(w.arity() == config.m(), "weight arity must match the number of exponents");
  require(!config.commutator(), "the Morrey check takes no q_i");
  config.require_finite();
  config.require_strict_regime();
  require(config.balanced, "the Morrey equality needs lambda_1 p_1 = ... = lambda_m p_m");
  const int n = config.n;
  const std::size_t m = config.m();

  SharpnessReport report;
  report.experiment = "morrey-sharpness";
  report.tolerance = tolerance;
  const ConstantResult target = morrey_constant(w, config, constant_options(options));
  report.target = target.value;
  report.target_error = target.abs_error_estimate;

  std::vector<RadialFunction> f;
  double input_norm = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    f.push_back(power_function(n * config.lambda_i[i]));
    input_norm *= central_morrey_norm(f.back(), config.p_i[i], config.lambda_i[i], n).value;
  }
  const std::vector<double> radii = {0.1, 1.0, 10.0};
  bool converged = target.converged;
  double worst = 0.0;
  for (double r : radii) {
    const QuadratureResult h = hardy_apply(make_request(w, f, r, n, options));
    const double scale = std::pow(r, n * config.lambda);
    report.sweep.push_back({r, h.value / scale, h.abs_error_estimate / scale, h.converged});
    converged = converged && h.converged;
    worst = std::max(worst, relative(h.value / scale, report.target));
  }
  // H f = c r^{n lambda} with c = value at r = 1.
  const double c = report.sweep[1].value;
  const double output_norm = central_morrey_norm(power_function(n * config.lambda, c), config.p, config.lambda, n).value;
  report.extrapolated = output_norm / input_norm;
  report.extrapolated_error = report.extrapolated * report.sweep[1].abs_error_estimate / std::abs(c);
  double spread = 0.0;
  for (const SweepEntry& e : report.sweep) spread = std::max(spread, e.abs_error_estimate);
  report.extras["pointwise_gap"] = {worst, (spread + report.target_error) / report.target};
  report.relative_gap = std::max(relative(report.extrapolated, report.target), worst);
  report.verdict = !converged                          ? Verdict::inconclusive
                   : report.relative_gap <= tolerance ? Verdict::sharp_confirmed
                                                       : Verdict::violated;
  return report;
}

SharpnessReport commutator_pointwise_check(const Weight& w, const ExponentConfig& config,
                                           const std::vector<double>& radii, double symbol_scale, double tolerance,
                                           const ExperimentOptions& options) {
  require(w.arity() == config.m(), "weight arity must match the number of exponents");
  config.require_finite();
  config.require_strict_regime();
  require(!radii.empty(), "at least one radius is required");
  const int n = config.n;
  const std::size_t m = config.m();

  SharpnessReport report;
  report.experiment = "commutator-pointwise";
  report.tolerance = tolerance;
  std::vector<std::size_t> E(m);
  for (std::size_t i = 0; i < m; ++i) E[i] = i;
  const ConstantResult B = log_moment_constant(w, config, E, 1.0, constant_options(options));
  const double factor = std::pow(symbol_scale, static_cast<double>(m));
  report.target = factor * B.value;
  report.target_error = std::abs(factor) * B.abs_error_estimate;
  report.extras["B_m"] = {B.value, B.abs_error_estimate};

  std::vector<RadialFunction> f;
  std::vector<RadialFunction> b;
  for (std::size_t i = 0; i < m; ++i) {
    f.push_back(power_function(n * config.lambda_i[i]));
    b.push_back(symbol_scale == 0.0 ? constant_function(0.0) : log_function(symbol_scale));
  }
  double lambda = 0.0;
  for (double l : config.lambda_i) lambda += l;
  bool converged = B.converged;
  double worst = 0.0;
  report.sweep = parallel_map(radii.size(), [&](std::size_t k) {
    OperatorRequest q = make_request(w, f, radii[k], n, options);
    q.b = b;
    const QuadratureResult h = hardy_commutator_apply(q);
    const double scale = std::pow(radii[k], n * lambda);
    return SweepEntry{radii[k], h.value / scale, h.abs_error_estimate / scale, h.converged};
  });
  for (const SweepEntry& e : report.sweep) {
    converged = converged && e.converged;
    worst = std::max(worst, relative(e.value, report.target));
  }
  report.extrapolated = report.sweep.front().value;
  report.extrapolated_error = report.sweep.front().abs_error_estimate;
  report.relative_gap = worst;

  if (config.balanced && report.target != 0.0) {
    double inv_p = 0.0;
    double input_norm = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      inv_p += 1.0 / config.p_i[i];
      input_norm *= central_morrey_norm(f[i], config.p_i[i], config.lambda_i[i], n).value;
    }
    const double p = 1.0 / inv_p;
    const NormResult out =
        central_morrey_norm(power_function(n * lambda, std::abs(report.sweep.front().value)), p, lambda, n);
    const double ratio = out.value / input_norm;
    report.extras["morrey_ratio"] = {ratio, ratio * report.extrapolated_error / std::abs(report.extrapolated)};
    report.relative_gap = std::max(worst, relative(ratio, std::abs(report.target)));
  }
  report.verdict = !converged                          ? Verdict::inconclusive
                   : report.relative_gap <= tolerance ? Verdict::sharp_confirmed
                                                       : Verdict::violated;
  return report;
}

SharpnessReport counterexample_report(double alpha, int n, double p, const std::vector<double>& deltas,
                                      const ExperimentOptions& options) {
  require(alpha > 0.0 && alpha < 1.0, "need 0 < alpha < 1");
  require(p > 1.0 && std::isfinite(p), "need 1 < p < inf");
  require(!deltas.empty(), "at least one delta is required");
  for (double d : deltas) require(d > 0.0 && d < 1.0, "delta must lie in (0, 1)");
  const Weight w = counterexample_weight(alpha, n, p);
  const ExponentConfig cfg = ExponentConfig::make(n, {p});
  ConstantOptions copt = constant_options(options);
  copt.tol.rel = std::max(copt.tol.rel, 1e-9);

  SharpnessReport report;
  report.experiment = "counterexample";
  report.tolerance = 1e-6;
  report.target = 2.0 / alpha;
  const ConstantResult A = lebesgue_constant(w, cfg, copt);
  report.extrapolated = A.value;
  report.extrapolated_error = A.abs_error_estimate;
  report.relative_gap = relative(A.value, report.target);
  const ConstantResult C = log_moment_constant(w, cfg, {0}, 2.0, copt);
  report.extras["C_finite"] = {C.finite ? 1.0 : 0.0, 0.0};
  if (!C.diagnosis.empty()) report.notes.push_back("C: " + C.diagnosis);
  report.notes.push_back("C(delta) = A log 2 + B(delta), B truncated at t > delta");

  std::vector<double> ds = deltas;
  std::sort(ds.begin(), ds.end(), std::greater<>());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  struct Point {
    SweepEntry entry;
    Estimate full;
  };
  const std::vector<Point> points = parallel_map(ds.size(), [&](std::size_t k) {
    ConstantOptions o = copt;
    o.log_cutoff = ds[k];
    const ConstantResult c = log_moment_constant(w, cfg, {0}, 2.0, o);
    ConstantOptions t = copt;
    t.domain_cutoff = ds[k];
    const ConstantResult full = log_moment_constant(w, cfg, {0}, 2.0, t);
    return Point{{ds[k], c.value, c.abs_error_estimate, c.converged && full.converged},
                 {full.value, full.abs_error_estimate}};
  });

  bool converged = A.converged || A.abs_error_estimate <= 1e-3 * report.tolerance * report.target;
  bool increasing = true;
  double worst = 0.0;
  double worst_error = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const SweepEntry& e = points[k].entry;
    report.sweep.push_back(e);
    converged = converged && e.converged;
    if (k > 0 && !(e.value > report.sweep[k - 1].value)) increasing = false;
    const double S = std::log(1.0 / e.parameter);
    const double law = report.target * std::log(2.0) + 1.0 / (1.0 + alpha) +
                       (std::pow(S, 1.0 - alpha) - 1.0) / (1.0 - alpha);
    if (relative(e.value, law) >= worst) {
      worst = relative(e.value, law);
      worst_error = e.abs_error_estimate / law;
    }
    report.extras["growth_law@" + std::to_string(e.parameter)] = {law, 0.0};
    report.extras["fully_truncated@" + std::to_string(e.parameter)] = points[k].full;
  }
  report.extras["growth_law_gap"] = {worst, worst_error};
  const bool ok = report.relative_gap <= report.tolerance && increasing && worst <= 0.01 && !C.finite;
  report.verdict = !converged ? Verdict::inconclusive : ok ? Verdict::sharp_confirmed : Verdict::violated;
  return report;
}

SharpnessReport oscillation_decay_check(const Weight& w, const std::vector<std::size_t>& E,
                                        const std::vector<double>& radii, double threshold,
                                        const ExperimentOptions& options) {
  require(!E.empty(), "the oscillating axis set must be nonempty");
  require(!radii.empty(), "at least one radius is required");
  for (double r : radii) require(r > 0.0 && std::isfinite(r), "radii must be positive");
  const std::size_t m = w.arity();
  std::vector<bool> in_E(m, false);
  for (std::size_t i : E) {
    require(i < m, "oscillating axis out of range");
    require(!in_E[i], "oscillating axes must be distinct");
    in_E[i] = true;
  }
  for (const EndpointBehavior& b : w.behaviors()) {
    require(b.integrable_at_zero() && b.integrable_at_one(), "weight must be integrable on the cube");
  }

  SharpnessReport report;
  report.experiment = "oscillation-decay";
  report.tolerance = threshold;
  report.target = 0.0;
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  report.sweep = parallel_map(rs.size(), [&](std::size_t k) {
    const double r = rs[k];
    if (w.identically_zero()) return SweepEntry{r, 0.0, 0.0, true};
    CubeOptions cube;
    cube.tol = options.tol;
    cube.seed = options.seed;
    cube.budget = options.budget;
    cube.corner_exponent = w.corner_exponent();
    std::vector<EndpointBehavior> behaviors = w.behaviors();
    for (std::size_t i = 0; i < m; ++i) {
      AxisDomain d;
      d.breakpoints = w.breakpoints()[i];
      if (in_E[i]) {
        behaviors[i].exponent_at_zero += 1.0;
        for (double j = 2.0; j < r && d.breakpoints.size() < kMaxOscillationBreakpoints; j += 2.0) {
          d.breakpoints.push_back(j / r);
        }
        std::sort(d.breakpoints.begin(), d.breakpoints.end());
      }
      cube.domains.push_back(std::move(d));
    }
    const QuadratureResult q = integrate_unit_cube(
        [&](std::span<const double> t) {
          double v = w(t);
          if (v == 0.0) return 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            if (in_E[i]) v *= std::sin(std::numbers::pi * r * t[i]);
          }
          return v;
        },
        behaviors, cube);
    return SweepEntry{r, q.value, q.abs_error_estimate, q.converged};
  });

  bool converged = true;
  bool decreasing = true;
  for (std::size_t k = 0; k < report.sweep.size(); ++k) {
    const SweepEntry& e = report.sweep[k];
    converged = converged && e.converged;
    if (k > 0) {
      const SweepEntry& prev = report.sweep[k - 1];
      const double slack = e.abs_error_estimate + prev.abs_error_estimate + 1e-14;
      if (std::abs(e.value) > std::abs(prev.value) + slack) decreasing = false;
    }
  }
  const SweepEntry& last = report.sweep.back();
  report.extrapolated = last.value;
  report.extrapolated_error = last.abs_error_estimate;
  report.relative_gap = std::abs(last.value);
  if (!decreasing) report.notes.push_back("|I(r)| is not monotonically decreasing along the radii");
  const bool ok = decreasing && std::abs(last.value) + last.abs_error_estimate <= threshold &&
                  (report.sweep.size() == 1 ||
                   std::abs(last.value) <= std::abs(report.sweep.front().value) + last.abs_error_estimate +
                                               report.sweep.front().abs_error_estimate + 1e-14);
  report.verdict = !converged ? Verdict::inconclusive : ok ? Verdict::sharp_confirmed : Verdict::violated;
  return report;
}

RadialFunction hardy_image(const Weight& w, const std::vector<RadialFunction>& f, int n,
                           const ExperimentOptions& options) {
  require(w.arity() == f.size(), "need one function per weight axis");
  double lower = 0.0;
  double zero_exp = 0.0;
  double inf_exp = 0.0;
  std::set<double> kinks;
  for (std::size_t i = 0; i < f.size(); ++i) {
    lower = std::max(lower, f[i].support_lower());
    zero_exp += f[i].exponent_at_zero();
    const double mass_decay = -(1.0 + w.behaviors()[i].exponent_at_zero);
    inf_exp += std::isfinite(f[i].support_upper()) ? mass_decay
                                                   : std::max(f[i].exponent_at_infinity().value_or(0.0), mass_decay);
    kinks.insert(f[i].support_lower());
    kinks.insert(f[i].support_upper());
    kinks.insert(f[i].breakpoints().begin(), f[i].breakpoints().end());
  }
  std::vector<double> bp;
  for (double k : kinks) {
    if (k > lower && std::isfinite(k)) bp.push_back(k);
  }
  RadialFunction out = custom_function(
      [w, f, n, options](double r) { return hardy_apply(make_request(w, f, r, n, options)).value; }, "hardy image");
  out.with_support(lower, kInf).with_breakpoints(bp).with_zero_behavior(zero_exp).with_infinity_behavior(inf_exp);
  return out;
}

RadialFunction cesaro_image(const Weight& w, const std::vector<RadialFunction>& f, int n,
                            const ExperimentOptions& options) {
  require(w.arity() == f.size(), "need one function per weight axis");
  double upper = kInf;
  double zero_exp = 0.0;
  double inf_exp = 0.0;
  std::set<double> kinks;
  for (std::size_t i = 0; i < f.size(); ++i) {
    upper = std::min(upper, f[i].support_upper());
    const double near = 1.0 - n + w.behaviors()[i].exponent_at_zero;
    zero_exp += f[i].support_lower() > 0.0 ? near : std::min(f[i].exponent_at_zero(), near);
    inf_exp += f[i].exponent_at_infinity().value_or(0.0);
    kinks.insert(f[i].support_lower());
    kinks.insert(f[i].support_upper());
    kinks.insert(f[i].breakpoints().begin(), f[i].breakpoints().end());
  }
  std::vector<double> bp;
  for (double k : kinks) {
    if (k > 0.0 && k < upper) bp.push_back(k);
  }
  RadialFunction out = custom_function(
      [w, f, n, options](double r) { return cesaro_apply(make_request(w, f, r, n, options)).value; }, "cesaro image");
  out.with_support(0.0, upper).with_breakpoints(bp).with_zero_behavior(zero_exp);
  if (std::isinf(upper)) out.with_infinity_behavior(inf_exp);
  return out;
}

QuadratureResult radial_pairing(const RadialFunction& u, const RadialFunction& v, int n, Tolerance tol) {
  require(n >= 1, "dimension must be at least 1");
  require(std::isfinite(u.support_upper()), "the first function must have bounded support");
  const double lo = std::max(u.support_lower(), v.support_lower());
  const double hi = std::min(u.support_upper(), v.support_upper());
  if (!(lo < hi) || u.identically_zero() || v.identically_zero()) return {0.0, 0.0, 1, true};
  // r = hi s on (lo/hi, 1).
  AxisDomain d;
  d.lower = lo / hi;
  d.upper = 1.0;
  std::set<double> kinks(u.breakpoints().begin(), u.breakpoints().end());
  kinks.insert(v.breakpoints().begin(), v.breakpoints().end());
  for (double k : kinks) {
    const double s = k / hi;
    if (s > d.lower && s < 1.0) d.breakpoints.push_back(s);
  }
  EndpointBehavior beh;
  beh.exponent_at_zero = u.exponent_at_zero() + v.exponent_at_zero() + n - 1.0;
  if (d.lower == 0.0 && !beh.integrable_at_zero()) return {kInf, kInf, 1, false};
  const double wn = unit_sphere_volume(n);
  QuadratureResult q = integrate_interval(
      [&](double s) {
        const double r = hi * s;
        const double a = u(r);
        if (a == 0.0) return 0.0;
        return a * v(r) * std::pow(r, n - 1);
      },
      d, beh, tol);
  q.value *= wn * hi;
  q.abs_error_estimate *= wn * hi;
  return q;
}

DualityResult duality_check(const Weight& w, const RadialFunction& f, const RadialFunction& g, int n,
                            const ExperimentOptions& options) {
  require(w.arity() == 1, "duality is checked for unary weights");
  DualityResult out;
  const Tolerance outer{options.tol.abs, std::max(options.tol.rel, 1e-9)};
  out.hardy_side = radial_pairing(g, hardy_image(w, {f}, n, options), n, outer);
  out.cesaro_side = radial_pairing(f, cesaro_image(w, {g}, n, options), n, outer);
  out.relative_gap = relative(out.hardy_side.value, out.cesaro_side.value);
  return out;
}

}  // namespace hardy
