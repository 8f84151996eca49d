// SPDX-License-Identifier: Apache-2.0

#include "hardy/properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hardy/constants.hpp"
#include "hardy/experiments.hpp"
#include "hardy/operators.hpp"

namespace hardy {
namespace {

struct Instance {
  std::size_t index = 0;
  Weight weight;
  std::vector<RadialFunction> f;
  std::vector<RadialFunction> g;
  std::vector<double> p;
  int n = 1;
  double r = 1.0;
  double scale = 1.0;
  double dilation = 1.0;
  std::string label;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { out_.name = std::move(name); }

  void record(bool ok, double deviation, const std::string& where) {
    ++out_.checked;
    if (std::isfinite(deviation)) out_.worst = std::max(out_.worst, deviation);
    if (!ok) {
      if (out_.failed == 0) out_.first_failure = where;
      ++out_.failed;
    }
  }

  [[nodiscard]] PropertyOutcome result() const { return out_; }

 private:
  PropertyOutcome out_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RadialFunction random_cutoff_power(std::mt19937_64& rng) {
  const double a = uniform(rng, -0.5, 0.5);
  const double r0 = uniform(rng, 0.05, 0.5);
  const double r1 = uniform(rng, 1.0, 4.0);
  const double c = uniform(rng, 0.5, 2.0);
  return cutoff_power(a, r0, r1, c);
}

// Pointwise sum, with the metadata the quadrature layers rely on.
RadialFunction sum(const RadialFunction& u, const RadialFunction& v) {
  RadialFunction s = custom_function([u, v](double r) { return u(r) + v(r); }, u.label() + "+" + v.label());
  std::vector<double> points = u.breakpoints();
  points.insert(points.end(), v.breakpoints().begin(), v.breakpoints().end());
  for (double x : {u.support_lower(), u.support_upper(), v.support_lower(), v.support_upper()}) {
    if (x > 0.0 && std::isfinite(x)) points.push_back(x);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  s.with_support(std::min(u.support_lower(), v.support_lower()), std::max(u.support_upper(), v.support_upper()))
      .with_breakpoints(std::move(points))
      .with_zero_behavior(std::min(u.exponent_at_zero(), v.exponent_at_zero()));
  return s;
}

Instance draw(std::mt19937_64& rng, std::size_t index) {
  Instance in{index, constant_weight(1.0), {}, {}, {}, 1, 1.0, 1.0, 1.0, {}};
  const std::size_t m = std::uniform_int_distribution<int>(1, 2)(rng);
  in.n = std::uniform_int_distribution<int>(1, 2)(rng);
  const int kind = std::uniform_int_distribution<int>(0, 1)(rng);
  if (kind == 0) {
    in.weight = constant_weight(uniform(rng, 0.5, 2.0), m);
  } else {
    const double alpha = uniform(rng, 0.2, 0.9);
    in.weight = m == 1 ? riemann_liouville_weight(alpha) : multilinear_riesz_weight(alpha, m);
  }
  for (std::size_t i = 0; i < m; ++i) {
    in.f.push_back(random_cutoff_power(rng));
    in.g.push_back(random_cutoff_power(rng));
    in.p.push_back(uniform(rng, static_cast<double>(m) * in.n + 0.5, static_cast<double>(m) * in.n + 4.0));
  }
  in.r = uniform(rng, 0.2, 5.0);
  in.scale = uniform(rng, 0.25, 4.0);
  in.dilation = uniform(rng, 0.3, 3.0);
  std::ostringstream label;
  label << "instance " << index << " (" << in.weight.label() << ", n=" << in.n << ", r=" << in.r << ")";
  in.label = label.str();
  return in;
}

OperatorRequest request(const Instance& in, std::vector<RadialFunction> f, double r) {
  OperatorRequest q{in.weight, std::move(f), std::nullopt};
  q.r = r;
  q.n = in.n;
  q.tol = {1e-14, 1e-12};
  return q;
}

bool close(double a, double b, double ea, double eb, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + ea + eb;
}

double rel_dev(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

std::vector<PropertyOutcome> run_property_suite(std::size_t instances, std::uint64_t seed) {
  constexpr double kRel = 1e-9;
  std::mt19937_64 rng(seed);
  Recorder scaling("multilinearity: scaling");
  Recorder additivity("multilinearity: additivity");
  Recorder dilation("dilation covariance");
  Recorder positivity("positivity");
  Recorder determinism("determinism");
  Recorder holder("Lebesgue bound");

  for (std::size_t k = 0; k < instances; ++k) {
    const Instance in = draw(rng, k);
    const char* stage = "apply";
    try {
    const std::size_t m = in.f.size();
    const QuadratureResult base = hardy_apply(request(in, in.f, in.r));
    const QuadratureResult base_c = cesaro_apply(request(in, in.f, in.r));

    for (std::size_t j = 0; j < m; ++j) {
      std::vector<RadialFunction> scaled = in.f;
      scaled[j] = in.f[j].scaled(in.scale);
      const QuadratureResult hs = hardy_apply(request(in, scaled, in.r));
      scaling.record(close(hs.value, in.scale * base.value, hs.abs_error_estimate,
                           in.scale * base.abs_error_estimate, kRel),
                     rel_dev(hs.value, in.scale * base.value), in.label);

      stage = "additivity";
      std::vector<RadialFunction> other = in.f;
      other[j] = in.g[j];
      std::vector<RadialFunction> both = in.f;
      both[j] = sum(in.f[j], in.g[j]);
      const QuadratureResult hg = hardy_apply(request(in, other, in.r));
      const QuadratureResult hb = hardy_apply(request(in, both, in.r));
      const double rhs = base.value + hg.value;
      additivity.record(close(hb.value, rhs, hb.abs_error_estimate, base.abs_error_estimate + hg.abs_error_estimate,
                              kRel),
                        rel_dev(hb.value, rhs), in.label);
    }

    stage = "dilation";
    std::vector<RadialFunction> dilated;
    for (const RadialFunction& fi : in.f) dilated.push_back(fi.dilated(in.dilation));
    const QuadratureResult hd = hardy_apply(request(in, dilated, in.r));
    const QuadratureResult hr = hardy_apply(request(in, in.f, in.dilation * in.r));
    dilation.record(close(hd.value, hr.value, hd.abs_error_estimate, hr.abs_error_estimate, kRel),
                    rel_dev(hd.value, hr.value), in.label);
    const QuadratureResult cd = cesaro_apply(request(in, dilated, in.r));
    const QuadratureResult cr = cesaro_apply(request(in, in.f, in.dilation * in.r));
    dilation.record(close(cd.value, cr.value, cd.abs_error_estimate, cr.abs_error_estimate, kRel),
                    rel_dev(cd.value, cr.value), in.label + " [cesaro]");

    positivity.record(base.value >= -base.abs_error_estimate, std::max(0.0, -base.value), in.label);
    positivity.record(base_c.value >= -base_c.abs_error_estimate, std::max(0.0, -base_c.value),
                      in.label + " [cesaro]");

    const QuadratureResult again = hardy_apply(request(in, in.f, in.r));
    determinism.record(again.value == base.value && again.abs_error_estimate == base.abs_error_estimate,
                       std::abs(again.value - base.value), in.label);
    if (k % 10 == 0) {
      // Sampled cube: same seed, same bits.
      const Weight w4 = multilinear_riesz_weight(1.0, 4);
      const ExponentConfig cfg4 = ExponentConfig::make(1, {8.0, 8.0, 8.0, 8.0});
      ConstantOptions opts;
      opts.seed = seed + k;
      opts.budget = std::size_t{1} << 16;
      const ConstantResult a = lebesgue_constant(w4, cfg4, opts);
      const ConstantResult b = lebesgue_constant(w4, cfg4, opts);
      determinism.record(a.value == b.value && a.abs_error_estimate == b.abs_error_estimate,
                         std::abs(a.value - b.value), in.label + " [sampled]");
    }

    stage = "Lebesgue bound";
    const ExponentConfig cfg = ExponentConfig::make(in.n, in.p);
    ConstantOptions loose;
    loose.tol = {1e-11, 1e-9};
    const ConstantResult A = lebesgue_constant(in.weight, cfg, loose);
    const NormResult image = lebesgue_norm(hardy_image(in.weight, in.f, in.n, {{1e-10, 1e-8}, 0, std::size_t{1} << 20}),
                                           cfg.p, in.n, {1e-9, 1e-7});
    double bound = A.value;
    for (std::size_t i = 0; i < m; ++i) bound *= lebesgue_norm(in.f[i], in.p[i], in.n).value;
    holder.record(A.finite && image.value <= bound * (1.0 + 1e-6), image.value / bound, in.label);
    } catch (const std::exception& e) {
      std::ostringstream what;
      what << in.label << ", " << stage << ": " << e.what() << " p=" << in.p[0] << "," << in.p.back();
      throw EvaluationError(what.str());
    }
  }

  return {scaling.result(), additivity.result(), dilation.result(),
          positivity.result(), determinism.result(), holder.result()};
}

}  // namespace hardy
