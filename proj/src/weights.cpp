// SPDX-License-Identifier: Apache-2.0

#include "hardy/weights.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hardy {

Weight::Weight(std::size_t arity, Function eval, std::vector<EndpointBehavior> behaviors, std::string label)
    : arity_(arity),
      eval_(std::move(eval)),
      behaviors_(std::move(behaviors)),
      breakpoints_(arity),
      label_(std::move(label)) {
  if (arity_ == 0) throw std::invalid_argument("weight arity must be at least 1");
  if (behaviors_.size() != arity_) throw std::invalid_argument("weight needs one endpoint behavior per axis");
}

double Weight::operator()(double t) const {
  if (arity_ != 1) throw std::logic_error("scalar evaluation of a multilinear weight");
  return eval_(std::span<const double>(&t, 1));
}

std::optional<double> Weight::closed_form(const std::string& name, int n, double p) const {
  const auto it = closed_forms_.find(name);
  if (it == closed_forms_.end()) return std::nullopt;
  const double v = it->second(n, p);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

Weight Weight::with_corner(double exponent) && {
  if (!(exponent > -static_cast<double>(arity_))) {
    throw std::invalid_argument("corner singularity is not integrable");
  }
  corner_exponent_ = exponent;
  return std::move(*this);
}

Weight Weight::with_breakpoints(std::size_t axis, std::vector<double> points) && {
  breakpoints_.at(axis) = std::move(points);
  return std::move(*this);
}

Weight Weight::with_norm(std::string norm) && {
  norm_ = std::move(norm);
  return std::move(*this);
}

Weight Weight::with_closed_form(std::string name, ClosedForm f) && {
  closed_forms_[std::move(name)] = std::move(f);
  return std::move(*this);
}

Weight Weight::with_zero_flag() && {
  zero_ = true;
  return std::move(*this);
}

Weight Weight::checked() && {
  if (zero_) {
    mass_ = {0.0, 0.0, 1, true};
    return std::move(*this);
  }
  CubeOptions options;
  options.tol = {1e-8, 1e-6};
  options.budget = std::size_t{1} << 14;
  options.corner_exponent = corner_exponent_;
  for (const auto& bp : breakpoints_) options.domains.push_back(AxisDomain{0.0, 1.0, bp});
  mass_ = integrate_unit_cube(eval_, behaviors_, options);
  if (!std::isfinite(mass_.value)) {
    throw std::invalid_argument("weight " + label_ + " is not integrable on the unit cube");
  }
  return std::move(*this);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

Weight constant_weight(double c, std::size_t m) {
  require(std::isfinite(c) && c >= 0.0, "constant weight needs c >= 0");
  require(m >= 1, "constant weight needs m >= 1");
  Weight w(m, [c](std::span<const double>) { return c; }, std::vector<EndpointBehavior>(m),
           "const:" + fmt(c) + ":" + std::to_string(m));
  if (m == 1) {
    w = std::move(w)
            .with_closed_form("lebesgue", [c](int n, double p) { return p > n ? c * p / (p - n) : NAN; })
            .with_closed_form("cesaro_lebesgue", [c](int n, double p) {
              const double e = 1.0 - n + n / p;
              return e > 0.0 ? c / e : NAN;
            });
  }
  if (c == 0.0) w = std::move(w).with_zero_flag();
  return std::move(w).checked();
}

Weight riemann_liouville_weight(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "Riemann-Liouville weight needs 0 < alpha < 1");
  const double scale = 1.0 / gamma(alpha);
  auto f = [alpha, scale](std::span<const double> t) { return scale * std::pow(1.0 - t[0], alpha - 1.0); };
  return Weight(1, f, {EndpointBehavior::power(0.0, alpha - 1.0)}, "rl:" + fmt(alpha))
      .with_closed_form("lebesgue",
                        [alpha](int n, double p) {
                          const double s = n / p;
                          return s < 1.0 ? gamma(1.0 - s) / gamma(1.0 + alpha - s) : NAN;
                        })
      .checked();
}

Weight multilinear_riesz_weight(double alpha, std::size_t m) {
  require(m >= 1, "Riesz weight needs m >= 1");
  const double md = static_cast<double>(m);
  require(alpha > 0.0 && alpha <= md, "Riesz weight needs 0 < alpha <= m");
  if (m == 1 && alpha < 1.0) {
    Weight w = riemann_liouville_weight(alpha);
    return Weight(1, w.function(), w.behaviors(), "riesz:" + fmt(alpha) + ":1")
        .with_norm("euclidean")
        .with_closed_form("lebesgue", w.closed_forms().at("lebesgue"))
        .checked();
  }
  const double scale = 1.0 / gamma(alpha);
  auto f = [alpha, md, scale](std::span<const double> t) {
    const std::span<const double> u = exact_complement();
    const bool exact = u.size() == t.size();
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = exact ? u[i] : 1.0 - t[i];
      s += d * d;
    }
    return scale * std::pow(s, 0.5 * (alpha - md));
  };
  Weight w(m, f, std::vector<EndpointBehavior>(m), "riesz:" + fmt(alpha) + ":" + std::to_string(m));
  if (alpha < md) w = std::move(w).with_corner(alpha - md);
  return std::move(w).with_norm("euclidean").checked();
}

Weight weyl_weight(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "Weyl weight needs 0 < alpha < 1");
  const double scale = 1.0 / gamma(alpha);
  auto f = [alpha, scale](std::span<const double> t) {
    return scale * std::pow((1.0 - t[0]) / t[0], alpha - 1.0);
  };
  return Weight(1, f, {EndpointBehavior::power(1.0 - alpha, alpha - 1.0)}, "weyl:" + fmt(alpha))
      .with_closed_form("cesaro_lebesgue",
                        [alpha](int n, double p) {
                          const double s = n * (1.0 - 1.0 / p);
                          return s < 2.0 - alpha ? gamma(2.0 - alpha - s) / gamma(2.0 - s) : NAN;
                        })
      .checked();
}

Weight multilinear_cesaro_weight(double alpha, std::size_t m) {
  require(m >= 1, "Cesaro weight needs m >= 1");
  const double md = static_cast<double>(m);
  require(alpha > 0.0 && alpha <= md, "Cesaro weight needs 0 < alpha <= m");
  if (m == 1 && alpha < 1.0) {
    Weight w = weyl_weight(alpha);
    return Weight(1, w.function(), w.behaviors(), "cesaro:" + fmt(alpha) + ":1")
        .with_norm("euclidean")
        .with_closed_form("cesaro_lebesgue", w.closed_forms().at("cesaro_lebesgue"))
        .checked();
  }
  const double scale = 1.0 / gamma(alpha);
  auto f = [alpha, md, scale](std::span<const double> t) {
    const std::span<const double> u = exact_complement();
    const bool exact = u.size() == t.size();
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = (exact ? u[i] : 1.0 - t[i]) / t[i];
      s += d * d;
    }
    return scale * std::pow(s, 0.5 * (alpha - md));
  };
  std::vector<EndpointBehavior> b(m);
  for (auto& e : b) e.exponent_at_zero = md - alpha;
  Weight w(m, f, b, "cesaro:" + fmt(alpha) + ":" + std::to_string(m));
  if (alpha < md) w = std::move(w).with_corner(alpha - md);
  return std::move(w).with_norm("euclidean").checked();
}

Weight counterexample_weight(double alpha, int n, double p) {
  require(alpha > 0.0 && alpha < 1.0, "counterexample weight needs 0 < alpha < 1");
  require(n >= 1, "counterexample weight needs n >= 1");
  require(p > 1.0 && std::isfinite(p), "counterexample weight needs p > 1");
  const double k = n / p - 1.0;
  auto f = [alpha, k](std::span<const double> t) {
    const double s = -std::log(t[0]);
    const double tail = s <= 1.0 ? std::pow(s, alpha - 1.0) : std::pow(s, -1.0 - alpha);
    return std::exp(-s * k) * tail;
  };
  EndpointBehavior b;
  b.exponent_at_zero = k;
  b.log_exponent_at_zero = -1.0 - alpha;
  b.exponent_at_one = alpha - 1.0;
  return Weight(1, f, {b}, "counter:" + fmt(alpha) + ":" + std::to_string(n) + ":" + fmt(p))
      .with_breakpoints(0, {std::exp(-1.0)})
      .with_closed_form("lebesgue",
                        [alpha, n, p](int n2, double p2) { return n2 == n && p2 == p ? 2.0 / alpha : NAN; })
      .checked();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
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
  require(used > 0 && used == s.size(), "malformed number '" + s + "' in weight spec '" + spec + "'");
  return v;
}

std::size_t to_count(const std::string& s, const std::string& spec) {
  const double v = to_real(s, spec);
  require(v >= 1.0 && v == std::floor(v) && v < 1e6, "expected a positive integer in weight spec '" + spec + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

Weight parse_weight(const std::string& spec, std::size_t default_arity) {
  const std::vector<std::string> parts = split(spec, ':');
  require(!parts.empty(), "empty weight spec");
  const std::string& kind = parts[0];
  const std::size_t argc = parts.size() - 1;
  if (kind == "const") {
    require(argc == 1 || argc == 2, "usage: const:c[:m]");
    return constant_weight(to_real(parts[1], spec), argc == 2 ? to_count(parts[2], spec) : default_arity);
  }
  if (kind == "rl") {
    require(argc == 1, "usage: rl:alpha");
    return riemann_liouville_weight(to_real(parts[1], spec));
  }
  if (kind == "riesz") {
    require(argc == 2, "usage: riesz:alpha:m");
    return multilinear_riesz_weight(to_real(parts[1], spec), to_count(parts[2], spec));
  }
  if (kind == "weyl") {
    require(argc == 1, "usage: weyl:alpha");
    return weyl_weight(to_real(parts[1], spec));
  }
  if (kind == "cesaro") {
    require(argc == 2, "usage: cesaro:alpha:m");
    return multilinear_cesaro_weight(to_real(parts[1], spec), to_count(parts[2], spec));
  }
  if (kind == "counter") {
    require(argc == 3, "usage: counter:alpha:n:p");
    return counterexample_weight(to_real(parts[1], spec), static_cast<int>(to_count(parts[2], spec)),
                                 to_real(parts[3], spec));
  }
  throw std::invalid_argument("unknown weight kind '" + kind + "'");
}

}  // namespace hardy
