// SPDX-License-Identifier: Apache-2.0

#include "hardy/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hardy/experiments.hpp"

namespace hardy {

using nlohmann::json;

json encode_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("not a number: " + j.dump());
}

bool operator==(const RunRecord& a, const RunRecord& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.command == b.command && a.parameters == b.parameters && a.result == b.result &&
         same(a.error_estimate, b.error_estimate) && a.seed == b.seed && same(a.tolerances.first, b.tolerances.first) &&
         same(a.tolerances.second, b.tolerances.second) && a.version == b.version;
}

json to_json(const RunRecord& r) {
  json j;
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["result"] = r.result;
  j["error_estimate"] = encode_number(r.error_estimate);
  j["seed"] = r.seed;
  j["tolerances"] = {{"abs", encode_number(r.tolerances.first)}, {"rel", encode_number(r.tolerances.second)}};
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  r.result = j.at("result");
  r.error_estimate = decode_number(j.at("error_estimate"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tolerances = {decode_number(j.at("tolerances").at("abs")), decode_number(j.at("tolerances").at("rel"))};
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.value("timestamp", "");
  return r;
}

namespace {

json measured(double value, double error) {
  return {{"value", encode_number(value)}, {"error_estimate", encode_number(error)}};
}

json quad_json(const QuadratureResult& q) {
  json j = measured(q.value, q.abs_error_estimate);
  j["evaluations"] = q.evaluations;
  j["converged"] = q.converged;
  return j;
}

json constant_json(const ConstantResult& c) {
  json j = quad_json(c);
  j["finite"] = c.finite;
  if (!c.diagnosis.empty()) j["diagnosis"] = c.diagnosis;
  return j;
}

json norm_json(const NormResult& n) {
  json j = measured(n.value, n.abs_error_estimate);
  j["finite"] = n.finite;
  j["exact"] = n.exact;
  j["lower_bound"] = n.lower_bound;
  j["converged"] = n.converged;
  return j;
}

json report_json(const SharpnessReport& r) {
  json j;
  j["experiment"] = r.experiment;
  j["target"] = measured(r.target, r.target_error);
  json sweep = json::array();
  for (const SweepEntry& e : r.sweep) {
    json s = measured(e.value, e.abs_error_estimate);
    s["parameter"] = encode_number(e.parameter);
    s["converged"] = e.converged;
    sweep.push_back(s);
  }
  j["sweep"] = sweep;
  j["extrapolated"] = measured(r.extrapolated, r.extrapolated_error);
  const double scale = r.target != 0.0 ? std::abs(r.target) : 1.0;
  j["relative_gap"] = measured(r.relative_gap, (r.extrapolated_error + r.target_error) / scale);
  j["tolerance"] = encode_number(r.tolerance);
  j["verdict"] = to_string(r.verdict);
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = measured(v.value, v.abs_error_estimate);
  j["extras"] = extras;
  j["notes"] = r.notes;
  return j;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Expands `--params-file F` into `--key value...` tokens appended after the
// command line; keys already given on the command line are skipped.
std::vector<std::string> expand_params_file(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--params-file");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw CLI::ParseError("--params-file needs a path", kExitUsage);
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in(path);
  if (!in) throw CLI::ParseError("cannot read params file '" + path + "'", kExitUsage);
  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                                          : a.find('=') - 2));
  }
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ParseError("params file line without '=': " + line, kExitUsage);
    const std::string key = trim(line.substr(0, eq));
    if (given.count(key)) continue;
    std::string value = trim(line.substr(eq + 1));
    std::replace(value.begin(), value.end(), ',', ' ');
    std::istringstream values(value);
    std::vector<std::string> tokens;
    for (std::string v; values >> v;) tokens.push_back(v);
    if (tokens.empty() || tokens.front() == "true") {
      args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.insert(args.end(), tokens.begin(), tokens.end());
  }
  return args;
}

std::map<std::string, std::string> collect_parameters(const CLI::App* app) {
  std::map<std::string, std::string> out;
  for (const CLI::App* a = app; a != nullptr; a = a->get_parent()) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->count() == 0) continue;
      std::string name = opt->get_single_name();
      if (name == "help") continue;
      std::string joined;
      for (const std::string& v : opt->results()) joined += (joined.empty() ? "" : ",") + v;
      if (!out.count(name)) out[name] = joined;
    }
  }
  return out;
}

void write_csv(std::ostream& out, const SharpnessReport& r) {
  out << "parameter,value,error\n" << std::setprecision(17);
  for (const SweepEntry& e : r.sweep) out << e.parameter << ',' << e.value << ',' << e.abs_error_estimate << '\n';
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& axes) {
  std::vector<std::size_t> out;
  for (std::size_t a : axes) {
    if (a == 0) throw std::invalid_argument("axes are numbered from 1");
    out.push_back(a - 1);
  }
  return out;
}

struct Common {
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  std::uint64_t seed = 0;
  std::size_t budget = std::size_t{1} << 20;
  bool csv = false;
};

struct Shape {
  std::string weight = "const:1";
  std::size_t m = 0;
  int n = 1;
  std::vector<double> p;
  std::vector<double> lambda;
  std::vector<double> q;
};

void add_shape(CLI::App* sub, Shape& s, bool with_p = true) {
  sub->add_option("--weight", s.weight, "weight spec: const:c[:m], rl:a, riesz:a:m, weyl:a, cesaro:a:m, counter:a:n:p");
  sub->add_option("--m", s.m, "number of slots (default: from the exponents)");
  sub->add_option("--n", s.n, "dimension")->check(CLI::PositiveNumber);
  if (with_p) {
    sub->add_option("--p", s.p, "exponents p_i")->delimiter(',');
    sub->add_option("--lambda", s.lambda, "Morrey exponents lambda_i")->delimiter(',');
    sub->add_option("--q", s.q, "CMO exponents q_i")->delimiter(',');
  }
}

std::size_t arity(const Shape& s, std::size_t fallback) {
  if (s.m > 0) return s.m;
  if (!s.p.empty()) return s.p.size();
  return std::max<std::size_t>(fallback, 1);
}

// p and lambda lists of length 1 are broadcast to m slots.
ExponentConfig make_config(const Shape& s, std::size_t m) {
  auto broadcast = [m](std::vector<double> v) {
    if (v.size() == 1 && m > 1) v.assign(m, v.front());
    return v;
  };
  if (s.p.empty()) throw std::invalid_argument("--p is required");
  return ExponentConfig::make(s.n, broadcast(s.p), broadcast(s.lambda), broadcast(s.q));
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted multilinear Hardy and Cesaro operators: sharp constants and experiments", "hardyctl"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--tol-abs", common.tol_abs, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rel", common.tol_rel, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Monte Carlo seed");
  app.add_option("--budget", common.budget, "Monte Carlo sample budget")->check(CLI::PositiveNumber);
  app.add_flag("--csv", common.csv, "emit sweeps as CSV rows (parameter,value,error)");
  app.add_flag("--version", [&](std::int64_t) { throw CLI::CallForVersion(kVersion, 0); }, "print the version");

  // constant
  CLI::App* c_constant = app.add_subcommand("constant", "sharp constant as an integral over (0,1)^m");
  std::string family;
  Shape c_shape;
  std::vector<std::size_t> c_axes;
  double c_shift = 1.0;
  double c_domain_cut = 0.0;
  double c_log_cut = 0.0;
  c_constant->add_option("family", family, "lebesgue | morrey | log-moment | cesaro-lebesgue | cesaro-log")
      ->required()
      ->check(CLI::IsMember({"lebesgue", "morrey", "log-moment", "cesaro-lebesgue", "cesaro-log"}));
  add_shape(c_constant, c_shape);
  c_constant->add_option("--axes", c_axes, "log axes E (1-based; log-moment, default all)")->delimiter(',');
  c_constant->add_option("--shift", c_shift, "log shift c in log(c/t)")->check(CLI::Range(1.0, 1e300));
  c_constant->add_option("--domain-cutoff", c_domain_cut, "restrict every axis to (delta, 1)")
      ->check(CLI::Range(0.0, 1.0));
  c_constant->add_option("--log-cutoff", c_log_cut, "cut log(1/t) below delta")->check(CLI::Range(0.0, 1.0));

  // apply
  CLI::App* c_apply = app.add_subcommand("apply", "pointwise operator value at |x| = r");
  std::string op;
  Shape a_shape;
  std::vector<std::string> a_f;
  std::vector<std::string> a_b;
  double a_r = 1.0;
  double a_alpha = 0.5;
  c_apply->add_option("operator", op, "hardy | cesaro | hardy-comm | cesaro-comm | rl | weyl")
      ->required()
      ->check(CLI::IsMember({"hardy", "cesaro", "hardy-comm", "cesaro-comm", "rl", "weyl"}));
  add_shape(c_apply, a_shape, false);
  c_apply->add_option("--f", a_f, "input functions")->required();
  c_apply->add_option("--b", a_b, "commutator symbols");
  c_apply->add_option("--r", a_r, "radius |x| (x for rl / weyl)")->check(CLI::PositiveNumber);
  c_apply->add_option("--alpha", a_alpha, "order of rl / weyl");

  // norm
  CLI::App* c_norm = app.add_subcommand("norm", "norm of a radial function");
  std::string space;
  std::string n_f;
  int n_n = 1;
  double n_p = 2.0;
  double n_lambda = std::numeric_limits<double>::quiet_NaN();
  double n_q = 2.0;
  bool n_numeric = false;
  SupOptions sup;
  c_norm->add_option("space", space, "lp | morrey | cmo")->required()->check(CLI::IsMember({"lp", "morrey", "cmo"}));
  c_norm->add_option("--f", n_f, "function spec")->required();
  c_norm->add_option("--n", n_n, "dimension")->check(CLI::PositiveNumber);
  c_norm->add_option("--p", n_p, "Lebesgue / Morrey exponent");
  c_norm->add_option("--lambda", n_lambda, "Morrey exponent (default -1/p)");
  c_norm->add_option("--q", n_q, "CMO exponent");
  c_norm->add_flag("--numeric", n_numeric, "skip closed forms");
  c_norm->add_option("--r-min", sup.r_min, "smallest radius of the supremum grid")->check(CLI::PositiveNumber);
  c_norm->add_option("--r-max", sup.r_max, "largest radius of the supremum grid")->check(CLI::PositiveNumber);

  // sharpness
  CLI::App* c_sharp = app.add_subcommand("sharpness", "sharpness / equality experiments");
  std::string experiment;
  Shape s_shape;
  std::vector<double> s_eps = kDefaultEpsilons;
  std::vector<double> s_radii = {0.1, 1.0, 10.0};
  double s_tolerance = std::numeric_limits<double>::quiet_NaN();
  double s_symbol = 1.0;
  c_sharp->add_option("experiment", experiment, "lebesgue | morrey | commutator | cesaro")
      ->required()
      ->check(CLI::IsMember({"lebesgue", "morrey", "commutator", "cesaro"}));
  add_shape(c_sharp, s_shape);
  c_sharp->add_option("--eps", s_eps, "eps sequence")->delimiter(',');
  c_sharp->add_option("--radii", s_radii, "radii (commutator)")->delimiter(',');
  c_sharp->add_option("--tolerance", s_tolerance, "accepted relative gap");
  c_sharp->add_option("--symbol-scale", s_symbol, "b_i = c log r (commutator)");

  // counterexample
  CLI::App* c_counter = app.add_subcommand("counterexample", "finite A with infinite C");
  double x_alpha = 0.5;
  int x_n = 1;
  double x_p = 2.0;
  std::vector<double> x_delta = {1e-2, 1e-4, 1e-6};
  c_counter->add_option("--alpha", x_alpha, "alpha in (0,1)");
  c_counter->add_option("--n", x_n, "dimension")->check(CLI::PositiveNumber);
  c_counter->add_option("--p", x_p, "exponent p > 1");
  c_counter->add_option("--delta", x_delta, "truncation sequence")->delimiter(',');

  // oscillation
  CLI::App* c_osc = app.add_subcommand("oscillation", "decay of int omega prod sin(pi r t_i)");
  Shape o_shape;
  std::vector<std::size_t> o_axes;
  std::vector<double> o_radii = kDefaultRadii;
  double o_threshold = 1e-3;
  add_shape(c_osc, o_shape, false);
  c_osc->add_option("--axes", o_axes, "oscillating axes E (1-based)")->required()->delimiter(',');
  c_osc->add_option("--radii", o_radii, "radius sequence")->delimiter(',');
  c_osc->add_option("--threshold", o_threshold, "bound on |I(r_max)|");

  try {
    std::vector<std::string> args = expand_params_file(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunRecord record;
  record.seed = common.seed;
  record.tolerances = {common.tol_abs, common.tol_rel};
  const Tolerance tol{common.tol_abs, common.tol_rel};
  ExperimentOptions eopt;
  eopt.tol = tol;
  eopt.seed = common.seed;
  eopt.budget = common.budget;
  const SharpnessReport* sweep_report = nullptr;
  SharpnessReport report;
  int code = kExitOk;

  try {
    if (c_constant->parsed()) {
      record.command = "constant " + family;
      record.parameters = collect_parameters(c_constant);
      const std::size_t m = arity(c_shape, 1);
      const Weight w = parse_weight(c_shape.weight, m);
      const ExponentConfig cfg = make_config(c_shape, w.arity());
      ConstantOptions o;
      o.tol = tol;
      o.seed = common.seed;
      o.budget = common.budget;
      if (c_domain_cut > 0.0) o.domain_cutoff = c_domain_cut;
      if (c_log_cut > 0.0) o.log_cutoff = c_log_cut;
      std::vector<std::size_t> E = zero_based(c_axes);
      if (c_axes.empty()) {
        for (std::size_t i = 0; i < w.arity(); ++i) E.push_back(i);
      }
      const ConstantResult r = constant(parse_constant_family(family), w, cfg, E, c_shift, o);
      record.result = constant_json(r);
      record.error_estimate = r.abs_error_estimate;
      const std::string key = family == "lebesgue" ? "lebesgue" : family == "cesaro-lebesgue" ? "cesaro_lebesgue" : "";
      if (!key.empty() && cfg.m() == 1 && !o.domain_cutoff) {
        if (const auto cf = w.closed_form(key, cfg.n, cfg.p_i[0]); cf && std::isfinite(*cf)) {
          record.result["closed_form"] = measured(*cf, 0.0);
        }
      }
    } else if (c_apply->parsed()) {
      record.command = "apply " + op;
      record.parameters = collect_parameters(c_apply);
      std::vector<RadialFunction> f;
      for (const std::string& s : a_f) f.push_back(parse_function(s));
      QuadratureResult q;
      if (op == "rl" || op == "weyl") {
        if (f.size() != 1) throw std::invalid_argument(op + " takes exactly one --f");
        q = op == "rl" ? riemann_liouville_apply(a_alpha, f[0], a_r, tol) : weyl_apply(a_alpha, f[0], a_r, tol);
      } else {
        const Weight w = parse_weight(a_shape.weight, a_shape.m > 0 ? a_shape.m : f.size());
        OperatorRequest req{w, f, std::nullopt};
        req.r = a_r;
        req.n = a_shape.n;
        req.tol = tol;
        req.seed = common.seed;
        req.budget = common.budget;
        const bool comm = op == "hardy-comm" || op == "cesaro-comm";
        if (comm || !a_b.empty()) {
          std::vector<RadialFunction> b;
          for (const std::string& s : a_b) b.push_back(parse_function(s));
          req.b = b;
        }
        if (op == "hardy") q = hardy_apply(req);
        if (op == "cesaro") q = cesaro_apply(req);
        if (op == "hardy-comm") q = hardy_commutator_apply(req);
        if (op == "cesaro-comm") q = cesaro_commutator_apply(req);
      }
      record.result = quad_json(q);
      record.error_estimate = q.abs_error_estimate;
    } else if (c_norm->parsed()) {
      record.command = "norm " + space;
      record.parameters = collect_parameters(c_norm);
      const RadialFunction f = parse_function(n_f);
      sup.force_numeric = n_numeric;
      NormResult r;
      if (space == "lp") r = lebesgue_norm(f, n_p, n_n, tol);
      if (space == "morrey") r = central_morrey_norm(f, n_p, std::isnan(n_lambda) ? -1.0 / n_p : n_lambda, n_n, sup);
      if (space == "cmo") r = cmo_norm(f, n_q, n_n, sup);
      record.result = norm_json(r);
      record.error_estimate = r.abs_error_estimate;
    } else if (c_sharp->parsed()) {
      record.command = "sharpness " + experiment;
      record.parameters = collect_parameters(c_sharp);
      const std::size_t m = arity(s_shape, 1);
      const Weight w = parse_weight(s_shape.weight, m);
      const ExponentConfig cfg = make_config(s_shape, w.arity());
      const bool given = !std::isnan(s_tolerance);
      if (experiment == "lebesgue") report = lebesgue_sharpness_sweep(w, cfg, s_eps, given ? s_tolerance : 0.02, eopt);
      if (experiment == "cesaro") report = cesaro_sharpness_sweep(w, cfg, s_eps, given ? s_tolerance : 0.02, eopt);
      if (experiment == "morrey") report = morrey_sharpness_check(w, cfg, given ? s_tolerance : 1e-6, eopt);
      if (experiment == "commutator") {
        report = commutator_pointwise_check(w, cfg, s_radii, s_symbol, given ? s_tolerance : 1e-6, eopt);
      }
      sweep_report = &report;
    } else if (c_counter->parsed()) {
      record.command = "counterexample";
      record.parameters = collect_parameters(c_counter);
      report = counterexample_report(x_alpha, x_n, x_p, x_delta, eopt);
      sweep_report = &report;
    } else if (c_osc->parsed()) {
      record.command = "oscillation";
      record.parameters = collect_parameters(c_osc);
      const Weight w = parse_weight(o_shape.weight, o_shape.m > 0 ? o_shape.m : 1);
      report = oscillation_decay_check(w, zero_based(o_axes), o_radii, o_threshold, eopt);
      sweep_report = &report;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (sweep_report) {
    record.result = report_json(*sweep_report);
    record.error_estimate = std::max(sweep_report->extrapolated_error, sweep_report->target_error);
    code = sweep_report->verdict == Verdict::sharp_confirmed ? kExitOk : kExitVerdict;
    if (common.csv) {
      write_csv(out, *sweep_report);
      return code;
    }
  }
  record.timestamp = utc_timestamp();
  out << to_json(record).dump(2) << '\n';
  return code;
}

}  // namespace hardy
