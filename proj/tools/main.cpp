// sixdelta: command-line front end for the propagators, correlators and the (6 Delta) symbol.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sixdelta/correlators.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/gauge.hpp"
#include "sixdelta/mb_engine.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/parallel.hpp"
#include "sixdelta/propagators.hpp"
#include "verify.hpp"

namespace {

using namespace sixdelta;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

// Closed forms are reported with a rounding-level error estimate.
constexpr double kClosedFormRel = 64 * std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// JSON config files. Top-level scalars set options of the main app; nested
// objects are sections for the subcommand of the same name.

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return dump(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    ordered_json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> out;
    collect(j, {}, out);
    return out;
  }

 private:
  static ordered_json dump(const CLI::App* app, bool default_also) {
    ordered_json j = ordered_json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "config") continue;
      if (opt->count() > 0) {
        const auto& r = opt->results();
        if (r.size() == 1) j[name] = r.front();
        else j[name] = r;
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      ordered_json s = dump(sub, default_also);
      if (!s.empty()) j[sub->get_name()] = std::move(s);
    }
    return j;
  }

  static std::string scalar(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
      // A nested array is a point: join its coordinates.
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : ",") + scalar(e);
      return s;
    }
    throw CLI::ConversionError("unsupported JSON value " + v.dump());
  }

  static void collect(const ordered_json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, v] : j.items()) {
      if (v.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(v, p, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (v.is_array() && !v.empty() && v.front().is_array()) {
        std::string pts;
        for (const auto& e : v) pts += (pts.empty() ? "" : ";") + scalar(e);
        item.inputs = {pts};
      } else if (v.is_array()) {
        for (const auto& e : v) item.inputs.push_back(scalar(e));
      } else {
        item.inputs = {scalar(v)};
      }
      out.push_back(std::move(item));
    }
  }
};

// ---------------------------------------------------------------------------
// Job description

Complex parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    std::size_t ua = 0, ub = 0;
    const double re = std::stod(a, &ua), im = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::logic_error&) {
    throw ParameterError("cannot parse complex number '" + s + "' (expected re or re:im)");
  }
}

std::vector<std::vector<double>> parse_points(const std::string& s) {
  std::vector<std::vector<double>> pts;
  std::stringstream ps(s);
  std::string point;
  while (std::getline(ps, point, ';')) {
    std::vector<double> coords;
    std::stringstream cs(point);
    std::string c;
    while (std::getline(cs, c, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(c, &used));
        if (c.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(c);
      } catch (const std::logic_error&) {
        throw ParameterError("cannot parse coordinate '" + c + "' in --points");
      }
    }
    pts.push_back(std::move(coords));
  }
  return pts;
}

struct Params {
  int d = 2;
  std::vector<Complex> weights;
  double l = 1.0;
  double u = std::numeric_limits<double>::quiet_NaN();
  double v = std::numeric_limits<double>::quiet_NaN();
  Complex a{}, b{};
  std::vector<std::vector<double>> points;
  ContourConfig cfg;
  oracle::McConfig mc;
  PrimeOrder order = PrimeOrder::Matched;
  bool use_oracle = false;
  double oracle_tol = 1e-9;
};

struct Outcome {
  Complex value{};
  double err = 0.0;
  double tail = 0.0;
  long long nodes = 0;
  std::string quantity;
};

Outcome closed(Complex v, const std::string& quantity) {
  return {v, kClosedFormRel * std::abs(v), 0.0, 1, quantity};
}

Outcome from_quad(const QuadResult& q, const std::string& quantity) {
  return {q.value, q.err_estimate, q.tail_bound, q.nodes_used, quantity};
}

Outcome from_estimate(const oracle::Estimate& e, const std::string& quantity) {
  return {e.value, e.error, 0.0, e.evaluations, quantity};
}

ConformalWeight weight(const Params& p, std::size_t i) { return ConformalWeight(p.weights.at(i), p.d); }

BoundaryPoint point(const Params& p, std::size_t i) { return BoundaryPoint(p.points.at(i)); }

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json contour_json(const ContourConfig& c, int d) {
  return {{"r", c.r_for(d)}, {"T", c.T}, {"n", c.n}, {"tol", c.tol}, {"max_doublings", c.max_doublings},
          {"use_lattice", c.use_lattice}, {"prune", c.prune}};
}

// ---------------------------------------------------------------------------
// Commands

struct Command {
  std::string name;
  std::size_t n_weights = 0;
  std::size_t n_points = 0;  // required point count; 0 means points are not used
  bool type_one_only = false;
  std::function<Outcome(const Params&)> eval;
  std::function<void(const Params&, ordered_json&)> inputs;
};

void base_inputs(const Params& p, ordered_json& j) {
  j["d"] = p.d;
  ordered_json w = ordered_json::array();
  for (Complex z : p.weights) w.push_back(complex_json(z));
  j["weights"] = w;
}

void point_inputs(const Params& p, ordered_json& j) {
  if (!p.points.empty()) j["points"] = p.points;
}

void mc_inputs(const Params& p, ordered_json& j) {
  j["oracle"] = p.use_oracle;
  if (p.use_oracle) j["mc"] = {{"seed", p.mc.seed}, {"samples", p.mc.samples}};
}

Command propagator_cmd() {
  Command c;
  c.name = "propagator";
  c.n_weights = 1;
  c.eval = [](const Params& p) {
    const ConformalWeight w = weight(p, 0);
    if (p.use_oracle) return from_estimate(oracle::bulk_to_bulk_oracle(w, p.l, p.oracle_tol), "bulk_to_bulk");
    return closed(bulk_to_bulk(w, p.l), "bulk_to_bulk");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    base_inputs(p, j);
    j["l"] = p.l;
    j["oracle"] = p.use_oracle;
  };
  return c;
}

Command threepoint_cmd() {
  Command c;
  c.name = "threepoint";
  c.n_weights = 3;
  c.n_points = 3;
  c.eval = [](const Params& p) {
    const TripleWeights t(weight(p, 0), weight(p, 1), weight(p, 2));
    if (p.use_oracle)
      return from_estimate(oracle::three_point_oracle(t, point(p, 0), point(p, 1), point(p, 2), p.mc), "three_point");
    return closed(three_point(t, point(p, 0), point(p, 1), point(p, 2)), "three_point");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    base_inputs(p, j);
    point_inputs(p, j);
    mc_inputs(p, j);
  };
  return c;
}

Command theta_cmd() {
  Command c;
  c.name = "theta";
  c.n_weights = 3;
  c.eval = [](const Params& p) {
    const TripleWeights t(weight(p, 0), weight(p, 1), weight(p, 2));
    if (p.use_oracle) return from_estimate(oracle::theta_oracle(t, p.oracle_tol), "theta");
    return closed(theta(t), "theta");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    base_inputs(p, j);
    j["oracle"] = p.use_oracle;
  };
  return c;
}

Command fourpoint_cmd() {
  Command c;
  c.name = "fourpoint";
  c.n_weights = 5;
  c.eval = [](const Params& p) {
    const auto w = [&](std::size_t i) { return weight(p, i); };
    if (p.points.empty()) {
      if (p.use_oracle)
        return from_estimate(oracle::i_uv_oracle(w(0), w(1), w(2), w(3), w(4), p.u, p.v, p.oracle_tol), "i_uv");
      return from_quad(i_uv(w(0), w(1), w(2), w(3), w(4), p.u, p.v, p.cfg), "i_uv");
    }
    if (p.use_oracle)
      return from_estimate(oracle::four_point_oracle(w(0), w(1), w(2), w(3), w(4), point(p, 0), point(p, 1),
                                                     point(p, 2), point(p, 3), p.oracle_tol),
                           "four_point");
    return from_quad(four_point(w(0), w(1), w(2), w(3), w(4), point(p, 0), point(p, 1), point(p, 2), point(p, 3), p.cfg),
                     "four_point");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    base_inputs(p, j);
    if (p.points.empty()) {
      j["u"] = p.u;
      j["v"] = p.v;
    } else {
      point_inputs(p, j);
    }
    j["oracle"] = p.use_oracle;
    if (!p.use_oracle) j["contour"] = contour_json(p.cfg, p.d);
  };
  return c;
}

// Default sphere-oracle points in d dimensions.
std::vector<std::vector<double>> sphere_points(int d) {
  std::vector<std::vector<double>> pts = {{0.0, 0.0}, {1.0, 0.3}, {-0.4, 1.2}};
  for (auto& x : pts) x.resize(static_cast<std::size_t>(d), 0.0);
  return pts;
}

Command sphere_cmd() {
  Command c;
  c.name = "sphere";
  c.eval = [](const Params& p) {
    if (p.use_oracle) {
      const auto pts = p.points.empty() ? sphere_points(p.d) : p.points;
      return from_estimate(oracle::sphere_integral_oracle(p.a, p.b, p.d, BoundaryPoint(pts.at(0)),
                                                          BoundaryPoint(pts.at(1)), BoundaryPoint(pts.at(2)),
                                                          p.oracle_tol)
                               .full,
                           "sphere_integral");
    }
    return closed(sphere_integral(p.a, p.b, p.d), "sphere_integral");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    j["d"] = p.d;
    j["a"] = complex_json(p.a);
    j["b"] = complex_json(p.b);
    j["oracle"] = p.use_oracle;
    if (p.use_oracle) j["points"] = p.points.empty() ? sphere_points(p.d) : p.points;
  };
  return c;
}

Command racah_cmd() {
  Command c;
  c.name = "racah";
  c.n_weights = 6;
  c.type_one_only = true;
  c.eval = [](const Params& p) {
    std::array<ConformalWeight, 6> w = {weight(p, 0), weight(p, 1), weight(p, 2),
                                        weight(p, 3), weight(p, 4), weight(p, 5)};
    return from_quad(racah(SixLabels(w), p.cfg, p.order), "racah");
  };
  c.inputs = [](const Params& p, ordered_json& j) {
    j["d"] = p.d;
    ordered_json rho = ordered_json::array();
    for (Complex z : p.weights) rho.push_back(z.imag());
    j["rho"] = rho;
    j["order"] = p.order == PrimeOrder::Matched ? "matched" : "swapped";
    j["contour"] = contour_json(p.cfg, p.d);
  };
  return c;
}

// ---------------------------------------------------------------------------
// Scan grid "name=a:b:step"

struct Scan {
  std::string name;
  std::vector<double> values;
};

Scan parse_scan(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ParameterError("--scan expects name=start:stop:step, got '" + s + "'");
  Scan out;
  out.name = s.substr(0, eq);
  std::vector<double> abh;
  std::stringstream ss(s.substr(eq + 1));
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      abh.push_back(std::stod(part));
    } catch (const std::logic_error&) {
      throw ParameterError("cannot parse '" + part + "' in --scan");
    }
  }
  if (abh.size() != 3 || !(abh[2] > 0.0) || abh[1] < abh[0])
    throw ParameterError("--scan expects start <= stop and step > 0");
  const long n = static_cast<long>(std::floor((abh[1] - abh[0]) / abh[2] + 1e-9)) + 1;
  if (n > 100000) throw ParameterError("--scan grid has more than 100000 points");
  for (long k = 0; k < n; ++k) out.values.push_back(abh[0] + static_cast<double>(k) * abh[2]);
  return out;
}

// Sets the scanned parameter: rhoN and deltaN_re (1-based weight index), l, u, v,
// a_re, a_im, b_re, b_im, tol, r, T.
void apply_scan(Params& p, const std::string& name, double x) {
  const auto indexed = [&](const std::string& prefix, const std::string& suffix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0 || name.size() <= prefix.size() + suffix.size()) return std::nullopt;
    if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) return std::nullopt;
    const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
    if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    const std::size_t i = std::stoul(digits);
    if (i < 1 || i > p.weights.size()) throw ParameterError("--scan index out of range in '" + name + "'");
    return i - 1;
  };
  if (auto i = indexed("rho", "")) p.weights[*i].imag(x);
  else if (auto k = indexed("delta", "_re")) p.weights[*k].real(x);
  else if (name == "l") p.l = x;
  else if (name == "u") p.u = x;
  else if (name == "v") p.v = x;
  else if (name == "a_re") p.a.real(x);
  else if (name == "a_im") p.a.imag(x);
  else if (name == "b_re") p.b.real(x);
  else if (name == "b_im") p.b.imag(x);
  else if (name == "tol") p.cfg.tol = x;
  else if (name == "r") p.cfg.r = x;
  else if (name == "T") p.cfg.T = x;
  else throw ParameterError("unknown --scan parameter '" + name + "'");
}

// ---------------------------------------------------------------------------
// Validation

void validate(const Command& c, const Params& p) {
  if (p.d < 1) throw ParameterError("--d must be a positive integer");
  if (p.weights.size() != c.n_weights)
    throw ParameterError(c.name + " needs " + std::to_string(c.n_weights) + " weights, got " +
                         std::to_string(p.weights.size()));
  if (c.type_one_only)
    for (Complex z : p.weights)
      if (std::abs(z.real() - 0.5 * p.d) > 1e-12)
        throw ParameterError(c.name + " accepts only type-I weights Delta = d/2 + i rho; got Re Delta = " +
                             std::to_string(z.real()));
  for (const auto& x : p.points)
    if (static_cast<int>(x.size()) != p.d)
      throw ParameterError("every point needs d = " + std::to_string(p.d) + " coordinates");
  if (c.n_points > 0 && p.points.size() != c.n_points)
    throw ParameterError(c.name + " needs --points with " + std::to_string(c.n_points) + " points");
  if (c.name == "fourpoint") {
    const bool uv = std::isfinite(p.u) || std::isfinite(p.v);
    if (uv == !p.points.empty()) throw ParameterError("fourpoint needs either --points (4 points) or --u and --v");
    if (uv && !(p.u > 0.0 && p.v > 0.0)) throw ParameterError("fourpoint needs u > 0 and v > 0");
    if (!uv && p.points.size() != 4) throw ParameterError("fourpoint needs 4 points (x2, x3, x5, x6)");
  }
  if (c.name == "sphere" && p.use_oracle && !p.points.empty() && p.points.size() != 3)
    throw ParameterError("sphere --oracle needs 3 points (x3, x5, x6)");
  if (c.name == "propagator" && !(p.l >= 0.0)) throw ParameterError("--l must be >= 0");
  if (!(p.cfg.tol > 0.0)) throw ParameterError("--tol must be > 0");
  if (p.cfg.n < 0 || p.cfg.T < 0.0) throw ParameterError("--n and --T must be >= 0");
  if (p.mc.samples <= 0) throw ParameterError("--samples must be > 0");
}

// ---------------------------------------------------------------------------
// Output

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Row {
  std::optional<double> scan_value;
  Outcome out;
  double wall = 0.0;
  ordered_json inputs;
};

ordered_json record(const std::string& command, const Row& r) {
  ordered_json j;
  j["command"] = command;
  j["quantity"] = r.out.quantity;
  j["inputs"] = r.inputs;
  j["value"] = complex_json(r.out.value);
  j["err_estimate"] = r.out.err;
  j["tail_bound"] = r.out.tail;
  j["nodes_used"] = r.out.nodes;
  j["wall_time"] = r.wall;
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot open output file '" + path + "'");
  f << text;
}

int emit_error(const std::string& type, const std::string& message, int code) {
  ordered_json j;
  j["error"] = {{"type", type}, {"message", message}, {"exit_code", code}};
  std::cout << j.dump(2) << "\n";
  return code;
}

// ---------------------------------------------------------------------------
// Option wiring

struct WeightOptions {
  std::vector<double> rho;
  std::vector<std::string> delta;
};

struct Cli {
  std::string format = "json";
  std::string output;
  int threads = 0;

  Params p;
  WeightOptions w;
  std::string points;
  std::string a = "0", b = "0";
  std::string order = "matched";
  std::string scan;
  bool no_lattice = false;
  bool no_prune = false;
  bool fixed = false;

  std::string level = "quick";
  unsigned long long seed = 0;
  int triples = 1000;
  int maps = 100;
  bool seed_given = false;
  double samples = static_cast<double>(oracle::McConfig{}.samples);
};

void add_weights(CLI::App* sub, Cli& c, const std::string& what) {
  sub->add_option("--d", c.p.d, "Boundary dimension")->capture_default_str();
  auto* rho = sub->add_option("--rho", c.w.rho, "Type-I weights Delta = d/2 + i rho: " + what)->delimiter(',');
  auto* delta = sub->add_option("--delta", c.w.delta, "Complex weights re or re:im: " + what)->delimiter(',');
  rho->excludes(delta);
}

void add_contour(CLI::App* sub, Cli& c) {
  sub->add_option("--tol", c.p.cfg.tol, "Relative tolerance between node doublings")->capture_default_str();
  sub->add_option("--r", c.p.cfg.r, "Contour abscissa (default -d/16)");
  sub->add_option("--T", c.p.cfg.T, "Truncation height (0: automatic)")->capture_default_str();
  sub->add_option("--n", c.p.cfg.n, "Nodes per axis (0: automatic)")->capture_default_str();
  sub->add_option("--max-doublings", c.p.cfg.max_doublings, "Node doublings before giving up")->capture_default_str();
  sub->add_option("--max-grid", c.p.cfg.max_grid, "Largest (n+1)^dim node grid per level")->capture_default_str();
  sub->add_flag("--fixed", c.fixed, "Evaluate once at (T, n) without adaptive refinement");
}

void add_common(CLI::App* sub, Cli& c, bool with_oracle) {
  if (with_oracle) {
    sub->add_flag("--oracle", c.p.use_oracle, "Use the independent brute-force oracle");
    sub->add_option("--oracle-tol", c.p.oracle_tol, "Relative tolerance of deterministic oracles")
        ->capture_default_str();
  }
  sub->add_option("--scan", c.scan, "Scan grid name=start:stop:step, e.g. rho1=0.5:3:0.25");
}

std::vector<Complex> resolve_weights(const Cli& c) {
  std::vector<Complex> out;
  for (double r : c.w.rho) out.emplace_back(0.5 * c.p.d, r);
  for (const auto& s : c.w.delta) out.push_back(parse_complex(s));
  return out;
}

int run_job(const Command& cmd, Cli& c) {
  Params base = c.p;
  base.weights = resolve_weights(c);
  if (!c.points.empty()) base.points = parse_points(c.points);
  base.a = parse_complex(c.a);
  base.b = parse_complex(c.b);
  base.cfg.use_lattice = !c.no_lattice;
  base.cfg.prune = !c.no_prune;
  base.cfg.adaptive = !c.fixed;
  if (c.order == "matched") base.order = PrimeOrder::Matched;
  else if (c.order == "swapped") base.order = PrimeOrder::Swapped;
  else throw ParameterError("--order must be matched or swapped");
  if (c.seed_given) base.mc.seed = c.seed;
  if (!(c.samples >= 1.0 && c.samples <= 1e12 && c.samples == std::floor(c.samples)))
    throw ParameterError("--samples must be a whole number between 1 and 1e12");
  base.mc.samples = static_cast<long long>(c.samples);

  std::optional<Scan> scan;
  if (!c.scan.empty()) scan = parse_scan(c.scan);

  // Validate every grid point before any evaluation.
  std::vector<Params> jobs;
  if (scan) {
    for (double x : scan->values) {
      Params q = base;
      apply_scan(q, scan->name, x);
      validate(cmd, q);
      jobs.push_back(std::move(q));
    }
  } else {
    validate(cmd, base);
    jobs.push_back(base);
  }

  std::vector<Row> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Row r;
    r.out = cmd.eval(jobs[i]);
    r.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    cmd.inputs(jobs[i], r.inputs);
    if (scan) r.scan_value = scan->values[i];
    rows.push_back(std::move(r));
  }

  std::string text;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "command,quantity";
    if (scan) os << "," << scan->name;
    os << ",value_re,value_im,err_estimate,tail_bound,nodes_used,wall_time\n";
    for (const auto& r : rows) {
      os << cmd.name << "," << r.out.quantity;
      if (r.scan_value) os << "," << num(*r.scan_value);
      os << "," << num(r.out.value.real()) << "," << num(r.out.value.imag()) << "," << num(r.out.err) << ","
         << num(r.out.tail) << "," << r.out.nodes << "," << num(r.wall) << "\n";
    }
    text = os.str();
  } else if (scan) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(record(cmd.name, r));
    text = arr.dump(2) + "\n";
  } else {
    text = record(cmd.name, rows.front()).dump(2) + "\n";
  }
  write_output(c.output, text);
  return 0;
}

int run_verify(Cli& c) {
  cli::Level level;
  if (c.level == "quick") level = cli::Level::quick;
  else if (c.level == "full") level = cli::Level::full;
  else throw ParameterError("--level must be quick or full");
  const unsigned long long seed = c.seed_given ? c.seed : 20240601ULL;
  const auto t0 = std::chrono::steady_clock::now();
  const auto checks = cli::run_verify(level, seed);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  for (const auto& r : checks) ok = ok && r.passed();

  std::string text;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "name,max_err,tolerance,passed,wall_time\n";
    for (const auto& r : checks)
      os << r.name << "," << num(r.max_err) << "," << num(r.tolerance) << "," << (r.passed() ? 1 : 0) << ","
         << num(r.wall_time) << "\n";
    text = os.str();
  } else {
    ordered_json j;
    j["command"] = "verify";
    j["inputs"] = {{"level", c.level}, {"seed", seed}};
    ordered_json arr = ordered_json::array();
    for (const auto& r : checks) {
      ordered_json e = {{"name", r.name}, {"max_err", r.max_err}, {"tolerance", r.tolerance},
                        {"passed", r.passed()}, {"wall_time", r.wall_time}};
      if (!r.note.empty()) e["note"] = r.note;
      arr.push_back(e);
    }
    j["checks"] = arr;
    j["passed"] = ok;
    j["wall_time"] = wall;
    text = j.dump(2) + "\n";
  }
  write_output(c.output, text);
  return ok ? 0 : kExitFailed;
}

int run_gauge(Cli& c) {
  const auto t0 = std::chrono::steady_clock::now();
  ordered_json j;
  j["command"] = "gauge";
  bool ok = true;
  if (!c.points.empty()) {
    const auto pts = parse_points(c.points);
    if (pts.size() != 3) throw ParameterError("gauge --points needs 3 points");
    for (const auto& x : pts)
      if (x.size() != pts.front().size() || x.size() < 2)
        throw ParameterError("gauge --points needs 3 points of equal dimension >= 2");
    const gauge::PointTriple t{BoundaryPoint(pts[0]), BoundaryPoint(pts[1]), BoundaryPoint(pts[2])};
    const gauge::LorentzMatrix h = gauge::h_of_triple(t);
    const Eigen::VectorXd xd = gauge::x_d_point(t);
    // Images of the three points under h, as a check of the gauge map.
    double err = 0.0;
    const int d = t.d();
    std::vector<double> e1(static_cast<std::size_t>(d), 0.0);
    e1[0] = 1.0;
    const BoundaryPoint ia = gauge::conformal_act(h, t.a), ib = gauge::conformal_act(h, t.b),
                        ic = gauge::conformal_act(h, t.c);
    for (int k = 0; k < d; ++k) {
      err = std::max(err, std::abs(ia.x[static_cast<std::size_t>(k)]));
      err = std::max(err, std::abs(ib.x[static_cast<std::size_t>(k)] - e1[static_cast<std::size_t>(k)]));
    }
    if (!ic.at_infinity) err = std::numeric_limits<double>::infinity();
    j["inputs"] = {{"points", pts}};
    j["x_d"] = std::vector<double>(xd.data(), xd.data() + xd.size());
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < h.rows(); ++r) {
      std::vector<double> row;
      for (int k = 0; k < h.cols(); ++k) row.push_back(h(r, k));
      rows.push_back(row);
    }
    j["h"] = rows;
    j["fp_factor"] = gauge::fp_factor(t);
    j["err_estimate"] = err;
    ok = err < 1e-9;
  } else {
    const auto checks = gauge::gauge_fixing_checks(c.seed_given ? c.seed : 11ULL, c.triples, c.maps);
    j["inputs"] = {{"seed", c.seed_given ? c.seed : 11ULL}, {"triples", c.triples}, {"maps", c.maps}};
    ordered_json arr = ordered_json::array();
    for (const auto& r : checks) {
      arr.push_back({{"name", r.name}, {"max_err", r.max_err}, {"tolerance", r.tolerance}, {"trials", r.trials},
                     {"passed", r.passed()}});
      ok = ok && r.passed();
    }
    j["checks"] = arr;
    j["passed"] = ok;
  }
  j["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_output(c.output, j.dump(2) + "\n");
  return ok ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propagators, Clebsch-Gordan coefficients and (6 Delta) symbols of SO(1,d+1)", "sixdelta"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Cli c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--output", c.output, "Output file (default stdout)");
  app.add_option("--threads", c.threads,
                 std::string("Worker threads (default: $") + par::kThreadsEnv + " or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::map<CLI::App*, Command> commands;

  auto* prop = app.add_subcommand("propagator", "Bulk-to-bulk propagator K_Delta at geodesic distance l");
  add_weights(prop, c, "one weight");
  prop->add_option("--l", c.p.l, "Geodesic distance")->capture_default_str();
  add_common(prop, c, true);
  commands[prop] = propagator_cmd();

  auto* three = app.add_subcommand("threepoint", "Three-point function of boundary points");
  add_weights(three, c, "three weights");
  three->add_option("--points", c.points, "Points as x1,y1;x2,y2;x3,y3");
  three->add_option("--samples", c.samples, "Monte Carlo samples for --oracle (1e7 notation accepted)")
      ->capture_default_str();
  three->add_option("--seed", c.seed, "Monte Carlo seed for --oracle")->each([&](const std::string&) {
    c.seed_given = true;
  });
  add_common(three, c, true);
  commands[three] = threepoint_cmd();

  auto* th = app.add_subcommand("theta", "Normalization theta = C(D) C(dual D)");
  add_weights(th, c, "three weights");
  add_common(th, c, true);
  commands[th] = theta_cmd();

  auto* four = app.add_subcommand("fourpoint", "Four-point function, or I(u, v) from --u and --v");
  add_weights(four, c, "D1, D2, D3, D5, D6");
  four->add_option("--points", c.points, "Points x2;x3;x5;x6 as comma-separated coordinates");
  four->add_option("--u", c.p.u, "Cross ratio u");
  four->add_option("--v", c.p.v, "Cross ratio v");
  add_contour(four, c);
  add_common(four, c, true);
  commands[four] = fourpoint_cmd();

  auto* sph = app.add_subcommand("sphere", "Boundary integral pi^{d/2} Upsilon(a) Upsilon(-a-b) / Upsilon(-b)");
  sph->add_option("--d", c.p.d, "Boundary dimension")->capture_default_str();
  sph->add_option("--a", c.a, "Exponent a as re or re:im")->required();
  sph->add_option("--b", c.b, "Exponent b as re or re:im")->required();
  sph->add_option("--points", c.points, "Points x3;x5;x6 for --oracle");
  add_common(sph, c, true);
  commands[sph] = sphere_cmd();

  auto* rac = app.add_subcommand("racah", "(6 Delta) symbol of six type-I weights");
  add_weights(rac, c, "six weights");
  add_contour(rac, c);
  rac->add_option("--order", c.order, "Label order in the second prefactor")
      ->check(CLI::IsMember({"matched", "swapped"}))
      ->capture_default_str();
  rac->add_flag("--no-lattice", c.no_lattice, "Evaluate every Gamma function directly");
  rac->add_flag("--no-prune", c.no_prune, "Keep all entries of the factor tables");
  add_common(rac, c, false);
  commands[rac] = racah_cmd();

  auto* ver = app.add_subcommand("verify", "Cross-check closed forms against the brute-force oracles");
  ver->add_option("--level", c.level, "Budget")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  ver->add_option("--seed", c.seed, "Seed for random draws")->each([&](const std::string&) { c.seed_given = true; });

  auto* gau = app.add_subcommand("gauge", "Gauge-fixing checks, or the gauge map of one triple");
  gau->add_option("--points", c.points, "Triple xA;xB;xC (omit to run the checks)");
  gau->add_option("--seed", c.seed, "Seed")->each([&](const std::string&) { c.seed_given = true; });
  gau->add_option("--triples", c.triples, "Random triples")->capture_default_str()->check(CLI::PositiveNumber);
  gau->add_option("--maps", c.maps, "Random conformal maps")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(e.get_name(), e.what(), kExitInvalid);
  }

  try {
    if (c.threads > 0) par::set_worker_count(c.threads);
    if (ver->parsed()) return run_verify(c);
    if (gau->parsed()) return run_gauge(c);
    for (auto& [sub, cmd] : commands)
      if (sub->parsed()) return run_job(cmd, c);
    return emit_error("UsageError", "no subcommand given", kExitInvalid);
  } catch (const TruncationError& e) {
    return emit_error("TruncationError", e.what(), kExitNumerical);
  } catch (const NonConvergedError& e) {
    return emit_error("NonConvergedError", e.what(), kExitNumerical);
  } catch (const PoleError& e) {
    return emit_error("PoleError", e.what(), kExitInvalid);
  } catch (const CoincidentPointsError& e) {
    return emit_error("CoincidentPointsError", e.what(), kExitInvalid);
  } catch (const AntipodalError& e) {
    return emit_error("AntipodalError", e.what(), kExitInvalid);
  } catch (const DomainError& e) {
    return emit_error("DomainError", e.what(), kExitInvalid);
  } catch (const ParameterError& e) {
    return emit_error("ParameterError", e.what(), kExitInvalid);
  } catch (const std::exception& e) {
    return emit_error("InternalError", e.what(), kExitFailed);
  }
}
