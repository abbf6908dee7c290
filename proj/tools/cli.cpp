#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "tfx/calculus.hpp"
#include "tfx/equilibria.hpp"
#include "tfx/error.hpp"
#include "tfx/flow.hpp"
#include "tfx/geometry2.hpp"
#include "tfx/gibbs.hpp"
#include "tfx/kernels.hpp"
#include "tfx/transfer.hpp"
#include "tfx/wasserstein.hpp"

namespace tfx::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

const std::vector<std::string> kPathKeys = {"output", "measure_output", "potential", "base",
                                            "measure", "problem", "zeta", "phi"};

[[noreturn]] void bad_config(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

std::vector<double> parse_reals(const std::string& text, char sep, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      bad_config("'" + key + "' has a non-numeric entry '" + item + "'");
    }
  }
  return out;
}

std::vector<double> reals(const json& v, const std::string& key) {
  if (v.is_string()) return parse_reals(v.get<std::string>(), ',', key);
  if (!v.is_array()) bad_config("'" + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) bad_config("'" + key + "' must be a list of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> points(const json& v, const std::string& key) {
  std::vector<std::vector<double>> out;
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    // "a,b;c,d" lists points; a plain "a,b,c" lists one-dimensional points
    if (v.get<std::string>().find(';') == std::string::npos) {
      for (double x : parse_reals(v.get<std::string>(), ',', key)) out.push_back({x});
      return out;
    }
    while (std::getline(ss, item, ';'))
      if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_reals(item, ',', key));
    return out;
  }
  if (!v.is_array()) bad_config("'" + key + "' must be a list of points");
  for (const json& e : v) {
    if (e.is_number()) out.push_back({e.get<double>()});
    else out.push_back(reals(e, key));
  }
  return out;
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) bad_config("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t count(const json& v, const std::string& key) {
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const unsigned long long x = std::stoull(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
    }
    bad_config("'" + key + "' must be a nonnegative integer");
  }
  if (!v.is_number_integer() || v.get<long long>() < 0) bad_config("'" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

double real(const json& v, const std::string& key) {
  if (v.is_string()) {
    const auto r = parse_reals(v.get<std::string>(), ',', key);
    if (r.size() != 1) bad_config("'" + key + "' must be a number");
    return r[0];
  }
  if (!v.is_number()) bad_config("'" + key + "' must be a number");
  return v.get<double>();
}

// Makes relative path entries of a field set absolute against dir.
json anchor_paths(json fields, const fs::path& dir) {
  if (dir.empty()) return fields;
  auto anchor = [&](json& v) {
    if (v.is_string()) {
      const fs::path p(v.get<std::string>());
      if (p.is_relative()) v = (dir / p).lexically_normal().string();
    }
  };
  for (const std::string& k : kPathKeys)
    if (fields.contains(k)) anchor(fields[k]);
  if (fields.contains("functions")) {
    json& f = fields["functions"];
    if (f.is_array())
      for (json& e : f) anchor(e);
  }
  return fields;
}

std::vector<fs::path> path_list(const json& v, const std::string& key) {
  std::vector<fs::path> out;
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.emplace_back(item);
    return out;
  }
  if (!v.is_array()) bad_config("'" + key + "' must be a list of paths");
  for (const json& e : v) out.emplace_back(text(e, key));
  return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "subcommand", "output",  "measure_output", "potential", "base",     "measure",   "problem",
      "zeta",       "phi",     "functions",      "mode",      "t_grid",   "w_grid",    "x_grid",
      "y_grid",     "region",  "step",           "quantity",  "level",    "topology",  "seed",
      "mc_steps",   "horizon", "fd_step",        "tolerance", "max_iterations"};
  return keys;
}

RunConfig resolve_config(const json& file_fields, const fs::path& file_dir, const json& flag_fields) {
  json merged = json::object();
  for (const json* src : {&file_fields, &flag_fields}) {
    if (src->is_null()) continue;
    if (!src->is_object()) bad_config("config must be a JSON object");
    json fields = src == &file_fields ? anchor_paths(*src, file_dir) : *src;
    for (auto it = fields.begin(); it != fields.end(); ++it) {
      const auto& keys = known_keys();
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) bad_config("unknown config key '" + it.key() + "'");
      merged[it.key()] = it.value();
    }
  }

  RunConfig c;
  auto has = [&](const char* k) { return merged.contains(k) && !merged.at(k).is_null(); };
  auto path = [&](const char* k, fs::path& dst) {
    if (has(k)) dst = fs::path(text(merged.at(k), k));
  };
  if (!has("subcommand")) bad_config("no subcommand given");
  c.subcommand = text(merged.at("subcommand"), "subcommand");
  path("output", c.output);
  path("measure_output", c.measure_output);
  path("potential", c.potential);
  path("base", c.base);
  path("measure", c.measure);
  path("problem", c.problem);
  path("zeta", c.zeta);
  path("phi", c.phi);
  if (has("functions")) c.functions = path_list(merged.at("functions"), "functions");
  if (has("mode")) c.mode = text(merged.at("mode"), "mode");
  if (has("t_grid")) c.t_grid = reals(merged.at("t_grid"), "t_grid");
  if (has("w_grid")) c.w_grid = points(merged.at("w_grid"), "w_grid");
  if (has("x_grid")) c.x_grid = reals(merged.at("x_grid"), "x_grid");
  if (has("y_grid")) c.y_grid = reals(merged.at("y_grid"), "y_grid");
  if (has("region")) c.region = reals(merged.at("region"), "region");
  if (has("step")) c.step = real(merged.at("step"), "step");
  if (has("quantity")) c.quantity = text(merged.at("quantity"), "quantity");
  if (has("level")) c.level = count(merged.at("level"), "level");
  if (has("topology")) c.topology = text(merged.at("topology"), "topology");
  if (has("seed")) c.seed = count(merged.at("seed"), "seed");
  if (has("mc_steps")) c.mc_steps = count(merged.at("mc_steps"), "mc_steps");
  if (has("horizon")) c.horizon = count(merged.at("horizon"), "horizon");
  if (has("fd_step")) c.fd_step = real(merged.at("fd_step"), "fd_step");
  if (has("tolerance")) c.tolerance = real(merged.at("tolerance"), "tolerance");
  if (has("max_iterations")) c.max_iterations = count(merged.at("max_iterations"), "max_iterations");

  // The echo is canonical: keys sorted, paths as resolved.
  json resolved = json::object();
  std::vector<std::string> keys;
  for (auto it = merged.begin(); it != merged.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) resolved[k] = merged.at(k);
  resolved["seed"] = c.seed;
  c.resolved = std::move(resolved);
  return c;
}

std::string error_json(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

namespace {

struct Context {
  const RunConfig& cfg;
  std::vector<fs::path> inputs;  // hashed into the metadata, in order of use
  json summary = json::object();

  const fs::path& need(const fs::path& p, const char* key) {
    if (p.empty()) bad_config("subcommand '" + cfg.subcommand + "' needs '" + key + "'");
    if (!fs::is_regular_file(p)) bad_config("input '" + std::string(key) + "' not found: " + p.string());
    inputs.push_back(p);
    return p;
  }
  FnTable table(const fs::path& p, const char* key) { return io::fn_table_from_json(io::read_json(need(p, key))); }
  ConstraintProblem problem() { return io::problem_from_json(io::read_json(need(cfg.problem, "problem"))); }
  NewtonOptions newton() const {
    NewtonOptions o;
    o.tolerance = cfg.tolerance;
    o.max_iterations = cfg.max_iterations;
    return o;
  }
};

fs::path sibling(const fs::path& output, const std::string& suffix) { return fs::path(output.string() + suffix); }

std::string csv_coefficients(const std::vector<double>& a) {
  io::CsvWriter w({"k", "a_k"});
  for (std::size_t k = 0; k < a.size(); ++k) w.add({std::to_string(k), io::format_double(a[k])});
  return w.str();
}

std::string word_label(std::size_t m, std::size_t length, std::size_t code) {
  std::string s;
  for (Symbol c : word_symbols(m, Word{length, code})) s += std::to_string(c);
  return s;
}

// Backward-kernel entries as transitions: trans(v, u) = P(u -> v).
std::string csv_transitions(const MarkovMeasure& mu) {
  io::CsvWriter w({"from", "to", "probability"});
  const std::size_t d = mu.blocks();
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v)
      if (v % (d / mu.alphabet()) == u / mu.alphabet())
        w.add({word_label(mu.alphabet(), mu.order(), u), word_label(mu.alphabet(), mu.order(), v),
               io::format_double(mu.trans()(v, u))});
  return w.str();
}

void cmd_normalize(Context& ctx) {
  io::write_json(ctx.cfg.output, io::to_json(normalize(ctx.table(ctx.cfg.potential, "potential"))));
}

void cmd_gibbs(Context& ctx) {
  io::write_json(ctx.cfg.output, io::to_json(gibbs_measure(ctx.table(ctx.cfg.potential, "potential"))));
}

void cmd_entropy(Context& ctx) {
  MarkovMeasure mu;
  if (!ctx.cfg.measure.empty()) mu = io::measure_from_json(io::read_json(ctx.need(ctx.cfg.measure, "measure")));
  else mu = gibbs_measure(ctx.table(ctx.cfg.potential, "potential"));
  io::CsvWriter w({"entropy"});
  w.add({io::format_double(entropy(mu))});
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_pressure(Context& ctx) {
  const FnTable a = ctx.table(ctx.cfg.potential, "potential");
  const Normalization n = normalize_with_data(a);
  io::CsvWriter w({"log_lambda", "lambda", "gap"});
  w.add({io::format_double(n.eigendata.log_lambda), io::format_double(std::exp(n.eigendata.log_lambda)),
         io::format_double(n.eigendata.gap)});
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_metric(Context& ctx) {
  const FnTable a = ctx.table(ctx.cfg.potential, "potential");
  std::vector<FnTable> fs;
  for (const fs::path& p : ctx.cfg.functions) fs.push_back(ctx.table(p, "functions"));
  const std::string mode = ctx.cfg.mode.empty() ? "gram" : ctx.cfg.mode;
  if (mode == "gram") {
    if (fs.empty()) bad_config("metric needs at least one entry in 'functions'");
    const GramMatrix g = gram_matrix(a, fs);
    io::CsvWriter w({"i", "j", "value"});
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        w.add({std::to_string(i), std::to_string(j), io::format_double(g.values(i, j))});
    io::write_text(ctx.cfg.output, w.str());
    return;
  }
  if (mode != "pairwise") bad_config("metric mode must be 'gram' or 'pairwise'");
  if (fs.size() != 2) bad_config("pairwise metric needs exactly two 'functions'");
  const FnTable& z = fs[0];
  const FnTable& e = fs[1];
  io::CsvWriter w({"route", "value", "standard_error"});
  w.add({"exact", io::format_double(variance_metric(a, z, e)), ""});
  w.add({"hessian_fd", io::format_double(hessian_fd_log_lambda(a, z, e)), ""});
  w.add({"gibbs_fd", io::format_double(gibbs_derivative_fd(a, z, e, ctx.cfg.fd_step)), ""});
  // polarization: <z, e> = (V(z + e) - V(z - e)) / 4
  if (ctx.cfg.horizon > 0)
    w.add({"asymptotic", io::format_double(0.25 * (asymptotic_variance(a, z + e, ctx.cfg.horizon) -
                                                   asymptotic_variance(a, z - e, ctx.cfg.horizon))),
           ""});
  if (ctx.cfg.mc_steps > 0) {
    const McVariance p = mc_birkhoff_variance(a, z + e, ctx.cfg.mc_steps, ctx.cfg.seed);
    const McVariance q = mc_birkhoff_variance(a, z - e, ctx.cfg.mc_steps, ctx.cfg.seed + 1);
    w.add({"monte_carlo", io::format_double(0.25 * (p.estimate - q.estimate)),
           io::format_double(0.25 * std::hypot(p.standard_error, q.standard_error))});
  }
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_derivative(Context& ctx) {
  const FnTable a = ctx.table(ctx.cfg.potential, "potential");
  const FnTable z = ctx.table(ctx.cfg.zeta, "zeta");
  io::CsvWriter w({"quantity", "exact", "finite_difference"});
  if (ctx.cfg.phi.empty()) {
    w.add({"dlog_lambda", io::format_double(dlog_lambda(a, z)), io::format_double(dlog_lambda_fd(a, z, ctx.cfg.fd_step))});
  } else {
    const FnTable phi = ctx.table(ctx.cfg.phi, "phi");
    w.add({"gibbs_derivative", io::format_double(gibbs_derivative(a, z, phi)),
           io::format_double(gibbs_derivative_fd(a, z, phi, ctx.cfg.fd_step))});
  }
  io::write_text(ctx.cfg.output, w.str());
}

void write_measure(Context& ctx, const MarkovMeasure& mu) {
  const fs::path out = ctx.cfg.measure_output.empty() ? sibling(ctx.cfg.output, ".measure.json") : ctx.cfg.measure_output;
  io::write_json(out, io::to_json(mu));
}

void cmd_prescribe(Context& ctx) {
  const ConstraintProblem p = ctx.problem();
  const Prescription r = prescribe(p.base, p.phi, p.target, ctx.newton());
  io::write_text(ctx.cfg.output, csv_coefficients(r.coefficients));
  write_measure(ctx, r.measure);
  ctx.summary["residual"] = r.residual;
  ctx.summary["iterations"] = r.iterations;
}

void cmd_equilibrium(Context& ctx) {
  const ConstraintProblem p = ctx.problem();
  const ConstrainedEquilibrium r = constrained_equilibrium(p.base, p.phi, ctx.newton());
  io::write_text(ctx.cfg.output, csv_coefficients(r.coefficients));
  write_measure(ctx, r.measure);
  io::write_text(sibling(ctx.cfg.output, ".transitions.csv"), csv_transitions(r.measure));
  ctx.summary["value"] = r.value;
  ctx.summary["iterations"] = r.iterations;
}

void cmd_flow(Context& ctx) {
  const FnTable a0 = ctx.table(ctx.cfg.potential, "potential");
  const FnTable b = ctx.table(ctx.cfg.base, "base");
  if (ctx.cfg.t_grid.empty()) bad_config("flow needs 't_grid'");
  io::CsvWriter w({"t", "pressure", "entropy", "metric_norm"});
  for (const FlowRow& r : flow_trace(a0, b, ctx.cfg.t_grid))
    w.add({io::format_double(r.t), io::format_double(r.pressure), io::format_double(r.entropy),
           io::format_double(r.metric_norm)});
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_surface(Context& ctx) {
  const ConstraintProblem p = ctx.problem();
  if (ctx.cfg.w_grid.empty()) bad_config("surface needs 'w_grid'");
  const std::size_t k = p.phi.size();
  std::vector<std::string> header;
  for (std::size_t i = 0; i < k; ++i) header.push_back("w_" + std::to_string(i));
  header.insert(header.end(), {"inside", "value", "entropy"});
  for (std::size_t i = 0; i < k; ++i) header.push_back("a_" + std::to_string(i));
  io::CsvWriter w(header);
  for (const SurfaceRow& r : entropy_surface(p.base, p.phi, ctx.cfg.w_grid, ctx.newton())) {
    std::vector<std::string> row;
    for (double x : r.w) row.push_back(io::format_double(x));
    row.push_back(r.inside ? "1" : "0");
    row.push_back(r.inside ? io::format_double(r.value) : "nan");
    row.push_back(r.inside ? io::format_double(r.entropy) : "nan");
    for (std::size_t i = 0; i < k; ++i)
      row.push_back(r.inside && i < r.coefficients.size() ? io::format_double(r.coefficients[i]) : "nan");
    w.add(std::move(row));
  }
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_geom2(Context& ctx) {
  const geometry2::Quantity q = geometry2::parse_quantity(ctx.cfg.quantity);
  std::vector<geometry2::GridRow> rows;
  if (!ctx.cfg.x_grid.empty() || !ctx.cfg.y_grid.empty()) {
    rows = geometry2::grid_scan(ctx.cfg.x_grid, ctx.cfg.y_grid, q);
  } else {
    if (ctx.cfg.region.size() != 4 || !(ctx.cfg.step > 0.0))
      bad_config("geom2 needs 'x_grid' and 'y_grid', or 'region' (4 numbers) with a positive 'step'");
    const auto& r = ctx.cfg.region;
    rows = geometry2::grid_scan(geometry2::Region{r[0], r[1], r[2], r[3]}, ctx.cfg.step, q);
  }
  io::CsvWriter w({"x", "y", "value"});
  for (const auto& r : rows) w.add({io::format_double(r.x), io::format_double(r.y), io::format_double(r.value)});
  io::write_text(ctx.cfg.output, w.str());
}

void cmd_w2scan(Context& ctx) {
  const FnTable a = ctx.table(ctx.cfg.potential, "potential");
  const FnTable z = ctx.table(ctx.cfg.zeta, "zeta");
  if (ctx.cfg.t_grid.empty()) bad_config("w2scan needs 't_grid'");
  const Topology topo = parse_topology(ctx.cfg.topology);
  io::CsvWriter w({"t", "w1", "w2", "local_exponent", "level", "topology"},
                  "exploratory: continuum claims not asserted");
  for (const RoughnessRow& r : roughness_scan(a, z, ctx.cfg.t_grid, ctx.cfg.level, topo))
    w.add({io::format_double(r.t), io::format_double(r.w1), io::format_double(r.w2),
           io::format_double(r.local_exponent), std::to_string(ctx.cfg.level), std::string(topology_name(topo))});
  io::write_text(ctx.cfg.output, w.str());
}

const std::map<std::string, std::function<void(Context&)>>& commands() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"normalize", cmd_normalize}, {"gibbs", cmd_gibbs},         {"entropy", cmd_entropy},
      {"pressure", cmd_pressure},   {"metric", cmd_metric},       {"derivative", cmd_derivative},
      {"prescribe", cmd_prescribe}, {"equilibrium", cmd_equilibrium}, {"flow", cmd_flow},
      {"surface", cmd_surface},     {"geom2", cmd_geom2},         {"w2scan", cmd_w2scan}};
  return table;
}

}  // namespace

int run(const RunConfig& config, std::ostream& err) {
  try {
    const auto it = commands().find(config.subcommand);
    if (it == commands().end()) bad_config("unknown subcommand '" + config.subcommand + "'");
    if (config.output.empty()) bad_config("no 'output' path given");
    const fs::path parent = config.output.parent_path();
    if (!parent.empty() && !fs::is_directory(parent))
      bad_config("output directory does not exist: " + parent.string());

    Context ctx{config, {}, json::object()};
    it->second(ctx);

    std::uint64_t h = io::fnv1a64(config.resolved.dump());
    for (const fs::path& p : ctx.inputs) h = io::fnv1a64(io::read_text(p), h);
    json meta;
    meta["tool"] = "tfx";
    meta["version"] = kToolVersion;
    meta["subcommand"] = config.subcommand;
    meta["seed"] = config.seed;
    meta["inputs_hash"] = "fnv1a64:" + io::hex64(h);
    meta["kernels"] = std::string(kernels::backend_name(kernels::active().backend));
    meta["config"] = config.resolved;
    if (!ctx.summary.empty()) meta["summary"] = ctx.summary;
    io::write_json(sibling(config.output, ".meta.json"), meta);
    return 0;
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.kind())), e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()) << '\n';
    return 1;
  }
}

}  // namespace tfx::cli
