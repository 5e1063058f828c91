#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "secprec/harness.hpp"

namespace secprec {

namespace {

// Fixed-format doubles so file bytes do not depend on locale or stream state.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string results_csv(const ExperimentResult& result, bool emit_timings) {
  const int k_users = result.spec.system.n_users;
  std::string out = "experiment,solver,sweep_value,drop_seed,sum_secrecy,power_split,iterations,"
                    "wall_time_ms";
  for (int k = 0; k < k_users; ++k) out += ",secrecy_user_" + std::to_string(k);
  out += "\n";
  for (const ResultRow& row : result.rows) {
    if (row.per_user_secrecy.empty())
      throw ConfigError("results_csv: row with empty per-user secrecy list");
    out += row.experiment + "," + row.solver + "," + fmt(row.sweep_value) + "," +
           std::to_string(row.drop_seed) + "," + fmt(row.sum_secrecy) + "," +
           fmt(row.power_split) + "," + std::to_string(row.iterations) + "," +
           fmt(emit_timings ? row.wall_time_ms : 0.0);
    for (double s : row.per_user_secrecy) out += "," + fmt(s);
    out += "\n";
  }
  return out;
}

namespace {

using nlohmann::json;

json spec_to_json(const ExperimentSpec& spec) {
  const SystemConfig& sc = spec.system;
  const GeometryConfig& g = spec.geometry;
  return json{
      {"name", spec.name},
      {"sweep_variable", to_string(spec.sweep_variable)},
      {"sweep_values", spec.sweep_values},
      {"n_drops", spec.n_drops},
      {"seed", spec.seed},
      {"solvers", spec.solvers},
      {"output_dir", spec.output_dir},
      {"emit_traces", spec.emit_traces},
      {"an_cols_track_antennas", spec.an_cols_track_antennas},
      {"system",
       {{"n_antennas", sc.n_antennas},
        {"n_users", sc.n_users},
        {"n_eves", sc.n_eves},
        {"n_an_cols", sc.n_an_cols},
        {"tx_power_dbm", sc.tx_power_dbm},
        {"noise_psd_dbm_hz", sc.noise_psd_dbm_hz},
        {"bandwidth_hz", sc.bandwidth_hz},
        {"noise_figure_db", sc.noise_figure_db},
        {"alpha", sc.alpha}}},
      {"geometry",
       {{"user_dist_min_m", g.user_dist_min_m},
        {"user_dist_max_m", g.user_dist_max_m},
        {"eve_dist_max_m", g.eve_dist_max_m},
        {"min_dist_m", g.min_dist_m},
        {"carrier_ghz", g.carrier_ghz},
        {"path_loss_coefficient", g.path_loss_coefficient},
        {"shadowing_var_db", g.shadowing_var_db},
        {"angular_spread_deg", g.angular_spread_deg},
        {"antenna_spacing_wl", g.antenna_spacing_wl}}},
      {"settings",
       {{"epsilon", spec.settings.gpi.epsilon},
        {"max_iters", spec.settings.gpi.max_iters},
        {"lambda_products_in_log", spec.settings.gpi.lambda_products_in_log},
        {"xi_step", spec.settings.line.xi_step},
        {"warm_start", spec.settings.warm_start},
        {"alpha_grid", spec.settings.alpha_grid}}},
  };
}

}  // namespace

std::string results_json(const ExperimentResult& result, bool emit_timings) {
  json rows = json::array();
  for (const ResultRow& row : result.rows) {
    rows.push_back({{"experiment", row.experiment},
                    {"solver", row.solver},
                    {"sweep_value", row.sweep_value},
                    {"drop_seed", row.drop_seed},
                    {"sum_secrecy", row.sum_secrecy},
                    {"per_user_secrecy", row.per_user_secrecy},
                    {"power_split", row.power_split},
                    {"iterations", row.iterations},
                    {"wall_time_ms", emit_timings ? row.wall_time_ms : 0.0}});
  }
  json failures = json::array();
  for (const SolveFailure& f : result.failures) {
    failures.push_back({{"solver", f.solver},
                        {"sweep_value", f.sweep_value},
                        {"drop_index", f.drop_index},
                        {"message", f.message}});
  }
  const json doc{{"spec", spec_to_json(result.spec)}, {"rows", rows}, {"failures", failures}};
  return doc.dump(2) + "\n";
}

std::vector<ResultRow> parse_results_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open results file: " + file.string());
  json doc = json::parse(in);
  std::vector<ResultRow> rows;
  for (const json& r : doc.at("rows")) {
    ResultRow row;
    row.experiment = r.at("experiment").get<std::string>();
    row.solver = r.at("solver").get<std::string>();
    row.sweep_value = r.at("sweep_value").get<double>();
    row.drop_seed = r.at("drop_seed").get<std::uint64_t>();
    row.sum_secrecy = r.at("sum_secrecy").get<double>();
    row.per_user_secrecy = r.at("per_user_secrecy").get<std::vector<double>>();
    row.power_split = r.at("power_split").get<double>();
    row.iterations = r.at("iterations").get<int>();
    row.wall_time_ms = r.at("wall_time_ms").get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_results(const ExperimentResult& result, const std::filesystem::path& dir,
                  const RunOptions& options) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "results.csv", std::ios::binary);
    if (!csv) throw ConfigError("cannot write " + (dir / "results.csv").string());
    csv << results_csv(result, options.emit_timings);
  }
  {
    std::ofstream js(dir / "results.json", std::ios::binary);
    if (!js) throw ConfigError("cannot write " + (dir / "results.json").string());
    js << results_json(result, options.emit_timings);
  }
  if (!result.traces.empty()) {
    std::filesystem::create_directories(dir / "traces");
    for (const auto& [key, trace] : result.traces) {
      const auto path = dir / "traces" / (key.first + "_" + fmt(key.second) + ".csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ConfigError("cannot write " + path.string());
      out << "iteration,delta_norm,objective\n";
      for (const GpiTracePoint& p : trace)
        out << p.iter << "," << fmt(p.delta_norm) << "," << fmt(p.objective) << "\n";
    }
  }
}

namespace {

double parse_double(const std::string& value, int line_no) {
  size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_no) + ": expected a number, got '" + value +
                      "'");
  }
  if (pos != value.size())
    throw ConfigError("line " + std::to_string(line_no) + ": trailing junk in number '" + value +
                      "'");
  return out;
}

int parse_int(const std::string& value, int line_no) {
  const double d = parse_double(value, line_no);
  if (d != std::floor(d))
    throw ConfigError("line " + std::to_string(line_no) + ": expected an integer");
  return static_cast<int>(d);
}

bool parse_bool(const std::string& value, int line_no) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("line " + std::to_string(line_no) + ": expected a boolean, got '" + value +
                    "'");
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& text, const std::string& name_hint) {
  ExperimentSpec spec;
  spec.name = name_hint;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "name") spec.name = value;
    else if (key == "sweep_variable") spec.sweep_variable = sweep_variable_from_string(value);
    else if (key == "sweep_values") {
      spec.sweep_values.clear();
      for (const std::string& v : split_list(value))
        spec.sweep_values.push_back(parse_double(v, line_no));
    } else if (key == "n_drops") spec.n_drops = parse_int(value, line_no);
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(parse_double(value, line_no));
    else if (key == "solvers") spec.solvers = split_list(value);
    else if (key == "output_dir") spec.output_dir = value;
    else if (key == "emit_traces") spec.emit_traces = parse_bool(value, line_no);
    else if (key == "an_cols_track_antennas")
      spec.an_cols_track_antennas = parse_bool(value, line_no);
    else if (key == "n_antennas") spec.system.n_antennas = parse_int(value, line_no);
    else if (key == "n_users") spec.system.n_users = parse_int(value, line_no);
    else if (key == "n_eves") spec.system.n_eves = parse_int(value, line_no);
    else if (key == "n_an_cols") spec.system.n_an_cols = parse_int(value, line_no);
    else if (key == "tx_power_dbm") spec.system.tx_power_dbm = parse_double(value, line_no);
    else if (key == "noise_psd_dbm_hz")
      spec.system.noise_psd_dbm_hz = parse_double(value, line_no);
    else if (key == "bandwidth_hz") spec.system.bandwidth_hz = parse_double(value, line_no);
    else if (key == "noise_figure_db")
      spec.system.noise_figure_db = parse_double(value, line_no);
    else if (key == "alpha") spec.system.alpha = parse_double(value, line_no);
    else if (key == "user_dist_min_m")
      spec.geometry.user_dist_min_m = parse_double(value, line_no);
    else if (key == "user_dist_max_m")
      spec.geometry.user_dist_max_m = parse_double(value, line_no);
    else if (key == "eve_dist_max_m") spec.geometry.eve_dist_max_m = parse_double(value, line_no);
    else if (key == "min_dist_m") spec.geometry.min_dist_m = parse_double(value, line_no);
    else if (key == "carrier_ghz") spec.geometry.carrier_ghz = parse_double(value, line_no);
    else if (key == "path_loss_coefficient")
      spec.geometry.path_loss_coefficient = parse_double(value, line_no);
    else if (key == "shadowing_var_db")
      spec.geometry.shadowing_var_db = parse_double(value, line_no);
    else if (key == "angular_spread_deg")
      spec.geometry.angular_spread_deg = parse_double(value, line_no);
    else if (key == "antenna_spacing_wl")
      spec.geometry.antenna_spacing_wl = parse_double(value, line_no);
    else if (key == "epsilon") spec.settings.gpi.epsilon = parse_double(value, line_no);
    else if (key == "max_iters") spec.settings.gpi.max_iters = parse_int(value, line_no);
    else if (key == "lambda_products_in_log")
      spec.settings.gpi.lambda_products_in_log = parse_bool(value, line_no);
    else if (key == "xi_step") spec.settings.line.xi_step = parse_double(value, line_no);
    else if (key == "warm_start") spec.settings.warm_start = parse_bool(value, line_no);
    else if (key == "alpha_grid") {
      spec.settings.alpha_grid.clear();
      for (const std::string& v : split_list(value))
        spec.settings.alpha_grid.push_back(parse_double(v, line_no));
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open spec file: " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str(), file.stem().string());
}

std::string format_spec(const ExperimentSpec& spec) {
  std::string out;
  out += "name = " + spec.name + "\n";
  out += "sweep_variable = " + std::string(to_string(spec.sweep_variable)) + "\n";
  out += "sweep_values =";
  for (size_t i = 0; i < spec.sweep_values.size(); ++i)
    out += (i ? ", " : " ") + fmt(spec.sweep_values[i]);
  out += "\n";
  out += "n_drops = " + std::to_string(spec.n_drops) + "\n";
  out += "seed = " + std::to_string(spec.seed) + "\n";
  out += "solvers =";
  for (size_t i = 0; i < spec.solvers.size(); ++i) out += (i ? ", " : " ") + spec.solvers[i];
  out += "\n";
  out += "output_dir = " + spec.output_dir + "\n";
  out += "emit_traces = " + std::string(spec.emit_traces ? "true" : "false") + "\n";
  out += "an_cols_track_antennas = " +
         std::string(spec.an_cols_track_antennas ? "true" : "false") + "\n";
  const SystemConfig& sc = spec.system;
  out += "n_antennas = " + std::to_string(sc.n_antennas) + "\n";
  out += "n_users = " + std::to_string(sc.n_users) + "\n";
  out += "n_eves = " + std::to_string(sc.n_eves) + "\n";
  out += "n_an_cols = " + std::to_string(sc.n_an_cols) + "\n";
  out += "tx_power_dbm = " + fmt(sc.tx_power_dbm) + "\n";
  out += "noise_psd_dbm_hz = " + fmt(sc.noise_psd_dbm_hz) + "\n";
  out += "bandwidth_hz = " + fmt(sc.bandwidth_hz) + "\n";
  out += "noise_figure_db = " + fmt(sc.noise_figure_db) + "\n";
  out += "alpha = " + fmt(sc.alpha) + "\n";
  const GeometryConfig& g = spec.geometry;
  out += "user_dist_min_m = " + fmt(g.user_dist_min_m) + "\n";
  out += "user_dist_max_m = " + fmt(g.user_dist_max_m) + "\n";
  out += "eve_dist_max_m = " + fmt(g.eve_dist_max_m) + "\n";
  out += "min_dist_m = " + fmt(g.min_dist_m) + "\n";
  out += "carrier_ghz = " + fmt(g.carrier_ghz) + "\n";
  out += "path_loss_coefficient = " + fmt(g.path_loss_coefficient) + "\n";
  out += "shadowing_var_db = " + fmt(g.shadowing_var_db) + "\n";
  out += "angular_spread_deg = " + fmt(g.angular_spread_deg) + "\n";
  out += "antenna_spacing_wl = " + fmt(g.antenna_spacing_wl) + "\n";
  out += "epsilon = " + fmt(spec.settings.gpi.epsilon) + "\n";
  out += "max_iters = " + std::to_string(spec.settings.gpi.max_iters) + "\n";
  out += "xi_step = " + fmt(spec.settings.line.xi_step) + "\n";
  out += "warm_start = " + std::string(spec.settings.warm_start ? "true" : "false") + "\n";
  if (!spec.settings.alpha_grid.empty()) {
    out += "alpha_grid =";
    for (size_t i = 0; i < spec.settings.alpha_grid.size(); ++i)
      out += (i ? ", " : " ") + fmt(spec.settings.alpha_grid[i]);
    out += "\n";
  }
  return out;
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  spec.seed = 1;
  spec.n_drops = 200;
  spec.output_dir = "results/" + name;

  if (name == "fig2") {
    spec.sweep_variable = SweepVariable::tx_power;
    spec.sweep_values = {-20, -10, 0, 10, 20, 30, 40};
    spec.system.n_antennas = 4;
    spec.system.n_users = 1;
    spec.system.n_eves = 3;
    spec.system.n_an_cols = 4;
    spec.solvers = {"js_gpip", "s_gpip", "gpip", "rzf", "mrt", "zf"};
  } else if (name == "fig3") {
    spec.sweep_variable = SweepVariable::tx_power;
    spec.sweep_values = {0, 10, 20, 30, 40};
    spec.system.n_antennas = 4;
    spec.system.n_users = 1;
    spec.system.n_eves = 3;
    spec.system.n_an_cols = 4;
    spec.solvers = {"js_gpip", "j_gpip_ns", "j_gpip_ns_low", "js_gpip_cov"};
  } else if (name == "fig4") {
    spec.sweep_variable = SweepVariable::n_antennas;
    spec.sweep_values = {8, 12, 16};
    spec.an_cols_track_antennas = true;
    spec.system.n_antennas = 8;
    spec.system.n_users = 4;
    spec.system.n_eves = 4;
    spec.system.n_an_cols = 8;
    spec.system.tx_power_dbm = 20;
    spec.system.alpha = 2.0;  // empirical per-figure temperature; see README
    spec.solvers = {"js_gpip", "j_gpip_ns",  "js_gpip_cov", "j_gpip_ns_low", "s_gpip",
                    "gpip_ns", "rzf_eve_ns", "rzf_ns",      "mrt_ns",        "gpip"};
  } else if (name == "fig5") {
    spec.sweep_variable = SweepVariable::n_eves;
    spec.sweep_values = {1, 2, 4, 8};
    spec.system.n_antennas = 16;
    spec.system.n_users = 4;
    spec.system.n_eves = 1;
    spec.system.n_an_cols = 16;
    spec.system.tx_power_dbm = 20;
    spec.system.alpha = 2.0;
    spec.solvers = {"js_gpip", "s_gpip", "j_gpip_ns", "gpip", "rzf_ns"};
  } else if (name == "fig6") {
    spec.sweep_variable = SweepVariable::n_an_cols;
    spec.sweep_values = {1, 2, 4, 8, 16};
    spec.system.n_antennas = 16;
    spec.system.n_users = 2;
    spec.system.n_eves = 4;
    spec.system.n_an_cols = 16;
    spec.system.tx_power_dbm = 20;
    spec.system.alpha = 2.0;
    spec.solvers = {"js_gpip", "js_gpip_cov"};
  } else if (name == "fig7") {
    spec.sweep_variable = SweepVariable::tx_power;
    spec.sweep_values = {-20, 0, 20, 40};
    spec.system.n_antennas = 8;
    spec.system.n_users = 4;
    spec.system.n_eves = 4;
    spec.system.n_an_cols = 8;
    spec.n_drops = 50;
    spec.emit_traces = true;
    spec.solvers = {"js_gpip"};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig2..fig7)");
  }
  return spec;
}

}  // namespace secprec
