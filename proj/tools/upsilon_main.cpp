// Batch front end: closed-form evaluation, feasible-set optimization runs,
// the verification suite, and parameter sweeps.
//
// Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "upsilon/channels.hpp"
#include "upsilon/checks.hpp"
#include "upsilon/closed_form.hpp"
#include "upsilon/feasible.hpp"
#include "upsilon/json_io.hpp"

namespace {

using namespace upsilon;

enum class CliChannel { gamma, delta, gamma_c, delta_c, gamma_c_adjoint };

const std::map<std::string, CliChannel> kChannelNames = {
    {"gamma", CliChannel::gamma},
    {"delta", CliChannel::delta},
    {"gamma_c", CliChannel::gamma_c},
    {"delta_c", CliChannel::delta_c},
    {"gamma_c_adjoint", CliChannel::gamma_c_adjoint},
};

bool uses_t(CliChannel c) { return c != CliChannel::delta && c != CliChannel::delta_c; }

// Exit-2 range validation with the bounds spelled out.
void require_in_range(CliChannel channel, int d, double param) {
  if (uses_t(channel) && !gamma_in_range(d, param))
    throw CLI::ValidationError(
        "t=" + std::to_string(param) + " outside the CP-range [" +
        std::to_string(gamma_t_min(d)) + ", " + std::to_string(gamma_t_max(d)) +
        "] for d=" + std::to_string(d));
  if (!uses_t(channel) && !delta_in_range(d, param))
    throw CLI::ValidationError("p=" + std::to_string(param) + " outside [0, " +
                               std::to_string(delta_p_max(d)) +
                               "] for d=" + std::to_string(d));
}

CpMap build_channel(CliChannel channel, int d, double param) {
  switch (channel) {
    case CliChannel::gamma: return make_transpose_depolarizing(d, param);
    case CliChannel::delta: return make_depolarizing(d, param);
    case CliChannel::gamma_c: return make_gamma_complement(d, param);
    case CliChannel::delta_c: return make_delta_complement(d, param);
    case CliChannel::gamma_c_adjoint: return werner_complement_map(d, param);
  }
  throw std::logic_error("build_channel");
}

std::optional<AbPair> analytic_ab(CliChannel channel, int d, double param) {
  switch (channel) {
    case CliChannel::gamma: return gamma_ab(d, param);
    case CliChannel::delta: return delta_ab(d, param);
    case CliChannel::gamma_c: return gamma_complement_ab(d, param);
    case CliChannel::delta_c: return delta_complement_ab(d, param);
    case CliChannel::gamma_c_adjoint: return std::nullopt;
  }
  return std::nullopt;
}

struct ClosedFormRow {
  int d;
  double param;
  double a, b;
  double upsilon2;
  Branch branch;
  double m;
};

ClosedFormRow closed_form_row(CliChannel channel, int d, double param) {
  const AbPair ab = *analytic_ab(channel, d, param);
  if (channel == CliChannel::gamma) {
    const ClosedForm cf = upsilon2_gamma(d, param);
    return {d, param, ab.a, ab.b, cf.upsilon2, cf.branch, cf.m_value};
  }
  const double entangled = ab.a + ab.b / d;
  const double marginal = ab.a / d + ab.b;
  const Branch branch = marginal >= entangled ? Branch::marginal : Branch::entangled;
  const double m = std::max(entangled, marginal);
  return {d, param, ab.a, ab.b, std::sqrt(m), branch, m};
}

int default_env_dim(int dim_in, int copies) {
  double lifted = 1.0;
  for (int i = 0; i < copies; ++i) lifted *= dim_in;
  if (lifted > 64.0) throw CLI::ValidationError("dim_in^n exceeds the size guard");
  return static_cast<int>(std::min(lifted * lifted, 64.0 / lifted));
}

// Payload goes to --out (with a timestamp sidecar) or stdout; the payload
// itself never carries a timestamp so reruns are byte-identical.
void emit_payload(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot open output file: " + out_path);
  out << payload;
  out.close();
  std::ofstream meta(out_path + ".meta");
  if (meta) meta << "{\"generated_at\": " << std::time(nullptr) << "}\n";
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.empty()) return grid;
  if (spec.find(':') != std::string::npos) {
    double lo, hi;
    int count;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
      throw CLI::ValidationError("bad grid spec (want start:stop:count): " + spec);
    if (count == 1) {
      grid.push_back(lo);
    } else {
      for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
    }
    return grid;
  }
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad grid value: " + item);
    }
  }
  return grid;
}

SuiteConfig parse_suite_config(const std::string& path) {
  SuiteConfig config;
  config.include_multiplicativity = true;
  if (path.empty()) return config;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                 ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "seed") config.seed = std::stoull(value);
      else if (key == "dims") {
        config.dims.clear();
        std::istringstream ds(value);
        std::string item;
        while (std::getline(ds, item, ','))
          if (!item.empty()) config.dims.push_back(std::stoi(item));
      } else if (key == "t_points") config.t_points = std::stoi(value);
      else if (key == "trials") config.trials = std::stoi(value);
      else if (key == "tolerance") config.tolerance_override = std::stod(value);
      else if (key == "include_optimizer") config.include_optimizer = std::stoi(value) != 0;
      else if (key == "optimizer_restarts") config.optimizer_restarts = std::stoi(value);
      else if (key == "include_multiplicativity")
        config.include_multiplicativity = std::stoi(value) != 0;
      else if (key == "multiplicativity_restarts")
        config.multiplicativity_restarts = std::stoi(value);
      else
        throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                   ": unknown key '" + key + "'");
    } catch (const CLI::ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                 ": bad value for '" + key + "'");
    }
  }
  return config;
}

std::string channel_label(CliChannel channel) {
  for (const auto& [name, c] : kChannelNames)
    if (c == channel) return name;
  return "?";
}

int run_closed_form(CliChannel channel, int d, double param,
                    const std::string& format, const std::string& out_path) {
  if (channel == CliChannel::gamma_c_adjoint)
    throw CLI::ValidationError(
        "no closed form is known for gamma_c_adjoint; use the optimize command");
  require_in_range(channel, d, param);
  const ClosedFormRow row = closed_form_row(channel, d, param);
  const double eop2 = eop_from_norm(2.0, row.upsilon2);

  std::ostringstream payload;
  if (format == "csv") {
    payload << "d,param,a,b,upsilon2,branch,m,eop2\n"
            << row.d << ',' << format_double(row.param) << ','
            << format_double(row.a) << ',' << format_double(row.b) << ','
            << format_double(row.upsilon2) << ',' << branch_name(row.branch) << ','
            << format_double(row.m) << ',' << format_double(eop2) << '\n';
  } else {
    Json j;
    j["channel"] = channel_label(channel);
    j["d"] = row.d;
    j["param"] = row.param;
    j["a"] = row.a;
    j["b"] = row.b;
    j["upsilon2"] = row.upsilon2;
    j["branch"] = branch_name(row.branch);
    j["m"] = row.m;
    j["eop2"] = eop2;
    payload << j.dump(2) << '\n';
  }
  emit_payload(payload.str(), out_path);
  return 0;
}

int run_optimize(CliChannel channel, int d, double param, int copies, int d_env,
                 int restarts, std::uint64_t seed, double tol,
                 const std::string& out_path) {
  require_in_range(channel, d, param);
  const CpMap n = build_channel(channel, d, param);
  if (d_env <= 0) d_env = default_env_dim(n.dim_in(), copies);
  const OptimizationReport report =
      copies == 1 ? optimize_upsilon2(n, d_env, restarts, seed, tol)
                  : optimize_tensor_power(n, copies, d_env, restarts, seed, tol);

  Json j = to_json(report);
  j["channel"] = channel_label(channel);
  j["d"] = d;
  j["param"] = param;
  j["n"] = copies;
  j["d_env"] = d_env;
  emit_payload(j.dump(2) + "\n", out_path);
  return 0;
}

int run_verify(const std::string& config_path, const std::string& out_path) {
  const SuiteConfig config = parse_suite_config(config_path);
  const auto results = run_suite(config);

  std::ostringstream payload;
  Json manifest;
  manifest["manifest"] = suite_manifest();
  manifest["seed"] = config.seed;
  payload << manifest.dump() << '\n';
  int failures = 0;
  for (const auto& r : results) {
    payload << to_json(r).dump() << '\n';
    if (!r.passed) ++failures;
  }
  Json summary;
  summary["all_passed"] = failures == 0;
  summary["checks"] = results.size();
  summary["failures"] = failures;
  payload << summary.dump() << '\n';
  emit_payload(payload.str(), out_path);
  return failures == 0 ? 0 : 1;
}

int run_sweep(CliChannel channel, int d, const std::string& grid_spec, int copies,
              int d_env, int restarts, std::uint64_t seed, double tol,
              const std::string& format, const std::string& out_path) {
  const std::vector<double> grid = parse_grid(grid_spec);
  for (double v : grid) require_in_range(channel, d, v);

  struct Row {
    double param;
    std::optional<ClosedFormRow> cf;
    std::optional<double> opt_value;
    std::optional<double> gap;
  };
  std::vector<Row> rows;
  for (double v : grid) {
    Row row{v, std::nullopt, std::nullopt, std::nullopt};
    if (channel != CliChannel::gamma_c_adjoint) row.cf = closed_form_row(channel, d, v);
    if (restarts > 0) {
      const CpMap n = build_channel(channel, d, v);
      const int env = d_env > 0 ? d_env : default_env_dim(n.dim_in(), copies);
      const OptimizationReport report =
          copies == 1 ? optimize_upsilon2(n, env, restarts, seed, tol)
                      : optimize_tensor_power(n, copies, env, restarts, seed, tol);
      row.opt_value = report.best_value;
      row.gap = report.gap;
    }
    rows.push_back(row);
  }

  std::ostringstream payload;
  if (format == "json") {
    Json arr = Json::array();
    for (const Row& row : rows) {
      Json j;
      j["d"] = d;
      j["param"] = row.param;
      j["a"] = row.cf ? Json(row.cf->a) : Json(nullptr);
      j["b"] = row.cf ? Json(row.cf->b) : Json(nullptr);
      j["upsilon2"] = row.cf ? Json(row.cf->upsilon2) : Json(nullptr);
      j["branch"] = row.cf ? Json(branch_name(row.cf->branch)) : Json(nullptr);
      j["m"] = row.cf ? Json(row.cf->m) : Json(nullptr);
      j["opt_value"] = row.opt_value ? Json(*row.opt_value) : Json(nullptr);
      j["gap"] = row.gap ? Json(*row.gap) : Json(nullptr);
      j["seed"] = seed;
      arr.push_back(std::move(j));
    }
    payload << arr.dump(2) << '\n';
  } else {
    payload << "d,param,a,b,upsilon2,branch,m,opt_value,gap,seed\n";
    for (const Row& row : rows) {
      payload << d << ',' << format_double(row.param) << ','
              << (row.cf ? format_double(row.cf->a) : "") << ','
              << (row.cf ? format_double(row.cf->b) : "") << ','
              << (row.cf ? format_double(row.cf->upsilon2) : "") << ','
              << (row.cf ? branch_name(row.cf->branch) : "") << ','
              << (row.cf ? format_double(row.cf->m) : "") << ','
              << (row.opt_value ? format_double(*row.opt_value) : "") << ','
              << (row.gap ? format_double(*row.gap) : "") << ',' << seed << '\n';
    }
  }
  emit_payload(payload.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained maximal output 2-norm toolkit"};
  app.require_subcommand(1);

  std::string channel_name = "gamma";
  int d = 2;
  double t_param = 0.0;
  double p_param = 0.0;
  int copies = 1;
  int d_env = 0;
  int restarts = 8;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tol = 1e-10;
  std::string format = "json";
  std::string out_path;
  std::string config_path;
  std::string grid_spec;

  std::vector<std::string> channel_list;
  for (const auto& [name, c] : kChannelNames) channel_list.push_back(name);

  auto add_channel_flags = [&](CLI::App* cmd, bool with_optimizer) {
    cmd->add_option("--channel", channel_name,
                    "gamma|delta|gamma_c|delta_c|gamma_c_adjoint")
        ->check(CLI::IsMember(channel_list));
    cmd->add_option("--d", d, "local dimension")->check(CLI::Range(2, 8));
    cmd->add_option("--t", t_param, "transpose-depolarizing parameter");
    cmd->add_option("--p", p_param, "depolarizing parameter");
    if (with_optimizer) {
      cmd->add_option("--n", copies, "tensor copies")->check(CLI::Range(1, 4));
      cmd->add_option("--d-env", d_env, "output (environment) dimension");
      cmd->add_option("--restarts", restarts, "optimizer restarts");
      cmd->add_option("--seed", seed, "RNG seed (UPSILON_SEED as fallback)")
          ->each([&](const std::string&) { seed_given = true; });
      cmd->add_option("--tol", tol, "relative objective tolerance");
    }
    cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "output file (timestamp goes to a .meta sidecar)");
  };

  CLI::App* cf = app.add_subcommand("closed-form", "analytic upsilon_2 values");
  add_channel_flags(cf, false);

  CLI::App* opt =
      app.add_subcommand("optimize", "projected gradient search over the feasible set");
  add_channel_flags(opt, true);

  CLI::App* verify = app.add_subcommand("verify", "run the identity-check suite");
  verify->add_option("config", config_path, "key=value config file");
  verify->add_option("--out", out_path, "output file for JSON lines");

  CLI::App* sweep =
      app.add_subcommand("sweep", "closed form (and optional optimizer) over a grid");
  add_channel_flags(sweep, true);
  sweep->add_option("--grid", grid_spec, "comma list or start:stop:count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  // sweep defaults to closed-form-only rows.
  if (app.got_subcommand(sweep) && sweep->count("--restarts") == 0) restarts = 0;

  if (!seed_given) {
    if (const char* env = std::getenv("UPSILON_SEED"))
      seed = std::strtoull(env, nullptr, 10);
  }

  try {
    const CliChannel channel = kChannelNames.at(channel_name);
    const double param = uses_t(channel) ? t_param : p_param;

    if (app.got_subcommand(cf)) return run_closed_form(channel, d, param, format, out_path);
    if (app.got_subcommand(opt))
      return run_optimize(channel, d, param, copies, d_env, restarts, seed, tol, out_path);
    if (app.got_subcommand(verify)) return run_verify(config_path, out_path);
    if (app.got_subcommand(sweep))
      return run_sweep(channel, d, grid_spec, copies, d_env, restarts, seed, tol,
                       format == "json" && sweep->count("--format") > 0 ? "json" : "csv",
                       out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
