// switchover: command-line front end over the C interface.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "switchover/switchover.h"

namespace fs = std::filesystem;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

using Runner = sw_status (*)(const sw_config*, sw_result**);

const std::map<std::string, Runner> commands = {
    {"landscape", sw_run_landscape},   {"switchover", sw_run_switchover},
    {"spectrum", sw_run_spectrum},     {"yields", sw_run_yields},
    {"rstar", sw_run_rstar},           {"trajectories", sw_run_trajectories},
};

struct Config {
  sw_config* c = sw_config_new();
  ~Config() { sw_config_free(c); }
};

struct Result {
  sw_result* r = nullptr;
  ~Result() { sw_result_free(r); }
};

int usage(const std::string& msg) {
  std::cerr << "switchover: " << msg << "\n";
  return exit_usage;
}

int write_diagnostic(const fs::path& dir, const std::string& command, sw_status s) {
  std::cerr << "switchover: " << command << " failed (" << sw_status_name(s) << "): " << sw_last_error() << "\n";
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream os(dir / "diagnostic.txt");
  os << "command: " << command << "\n"
     << "status: " << sw_status_name(s) << "\n"
     << "message: " << sw_last_error() << "\n";
  return exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point ionisation analysis of two-colour fields"};
  app.set_version_flag("--version", std::string(sw_version()));

  std::string command;
  std::optional<double> i_wcm2, i_au, lambda_nm, omega_au, theta_deg, phi2, ip_au, ip_ev, p_min, p_max;
  std::optional<int> p_count, grid_res;
  std::vector<int> orders;
  std::vector<double> gammas, thetas;
  std::vector<std::string> exclude;
  std::string format = "csv";
  std::string out = ".";

  std::vector<std::string> names;
  for (const auto& [k, v] : commands) names.push_back(k);
  app.add_option("command", command, "landscape | switchover | spectrum | yields | rstar | trajectories")
      ->required()
      ->check(CLI::IsMember(names));
  auto* o_iw = app.add_option("--intensity-wcm2", i_wcm2, "total peak intensity, W/cm^2 (default 4e14)");
  auto* o_ia = app.add_option("--intensity-au", i_au, "total peak intensity, a.u.");
  o_iw->excludes(o_ia);
  auto* o_wl = app.add_option("--wavelength-nm", lambda_nm, "fundamental wavelength, nm (default 800)");
  auto* o_om = app.add_option("--omega-au", omega_au, "fundamental frequency, a.u.");
  o_wl->excludes(o_om);
  app.add_option("--theta-deg", theta_deg, "mixing angle, degrees (default 45)");
  app.add_option("--phi2-rad", phi2, "relative phase of the second colour, rad");
  app.add_option("--orders", orders, "harmonic orders n1,n2 (default 1,2)")->delimiter(',')->expected(2);
  auto* o_ipa = app.add_option("--ip-au", ip_au, "ionisation potential, a.u. (default 0.5)");
  auto* o_ipe = app.add_option("--ip-ev", ip_ev, "ionisation potential, eV");
  o_ipa->excludes(o_ipe);
  app.add_option("--p-min", p_min, "momentum grid start, a.u.");
  app.add_option("--p-max", p_max, "momentum grid end, a.u.");
  app.add_option("--p-count", p_count, "momentum grid points");
  app.add_option("--gamma-list", gammas, "Keldysh parameters, comma separated")->delimiter(',');
  app.add_option("--theta-list", thetas, "mixing angles in degrees, comma separated")->delimiter(',');
  app.add_option("--grid-res", grid_res, "landscape samples per axis");
  app.add_option("--exclude-orbit", exclude, "leave orbit A-D out of the amplitude sum (repeatable)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  Config cfg;
  if (!cfg.c) return usage("out of memory");
  auto set = [&](sw_status s) { return s == SW_OK ? 0 : usage(sw_last_error()); };
  int bad = 0;
  if (!bad && i_wcm2) bad = set(sw_config_set_intensity_wcm2(cfg.c, *i_wcm2));
  if (!bad && i_au) bad = set(sw_config_set_intensity_au(cfg.c, *i_au));
  if (!bad && lambda_nm) bad = set(sw_config_set_wavelength_nm(cfg.c, *lambda_nm));
  if (!bad && omega_au) bad = set(sw_config_set_omega_au(cfg.c, *omega_au));
  if (!bad && theta_deg) bad = set(sw_config_set_theta_deg(cfg.c, *theta_deg));
  if (!bad && phi2) bad = set(sw_config_set_phi2_rad(cfg.c, *phi2));
  if (!bad && !orders.empty()) bad = set(sw_config_set_orders(cfg.c, orders[0], orders[1]));
  if (!bad && ip_au) bad = set(sw_config_set_ip_au(cfg.c, *ip_au));
  if (!bad && ip_ev) bad = set(sw_config_set_ip_ev(cfg.c, *ip_ev));
  if (!bad && (p_min || p_max || p_count))
    bad = set(sw_config_set_p_grid(cfg.c, p_min.value_or(-2.0), p_max.value_or(2.0), p_count.value_or(801)));
  if (!bad && !gammas.empty()) bad = set(sw_config_set_gammas(cfg.c, gammas.data(), gammas.size()));
  if (!bad && !thetas.empty()) bad = set(sw_config_set_thetas_deg(cfg.c, thetas.data(), thetas.size()));
  if (!bad && grid_res) bad = set(sw_config_set_grid_res(cfg.c, *grid_res));
  for (const auto& l : exclude) {
    if (bad) break;
    if (l.size() != 1) return usage("orbit label must be a single letter A-D");
    bad = set(sw_config_exclude_orbit(cfg.c, l[0]));
  }
  if (!bad) bad = set(sw_config_validate(cfg.c));
  if (bad) return bad;

  const fs::path dir(out);
  Result res;
  const sw_status s = commands.at(command)(cfg.c, &res.r);
  if (s == SW_INVALID_ARGUMENT) return usage(sw_last_error());
  if (s != SW_OK) return write_diagnostic(dir, command, s);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return usage("cannot create output directory " + out + ": " + ec.message());
  const sw_format fmt = format == "json" ? SW_FORMAT_JSON : SW_FORMAT_CSV;
  for (std::size_t i = 0; i < sw_result_table_count(res.r); ++i) {
    const sw_table* t = sw_result_table(res.r, i);
    const fs::path file = dir / (std::string(sw_table_name(t)) + "." + format);
    const sw_status w = sw_table_write(t, file.string().c_str(), fmt);
    if (w != SW_OK) return write_diagnostic(dir, command, w);
    std::cout << file.string() << "\n";
  }
  return 0;
}
