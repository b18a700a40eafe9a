#pragma once

// The six runs behind the command-line tool. Each returns named tables.

#include <string>
#include <vector>

#include "switchover/amplitude.hpp"
#include "switchover/table.hpp"

namespace switchover {

struct RunConfig {
  FieldConfig field = reference_scenario(0.25 * pi);
  double p_min = -2.0;
  double p_max = 2.0;
  int p_count = 801;
  std::vector<double> gammas;      // empty: per-run default
  std::vector<double> thetas_deg;  // empty: 0, 2, ..., 90
  int grid_res = 600;              // landscape: grid_res x grid_res/2
  std::vector<Label> exclude;

  double intensity_au() const { return field.E0 * field.E0; }
};

void validate(const RunConfig& rc);

std::vector<Table> run_landscape(const RunConfig& rc);
std::vector<Table> run_switchover(const RunConfig& rc);
std::vector<Table> run_spectrum(const RunConfig& rc);
std::vector<Table> run_yields(const RunConfig& rc);
std::vector<Table> run_rstar(const RunConfig& rc);
std::vector<Table> run_trajectories(const RunConfig& rc);

std::vector<double> default_yield_gammas();  // 0.3 ... 1.5
std::vector<double> default_rstar_gammas();  // 0.05 ... 5
std::vector<double> default_thetas_deg();    // 0, 2, ..., 90

}  // namespace switchover
