#include "switchover/switchover.h"

#include <cmath>
#include <fstream>
#include <string>

#include "switchover/analyses.hpp"
#include "switchover/error.hpp"

struct sw_config {
  switchover::RunConfig rc;
};

struct sw_table {
  switchover::Table t;
};

struct sw_result {
  std::vector<sw_table> tables;
};

namespace {

using namespace switchover;

thread_local std::string last_error;

sw_status fail(sw_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
sw_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(static_cast<sw_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SW_INTERNAL, e.what());
  }
}

sw_status positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) return fail(SW_INVALID_ARGUMENT, std::string(what) + " must be positive");
  return SW_OK;
}

#define SW_NEED(p)                                                  \
  do {                                                              \
    if (!(p)) return fail(SW_INVALID_ARGUMENT, #p " is null");      \
  } while (0)

sw_status run(const sw_config* c, sw_result** out, std::vector<Table> (*fn)(const RunConfig&)) {
  SW_NEED(c);
  SW_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto tables = fn(c->rc);
    auto* r = new sw_result;
    for (auto& t : tables) r->tables.push_back(sw_table{std::move(t)});
    *out = r;
    return SW_OK;
  });
}

const Cell* cell(const sw_table* t, std::size_t row, std::size_t col) {
  if (!t || row >= t->t.rows().size() || col >= t->t.columns().size()) return nullptr;
  return &t->t.rows()[row][col];
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "1.0.0"; }
const char* sw_last_error(void) { return last_error.c_str(); }

const char* sw_status_name(sw_status s) {
  switch (s) {
    case SW_OK: return "ok";
    case SW_INVALID_ARGUMENT: return "invalid argument";
    case SW_NUMERICAL: return "numerical failure";
    case SW_TOPOLOGY: return "contour topology failure";
    case SW_DEGENERATE: return "degenerate saddle";
    case SW_IO: return "i/o error";
    case SW_INTERNAL: return "internal error";
  }
  return "unknown";
}

sw_config* sw_config_new(void) {
  try {
    return new sw_config;
  } catch (...) {
    return nullptr;
  }
}

void sw_config_free(sw_config* c) { delete c; }

sw_status sw_config_set_intensity_wcm2(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "intensity")) return s;
  c->rc.field.E0 = std::sqrt(v / units::intensity_au_in_wcm2);
  return SW_OK;
}

sw_status sw_config_set_intensity_au(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "intensity")) return s;
  c->rc.field.E0 = std::sqrt(v);
  return SW_OK;
}

sw_status sw_config_set_wavelength_nm(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "wavelength")) return s;
  c->rc.field.omega = units::nm_times_omega_au / v;
  return SW_OK;
}

sw_status sw_config_set_omega_au(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "omega")) return s;
  c->rc.field.omega = v;
  return SW_OK;
}

sw_status sw_config_set_theta_deg(sw_config* c, double v) {
  SW_NEED(c);
  if (!(v >= 0.0 && v <= 90.0)) return fail(SW_INVALID_ARGUMENT, "theta must lie in [0, 90] degrees");
  c->rc.field.theta = rad(v);
  return SW_OK;
}

sw_status sw_config_set_phi2_rad(sw_config* c, double v) {
  SW_NEED(c);
  if (!std::isfinite(v)) return fail(SW_INVALID_ARGUMENT, "phi2 must be finite");
  c->rc.field.phi2 = v;
  return SW_OK;
}

sw_status sw_config_set_orders(sw_config* c, int n1, int n2) {
  SW_NEED(c);
  if (n1 < 1 || n2 < 1) return fail(SW_INVALID_ARGUMENT, "harmonic orders must be positive");
  if (n1 == n2) return fail(SW_INVALID_ARGUMENT, "harmonic orders must differ");
  c->rc.field.n1 = n1;
  c->rc.field.n2 = n2;
  return SW_OK;
}

sw_status sw_config_set_ip_au(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "ionisation potential")) return s;
  c->rc.field.Ip = v;
  return SW_OK;
}

sw_status sw_config_set_ip_ev(sw_config* c, double v) {
  SW_NEED(c);
  if (auto s = positive(v, "ionisation potential")) return s;
  c->rc.field.Ip = v / units::hartree_in_ev;
  return SW_OK;
}

sw_status sw_config_set_p_grid(sw_config* c, double p_min, double p_max, int count) {
  SW_NEED(c);
  if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_max > p_min))
    return fail(SW_INVALID_ARGUMENT, "need finite p_min < p_max");
  if (count < 2) return fail(SW_INVALID_ARGUMENT, "p_count must be at least 2");
  c->rc.p_min = p_min;
  c->rc.p_max = p_max;
  c->rc.p_count = count;
  return SW_OK;
}

sw_status sw_config_set_gammas(sw_config* c, const double* v, size_t n) {
  SW_NEED(c);
  if (n && !v) return fail(SW_INVALID_ARGUMENT, "gamma list is null");
  std::vector<double> g(v, v + n);
  for (double x : g)
    if (auto s = positive(x, "gamma")) return s;
  c->rc.gammas = std::move(g);
  return SW_OK;
}

sw_status sw_config_set_thetas_deg(sw_config* c, const double* v, size_t n) {
  SW_NEED(c);
  if (n && !v) return fail(SW_INVALID_ARGUMENT, "theta list is null");
  std::vector<double> th(v, v + n);
  for (double x : th)
    if (!(x >= 0.0 && x <= 90.0)) return fail(SW_INVALID_ARGUMENT, "theta values must lie in [0, 90] degrees");
  c->rc.thetas_deg = std::move(th);
  return SW_OK;
}

sw_status sw_config_set_grid_res(sw_config* c, int n) {
  SW_NEED(c);
  if (n < 2) return fail(SW_INVALID_ARGUMENT, "grid resolution must be at least 2");
  c->rc.grid_res = n;
  return SW_OK;
}

sw_status sw_config_exclude_orbit(sw_config* c, char label) {
  SW_NEED(c);
  return guarded([&] {
    const Label l = label_from_char(label);
    if (l == Label::unassigned) throw InvalidArgument("orbit label must be one of A, B, C, D");
    c->rc.exclude.push_back(l);
    return SW_OK;
  });
}

sw_status sw_config_validate(const sw_config* c) {
  SW_NEED(c);
  return guarded([&] {
    validate(c->rc);
    return SW_OK;
  });
}

sw_status sw_config_keldysh_gamma(const sw_config* c, double* out) {
  SW_NEED(c);
  SW_NEED(out);
  return guarded([&] {
    *out = keldysh_gamma(c->rc.field);
    return SW_OK;
  });
}

sw_status sw_run_landscape(const sw_config* c, sw_result** out) { return run(c, out, run_landscape); }
sw_status sw_run_switchover(const sw_config* c, sw_result** out) { return run(c, out, run_switchover); }
sw_status sw_run_spectrum(const sw_config* c, sw_result** out) { return run(c, out, run_spectrum); }
sw_status sw_run_yields(const sw_config* c, sw_result** out) { return run(c, out, run_yields); }
sw_status sw_run_rstar(const sw_config* c, sw_result** out) { return run(c, out, run_rstar); }
sw_status sw_run_trajectories(const sw_config* c, sw_result** out) { return run(c, out, run_trajectories); }

void sw_result_free(sw_result* r) { delete r; }

size_t sw_result_table_count(const sw_result* r) { return r ? r->tables.size() : 0; }

const sw_table* sw_result_table(const sw_result* r, size_t i) {
  if (!r || i >= r->tables.size()) return nullptr;
  return &r->tables[i];
}

const char* sw_table_name(const sw_table* t) { return t ? t->t.name().c_str() : nullptr; }
size_t sw_table_rows(const sw_table* t) { return t ? t->t.rows().size() : 0; }
size_t sw_table_cols(const sw_table* t) { return t ? t->t.columns().size() : 0; }

const char* sw_table_column_name(const sw_table* t, size_t col) {
  if (!t || col >= t->t.columns().size()) return nullptr;
  return t->t.columns()[col].name.c_str();
}

const char* sw_table_column_unit(const sw_table* t, size_t col) {
  if (!t || col >= t->t.columns().size()) return nullptr;
  return t->t.columns()[col].unit.c_str();
}

long sw_table_column_index(const sw_table* t, const char* name) {
  if (!t || !name) return -1;
  const auto& cols = t->t.columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i].name == name) return static_cast<long>(i);
  return -1;
}

sw_status sw_table_cell_type(const sw_table* t, size_t row, size_t col, sw_cell_type* out) {
  SW_NEED(out);
  const Cell* c = cell(t, row, col);
  if (!c) return fail(SW_INVALID_ARGUMENT, "cell index out of range");
  *out = static_cast<sw_cell_type>(c->index());
  return SW_OK;
}

sw_status sw_table_get_double(const sw_table* t, size_t row, size_t col, double* out) {
  SW_NEED(out);
  const Cell* c = cell(t, row, col);
  if (!c) return fail(SW_INVALID_ARGUMENT, "cell index out of range");
  if (auto d = std::get_if<double>(c)) {
    *out = *d;
  } else if (auto n = std::get_if<std::int64_t>(c)) {
    *out = static_cast<double>(*n);
  } else {
    return fail(SW_INVALID_ARGUMENT, "cell holds text");
  }
  return SW_OK;
}

sw_status sw_table_get_int(const sw_table* t, size_t row, size_t col, long long* out) {
  SW_NEED(out);
  const Cell* c = cell(t, row, col);
  if (!c) return fail(SW_INVALID_ARGUMENT, "cell index out of range");
  auto n = std::get_if<std::int64_t>(c);
  if (!n) return fail(SW_INVALID_ARGUMENT, "cell is not an integer");
  *out = *n;
  return SW_OK;
}

sw_status sw_table_get_string(const sw_table* t, size_t row, size_t col, const char** out) {
  SW_NEED(out);
  const Cell* c = cell(t, row, col);
  if (!c) return fail(SW_INVALID_ARGUMENT, "cell index out of range");
  auto s = std::get_if<std::string>(c);
  if (!s) return fail(SW_INVALID_ARGUMENT, "cell is not text");
  *out = s->c_str();
  return SW_OK;
}

size_t sw_table_meta_count(const sw_table* t) { return t ? t->t.meta().size() : 0; }

const char* sw_table_meta_key(const sw_table* t, size_t i) {
  if (!t || i >= t->t.meta().size()) return nullptr;
  return t->t.meta()[i].first.c_str();
}

const char* sw_table_meta_value(const sw_table* t, size_t i) {
  if (!t || i >= t->t.meta().size()) return nullptr;
  return t->t.meta()[i].second.c_str();
}

const char* sw_table_meta_find(const sw_table* t, const char* key) {
  if (!t || !key) return nullptr;
  for (const auto& [k, v] : t->t.meta())
    if (k == key) return v.c_str();
  return nullptr;
}

sw_status sw_table_write(const sw_table* t, const char* path, sw_format fmt) {
  SW_NEED(t);
  SW_NEED(path);
  if (fmt != SW_FORMAT_CSV && fmt != SW_FORMAT_JSON) return fail(SW_INVALID_ARGUMENT, "unknown format");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(std::string("cannot open ") + path + " for writing");
    if (fmt == SW_FORMAT_CSV)
      t->t.write_csv(os);
    else
      t->t.write_json(os);
    os.close();
    if (!os) throw IoError(std::string("write to ") + path + " failed");
    return SW_OK;
  });
}

}  // extern "C"
