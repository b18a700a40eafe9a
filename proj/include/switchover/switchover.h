#ifndef SWITCHOVER_SWITCHOVER_H
#define SWITCHOVER_SWITCHOVER_H

/* C interface to the two-colour saddle-point library. Handles are opaque;
   every call that can fail returns sw_status and leaves a message for
   sw_last_error() (per thread). */

#include <stddef.h>

#if defined(_WIN32)
#  define SW_API __declspec(dllexport)
#else
#  define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SW_OK = 0,
  SW_INVALID_ARGUMENT = 1,
  SW_NUMERICAL = 2,
  SW_TOPOLOGY = 3,
  SW_DEGENERATE = 4,
  SW_IO = 5,
  SW_INTERNAL = 6
} sw_status;

typedef enum { SW_CELL_DOUBLE = 0, SW_CELL_INT = 1, SW_CELL_STRING = 2 } sw_cell_type;
typedef enum { SW_FORMAT_CSV = 0, SW_FORMAT_JSON = 1 } sw_format;

typedef struct sw_config sw_config;
typedef struct sw_result sw_result;
typedef struct sw_table sw_table;

SW_API const char* sw_version(void);
SW_API const char* sw_last_error(void);
SW_API const char* sw_status_name(sw_status s);

/* Defaults: 4e14 W/cm^2, 800 nm, theta 45 deg, phi2 0, orders 1,2, Ip 0.5 a.u. */
SW_API sw_config* sw_config_new(void);
SW_API void sw_config_free(sw_config* c);

SW_API sw_status sw_config_set_intensity_wcm2(sw_config* c, double v);
SW_API sw_status sw_config_set_intensity_au(sw_config* c, double v);
SW_API sw_status sw_config_set_wavelength_nm(sw_config* c, double v);
SW_API sw_status sw_config_set_omega_au(sw_config* c, double v);
SW_API sw_status sw_config_set_theta_deg(sw_config* c, double v);
SW_API sw_status sw_config_set_phi2_rad(sw_config* c, double v);
SW_API sw_status sw_config_set_orders(sw_config* c, int n1, int n2);
SW_API sw_status sw_config_set_ip_au(sw_config* c, double v);
SW_API sw_status sw_config_set_ip_ev(sw_config* c, double v);
SW_API sw_status sw_config_set_p_grid(sw_config* c, double p_min, double p_max, int count);
SW_API sw_status sw_config_set_gammas(sw_config* c, const double* v, size_t n);
SW_API sw_status sw_config_set_thetas_deg(sw_config* c, const double* v, size_t n);
SW_API sw_status sw_config_set_grid_res(sw_config* c, int n);
/* label is 'A'..'D'; may be called more than once. */
SW_API sw_status sw_config_exclude_orbit(sw_config* c, char label);
SW_API sw_status sw_config_validate(const sw_config* c);
SW_API sw_status sw_config_keldysh_gamma(const sw_config* c, double* out);

/* Each run allocates *out on success (free with sw_result_free). */
SW_API sw_status sw_run_landscape(const sw_config* c, sw_result** out);
SW_API sw_status sw_run_switchover(const sw_config* c, sw_result** out);
SW_API sw_status sw_run_spectrum(const sw_config* c, sw_result** out);
SW_API sw_status sw_run_yields(const sw_config* c, sw_result** out);
SW_API sw_status sw_run_rstar(const sw_config* c, sw_result** out);
SW_API sw_status sw_run_trajectories(const sw_config* c, sw_result** out);
SW_API void sw_result_free(sw_result* r);

SW_API size_t sw_result_table_count(const sw_result* r);
/* Borrowed; valid until sw_result_free. NULL if out of range. */
SW_API const sw_table* sw_result_table(const sw_result* r, size_t i);

SW_API const char* sw_table_name(const sw_table* t);
SW_API size_t sw_table_rows(const sw_table* t);
SW_API size_t sw_table_cols(const sw_table* t);
SW_API const char* sw_table_column_name(const sw_table* t, size_t col);
SW_API const char* sw_table_column_unit(const sw_table* t, size_t col);
/* -1 if the name is unknown */
SW_API long sw_table_column_index(const sw_table* t, const char* name);
SW_API sw_status sw_table_cell_type(const sw_table* t, size_t row, size_t col, sw_cell_type* out);
/* Integer cells convert to double; strings do not. */
SW_API sw_status sw_table_get_double(const sw_table* t, size_t row, size_t col, double* out);
SW_API sw_status sw_table_get_int(const sw_table* t, size_t row, size_t col, long long* out);
/* Borrowed pointer. */
SW_API sw_status sw_table_get_string(const sw_table* t, size_t row, size_t col, const char** out);
SW_API size_t sw_table_meta_count(const sw_table* t);
SW_API const char* sw_table_meta_key(const sw_table* t, size_t i);
SW_API const char* sw_table_meta_value(const sw_table* t, size_t i);
/* First value stored under key, or NULL. */
SW_API const char* sw_table_meta_find(const sw_table* t, const char* key);

SW_API sw_status sw_table_write(const sw_table* t, const char* path, sw_format fmt);

#ifdef __cplusplus
}
#endif

#endif
