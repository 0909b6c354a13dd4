/* ecoop: energy cooperation toolkit for energy-harvesting sensor networks.
 *
 * C interface to the shared library. All entry points return a status code
 * (ECOOP_OK on success); on failure ecoop_last_error() yields a thread-local
 * description of what went wrong. Result tables are opaque handles released
 * with ecoop_table_free().
 */
#ifndef ECOOP_H
#define ECOOP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ECOOP_API __declspec(dllexport)
#else
#define ECOOP_API __attribute__((visibility("default")))
#endif

enum {
  ECOOP_OK = 0,
  ECOOP_EINVAL = 1,  /* invalid argument or configuration */
  ECOOP_EDOMAIN = 2, /* input outside the mathematical domain */
  ECOOP_EIO = 3,     /* file could not be read or written */
  ECOOP_EFAIL = 4    /* internal failure */
};

typedef struct ecoop_table ecoop_table;

ECOOP_API const char* ecoop_version(void);
/* Message for the most recent failure on this thread; empty string if none. */
ECOOP_API const char* ecoop_last_error(void);

/* --- scalar computations ------------------------------------------------ */

/* Poisson packet-count probability for expected traffic mu_tau. */
ECOOP_API int ecoop_poisson_pmf(double mu_tau, long k, double* out);

/* Shannon rate (bits/s) for a transmit power (W) on a bandwidth (Hz),
 * noise PSD (W/Hz) channel. */
ECOOP_API int ecoop_achievable_rate(double bandwidth, double noise_psd,
                                    double power, double* out);

/* Transmit power (W) sustaining rate_threshold (bits/s). */
ECOOP_API int ecoop_required_power(double bandwidth, double noise_psd,
                                   double rate_threshold, double* out);

/* Bits per joule at the rate threshold. */
ECOOP_API int ecoop_demander_efficiency(double bandwidth, double noise_psd,
                                        double rate_threshold, double* out);

/* (s,S) policy for Poisson demand with mean mu_tau on levels a*k.
 * Any output pointer may be NULL. */
ECOOP_API int ecoop_optimal_inventory(double mu_tau, double energy_per_packet,
                                      double holding, double shortage,
                                      double purchase, double setup,
                                      double* order_up_to, double* reorder_point,
                                      double* min_cost);

/* Equilibrium of a uniform-supplier market. game is one of "static",
 * "cournot", "stackelberg"; leaders is ignored except for stackelberg. */
ECOOP_API int ecoop_market_equilibrium(const char* game, int suppliers, int leaders,
                                       double demander_efficiency,
                                       double cost_coefficient, double* total_volume,
                                       double* price);

/* --- scenario runs ------------------------------------------------------ */

/* Runs a figure-reproduction preset (fig2..fig8) into a new table. */
ECOOP_API int ecoop_run_preset(const char* name, ecoop_table** out);

/* Runs a JSON scenario file. mode is one of "run", "inventory", "market",
 * "sim". seed_override may be NULL to keep the configured seed. */
ECOOP_API int ecoop_run_config(const char* path, const char* mode,
                               const unsigned long long* seed_override,
                               ecoop_table** out);

/* --- result tables ------------------------------------------------------ */

ECOOP_API long ecoop_table_rows(const ecoop_table* table);
ECOOP_API long ecoop_table_cols(const ecoop_table* table);
ECOOP_API const char* ecoop_table_column_name(const ecoop_table* table, long col);
ECOOP_API int ecoop_table_value(const ecoop_table* table, long row, long col,
                                double* out);
ECOOP_API long ecoop_table_meta_count(const ecoop_table* table);
ECOOP_API const char* ecoop_table_meta_key(const ecoop_table* table, long index);
ECOOP_API const char* ecoop_table_meta_value(const ecoop_table* table, long index);

/* Serializes the table as CSV at the given significant-digit precision
 * (pass 0 for the default of 12). path "-" writes to stdout. */
ECOOP_API int ecoop_table_write_csv(const ecoop_table* table, const char* path,
                                    int precision);

ECOOP_API void ecoop_table_free(ecoop_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ECOOP_H */
