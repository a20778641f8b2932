#ifndef ADOPRIOR_ADOPRIOR_H
#define ADOPRIOR_ADOPRIOR_H

#include <stddef.h>

#if defined(_WIN32)
#define ADOPRIOR_API __declspec(dllexport)
#else
#define ADOPRIOR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adoprior_status {
  ADOPRIOR_OK = 0,
  ADOPRIOR_E_INVALID_DISTRIBUTION = 1,
  ADOPRIOR_E_PARAMETER = 2,
  ADOPRIOR_E_SHAPE = 3,
  ADOPRIOR_E_LOOKUP = 4,
  ADOPRIOR_E_AMBIGUITY = 5,
  ADOPRIOR_E_UNSUPPORTED_KIND = 6,
  ADOPRIOR_E_IMPOSSIBLE_OBSERVATION = 7,
  ADOPRIOR_E_CONFIGURATION = 8,
  ADOPRIOR_E_PARSE = 9,
  ADOPRIOR_E_SEMANTIC = 10,
  ADOPRIOR_E_IO = 11,
  ADOPRIOR_E_REPLICATION = 12,
  ADOPRIOR_E_NULL_ARGUMENT = 13,
  ADOPRIOR_E_INTERNAL = 14
} adoprior_status;

typedef struct adoprior_config adoprior_config;
typedef struct adoprior_batch adoprior_batch;
typedef struct adoprior_belief adoprior_belief;

typedef struct adoprior_efd_parts {
  double response_variability;
  double surprisal;
  double hindsight;
  double total;
} adoprior_efd_parts;

typedef struct adoprior_batch_info {
  size_t n_cells;
  size_t n_records;
  size_t n_summary_rows;
  size_t belief_floor_events;
  size_t floored_metric_records;
  int floor_flag;
  double wall_seconds;
} adoprior_batch_info;

/* Message for the last failing call on this thread; never NULL. */
ADOPRIOR_API const char* adoprior_last_error(void);
ADOPRIOR_API const char* adoprior_status_name(adoprior_status status);
ADOPRIOR_API const char* adoprior_version(void);

/* Strings returned through char** are owned by the caller. */
ADOPRIOR_API void adoprior_string_free(char* s);

ADOPRIOR_API adoprior_status adoprior_config_parse(const char* text, adoprior_config** out);
ADOPRIOR_API adoprior_status adoprior_config_load(const char* path, adoprior_config** out);
ADOPRIOR_API adoprior_status adoprior_config_emit(const adoprior_config* cfg, char** out);
ADOPRIOR_API adoprior_status adoprior_config_hash(const adoprior_config* cfg, char** out);
ADOPRIOR_API void adoprior_config_free(adoprior_config* cfg);

/* workers <= 0 means one worker. */
ADOPRIOR_API adoprior_status adoprior_run(const adoprior_config* cfg, int workers,
                                          int snapshots, adoprior_batch** out);
ADOPRIOR_API adoprior_status adoprior_batch_info_get(const adoprior_batch* batch,
                                                     adoprior_batch_info* info);
/* Writes manifest.json, summary.csv and, when trial_logs is set, trials.jsonl. */
ADOPRIOR_API adoprior_status adoprior_batch_write(const adoprior_batch* batch,
                                                  const char* out_dir, int trial_logs);
ADOPRIOR_API adoprior_status adoprior_batch_summary_csv(const adoprior_batch* batch,
                                                        char** out);
ADOPRIOR_API void adoprior_batch_free(adoprior_batch* batch);

/* Surface CSVs. A NULL path writes to stdout; otherwise a sibling
   "<path>.manifest.json" is written as well. focus may be NULL (config focus). */
ADOPRIOR_API adoprior_status adoprior_utility_surface(const adoprior_config* cfg,
                                                      const char* dist_id,
                                                      const char* path);
ADOPRIOR_API adoprior_status adoprior_efd_surface(const adoprior_config* cfg,
                                                  const char* spec_id,
                                                  const char* pop_id,
                                                  const char* focus, const char* path);

/* Re-aggregates a trial log into a summary CSV (NULL out_path: stdout). */
ADOPRIOR_API adoprior_status adoprior_summarize_log(const char* log_path,
                                                    const char* out_path);

/* Beliefs built from a config's named distributions. Stimuli and responses
   are given by value. */
ADOPRIOR_API adoprior_status adoprior_belief_create(const adoprior_config* cfg,
                                                    const char* dist_id,
                                                    adoprior_belief** out);
ADOPRIOR_API adoprior_status adoprior_belief_update(const adoprior_belief* b,
                                                    double stimulus, double response,
                                                    adoprior_belief** out);
ADOPRIOR_API adoprior_status adoprior_belief_predictive(const adoprior_belief* b,
                                                        double stimulus, double* masses,
                                                        size_t capacity, size_t* n);
ADOPRIOR_API adoprior_status adoprior_belief_model_probs(const adoprior_belief* b,
                                                         double* masses, size_t capacity,
                                                         size_t* n);
ADOPRIOR_API adoprior_status adoprior_mi_utility(const adoprior_belief* b, double stimulus,
                                                 const char* focus, double* out);
ADOPRIOR_API adoprior_status adoprior_utility(const adoprior_belief* b, double stimulus,
                                              const char* utility_kind,
                                              const char* ucb_focus, double ucb_weight,
                                              double* out);
ADOPRIOR_API adoprior_status adoprior_efd(const adoprior_belief* spec,
                                          const adoprior_belief* pop, double stimulus,
                                          const char* focus, adoprior_efd_parts* out);
ADOPRIOR_API void adoprior_belief_free(adoprior_belief* b);

#ifdef __cplusplus
}
#endif

#endif
